from typing import Any, Dict, Sequence

import pandas as pd
from charp_core.emitters import Emitter
from charp_core.types import ExperimentReport

COLUMNS = ["id", "kind", "prime", "mode", "verdict", "checks", "detail"]


def _detail(report: ExperimentReport) -> str:
    if report.error is not None:
        return f"{report.error.kind}: {report.error.message}"
    failed = sorted(name for name, ok in report.checks.items() if not ok)
    if failed:
        return "failed: " + ", ".join(failed)
    return "; ".join(report.notes)


def _row(report: ExperimentReport) -> Dict[str, Any]:
    passed = sum(bool(ok) for ok in report.checks.values())
    return {
        "id": report.id,
        "kind": report.kind,
        "prime": report.prime,
        "mode": report.mode.value,
        "verdict": report.verdict.value.upper(),
        "checks": f"{passed}/{len(report.checks)}",
        "detail": _detail(report),
    }


class TableEmitter(Emitter):
    """An aligned summary, one line per experiment, followed by verdict totals."""

    format_name = "table"

    def render(self, reports: Sequence[ExperimentReport]) -> str:
        if not reports:
            return "no experiments\n"
        frame = pd.DataFrame([_row(r) for r in reports], columns=COLUMNS)
        totals = frame["verdict"].value_counts().sort_index()
        footer = ", ".join(f"{verdict}: {count}" for verdict, count in totals.items())
        return frame.to_string(index=False, justify="left") + "\n\n" + footer + "\n"
