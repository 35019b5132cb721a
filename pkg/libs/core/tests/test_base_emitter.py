from typing import Sequence

import pytest

from charp_core.emitters.base import Emitter
from charp_core.types import ExperimentReport, Mode, Verdict


class IdEmitter(Emitter):
    """Writes one experiment id per line."""

    format_name = "ids"

    def render(self, reports: Sequence[ExperimentReport]) -> str:
        return "".join(f"{r.id}\n" for r in reports)


@pytest.fixture
def reports():
    return [
        ExperimentReport(
            id=f"e{i}",
            kind="cartier",
            parameters={"n": 1},
            prime=3,
            mode=Mode.ASSERT,
            verdict=Verdict.PASS,
            engine_version="0.1.0",
        )
        for i in range(2)
    ]


def test_emit_without_path_returns_text(reports):
    assert IdEmitter().emit(reports) == "e0\ne1\n"


def test_emit_writes_file(reports, tmp_path):
    target = tmp_path / "nested" / "out.txt"
    text = IdEmitter().emit(reports, target)
    assert target.read_text(encoding="utf-8") == text


def test_emit_reports_path_on_failure(reports, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("not a directory")
    with pytest.raises(OSError, match="ids report"):
        IdEmitter().emit(reports, blocker / "out.txt")


def test_emitter_abstractness():
    with pytest.raises(TypeError):
        Emitter()
