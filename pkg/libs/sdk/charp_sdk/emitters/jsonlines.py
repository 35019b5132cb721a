import json
from typing import Sequence

from charp_core.emitters import Emitter
from charp_core.types import ExperimentReport


class JsonLinesEmitter(Emitter):
    """
    One JSON object per experiment, one experiment per line.

    Record fields mirror `ExperimentReport.to_record`: id, kind, parameters,
    prime, mode, verdict, engine_version, checks, tables, witnesses, notes,
    timings and error ({kind, message, details} or null). Keys are sorted so
    identical reports render to identical bytes.
    """

    format_name = "jsonlines"

    def render(self, reports: Sequence[ExperimentReport]) -> str:
        return "".join(json.dumps(r.to_record(), sort_keys=True, ensure_ascii=False) + "\n" for r in reports)
