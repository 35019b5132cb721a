import abc
from pathlib import Path
from typing import Optional, Sequence, Union

from charp_core.types import ExperimentReport


class Emitter(abc.ABC):
    """
    Abstract base class for report emitters.

    An emitter renders a sequence of experiment reports into one text format
    and optionally writes it to a file.
    """

    format_name: str

    @abc.abstractmethod
    def render(self, reports: Sequence[ExperimentReport]) -> str:
        """
        Renders reports as text.

        The rendering must be a pure function of the reports so that identical
        reports always produce identical bytes.
        """
        pass

    def emit(
        self,
        reports: Sequence[ExperimentReport],
        path: Optional[Union[str, Path]] = None,
    ) -> str:
        """
        Renders reports and writes them to `path` when one is given.

        Returns:
            The rendered text.

        Raises:
            OSError: If the file cannot be written; the message names the path.
        """
        text = self.render(reports)
        if path is not None:
            target = Path(path)
            try:
                target.parent.mkdir(parents=True, exist_ok=True)
                target.write_text(text, encoding="utf-8")
            except OSError as e:
                raise OSError(f"Could not write {self.format_name} report to {target}: {e}") from e
        return text
