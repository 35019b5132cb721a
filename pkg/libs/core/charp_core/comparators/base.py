import abc
from pathlib import Path
from typing import Any, Dict


class Comparator(abc.ABC):
    """
    Abstract base class for report-file comparators.

    Defines the common interface for comparing two report files and generating
    a structured account of their equivalence and differences.
    """

    @abc.abstractmethod
    def compare(
        self,
        file_path1: Path,
        file_path2: Path,
        **kwargs: Any,
    ) -> Dict[str, Any]:
        """
        Compares two report files and returns a detailed report.

        Args:
            file_path1: Path to the first file.
            file_path2: Path to the second file.
            **kwargs: Comparator-specific options (e.g., fields to ignore).

        Returns:
            A dictionary containing the comparison results, typically including:
            {
                "files": {"file1": str, "file2": str},
                "comparison_params": {param_name: value, ...},
                "are_equivalent": bool,
                "summary": List[str],
                "details": { ... }
            }
        """
        pass
