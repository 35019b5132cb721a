from .reports import ReportComparator, read_records, summarize_diff

__all__ = ["ReportComparator", "read_records", "summarize_diff"]
