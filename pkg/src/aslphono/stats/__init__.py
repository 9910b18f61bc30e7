from .correlation import CorrelationMatrix, attribute_correlation, cramers_v
from .report import OverallStats, StatsReport, Summary, dataset_stats

__all__ = [
    "CorrelationMatrix",
    "OverallStats",
    "StatsReport",
    "Summary",
    "attribute_correlation",
    "cramers_v",
    "dataset_stats",
]
