from .negatives import ShortfallError, consecutive_negative_pairs, random_negative_pairs
from .splits import DatasetSplit, LabeledPair, SplitStats, assemble_split, split_stats
from .tsv import TsvFormatError, export_tsv, import_tsv

__all__ = [
    "DatasetSplit",
    "LabeledPair",
    "ShortfallError",
    "SplitStats",
    "TsvFormatError",
    "assemble_split",
    "consecutive_negative_pairs",
    "export_tsv",
    "import_tsv",
    "random_negative_pairs",
    "split_stats",
]
