"""paracorp: build and evaluate sentential paraphrase corpora.

Pipeline: segment and filter a raw text corpus, generate paraphrase
candidates by double back-translation through a pluggable provider, label
them through an HTTP annotation service with adjudication, synthesize
negative pairs into train/test splits, and score detector predictions
with bootstrap confidence intervals.
"""

__version__ = "0.1.0"
