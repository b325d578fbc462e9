"""On-disk dataset format.

Tab-separated, UTF-8, one header row. Columns: pair_id, sentence_1,
sentence_2, label (1 = paraphrase, 0 = non-paraphrase), near_paraphrase
(0/1), origin. Lines starting with '#' are provenance comments and are
skipped on import. A headerless 3-column variant (sentence_1, sentence_2,
label) is accepted for externally published data.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path

from .splits import LABEL_NON_PARAPHRASE, LABEL_PARAPHRASE, ORIGIN_BACKTRANSLATION, ORIGINS, DatasetSplit, LabeledPair

logger = logging.getLogger(__name__)

HEADER = ("pair_id", "sentence_1", "sentence_2", "label", "near_paraphrase", "origin")


class TsvFormatError(ValueError):
    def __init__(self, path, lineno: int, message: str):
        super().__init__(f"{path}:{lineno}: {message}")
        self.lineno = lineno


def _sanitize(text: str, pair_id: str, field_name: str) -> str:
    clean = " ".join(text.replace("\t", " ").split("\n"))
    clean = " ".join(clean.split("\r"))
    if clean != text:
        logger.warning("pair %s: control characters in %s replaced by spaces", pair_id, field_name)
    return clean


def export_tsv(split: DatasetSplit, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = []
    if split.provenance:
        lines.append("# provenance=" + json.dumps(split.provenance, ensure_ascii=False, sort_keys=True))
    lines.append("\t".join(HEADER))
    for pair in split.pairs:
        lines.append(
            "\t".join(
                (
                    pair.pair_id,
                    _sanitize(pair.sentence_1, pair.pair_id, "sentence_1"),
                    _sanitize(pair.sentence_2, pair.pair_id, "sentence_2"),
                    "1" if pair.label == LABEL_PARAPHRASE else "0",
                    "1" if pair.near_paraphrase else "0",
                    pair.origin,
                )
            )
        )
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _parse_label(value: str, path, lineno: int) -> str:
    if value == "1":
        return LABEL_PARAPHRASE
    if value == "0":
        return LABEL_NON_PARAPHRASE
    raise TsvFormatError(path, lineno, f"label must be 0 or 1, got {value!r}")


def import_tsv(path: str | Path, name: str | None = None) -> DatasetSplit:
    path = Path(path)
    provenance: dict = {}
    pairs: list[LabeledPair] = []
    mode: str | None = None  # "full" | "bare"
    bare_count = 0
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        if not raw.strip():
            continue
        if raw.startswith("#"):
            body = raw[1:].strip()
            if body.startswith("provenance="):
                try:
                    provenance = json.loads(body[len("provenance=") :])
                except json.JSONDecodeError as exc:
                    raise TsvFormatError(path, lineno, f"bad provenance comment: {exc}")
            continue
        fields = raw.split("\t")
        if mode is None:
            if tuple(fields) == HEADER:
                mode = "full"
                continue
            if len(fields) == 3:
                mode = "bare"
                if fields[2] not in ("0", "1"):
                    continue  # header row of the bare variant
            elif len(fields) == len(HEADER):
                raise TsvFormatError(path, lineno, f"expected header row {HEADER}")
            else:
                raise TsvFormatError(path, lineno, f"expected {len(HEADER)} or 3 columns, got {len(fields)}")
        if mode == "full":
            if len(fields) != len(HEADER):
                raise TsvFormatError(path, lineno, f"expected {len(HEADER)} columns, got {len(fields)}")
            pair_id, s1, s2, label, near, origin = fields
            if near not in ("0", "1"):
                raise TsvFormatError(path, lineno, f"near_paraphrase must be 0 or 1, got {near!r}")
            if origin not in ORIGINS:
                raise TsvFormatError(path, lineno, f"unknown origin {origin!r}")
            try:
                pairs.append(
                    LabeledPair(
                        pair_id=pair_id,
                        sentence_1=s1,
                        sentence_2=s2,
                        label=_parse_label(label, path, lineno),
                        near_paraphrase=near == "1",
                        origin=origin,
                    )
                )
            except ValueError as exc:
                raise TsvFormatError(path, lineno, str(exc))
        else:
            if len(fields) != 3:
                raise TsvFormatError(path, lineno, f"expected 3 columns, got {len(fields)}")
            s1, s2, label = fields
            bare_count += 1
            pairs.append(
                LabeledPair(
                    pair_id=f"row-{bare_count:06d}",
                    sentence_1=s1,
                    sentence_2=s2,
                    label=_parse_label(label, path, lineno),
                    origin=ORIGIN_BACKTRANSLATION,
                )
            )
    return DatasetSplit(name=name or path.stem, pairs=tuple(pairs), provenance=provenance)
