"""Whitespace tokenizer with punctuation peeling and per-token script tagging.

The rules are deliberately simple and deterministic:

* split on Unicode whitespace,
* peel leading and trailing punctuation/symbol characters off each chunk
  into separate punctuation tokens (one token per character),
* the remaining core is a single token; internal punctuation such as
  hyphens or ``%`` stays inside it, so ``100%-ով`` is one word token.

A core token containing any letter is a ``word``, otherwise any digit makes
it a ``number``; leftovers are ``punctuation``. The script tag is derived
from the token's alphabetic characters only: digits and punctuation are
script-neutral.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass

KIND_WORD = "word"
KIND_NUMBER = "number"
KIND_PUNCTUATION = "punctuation"

SCRIPT_ARMENIAN = "armenian"
SCRIPT_LATIN = "latin"
SCRIPT_CYRILLIC = "cyrillic"
SCRIPT_NEUTRAL = "digit_or_neutral"
SCRIPT_OTHER = "other"


@dataclass(frozen=True)
class Token:
    surface: str
    kind: str
    script: str
    is_stopword: bool = False


def _char_script(ch: str) -> str:
    cp = ord(ch)
    if 0x0530 <= cp <= 0x058F or 0xFB13 <= cp <= 0xFB17:
        return SCRIPT_ARMENIAN
    if 0x0400 <= cp <= 0x04FF or 0x0500 <= cp <= 0x052F:
        return SCRIPT_CYRILLIC
    if cp <= 0x024F or 0x1E00 <= cp <= 0x1EFF:
        # Basic Latin through Latin Extended-B, plus Latin Extended Additional.
        return SCRIPT_LATIN
    return SCRIPT_OTHER


def scripts_in(surface: str) -> set[str]:
    """Distinct scripts of the alphabetic characters in ``surface``."""
    return {_char_script(ch) for ch in surface if ch.isalpha()}


def _token_script(surface: str) -> str:
    scripts = scripts_in(surface)
    if not scripts:
        return SCRIPT_NEUTRAL
    if len(scripts) == 1:
        return next(iter(scripts))
    # Mixed-alphabet tokens carry no single script; the mixed-script filter
    # inspects the character set directly via scripts_in().
    return SCRIPT_OTHER


def _is_punct_char(ch: str) -> bool:
    return unicodedata.category(ch)[0] in ("P", "S")


def _classify_core(core: str) -> str:
    if any(ch.isalpha() for ch in core):
        return KIND_WORD
    if any(ch.isdigit() for ch in core):
        return KIND_NUMBER
    return KIND_PUNCTUATION


def tokenize(text: str, stopwords: frozenset[str] | set[str] | None = None) -> list[Token]:
    """Tokenize ``text`` deterministically.

    ``stopwords`` is a set of case-folded surfaces; punctuation tokens are
    never stopwords.
    """
    stop = stopwords or frozenset()
    tokens: list[Token] = []
    for chunk in text.split():
        start = 0
        end = len(chunk)
        leading: list[str] = []
        trailing: list[str] = []
        while start < end and _is_punct_char(chunk[start]):
            leading.append(chunk[start])
            start += 1
        while end > start and _is_punct_char(chunk[end - 1]):
            trailing.append(chunk[end - 1])
            end -= 1
        for ch in leading:
            tokens.append(Token(ch, KIND_PUNCTUATION, _token_script(ch)))
        core = chunk[start:end]
        if core:
            kind = _classify_core(core)
            is_stop = kind != KIND_PUNCTUATION and core.casefold() in stop
            tokens.append(Token(core, kind, _token_script(core), is_stop))
        for ch in reversed(trailing):
            tokens.append(Token(ch, KIND_PUNCTUATION, _token_script(ch)))
    return tokens


def content_token_count(tokens: list[Token]) -> int:
    """Tokens that are neither punctuation nor stopwords."""
    return sum(1 for t in tokens if t.kind != KIND_PUNCTUATION and not t.is_stopword)
