"""Paraphrase candidate generation via repeated round-trip translation.

Each source sentence is translated to a pivot language and back,
``iterations`` times (default 2). The full translation provenance is kept
on the pair. Candidates that look like translation artifacts are rejected
mechanically: a word mixing alphabets, a mostly-foreign candidate, or a
candidate that splits into several sentences. Semantic quality is left to
human annotation.
"""

from __future__ import annotations

import logging
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone

from ..corpus.segmenter import SegmenterConfig, Sentence, segment_text
from ..corpus.tokenizer import KIND_WORD, SCRIPT_ARMENIAN, scripts_in, tokenize
from .cache import TranslationCache
from .providers import ProviderError, TransientProviderError, TranslationProvider
from .ratelimit import TokenBucket

logger = logging.getLogger(__name__)

STATUS_CANDIDATE = "candidate"
STATUS_MIXED_SCRIPT = "rejected_mixed_script"
STATUS_UNTRANSLATED = "rejected_untranslated"
STATUS_MULTISENTENCE = "rejected_multisentence"


@dataclass(frozen=True)
class TranslationRecord:
    request_text: str
    src: str
    dst: str
    response_text: str
    provider_id: str
    from_cache: bool
    timestamp: str


@dataclass(frozen=True)
class GeneratedPair:
    pair_id: str
    source: Sentence
    candidate_text: str
    pivot: str
    iterations: int
    provenance: tuple[TranslationRecord, ...]
    status: str
    diagnostics: str = ""


@dataclass(frozen=True)
class PostFilterConfig:
    foreign_threshold: float = 0.5
    native_script: str = SCRIPT_ARMENIAN
    segmenter: SegmenterConfig = field(default_factory=SegmenterConfig)


class Translator:
    """Pairs a provider with caching, retries and rate limiting.

    The cache key is (provider_id, src, dst, text); hits replay the stored
    response and its original timestamp, so warm-cache runs are
    byte-reproducible. Transient provider failures are retried with
    exponential backoff before giving up.
    """

    def __init__(
        self,
        provider: TranslationProvider,
        cache: TranslationCache | None = None,
        rate_limiter: TokenBucket | None = None,
        retries: int = 3,
        backoff: float = 0.5,
        sleep=None,
    ):
        self.provider = provider
        self.cache = cache
        self.rate_limiter = rate_limiter
        self.retries = retries
        self.backoff = backoff
        self._sleep = sleep or time.sleep
        self._call_count = 0
        self._count_lock = threading.Lock()

    @property
    def provider_calls(self) -> int:
        return self._call_count

    def _call_provider(self, text: str, src: str, dst: str) -> str:
        last_exc: ProviderError | None = None
        for attempt in range(self.retries):
            if self.rate_limiter is not None:
                self.rate_limiter.acquire()
            with self._count_lock:
                self._call_count += 1
            try:
                return self.provider.translate(text, src, dst)
            except TransientProviderError as exc:
                last_exc = exc
                if attempt + 1 < self.retries:
                    self._sleep(self.backoff * (2**attempt))
        assert last_exc is not None
        raise last_exc

    def translate(self, text: str, src: str, dst: str) -> TranslationRecord:
        self.provider.check_pair(src, dst)
        pid = self.provider.provider_id
        if self.cache is not None:
            hit = self.cache.get(pid, src, dst, text)
            if hit is not None:
                return TranslationRecord(
                    request_text=text,
                    src=src,
                    dst=dst,
                    response_text=hit["response_text"],
                    provider_id=pid,
                    from_cache=True,
                    timestamp=hit["timestamp"],
                )
        response = self._call_provider(text, src, dst)
        if not response:
            raise ProviderError(f"provider {pid!r} returned an empty translation")
        stamp = datetime.now(timezone.utc).isoformat()
        if self.cache is not None:
            self.cache.put(pid, src, dst, text, {"response_text": response, "timestamp": stamp})
        return TranslationRecord(
            request_text=text,
            src=src,
            dst=dst,
            response_text=response,
            provider_id=pid,
            from_cache=False,
            timestamp=stamp,
        )


def round_trip(
    translator: Translator, text: str, pivot: str, src: str = "hy"
) -> tuple[str, list[TranslationRecord]]:
    """src -> pivot -> src; returns the final text and both records."""
    out = translator.translate(text, src, pivot)
    back = translator.translate(out.response_text, pivot, src)
    return back.response_text, [out, back]


def reject_mixed_script(text: str) -> bool:
    """True iff some word token mixes alphabetic characters from two or
    more scripts. Digits and punctuation are script-neutral."""
    for token in tokenize(text):
        if token.kind == KIND_WORD and len(scripts_in(token.surface)) >= 2:
            return True
    return False


def _foreign_word_fraction(text: str, native_script: str) -> tuple[float, int]:
    words = [t for t in tokenize(text) if t.kind == KIND_WORD]
    if not words:
        return 0.0, 0
    foreign = sum(1 for t in words if native_script not in scripts_in(t.surface))
    return foreign / len(words), len(words)


def post_generation_filters(pair: GeneratedPair, config: PostFilterConfig | None = None) -> GeneratedPair:
    """Assign the pair's final status from its candidate text."""
    if pair.status == STATUS_UNTRANSLATED and not pair.candidate_text:
        return pair  # translation already failed upstream
    cfg = config or PostFilterConfig()
    fraction, n_words = _foreign_word_fraction(pair.candidate_text, cfg.native_script)
    if n_words == 0:
        return replace(pair, status=STATUS_UNTRANSLATED, diagnostics="candidate has no word tokens")
    if fraction > cfg.foreign_threshold:
        return replace(
            pair,
            status=STATUS_UNTRANSLATED,
            diagnostics=f"{fraction:.2f} of word tokens are non-{cfg.native_script}",
        )
    if len(segment_text(pair.candidate_text, cfg.segmenter)) >= 2:
        return replace(pair, status=STATUS_MULTISENTENCE, diagnostics="candidate splits into multiple sentences")
    if reject_mixed_script(pair.candidate_text):
        return replace(pair, status=STATUS_MIXED_SCRIPT, diagnostics="word mixes two scripts")
    return replace(pair, status=STATUS_CANDIDATE, diagnostics="")


def generate_paraphrase(
    translator: Translator,
    sentence: Sentence,
    pivot: str = "en",
    iterations: int = 2,
    src: str = "hy",
    post_config: PostFilterConfig | None = None,
) -> GeneratedPair:
    """Run ``iterations`` round trips over the sentence and post-filter.

    Translation failures never raise: the pair comes back as
    rejected_untranslated with the error in diagnostics and whatever
    provenance was collected before the failure.
    """
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    pair_id = f"{sentence.sent_id}/bt"
    records: list[TranslationRecord] = []
    text = sentence.text
    try:
        for _ in range(iterations):
            text, recs = round_trip(translator, text, pivot, src)
            records.extend(recs)
    except ProviderError as exc:
        logger.warning("pair %s: translation failed: %s", pair_id, exc)
        return GeneratedPair(
            pair_id=pair_id,
            source=sentence,
            candidate_text="",
            pivot=pivot,
            iterations=iterations,
            provenance=tuple(records),
            status=STATUS_UNTRANSLATED,
            diagnostics=str(exc),
        )
    pair = GeneratedPair(
        pair_id=pair_id,
        source=sentence,
        candidate_text=text,
        pivot=pivot,
        iterations=iterations,
        provenance=tuple(records),
        status=STATUS_CANDIDATE,
    )
    return post_generation_filters(pair, post_config)


def generate_batch(
    translator: Translator,
    sentences: list[Sentence],
    pivot: str = "en",
    iterations: int = 2,
    src: str = "hy",
    post_config: PostFilterConfig | None = None,
    in_flight: int = 1,
) -> list[GeneratedPair]:
    """Generate pairs for all sentences, at most ``in_flight`` concurrently.

    Results come back in input order regardless of completion order, so
    batch output is deterministic for deterministic providers.
    """

    def job(sentence: Sentence) -> GeneratedPair:
        return generate_paraphrase(translator, sentence, pivot, iterations, src, post_config)

    if in_flight <= 1:
        return [job(s) for s in sentences]
    with ThreadPoolExecutor(max_workers=in_flight) as pool:
        return list(pool.map(job, sentences))
