from .cache import TranslationCache
from .pipeline import (
    GeneratedPair,
    PostFilterConfig,
    TranslationRecord,
    Translator,
    generate_batch,
    generate_paraphrase,
    post_generation_filters,
    reject_mixed_script,
    round_trip,
)
from .providers import (
    HttpProvider,
    IdentityProvider,
    ProviderError,
    ReversalProvider,
    TableProvider,
    TranslationProvider,
    UnsupportedPairError,
)
from .ratelimit import TokenBucket

__all__ = [
    "GeneratedPair",
    "HttpProvider",
    "IdentityProvider",
    "PostFilterConfig",
    "ProviderError",
    "ReversalProvider",
    "TableProvider",
    "TokenBucket",
    "TranslationCache",
    "TranslationProvider",
    "TranslationRecord",
    "Translator",
    "UnsupportedPairError",
    "generate_batch",
    "generate_paraphrase",
    "post_generation_filters",
    "reject_mixed_script",
    "round_trip",
]
