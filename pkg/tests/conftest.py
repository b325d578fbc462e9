import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from paracorp.corpus.segmenter import Sentence, build_sentence

# Small pool of Armenian-looking words for synthetic corpora.
ARMENIAN_WORDS = [
    "երկիր", "քաղաք", "մարդ", "տարի", "օր", "գործ", "ժամանակ", "կյանք",
    "աշխատանք", "հարց", "խոսք", "ջուր", "լեռ", "գիրք", "դպրոց", "ճանապարհ",
    "պատմություն", "կառավարություն", "նախագահ", "որոշում", "տեղ", "խումբ",
    "երեխա", "ընտանիք", "տուն", "շենք", "գյուղ", "անտառ", "ծով", "արև",
]


def make_sentence(words: list[str], doc_id: str = "doc", index: int = 0,
                  stopwords: frozenset[str] | None = None) -> Sentence:
    return build_sentence(doc_id, index, " ".join(words) + "։", stopwords)


def random_words(rng: random.Random, n: int) -> list[str]:
    return [rng.choice(ARMENIAN_WORDS) for _ in range(n)]


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240613)
