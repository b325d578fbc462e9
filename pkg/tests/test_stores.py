from paracorp import stores
from paracorp.corpus.segmenter import build_sentence
from paracorp.corpus.stopwords import default_stopwords
from paracorp.translate.pipeline import GeneratedPair, TranslationRecord


def test_sentence_round_trip_rederives_tokens():
    stop = default_stopwords()
    sent = build_sentence("doc7", 3, "Նա արդեն տուն է գնացել։", stop)
    rec = stores.sentence_to_dict(sent)
    assert "tokens" not in rec
    back = stores.sentence_from_dict(rec, stop)
    assert back == sent  # tokens re-derived from text match exactly


def test_generated_pair_round_trip():
    sent = build_sentence("d", 0, "մեկ երկու երեք չորս հինգ վեց։")
    pair = GeneratedPair(
        pair_id="d/s0000/bt",
        source=sent,
        candidate_text="վեց հինգ չորս երեք երկու մեկ։",
        pivot="en",
        iterations=2,
        provenance=(
            TranslationRecord("ա", "hy", "en", "a", "mock", False, "2024-01-01T00:00:00+00:00"),
            TranslationRecord("a", "en", "hy", "բ", "mock", True, "2024-01-01T00:00:01+00:00"),
        ),
        status="candidate",
    )
    back = stores.pair_from_dict(stores.pair_to_dict(pair))
    assert back == pair


def test_jsonl_write_read_round_trip(tmp_path):
    records = [{"x": 1, "s": "տեքստ"}, {"x": 2, "s": "այլ"}]
    path = tmp_path / "data.jsonl"
    assert stores.write_jsonl(path, records) == 2
    assert list(stores.read_jsonl(path)) == records
