import json
import socket
import subprocess
import sys
import time
from pathlib import Path

import pytest
import requests
import yaml

from paracorp.cli import main
from paracorp.dataset.tsv import import_tsv
from paracorp.dataset.splits import split_stats
from paracorp.corpus.stopwords import default_stopwords
from paracorp import stores

from conftest import ARMENIAN_WORDS


def write_corpus(root: Path, n_docs: int = 6, n_sents: int = 8) -> None:
    root.mkdir(parents=True, exist_ok=True)
    for d in range(n_docs):
        sentences = []
        for i in range(n_sents):
            words = [ARMENIAN_WORDS[(d * 3 + i + j) % len(ARMENIAN_WORDS)] for j in range(6)]
            words.append(f"նշ{d}ա{i}")
            sentences.append(" ".join(words) + "։")
        (root / f"doc{d:02d}.txt").write_text(" ".join(sentences), encoding="utf-8")


def write_config(path: Path, **extra) -> Path:
    cfg = {
        "negatives": {
            "train": {"consecutive": 6, "random": 6},
            "test": {"consecutive": 3, "random": 3},
        },
        "split": {"test_fraction": 0.4},
        "eval": {"n_resamples": 200},
        "provider": {
            "id": "table",
            "table": {
                "hy>en": {w: f"w{i}" for i, w in enumerate(ARMENIAN_WORDS)},
                "en>hy": {f"w{i}": w for i, w in enumerate(ARMENIAN_WORDS[2:] + ARMENIAN_WORDS[:2])},
            },
        },
    }
    for key, value in extra.items():
        cfg[key] = value
    path.write_text(yaml.safe_dump(cfg, allow_unicode=True), encoding="utf-8")
    return path


@pytest.fixture
def pipeline(tmp_path):
    corpus = tmp_path / "corpus"
    write_corpus(corpus)
    cfg = write_config(tmp_path / "run.yaml", ingest={"path": str(corpus)})
    workspace = tmp_path / "ws"
    return {"config": str(cfg), "workspace": str(workspace), "tmp": tmp_path}


def run(args) -> int:
    return main(args)


# ------------------------------------------------------------------ prepare

def test_prepare_writes_store_and_reasons(pipeline, capsys):
    code = run(["--config", pipeline["config"], "prepare", "--workspace", pipeline["workspace"]])
    assert code == 0
    out = capsys.readouterr().out
    assert "documents: 6" in out
    manifest = stores.read_manifest(Path(pipeline["workspace"]) / "prepared")
    assert manifest["stage"] == "prepare"
    assert manifest["kept"] == 48  # 6 docs x 8 sentences, all pass the filters
    sentences = list(stores.read_jsonl(Path(pipeline["workspace"]) / "prepared" / "sentences.jsonl"))
    assert len(sentences) == manifest["kept"]


def test_prepare_reason_counts_match_recount(tmp_path, capsys):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    texts = [
        "կարճ նախադասություն։",  # too short (2 content tokens)
        " ".join(ARMENIAN_WORDS[:25]) + "։",  # too long
        "ա ա ա " + " ".join(ARMENIAN_WORDS[:5]) + "։",  # repetition
        "Վիճակագրական ժողովածու Երևան 2008 էջ 9697 հավելված աղյուսակ։",  # metadata
        " ".join(ARMENIAN_WORDS[:8]) + "։",  # kept
    ]
    (corpus / "doc.txt").write_text(" ".join(texts), encoding="utf-8")
    cfg = write_config(tmp_path / "run.yaml", ingest={"path": str(corpus)})
    code = run(["--config", str(cfg), "prepare", "--workspace", str(tmp_path / "ws")])
    assert code == 0
    manifest = stores.read_manifest(tmp_path / "ws" / "prepared")
    assert manifest["kept"] == 1
    assert manifest["rejected_by_reason"] == {
        "too_short": 1,
        "too_long": 1,
        "repetition": 1,
        "metadata_line": 1,
    }


def test_prepare_empty_corpus_warns_exit_zero(tmp_path, capsys):
    corpus = tmp_path / "empty"
    corpus.mkdir()
    cfg = write_config(tmp_path / "run.yaml", ingest={"path": str(corpus)})
    code = run(["--config", str(cfg), "prepare", "--workspace", str(tmp_path / "ws")])
    assert code == 0
    assert "warning" in capsys.readouterr().err


def test_bad_config_key_usage_error(tmp_path, capsys):
    bad = tmp_path / "bad.yaml"
    bad.write_text("fitlers:\n  min_content_tokens: 6\n", encoding="utf-8")
    code = run(["--config", str(bad), "prepare", "--workspace", str(tmp_path / "ws")])
    assert code == 2
    assert "unknown config key: fitlers" in capsys.readouterr().err


def test_missing_input_path_fails(tmp_path, capsys):
    cfg = write_config(tmp_path / "run.yaml", ingest={"path": str(tmp_path / "nope")})
    code = run(["--config", str(cfg), "prepare", "--workspace", str(tmp_path / "ws")])
    assert code == 1


# ----------------------------------------------------------------- generate

def test_generate_identity_candidates_equal_sources(pipeline, capsys):
    run(["--config", pipeline["config"], "prepare", "--workspace", pipeline["workspace"]])
    code = run(
        ["--config", pipeline["config"], "generate", "--workspace", pipeline["workspace"], "--provider", "identity"]
    )
    assert code == 0
    for rec in stores.read_jsonl(Path(pipeline["workspace"]) / "generated" / "pairs.jsonl"):
        assert rec["status"] == "candidate"
        assert rec["candidate_text"] == rec["source"]["text"]


def test_generate_warm_cache_zero_provider_calls(pipeline):
    run(["--config", pipeline["config"], "prepare", "--workspace", pipeline["workspace"]])
    run(["--config", pipeline["config"], "generate", "--workspace", pipeline["workspace"]])
    first = stores.read_manifest(Path(pipeline["workspace"]) / "generated")
    assert first["provider_calls"] > 0
    run(["--config", pipeline["config"], "generate", "--workspace", pipeline["workspace"]])
    second = stores.read_manifest(Path(pipeline["workspace"]) / "generated")
    assert second["provider_calls"] == 0
    assert second["status_histogram"] == first["status_histogram"]


def test_generate_idempotent_with_warm_cache(pipeline):
    run(["--config", pipeline["config"], "prepare", "--workspace", pipeline["workspace"]])
    pairs_path = Path(pipeline["workspace"]) / "generated" / "pairs.jsonl"
    run(["--config", pipeline["config"], "generate", "--workspace", pipeline["workspace"]])  # cold
    run(["--config", pipeline["config"], "generate", "--workspace", pipeline["workspace"]])
    warm1 = pairs_path.read_bytes()
    run(["--config", pipeline["config"], "generate", "--workspace", pipeline["workspace"]])
    warm2 = pairs_path.read_bytes()
    assert warm1 == warm2


def test_generate_emits_status_histogram(pipeline, capsys):
    run(["--config", pipeline["config"], "prepare", "--workspace", pipeline["workspace"]])
    run(["--config", pipeline["config"], "generate", "--workspace", pipeline["workspace"]])
    out = capsys.readouterr().out
    assert "candidate:" in out
    manifest = stores.read_manifest(Path(pipeline["workspace"]) / "generated")
    assert sum(manifest["status_histogram"].values()) == manifest["pairs"]


# -------------------------------------------------------------------- build

def _run_full(pipeline, workspace: str) -> Path:
    assert run(["--config", pipeline["config"], "prepare", "--workspace", workspace]) == 0
    assert run(["--config", pipeline["config"], "generate", "--workspace", workspace]) == 0
    assert run(["--config", pipeline["config"], "build", "--workspace", workspace]) == 0
    return Path(workspace) / "dataset"


def test_build_outputs_tsvs_and_stats(pipeline):
    out = _run_full(pipeline, pipeline["workspace"])
    assert (out / "train.tsv").exists()
    assert (out / "test.tsv").exists()
    stats_text = (out / "stats.txt").read_text(encoding="utf-8")
    assert "paraphrase" in stats_text and "# config=" in stats_text
    train = import_tsv(out / "train.tsv")
    counts = {p.origin for p in train.pairs}
    assert counts == {"backtranslation", "consecutive", "random"}


def test_build_deterministic_across_runs(pipeline):
    out1 = _run_full(pipeline, str(Path(pipeline["tmp"]) / "ws1"))
    out2 = _run_full(pipeline, str(Path(pipeline["tmp"]) / "ws2"))
    for name in ("train.tsv", "test.tsv", "stats.txt"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes(), f"{name} differs"


def test_build_stats_recomputable_from_tsv(pipeline):
    out = _run_full(pipeline, pipeline["workspace"])
    manifest = stores.read_manifest(out)
    stop = default_stopwords()
    for name in ("train", "test"):
        split = import_tsv(out / f"{name}.tsv")
        stats = split_stats(split, stop)
        assert stats.n_paraphrase == manifest["counts"][name]["paraphrase"]
        assert stats.n_non_paraphrase == manifest["counts"][name]["non_paraphrase"]
        assert stats.n_total == manifest["counts"][name]["total"]


def test_build_uses_labels_file_when_given(pipeline, tmp_path):
    run(["--config", pipeline["config"], "prepare", "--workspace", pipeline["workspace"]])
    run(["--config", pipeline["config"], "generate", "--workspace", pipeline["workspace"]])
    labels = [
        {"pair_id": "lab-1", "sentence_1": "մեկ աղբյուր", "sentence_2": "մեկ թեկնածու", "label": "paraphrase"},
        {
            "pair_id": "lab-2",
            "sentence_1": "երկու աղբյուր",
            "sentence_2": "երկու թեկնածու",
            "label": "non_paraphrase",
            "near_paraphrase": True,
        },
    ]
    labels_path = tmp_path / "labels.jsonl"
    labels_path.write_text("\n".join(json.dumps(l, ensure_ascii=False) for l in labels), encoding="utf-8")
    code = run(
        ["--config", pipeline["config"], "build", "--workspace", pipeline["workspace"], "--labels", str(labels_path)]
    )
    assert code == 0
    train = import_tsv(Path(pipeline["workspace"]) / "dataset" / "train.tsv")
    test = import_tsv(Path(pipeline["workspace"]) / "dataset" / "test.tsv")
    labeled_ids = {p.pair_id for p in train.pairs} | {p.pair_id for p in test.pairs}
    assert {"lab-1", "lab-2"} <= labeled_ids


# --------------------------------------------------------------------- eval

def test_eval_gold_equals_predictions(pipeline, tmp_path, capsys):
    out = _run_full(pipeline, pipeline["workspace"])
    gold = import_tsv(out / "test.tsv")
    preds_path = tmp_path / "preds.tsv"
    lines = [f"{p.pair_id}\t{1 if p.label == 'paraphrase' else 0}" for p in gold.pairs]
    preds_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    code = run(["--config", pipeline["config"], "eval", str(out / "test.tsv"), str(preds_path)])
    assert code == 0
    text = capsys.readouterr().out
    assert "f1         1.000" in text
    assert "accuracy   1.000" in text


def test_eval_baseline_one_step(pipeline, capsys):
    out = _run_full(pipeline, pipeline["workspace"])
    code = run(
        [
            "--config",
            pipeline["config"],
            "eval",
            str(out / "test.tsv"),
            "--baseline",
            "jaccard",
            "--threshold",
            "0.5",
        ]
    )
    assert code == 0
    assert "metric" in capsys.readouterr().out


def test_eval_baseline_tuned_on_train(pipeline, capsys):
    out = _run_full(pipeline, pipeline["workspace"])
    code = run(
        [
            "--config",
            pipeline["config"],
            "eval",
            str(out / "test.tsv"),
            "--baseline",
            "jaccard",
            "--train",
            str(out / "train.tsv"),
        ]
    )
    assert code == 0
    assert "tuned threshold" in capsys.readouterr().out


def test_eval_report_json_written(pipeline, tmp_path):
    out = _run_full(pipeline, pipeline["workspace"])
    report_path = tmp_path / "report.json"
    run(
        [
            "--config",
            pipeline["config"],
            "eval",
            str(out / "test.tsv"),
            "--baseline",
            "jaccard",
            "--threshold",
            "0.3",
            "--out",
            str(report_path),
        ]
    )
    report = json.loads(report_path.read_text(encoding="utf-8"))
    assert set(report["metrics"]) == {"f1", "accuracy", "recall", "precision"}
    assert report["config_hash"]


def test_eval_all_positive_on_published_shape(tmp_path, capsys):
    # 1021 paraphrase + 661 non-paraphrase gold; all-1 predictions -> F1 2042/2703.
    gold_path = tmp_path / "gold.tsv"
    header = "pair_id\tsentence_1\tsentence_2\tlabel\tnear_paraphrase\torigin"
    rows = [header]
    for i in range(1021):
        rows.append(f"pp{i:05d}\tձախ {i}\tաջ {i}\t1\t0\tbacktranslation")
    for i in range(661):
        rows.append(f"nn{i:05d}\tձախ ն{i}\tաջ ն{i}\t0\t0\trandom")
    gold_path.write_text("\n".join(rows) + "\n", encoding="utf-8")
    preds_path = tmp_path / "allpos.tsv"
    preds_path.write_text(
        "\n".join(f"pp{i:05d}\t1" for i in range(1021))
        + "\n"
        + "\n".join(f"nn{i:05d}\t1" for i in range(661))
        + "\n",
        encoding="utf-8",
    )
    cfg = write_config(tmp_path / "run.yaml", eval={"n_resamples": 100})
    code = run(["--config", str(cfg), "eval", str(gold_path), str(preds_path)])
    assert code == 0
    out = capsys.readouterr().out
    assert "f1         0.755" in out
    assert "recall     1.000" in out


def test_eval_coverage_error(pipeline, tmp_path, capsys):
    out = _run_full(pipeline, pipeline["workspace"])
    preds_path = tmp_path / "short.tsv"
    preds_path.write_text("only-one-id\t1\n", encoding="utf-8")
    code = run(["--config", pipeline["config"], "eval", str(out / "test.tsv"), str(preds_path)])
    assert code == 1


# ----------------------------------------------------------------- annotate

def _free_port() -> int:
    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        return sock.getsockname()[1]


def test_annotate_serves_guideline(pipeline):
    run(["--config", pipeline["config"], "prepare", "--workspace", pipeline["workspace"]])
    run(["--config", pipeline["config"], "generate", "--workspace", pipeline["workspace"]])
    port = _free_port()
    proc = subprocess.Popen(
        [
            sys.executable,
            "-m",
            "paracorp.cli",
            "--config",
            pipeline["config"],
            "annotate",
            "--workspace",
            pipeline["workspace"],
            "--port",
            str(port),
            "--enqueue",
            "--annotators",
            "a,b",
        ],
        stdout=subprocess.PIPE,
        stderr=subprocess.STDOUT,
    )
    try:
        deadline = time.time() + 30
        last_error = None
        while time.time() < deadline:
            try:
                resp = requests.get(f"http://127.0.0.1:{port}/api/guideline", timeout=2)
                assert resp.status_code == 200
                assert resp.json()["degrees"]
                break
            except requests.ConnectionError as exc:
                last_error = exc
                time.sleep(0.3)
        else:
            pytest.fail(f"service never came up: {last_error}")
        task = requests.get(f"http://127.0.0.1:{port}/api/tasks/next", params={"annotator": "a"}, timeout=2)
        assert task.json()["task"] is not None
    finally:
        proc.terminate()
        proc.wait(timeout=10)


def test_annotate_port_in_use_fails(pipeline):
    run(["--config", pipeline["config"], "prepare", "--workspace", pipeline["workspace"]])
    run(["--config", pipeline["config"], "generate", "--workspace", pipeline["workspace"]])
    blocker = socket.socket()
    blocker.bind(("127.0.0.1", 0))
    blocker.listen(1)
    port = blocker.getsockname()[1]
    try:
        proc = subprocess.run(
            [
                sys.executable,
                "-m",
                "paracorp.cli",
                "--config",
                pipeline["config"],
                "annotate",
                "--workspace",
                pipeline["workspace"],
                "--port",
                str(port),
            ],
            capture_output=True,
            text=True,
            timeout=30,
        )
    finally:
        blocker.close()
    assert proc.returncode != 0


def test_annotate_restart_replays_to_identical_state(pipeline):
    # The CLI wires the service to <workspace>/annotation-data; a restart
    # replays that log. Exercised via the service against the same dir.
    from paracorp.annotation.service import AnnotationService

    data_dir = Path(pipeline["workspace"]) / "annotation-data"
    svc = AnnotationService(data_dir=data_dir)
    svc.enqueue([("p1", "ա", "բ"), ("p2", "գ", "դ")], ["x", "y"], 2, seed=1)
    svc.submit("x", "p1", 5)
    svc.submit("y", "p1", 2)
    digest = svc.state_digest()
    svc.close()  # simulates the process dying

    reborn = AnnotationService(data_dir=data_dir)
    assert reborn.state_digest() == digest
    assert reborn.disagreements() == ["p1"]
    reborn.close()
