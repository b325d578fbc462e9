import collections

import pytest

from paracorp.annotation.service import (
    METHOD_ADJUDICATED,
    METHOD_UNANIMOUS,
    TASK_DONE,
    AnnotationService,
    ServiceError,
    degree_to_label,
)
from paracorp.dataset.splits import LABEL_NON_PARAPHRASE, LABEL_PARAPHRASE


def pairs(n: int, prefix: str = "p"):
    return [(f"{prefix}{i:04d}", f"աղբյուր {prefix}{i}", f"թեկնածու {prefix}{i}") for i in range(n)]


def service_with(n_pairs: int, annotators, per_pair: int, seed: int = 1) -> AnnotationService:
    svc = AnnotationService()
    svc.enqueue(pairs(n_pairs), annotators, per_pair, seed=seed)
    return svc


# ----------------------------------------------------------- degree mapping

def test_degree_mapping_table():
    assert degree_to_label(5) == LABEL_PARAPHRASE
    assert degree_to_label(4) == LABEL_PARAPHRASE
    assert degree_to_label(3) == LABEL_NON_PARAPHRASE
    assert degree_to_label(0) == LABEL_NON_PARAPHRASE


def test_degree_mapping_monotone():
    threshold_seen = False
    for d in range(6):
        label = degree_to_label(d)
        if label == LABEL_PARAPHRASE:
            threshold_seen = True
        if threshold_seen:
            assert label == LABEL_PARAPHRASE


def test_degree_mapping_rejects_out_of_range():
    for bad in (-1, 6, 2.5, "4", None, True):
        with pytest.raises(ServiceError):
            degree_to_label(bad)


# ----------------------------------------------------------------- enqueue

def test_enqueue_full_coverage():
    svc = service_with(4, ["a", "b"], per_pair=2)
    assert len(svc.tasks) == 8
    per_annotator = collections.Counter(a for _, a in svc.tasks)
    assert per_annotator == {"a": 4, "b": 4}


def test_enqueue_balanced_single_coverage():
    svc = service_with(4, ["a", "b"], per_pair=1)
    per_annotator = collections.Counter(a for _, a in svc.tasks)
    assert per_annotator == {"a": 2, "b": 2}


def test_enqueue_balance_within_one(rng):
    for seed in range(20):
        svc = service_with(11, ["a", "b", "c"], per_pair=2, seed=seed)
        loads = collections.Counter(a for _, a in svc.tasks)
        assert max(loads.values()) - min(loads.values()) <= 1


def test_enqueue_infeasible_count():
    with pytest.raises(ServiceError):
        service_with(2, ["a", "b"], per_pair=3)


def test_enqueue_duplicate_pair_rejected():
    svc = service_with(2, ["a"], per_pair=1)
    with pytest.raises(ServiceError):
        svc.enqueue(pairs(1), ["a"], 1, seed=2)


def test_enqueue_seed_reproducible():
    a = service_with(9, ["x", "y", "z"], per_pair=1, seed=42)
    b = service_with(9, ["x", "y", "z"], per_pair=1, seed=42)
    assert {k: t.annotator_id for k, t in a.tasks.items()} == {k: t.annotator_id for k, t in b.tasks.items()}


# ------------------------------------------------------------------- submit

def test_submit_marks_task_done():
    svc = service_with(1, ["a"], 1)
    task = svc.next_task("a")
    record = svc.submit("a", task.pair_id, 5)
    assert svc.tasks[(task.pair_id, "a")].state == TASK_DONE
    assert record.revision == 1
    assert svc.next_task("a") is None


def test_submit_without_task_rejected():
    svc = service_with(1, ["a"], 1)
    with pytest.raises(ServiceError) as err:
        svc.submit("b", "p0000", 5)
    assert err.value.code == "no_task"


def test_submit_duplicate_needs_supersede():
    svc = service_with(1, ["a"], 1)
    svc.submit("a", "p0000", 5)
    with pytest.raises(ServiceError) as err:
        svc.submit("a", "p0000", 4)
    assert err.value.code == "task_already_done"
    superseded = svc.submit("a", "p0000", 3, supersede=True)
    assert superseded.revision == 2
    assert svc.latest_records("p0000")["a"].sts_degree == 3


def test_submit_near_flag_needs_low_degree():
    svc = service_with(1, ["a"], 1)
    with pytest.raises(ServiceError) as err:
        svc.submit("a", "p0000", 5, near_paraphrase=True)
    assert err.value.code == "near_flag_invalid"
    svc.submit("a", "p0000", 3, near_paraphrase=True)


def test_conflicting_submissions_enter_disagreement_queue():
    svc = service_with(1, ["a", "b"], 2)
    svc.submit("a", "p0000", 5)
    assert svc.disagreements() == []  # b has not submitted yet
    svc.submit("b", "p0000", 2)
    assert svc.disagreements() == ["p0000"]


# ------------------------------------------------------------ disagreements

def test_same_mapped_label_not_a_disagreement():
    svc = service_with(1, ["a", "b"], 2)
    svc.submit("a", "p0000", 5)
    svc.submit("b", "p0000", 4)  # both map to paraphrase
    assert svc.disagreements() == []


def test_mapping_conflict_listed():
    svc = service_with(1, ["a", "b"], 2)
    svc.submit("a", "p0000", 5)
    svc.submit("b", "p0000", 3)
    assert svc.disagreements() == ["p0000"]


def test_adjudicated_pair_not_listed():
    svc = service_with(1, ["a", "b"], 2)
    svc.submit("a", "p0000", 5)
    svc.submit("b", "p0000", 3)
    svc.adjudicate("c", "p0000", LABEL_PARAPHRASE)
    assert svc.disagreements() == []


# -------------------------------------------------------------- adjudication

def test_adjudicate_finalizes():
    svc = service_with(1, ["a", "b"], 2)
    svc.submit("a", "p0000", 5)
    svc.submit("b", "p0000", 2)
    adj = svc.adjudicate("c", "p0000", LABEL_NON_PARAPHRASE, near_paraphrase=True)
    assert adj.method == METHOD_ADJUDICATED
    final = svc.final_label("p0000")
    assert final.final_label == LABEL_NON_PARAPHRASE
    assert final.near_paraphrase is True


def test_adjudicator_identity_conflict():
    svc = service_with(1, ["a", "b"], 2)
    svc.submit("a", "p0000", 5)
    svc.submit("b", "p0000", 2)
    with pytest.raises(ServiceError) as err:
        svc.adjudicate("a", "p0000", LABEL_PARAPHRASE)
    assert err.value.code == "adjudicator_conflict"


def test_adjudicating_unanimous_pair_rejected():
    svc = service_with(1, ["a", "b"], 2)
    svc.submit("a", "p0000", 5)
    svc.submit("b", "p0000", 4)
    with pytest.raises(ServiceError) as err:
        svc.adjudicate("c", "p0000", LABEL_NON_PARAPHRASE)
    assert err.value.code == "not_in_disagreement"


def test_adjudicating_open_pair_rejected():
    svc = service_with(1, ["a", "b"], 2)
    svc.submit("a", "p0000", 5)
    with pytest.raises(ServiceError) as err:
        svc.adjudicate("c", "p0000", LABEL_PARAPHRASE)
    assert err.value.code == "not_in_disagreement"


def test_supersede_blocked_after_adjudication():
    svc = service_with(1, ["a", "b"], 2)
    svc.submit("a", "p0000", 5)
    svc.submit("b", "p0000", 2)
    svc.adjudicate("c", "p0000", LABEL_PARAPHRASE)
    with pytest.raises(ServiceError) as err:
        svc.submit("a", "p0000", 2, supersede=True)
    assert err.value.code == "pair_finalized"


# ---------------------------------------------------------------- agreement

def test_agreement_identical_vectors():
    svc = service_with(6, ["a", "b"], 2)
    for pid, _, _ in pairs(6):
        svc.submit("a", pid, 5)
        svc.submit("b", pid, 4)
    (report,) = svc.agreement_report()
    assert report.kappa == 1.0
    assert report.n_items == 6


def test_agreement_frozen_kappa_example():
    # Degrees chosen so mapped labels reproduce the hand-computed
    # contingency table with p_o=0.8, p_e=0.5, kappa=0.6.
    a_vec = [1, 1, 1, 1, 0, 0, 0, 0, 1, 0]
    b_vec = [1, 1, 1, 1, 0, 0, 0, 0, 0, 1]
    svc = service_with(10, ["a", "b"], 2)
    for i, (pid, _, _) in enumerate(pairs(10)):
        svc.submit("a", pid, 5 if a_vec[i] else 0)
        svc.submit("b", pid, 4 if b_vec[i] else 2)
    (report,) = svc.agreement_report()
    assert report.observed_agreement == pytest.approx(0.8)
    assert report.expected_agreement == pytest.approx(0.5)
    assert report.kappa == pytest.approx(0.6)


def test_agreement_three_annotators_three_reports():
    svc = service_with(6, ["a", "b", "c"], 3)
    for pid, _, _ in pairs(6):
        svc.submit("a", pid, 5)
        svc.submit("b", pid, 4)
        svc.submit("c", pid, 5)
    reports = svc.agreement_report()
    assert len(reports) == 3
    assert {(r.annotator_a, r.annotator_b) for r in reports} == {("a", "b"), ("a", "c"), ("b", "c")}


def test_agreement_skips_pairs_without_shared_items():
    svc = AnnotationService()
    svc.enqueue(pairs(2), ["a"], 1, seed=1)
    svc.enqueue(pairs(2, prefix="q"), ["b"], 1, seed=1)
    svc.submit("a", "p0000", 5)
    svc.submit("b", "q0000", 5)
    assert svc.agreement_report() == []


# ------------------------------------------------------------------- export

def test_export_all_unanimous():
    svc = service_with(3, ["a", "b"], 2)
    for pid, _, _ in pairs(3):
        svc.submit("a", pid, 5)
        svc.submit("b", pid, 4)
    exported = svc.export_adjudicated()
    assert len(exported) == 3
    assert all(p.label == LABEL_PARAPHRASE for p in exported)
    assert all(svc.final_label(p.pair_id).method == METHOD_UNANIMOUS for p in exported)


def test_export_blocks_on_unresolved():
    svc = service_with(2, ["a", "b"], 2)
    svc.submit("a", "p0000", 5)
    svc.submit("b", "p0000", 2)  # disagreement left unresolved
    svc.submit("a", "p0001", 5)
    svc.submit("b", "p0001", 5)
    with pytest.raises(ServiceError) as err:
        svc.export_adjudicated()
    assert err.value.code == "unfinalized_pairs"
    assert "p0000" in str(err.value)


def test_export_preserves_near_flags():
    svc = service_with(3, ["a", "b"], 2)
    svc.submit("a", "p0000", 3, near_paraphrase=True)
    svc.submit("b", "p0000", 2, near_paraphrase=False)
    svc.submit("a", "p0001", 5)
    svc.submit("b", "p0001", 2)
    svc.adjudicate("c", "p0001", LABEL_NON_PARAPHRASE, near_paraphrase=True)
    svc.submit("a", "p0002", 5)
    svc.submit("b", "p0002", 4)
    by_id = {p.pair_id: p for p in svc.export_adjudicated()}
    assert by_id["p0000"].label == LABEL_NON_PARAPHRASE
    assert by_id["p0000"].near_paraphrase is True  # any annotator flag survives
    assert by_id["p0001"].near_paraphrase is True  # adjudicator flag
    assert by_id["p0002"].near_paraphrase is False


# -------------------------------------------------------------- persistence

def test_replay_reconstructs_state(tmp_path):
    data_dir = tmp_path / "svc"
    svc = AnnotationService(data_dir=data_dir)
    svc.enqueue(pairs(4), ["a", "b"], 2, seed=3)
    svc.submit("a", "p0000", 5)
    svc.submit("b", "p0000", 2)
    svc.adjudicate("c", "p0000", LABEL_PARAPHRASE)
    svc.submit("a", "p0001", 4)
    digest = svc.state_digest()
    svc.close()

    recovered = AnnotationService(data_dir=data_dir)
    assert recovered.state_digest() == digest
    recovered.close()


def test_snapshot_plus_tail_replay(tmp_path):
    data_dir = tmp_path / "svc"
    svc = AnnotationService(data_dir=data_dir, snapshot_every=2)
    svc.enqueue(pairs(3), ["a"], 1, seed=3)
    svc.submit("a", "p0000", 5)
    svc.submit("a", "p0001", 2)
    svc.submit("a", "p0002", 4)
    digest = svc.state_digest()
    svc.close()
    assert (data_dir / "snapshot.json").exists()

    recovered = AnnotationService(data_dir=data_dir)
    assert recovered.state_digest() == digest
    recovered.close()


def test_in_memory_replay_equivalence():
    svc = service_with(5, ["a", "b"], 2)
    svc.submit("a", "p0000", 5)
    svc.submit("b", "p0000", 1)
    svc.adjudicate("z", "p0000", LABEL_NON_PARAPHRASE, near_paraphrase=True)
    twin = svc.replay_events()
    assert twin.state_digest() == svc.state_digest()


# -------------------------------------------------- unanimity xor adjudication

def test_finalized_pairs_have_exactly_one_source_of_truth():
    svc = service_with(4, ["a", "b"], 2)
    degrees = [(5, 4), (5, 2), (1, 0), (4, 3)]
    for (pid, _, _), (da, db) in zip(pairs(4), degrees):
        svc.submit("a", pid, da)
        svc.submit("b", pid, db)
    for pid in svc.disagreements():
        svc.adjudicate("c", pid, LABEL_NON_PARAPHRASE)
    for pid, _, _ in pairs(4):
        final = svc.final_label(pid)
        assert final is not None
        latest = svc.latest_records(pid)
        unanimous = len({degree_to_label(r.sts_degree) for r in latest.values()}) == 1
        adjudicated = pid in svc.adjudications
        assert unanimous != adjudicated  # exactly one path to finality
