import random

import pytest
from hypothesis import given, settings, strategies as st

from qbaglab.contributions import removal
from qbaglab.errors import PartitionSpaceError
from qbaglab.fixtures import FIXTURES, fixture
from qbaglab.graph import can_reach, qbag
from qbaglab.principles import (
    EXPECTED_VERDICTS,
    SET_FUNCTION_IDS,
    TABLE_PRINCIPLES,
    EvalContext,
    SearchConfig,
    check_consistency,
    check_contribution_existence,
    check_counterfactuality,
    check_directionality,
    check_generalization,
    check_monotonicity,
    check_quantitative_contribution_existence,
    enumerate_partitions,
    principle_from_name,
    random_corpus,
    random_qbag,
    run_check,
    search_counterexample,
    topics_of,
    violation_fixture,
)
from qbaglab.semantics import PRESET_NAMES, PRESETS
from qbaglab.verdicts import Principle, Status

QE = PRESETS["QE"]

BELL = {0: 1, 1: 1, 2: 2, 3: 5, 4: 15, 5: 52}


def test_partition_counts_match_bell_numbers():
    for n, want in BELL.items():
        base = [chr(ord("b") + i) for i in range(n)]
        assert sum(1 for _ in enumerate_partitions(base)) == want


def test_partition_enumeration_order_is_restricted_growth():
    got = [tuple(tuple(sorted(b)) for b in p)
           for p in enumerate_partitions(["b", "c", "d"])]
    assert got[0] == (("b", "c", "d"),)
    assert got[1] == (("b", "c"), ("d",))
    assert got[-1] == (("b",), ("c",), ("d",))
    assert len(got) == len(set(got)) == 5


def test_partition_space_guard():
    with pytest.raises(PartitionSpaceError):
        list(enumerate_partitions([str(i) for i in range(11)]))


def test_contribution_existence_gradient_verdicts_on_designated_graph():
    g = fixture("fig3")
    for name in ("DFQuAD", "SD-DFQuAD", "EBT"):
        v = check_contribution_existence("gradient-max", g, PRESETS[name], "a")
        assert v.status is Status.VIOLATED
        assert v.witness.values["margin"] > 1e-9
    for name in ("QE", "EB"):
        v = check_contribution_existence("gradient-max", g, PRESETS[name], "a")
        assert v.status is Status.SATISFIED


def test_contribution_existence_vacuous_when_sigma_equals_tau():
    g = qbag({"a": 0.4})
    v = check_contribution_existence("removal", g, QE, "a")
    assert v.status is Status.SATISFIED
    assert v.witness is not None and "vacuous" in v.witness.note


def test_quantitative_existence_finds_designated_partition():
    v = check_quantitative_contribution_existence(
        "shapley", fixture("fig4"), QE, "a")
    assert v.status is Status.VIOLATED
    assert v.witness.sets == (("b", "c"), ("d",))


def test_weak_quantitative_existence_uses_reachability_split():
    v = check_quantitative_contribution_existence(
        "removal", fixture("fig3"), QE, "a", mode="Exists")
    assert v.status is Status.SATISFIED
    assert v.witness is not None and "reachability" in v.witness.note


def test_counterfactuality_verdicts():
    v = check_counterfactuality("intrinsic", fixture("figA1"), QE, "a")
    assert v.status is Status.VIOLATED
    v = check_counterfactuality("removal", fixture("figA1"), QE, "a")
    assert v.status is Status.SATISFIED


def test_quantitative_counterfactuality_of_removal_holds():
    for fid in ("fig1a", "fig3", "figA9"):
        v = check_counterfactuality("removal", fixture(fid), QE, "a",
                                    quantitative=True)
        assert v.status is Status.SATISFIED


def test_consistency_witness_on_designated_graph():
    v = check_consistency("removal", fixture("fig6-qe"), QE, "a")
    assert v.status is Status.VIOLATED
    assert v.witness.sets == (("d",), ("f",), ("d", "f"))
    assert v.witness.values["margin"] > 1e-9


def test_monotonicity_witness_on_designated_graph():
    for name in PRESET_NAMES:
        v = check_monotonicity("shapley", fixture("fig7"), PRESETS[name], "a")
        assert v.status is Status.VIOLATED


def test_directionality_satisfied_on_fixture_corpus_for_removal():
    for fid in ("fig1a", "fig3", "fig4", "figA9"):
        g = fixture(fid)
        for a in topics_of(g):
            v = check_directionality("removal", g, QE, a)
            assert v.status is Status.SATISFIED


def test_directionality_checker_catches_planted_fault():
    g = qbag({"a": 0.5, "b": 0.4, "z": 0.9}, attacks=[("b", "a")])
    assert not can_reach(g, "z", "a")

    def leaky(graph, sem, members, topic):
        return 1.0  # pretends every set matters

    v = check_directionality(leaky, g, QE, "a")
    assert v.status is Status.VIOLATED


def test_contribution_existence_checker_catches_planted_fault():
    def dead(graph, sem, members, topic):
        return 0.0

    v = check_contribution_existence(dead, fixture("fig1a"), QE, "a")
    assert v.status is Status.VIOLATED


def test_monotonicity_checker_catches_planted_fault():
    def shrinking(graph, sem, members, topic):
        return -float(len(members))

    v = check_monotonicity(shrinking, fixture("fig1a"), QE, "a")
    assert v.status is Status.VIOLATED


def test_consistency_checker_catches_planted_fault():
    def flipper(graph, sem, members, topic):
        return 1.0 if len(members) == 1 else -1.0

    v = check_consistency(flipper, fixture("fig1a"), QE, "a")
    assert v.status is Status.VIOLATED


def test_generalization_matching_and_mismatched_pairs():
    g = fixture("fig1a")
    ok = check_generalization(("removal", "removal"), g, QE)
    assert ok.status is Status.SATISFIED and ok.checked > 0
    bad = check_generalization(("removal", "shapley"), fixture("fig4"), QE)
    assert bad.status is Status.VIOLATED


def test_run_check_dispatch_and_stability():
    g = fixture("fig1a")
    v = run_check(Principle.STABILITY, "removal", g, QE, "a")
    assert v.status is Status.SATISFIED
    v = run_check(Principle.CONSISTENCY, "removal", fixture("fig6-qe"), QE, "a")
    assert v.status is Status.VIOLATED
    v = run_check(Principle.CTRB_GENERALIZATION, "removal", g, QE, "a")
    assert v.status is Status.SATISFIED


def test_principle_names_accept_aliases():
    assert principle_from_name("ce") is Principle.CONTRIBUTION_EXISTENCE
    assert principle_from_name("qce") is Principle.QUANTITATIVE_CONTRIBUTION_EXISTENCE
    assert principle_from_name("wqce") is Principle.WEAK_QUANTITATIVE_CONTRIBUTION_EXISTENCE
    assert principle_from_name("counterfactuality") is Principle.COUNTERFACTUALITY
    assert principle_from_name("Monotonicity") is Principle.MONOTONICITY
    with pytest.raises(ValueError):
        principle_from_name("nonsense")


def test_expected_verdicts_cover_all_cells_and_designated_fixtures_exist():
    for principle in TABLE_PRINCIPLES:
        for fn in SET_FUNCTION_IDS:
            for name in PRESET_NAMES:
                expected = EXPECTED_VERDICTS[principle][fn][name]
                if not expected:
                    fid, topic = violation_fixture(principle, fn, name)
                    assert fid in FIXTURES
                    assert topic in fixture(fid).arguments


def test_violation_fixture_spot_checks():
    assert violation_fixture(
        Principle.CONSISTENCY, "shapley", "QE") == ("fig6-shapley-qe", "a")
    assert violation_fixture(
        Principle.COUNTERFACTUALITY, "gradient-max", "EB") == ("figA12", "b")
    assert violation_fixture(
        Principle.CONTRIBUTION_EXISTENCE, "gradient-max", "EBT") == ("fig3", "a")


def test_search_counterexample_finds_and_shrinks_deterministically():
    cfg = SearchConfig(random_graphs=80, seed=0, max_exhaustive_args=6)
    first = search_counterexample(Principle.CONSISTENCY, "removal", "QE", cfg)
    second = search_counterexample(Principle.CONSISTENCY, "removal", "QE", cfg)
    assert first.status is Status.VIOLATED
    assert first.witness is not None and first.witness.graph is not None
    assert first.witness.graph == second.witness.graph
    # shrunk witness graphs stay small enough to read
    assert len(first.witness.graph.arguments) <= 5


def test_search_counterexample_reports_inconclusive_when_clean():
    cfg = SearchConfig(random_graphs=10, seed=2, max_exhaustive_args=4)
    v = search_counterexample(Principle.DIRECTIONALITY, "removal", "QE", cfg)
    assert v.status is Status.INCONCLUSIVE
    assert "no violation" in v.witness.note


def test_eval_context_memoizes_sigma_calls():
    g = fixture("fig1a")
    ctx = EvalContext(g, QE)
    before = ctx.cache.computed
    ctx.set_value("removal", ("d",), "a")
    mid = ctx.cache.computed
    ctx.set_value("removal", ("d",), "a")
    assert ctx.cache.computed == mid > before - 1


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 10_000), p=st.sampled_from([0.2, 0.4, 0.6]))
def test_random_qbag_is_well_formed(seed, p):
    rng = random.Random(seed)
    grid = tuple(i / 10 for i in range(11))
    n = rng.randint(2, 6)
    g = random_qbag(rng, n=n, edge_prob=p, grid=grid)
    assert len(g.arguments) == n
    assert all(v in grid for v in g.initial_strength.values())
    assert not (g.attacks & g.supports)
    from qbaglab.graph import validate

    assert validate(g).ok


def test_random_corpus_is_seed_stable():
    cfg = SearchConfig(random_graphs=12, seed=9)
    a = random_corpus(cfg)
    b = random_corpus(cfg)
    assert a == b
    assert len(a) == 12
