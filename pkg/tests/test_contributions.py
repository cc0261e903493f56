import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from qbaglab.contributions import (
    DEFAULT_BUDGET,
    EvaluationCache,
    FUNCTION_IDS,
    Partition,
    Psi,
    SetContributor,
    apply_set_function,
    gradient,
    intrinsic_removal,
    partition_shapley,
    pctrb_shapley,
    removal,
    sctrb_gradient,
    sctrb_removal,
    sctrb_shapley,
    shapley,
    sign_map,
    single_contribution,
    single_ctrb,
    SingleKind,
)
from qbaglab.errors import (
    BudgetError,
    ContributorError,
    TopicInSetError,
    UnknownArgumentError,
)
from qbaglab.fixtures import fixture
from qbaglab.graph import qbag
from qbaglab.principles import random_qbag
from qbaglab.semantics import PRESET_NAMES, PRESETS, evaluate

QE = PRESETS["QE"]


def test_fig1a_removal_values():
    g = fixture("fig1a")
    cache = EvaluationCache(g, QE)
    assert removal(g, QE, ("d",), "a", cache=cache).value == -0.012530465952907854
    assert removal(g, QE, ("f",), "a", cache=cache).value == -0.011009024857438043
    assert removal(g, QE, ("d", "f"), "a", cache=cache).value == 0.008610357524313828


def test_table4_row_values():
    g = fixture("table4")
    sem = PRESETS["DFQuAD"]
    cache = EvaluationCache(g, sem)
    assert abs(removal(g, sem, ("NOV", "IMP"), "D", cache=cache).value - 0.045) < 5e-4
    assert abs(shapley(g, sem, ("NOV", "IMP"), "D", cache=cache).value - 0.0475) <= 1e-12
    assert gradient(g, sem, ("NOV", "IMP"), "D", psi=Psi.MAX).value == 0.2


def test_empty_set_contributes_zero_for_removal_style():
    g = fixture("fig1a")
    assert removal(g, QE, (), "a").value == 0.0
    assert intrinsic_removal(g, QE, (), "a").value == 0.0
    assert shapley(g, QE, (), "a").value == 0.0


def test_empty_set_rejected_for_gradient():
    with pytest.raises(ContributorError):
        gradient(fixture("fig1a"), QE, (), "a")


def test_topic_inside_set_rejected():
    g = fixture("fig1a")
    with pytest.raises(TopicInSetError):
        removal(g, QE, ("a", "b"), "a")
    with pytest.raises(TopicInSetError):
        SetContributor(members=("a",), topic="a")


def test_unknown_member_rejected():
    with pytest.raises(UnknownArgumentError):
        shapley(fixture("fig1a"), QE, ("zz",), "a")


def test_cache_is_shared_and_idempotent():
    g = fixture("fig1a")
    cache = EvaluationCache(g, QE)
    removal(g, QE, ("d",), "a", cache=cache)
    first = cache.computed
    removal(g, QE, ("d",), "a", cache=cache)
    assert cache.computed == first
    full = cache.sigma_without(frozenset())
    assert full == evaluate(g, QE)


def test_gradient_psi_variants():
    g = fixture("fig1a")
    vmax = gradient(g, QE, ("d", "f"), "a", psi=Psi.MAX).value
    vmin = gradient(g, QE, ("d", "f"), "a", psi=Psi.MIN).value
    vabs = gradient(g, QE, ("d", "f"), "a", psi=Psi.MAXABS).value
    assert vmin <= vmax
    assert vabs == max(abs(vmin), abs(vmax))


def test_shapley_monte_carlo_close_to_exact_and_seeded():
    g = fixture("fig6-qe")
    sem = QE
    exact = shapley(g, sem, ("d",), "a").value
    mc1 = shapley(g, sem, ("d",), "a", monte_carlo=True, samples=4000, seed=3)
    mc2 = shapley(g, sem, ("d",), "a", monte_carlo=True, samples=4000, seed=3)
    assert mc1.value == mc2.value
    assert mc1.std_error is not None and mc1.std_error > 0
    assert abs(mc1.value - exact) <= 5 * mc1.std_error + 1e-9


def test_shapley_budget_guard_and_monte_carlo_escape():
    taus = {f"n{i}": 0.5 for i in range(24)}
    edges = [(f"n{i+1}", f"n{i}") for i in range(23)]
    g = qbag(taus, attacks=edges)
    with pytest.raises(BudgetError) as err:
        shapley(g, QE, ("n5",), "n0")
    assert "Monte-Carlo" in str(err.value)
    mc = shapley(g, QE, ("n5",), "n0", monte_carlo=True, samples=40, seed=0)
    assert math.isfinite(mc.value)


def test_partition_shapley_efficiency_and_block_lookup():
    g = fixture("fig1a")
    blocks = (("b",), ("c", "d"), ("e", "f"))
    cache = EvaluationCache(g, QE)
    total = sum(
        partition_shapley(g, QE, b, blocks, "a", cache=cache).value for b in blocks
    )
    delta = evaluate(g, QE)["a"] - g.initial_strength["a"]
    assert abs(total - delta) <= 1e-9


def test_partition_shapley_validates_blocks():
    g = fixture("fig1a")
    with pytest.raises(ContributorError):
        partition_shapley(g, QE, ("b",), (("b", "c"), ("d",)), "a")  # not a block
    with pytest.raises(ContributorError):
        partition_shapley(g, QE, ("b",), (("b",), ("c",)), "a")  # missing e, f
    with pytest.raises(ContributorError):
        partition_shapley(
            g, QE, ("b",), (("b",), ("b", "c"), ("d", "e", "f")), "a")  # overlap


def test_partition_dataclass_validation():
    with pytest.raises(ContributorError):
        Partition(blocks=(("a",), ("a", "b")))
    p = Partition(blocks=(("b", "c"), ("d",)))
    assert p.blocks


def test_singles_agree_with_singleton_sets_spot():
    g = fixture("fig4")
    for name in ("QE", "EBT"):
        sem = PRESETS[name]
        for x in sorted(g.arguments - {"a"}):
            assert (
                single_contribution(SingleKind.REMOVAL, g, sem, x, "a").value
                == removal(g, sem, (x,), "a").value
            )
            assert (
                single_contribution(SingleKind.SHAPLEY, g, sem, x, "a").value
                == shapley(g, sem, (x,), "a").value
            )
            assert (
                single_contribution(SingleKind.INTRINSIC_REMOVAL, g, sem, x, "a").value
                == intrinsic_removal(g, sem, (x,), "a").value
            )
            assert (
                single_contribution(SingleKind.GRADIENT, g, sem, x, "a").value
                == gradient(g, sem, (x,), "a", psi=Psi.MAX).value
            )


def test_single_ctrb_accepts_camelcase_names():
    g = fixture("fig1a")
    assert (
        single_ctrb("IntrinsicRemoval", g, QE, "d", "a").value
        == single_contribution(SingleKind.INTRINSIC_REMOVAL, g, QE, "d", "a").value
    )
    assert (
        single_ctrb("Removal", g, QE, "d", "a").value
        == single_contribution(SingleKind.REMOVAL, g, QE, "d", "a").value
    )


def test_alias_wrappers_match_core_functions():
    g = fixture("fig1a")
    c = SetContributor(members=("d", "f"), topic="a")
    assert sctrb_removal(g, QE, c).value == removal(g, QE, ("d", "f"), "a").value
    assert sctrb_shapley(g, QE, c).value == shapley(g, QE, ("d", "f"), "a").value
    assert (
        sctrb_gradient(g, QE, c).value
        == gradient(g, QE, ("d", "f"), "a", psi=Psi.MAX).value
    )
    blocks = Partition(blocks=(("b",), ("c", "d"), ("e", "f")))
    assert (
        pctrb_shapley(g, QE, ("b",), blocks, "a").value
        == partition_shapley(g, QE, ("b",), blocks.blocks, "a").value
    )


def test_apply_set_function_covers_all_ids():
    g = fixture("fig1a")
    for fid in FUNCTION_IDS:
        r = apply_set_function(fid, g, QE, ("d",), "a")
        assert math.isfinite(r.value)
        assert r.function
    with pytest.raises(ContributorError):
        apply_set_function("bogus", g, QE, ("d",), "a")


def test_result_metadata():
    g = fixture("fig1a")
    r = removal(g, QE, ("f", "d"), "a")
    assert r.members == ("d", "f")
    assert r.topic == "a"
    assert r.semantics == "QE"
    assert r.evaluations >= 2
    assert r.std_error is None


def test_sign_map_shape_and_base_point():
    g = fixture("fig1a")
    grid = sign_map(g, QE, "a", (("d",), ("f",), ("d", "f")), ("d", "f"), step=0.05)
    assert len(grid.rows) == 441
    assert grid.labels == ("d", "f", "d,f")
    base = [r for r in grid.rows
            if abs(r[0] - 0.55) < 1e-9 and abs(r[1] - 0.6) < 1e-9]
    assert base and base[0][2] == (-1, -1, 1)
    csv_text = grid.to_csv()
    assert csv_text.splitlines()[0] == 'eps1,eps2,d,f,"d,f"'
    assert len(csv_text.splitlines()) == 442


def test_sign_map_unreachable_set_gives_zero_column():
    g = qbag(
        {"a": 0.5, "d": 0.4, "f": 0.6, "z": 0.9},
        attacks=[("d", "a")],
        supports=[("f", "a")],
    )
    grid = sign_map(g, QE, "a", (("z",),), ("d", "f"), step=0.25)
    assert all(r[2] == (0,) for r in grid.rows)


def test_sign_map_rejects_bad_sweep_and_step():
    g = fixture("fig1a")
    with pytest.raises(ContributorError):
        sign_map(g, QE, "a", (("d",),), ("d", "d"), step=0.05)
    with pytest.raises(ContributorError):
        sign_map(g, QE, "a", (("d",),), ("a", "f"), step=0.05)
    with pytest.raises(ContributorError):
        sign_map(g, QE, "a", (("d",),), ("d", "f"), step=0.6)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 8_000), name=st.sampled_from(PRESET_NAMES))
def test_directionality_of_removal_on_random_graphs(seed, name):
    rng = random.Random(seed)
    g = random_qbag(rng, n=rng.randint(2, 6), edge_prob=0.3,
                    grid=tuple(i / 10 for i in range(11)))
    sem = PRESETS[name]
    topic = sorted(g.arguments)[0]
    from qbaglab.graph import can_reach

    unreachable = [x for x in g.arguments - {topic} if not can_reach(g, x, topic)]
    if not unreachable:
        return
    assert removal(g, sem, unreachable, topic).value == 0.0


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 8_000))
def test_shapley_symmetry_of_interchangeable_twins(seed):
    # two parentless attackers with equal strength must earn equal shapley
    rng = random.Random(seed)
    t = rng.choice([i / 10 for i in range(11)])
    g = qbag({"a": 0.6, "x": t, "y": t}, attacks=[("x", "a"), ("y", "a")])
    for name in PRESET_NAMES:
        sem = PRESETS[name]
        sx = shapley(g, sem, ("x",), "a").value
        sy = shapley(g, sem, ("y",), "a").value
        assert abs(sx - sy) <= 1e-12
