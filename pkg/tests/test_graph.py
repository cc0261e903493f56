import json

import pytest
from hypothesis import given, settings, strategies as st

from qbaglab.errors import CycleError, StrengthRangeError, UnknownArgumentError
from qbaglab.graph import (
    Qbag,
    can_reach,
    detach_incoming,
    dump_graph,
    graph_from_json,
    graph_to_json,
    influencers,
    load_graph,
    qbag,
    restrict,
    set_initial_strength,
    topological_order,
    validate,
)
from qbaglab.principles import random_qbag
import random


def small_graph():
    return qbag(
        {"a": 0.3, "b": 0.8, "c": 0.1, "d": 0.55},
        attacks=[("b", "a"), ("d", "b")],
        supports=[("c", "a")],
    )


def test_builder_basics():
    g = small_graph()
    assert g.arguments == frozenset("abcd")
    assert ("b", "a") in g.attacks and ("c", "a") in g.supports
    assert g.initial_strength["d"] == 0.55


def test_parents_sorted_with_polarity():
    g = small_graph()
    assert g.parents_of("a") == [("b", -1), ("c", 1)]
    assert g.parents_of("d") == []


def test_validate_flags_strength_out_of_range():
    for bad in (1.5, -0.1):
        report = validate(qbag({"a": bad}))
        assert not report.ok
        assert any(v.rule == "strength-range" for v in report.violations)


def test_validate_flags_unknown_edge_endpoint():
    report = validate(qbag({"a": 0.5}, attacks=[("a", "z")]))
    assert not report.ok
    assert any("z" in str(v.elements) for v in report.violations)


def test_validate_flags_attack_support_overlap():
    report = validate(
        qbag({"a": 0.5, "b": 0.5}, attacks=[("a", "b")], supports=[("a", "b")]))
    assert not report.ok


def test_validate_reports_all_breaches_at_once():
    g = qbag({"a": 2.0, "b": 0.5}, attacks=[("a", "b"), ("b", "z")])
    report = validate(g)
    assert len(report.violations) >= 2


def test_cycle_detected_by_validate_and_toposort():
    g = Qbag(
        arguments=frozenset({"a", "b"}),
        attacks=frozenset({("a", "b"), ("b", "a")}),
        supports=frozenset(),
        initial_strength={"a": 0.5, "b": 0.5},
    )
    report = validate(g)
    assert not report.ok
    assert any("cycle" in m for m in report.messages())
    with pytest.raises(CycleError) as err:
        topological_order(g)
    assert "cycle: [" in str(err.value)


def test_topological_order_is_lexicographic_kahn():
    g = small_graph()
    order = topological_order(g)
    pos = {a: i for i, a in enumerate(order)}
    for u, v in g.edges():
        assert pos[u] < pos[v]
    # c and d are both sources; the tie breaks alphabetically
    assert order[0] == "c" and order[1] == "d"


def test_restrict_keeps_induced_edges_only():
    g = small_graph()
    h = restrict(g, {"a", "b", "c"})
    assert h.arguments == frozenset("abc")
    assert h.attacks == frozenset({("b", "a")})
    assert h.supports == frozenset({("c", "a")})
    # original untouched
    assert ("d", "b") in g.attacks


def test_detach_incoming_cuts_only_outside_edges():
    g = small_graph()
    h = detach_incoming(g, {"b"})
    assert ("d", "b") not in h.attacks
    assert ("b", "a") in h.attacks
    assert h.arguments == g.arguments


def test_set_initial_strength_returns_new_graph():
    g = small_graph()
    h = set_initial_strength(g, "a", 0.9)
    assert h.initial_strength["a"] == 0.9
    assert g.initial_strength["a"] == 0.3
    with pytest.raises(StrengthRangeError):
        set_initial_strength(g, "a", 1.1)
    with pytest.raises(UnknownArgumentError):
        set_initial_strength(g, "zz", 0.5)


def test_reachability_includes_self():
    g = small_graph()
    assert can_reach(g, "a", "a")
    assert can_reach(g, "d", "a")
    assert not can_reach(g, "a", "d")


def test_influencers_excludes_topic_by_default():
    g = small_graph()
    assert influencers(g, "a") == {"b", "c", "d"}
    assert influencers(g, "a", include_topic=True) == {"a", "b", "c", "d"}
    assert influencers(g, "d") == set()


def test_json_round_trip_bit_equal():
    g = small_graph()
    h = graph_from_json(graph_to_json(g))
    assert h == g
    for a in g.arguments:
        assert h.initial_strength[a] == g.initial_strength[a]


def test_json_keeps_full_float_precision():
    g = qbag({"a": 0.1 + 0.2}, attacks=[], supports=[])
    h = graph_from_json(graph_to_json(g))
    assert h.initial_strength["a"] == 0.1 + 0.2


def test_dump_and_load_file(tmp_path):
    g = small_graph()
    path = tmp_path / "g.json"
    dump_graph(g, path)
    assert load_graph(path) == g


def test_malformed_payload_rejected():
    with pytest.raises(Exception):
        graph_from_json(json.dumps({"attacks": []}))


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10_000))
def test_random_graphs_round_trip_and_validate(seed):
    rng = random.Random(seed)
    g = random_qbag(rng, n=rng.randint(2, 7), edge_prob=0.4,
                    grid=tuple(i / 10 for i in range(11)))
    assert validate(g).ok
    assert graph_from_json(graph_to_json(g)) == g
    order = topological_order(g)
    assert sorted(order) == sorted(g.arguments)
