"""Principle checkers and the satisfaction/violation matrix.

A checker takes one concrete instance (a graph, a semantics, a topic) and one
contribution function, and decides whether the instance exhibits a violation
of the principle. "Satisfied" therefore always means satisfied-on-instance:
no finite tool can prove a universally quantified principle, it can only fail
to refute it. Violations, on the other hand, are hard facts and ship with a
replayable witness.

The matrix runner crosses the four set functions with the five semantics
presets over the bundled fixture corpus plus a seeded random corpus and
compares the outcome of every (function, semantics, principle) cell against
the expected verdict pattern.
"""

from __future__ import annotations

import itertools
import random
import string
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .contributions import (
    DEFAULT_BUDGET,
    SIGN_TOL,
    EvaluationCache,
    Psi,
    SingleKind,
    shapley,
    sign,
    single_contribution,
)
from .errors import ContributorError, PartitionSpaceError
from .graph import Qbag, can_reach, detach_incoming, influencers, qbag, restrict
from .semantics import (
    PRESET_NAMES,
    Semantics,
    check_stability,
    evaluate,
    evaluate_dual,
    semantics_from_spec,
)
from .verdicts import Principle, PrincipleVerdict, Status, Witness

TOL = SIGN_TOL
MAX_SUBSET_ARGS = 12
MAX_PARTITION_ARGS = 10
MAX_PAIR_ARGS = 7

SET_FUNCTION_IDS = ("removal", "intrinsic", "shapley", "gradient-max")

TABLE_PRINCIPLES = (
    Principle.CONTRIBUTION_EXISTENCE,
    Principle.QUANTITATIVE_CONTRIBUTION_EXISTENCE,
    Principle.DIRECTIONALITY,
    Principle.COUNTERFACTUALITY,
    Principle.QUANTITATIVE_COUNTERFACTUALITY,
    Principle.WEAK_QUANTITATIVE_CONTRIBUTION_EXISTENCE,
    Principle.CONSISTENCY,
    Principle.MONOTONICITY,
)


@dataclass(frozen=True)
class SearchConfig:
    """Knobs for randomized counterexample search and corpus generation."""

    max_exhaustive_args: int = 6
    random_graphs: int = 200
    strength_grid: tuple = (0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0)
    seed: int = 0
    budget: int = DEFAULT_BUDGET
    sample_size: int = 200


class EvalContext:
    """Shared memoization for one (graph, semantics) pair.

    Checkers hammer the same restricted subgraphs and dual passes over and
    over; routing all of them through one context makes the matrix run cheap.
    """

    def __init__(self, g: Qbag, sem: Semantics | str, budget: int = DEFAULT_BUDGET):
        self.g = g
        self.sem = semantics_from_spec(sem)
        self.cache = EvaluationCache(g, self.sem)
        self.budget = budget
        self._duals: dict[str, Mapping] = {}
        self._detached: dict[frozenset, Mapping] = {}
        self._set_values: dict[tuple, float] = {}

    def sigma(self, removed: Iterable[str] = ()) -> Mapping[str, float]:
        return self.cache.sigma_without(removed)

    def dual(self, seed_arg: str) -> Mapping:
        if seed_arg not in self._duals:
            self._duals[seed_arg] = evaluate_dual(self.g, self.sem, seed_arg)
        return self._duals[seed_arg]

    def detached_sigma(self, members: frozenset) -> Mapping[str, float]:
        if members not in self._detached:
            self._detached[members] = evaluate(detach_incoming(self.g, members), self.sem)
        return self._detached[members]

    def set_value(self, fn, members: Iterable[str], topic: str) -> float:
        """Value of the set contribution function `fn` (an id or a callable
        for negative-control experiments) for `members` toward `topic`."""
        members = frozenset(members)
        if callable(fn):
            return fn(self.g, self.sem, members, topic)
        key = (fn, members, topic)
        if key in self._set_values:
            return self._set_values[key]
        if fn == "removal":
            value = self.sigma(())[topic] - self.sigma(members)[topic]
        elif fn == "intrinsic":
            value = self.detached_sigma(members)[topic] - self.sigma(members)[topic]
        elif fn == "shapley":
            value = shapley(
                self.g, self.sem, members, topic, cache=self.cache, budget=self.budget
            ).value
        elif fn.startswith("gradient-"):
            psi = Psi(fn.split("-", 1)[1])
            if not members:
                raise ContributorError("gradient set function undefined on the empty set")
            value = psi.combine([self.dual(x)[topic].deriv for x in sorted(members)])
        else:
            raise ContributorError(f"unknown contribution function id {fn!r}")
        self._set_values[key] = value
        return value


def _ctx(fn_ignored, g, sem, ctx: EvalContext | None) -> EvalContext:
    if ctx is not None:
        return ctx
    return EvalContext(g, sem)


def _subsets(others: Sequence[str], include_empty: bool = False):
    start = 0 if include_empty else 1
    for r in range(start, len(others) + 1):
        yield from itertools.combinations(others, r)


def _sample_subsets(others: Sequence[str], rng: random.Random, count: int):
    """Random non-empty subsets, used when exhaustive enumeration is off the
    table. Duplicates are fine; determinism is what matters."""
    for _ in range(count):
        r = rng.randint(1, len(others))
        yield tuple(sorted(rng.sample(list(others), r)))


def enumerate_partitions(base: Iterable[str]):
    """All set partitions of `base` in restricted-growth-string order."""
    items = sorted(base)
    n = len(items)
    if n == 0:
        yield ()
        return
    if n > MAX_PARTITION_ARGS:
        raise PartitionSpaceError(n, MAX_PARTITION_ARGS)
    rgs = [0] * n
    maxes = [0] * n

    def emit():
        nblocks = max(rgs) + 1
        blocks: list[list[str]] = [[] for _ in range(nblocks)]
        for i, b in enumerate(rgs):
            blocks[b].append(items[i])
        return tuple(frozenset(b) for b in blocks)

    yield emit()
    while True:
        i = n - 1
        while i > 0 and rgs[i] > maxes[i - 1]:
            i -= 1
        if i == 0:
            return
        rgs[i] += 1
        maxes[i] = max(maxes[i - 1], rgs[i])
        for j in range(i + 1, n):
            rgs[j] = 0
            maxes[j] = maxes[i]
        yield emit()


# --- checkers -------------------------------------------------------------------


def check_generalization(
    fn_pair, g: Qbag, sem, *, tol: float = TOL, ctx: EvalContext | None = None
) -> PrincipleVerdict:
    """Does the set function restricted to singletons agree with the matching
    single-argument function for every (contributor, topic) pair?"""
    single_kind, set_fn = fn_pair
    ctx = _ctx(set_fn, g, sem, ctx)
    checked = 0
    for topic in sorted(g.arguments):
        for x in sorted(g.arguments - {topic}):
            single = single_contribution(single_kind, g, ctx.sem, x, topic).value
            joint = ctx.set_value(set_fn, {x}, topic)
            checked += 1
            if abs(single - joint) > tol:
                return PrincipleVerdict(
                    Principle.CTRB_GENERALIZATION,
                    Status.VIOLATED,
                    Witness(
                        topic=topic,
                        sets=((x,),),
                        values={"single": single, "set({x})": joint,
                                "gap": abs(single - joint)},
                        graph=g,
                        note=f"{single_kind} vs {set_fn}",
                    ),
                    checked=checked,
                )
    return PrincipleVerdict(Principle.CTRB_GENERALIZATION, Status.SATISFIED, checked=checked)


def check_contribution_existence(
    fn, g: Qbag, sem, a: str, *, cfg: SearchConfig | None = None,
    tol: float = TOL, ctx: EvalContext | None = None,
) -> PrincipleVerdict:
    """If the topic moved away from its initial strength, some contributor set
    must get a nonzero value."""
    cfg = cfg or SearchConfig()
    ctx = _ctx(fn, g, sem, ctx)
    principle = Principle.CONTRIBUTION_EXISTENCE
    sigma_a = ctx.sigma(())[a]
    delta = sigma_a - g.initial_strength[a]
    if abs(delta) <= tol:
        return PrincipleVerdict(
            principle, Status.SATISFIED, checked=0,
            witness=Witness(topic=a, sets=(), values={"sigma(a)": sigma_a},
                            note="vacuous: final equals initial"),
        )
    others = sorted(g.arguments - {a})
    exhaustive = len(others) <= MAX_SUBSET_ARGS
    pool = (
        _subsets(others)
        if exhaustive
        else _sample_subsets(others, random.Random(cfg.seed), cfg.sample_size)
    )
    checked = 0
    largest = 0.0
    for xs in pool:
        value = ctx.set_value(fn, xs, a)
        checked += 1
        largest = max(largest, abs(value))
        if abs(value) > tol:
            return PrincipleVerdict(
                principle, Status.SATISFIED, checked=checked,
                witness=Witness(topic=a, sets=(xs,),
                                values={"S(X)(a)": value, "sigma(a)-tau(a)": delta}),
            )
    if exhaustive:
        return PrincipleVerdict(
            principle, Status.VIOLATED, checked=checked,
            witness=Witness(
                topic=a, sets=(),
                values={"sigma(a)": sigma_a, "tau(a)": g.initial_strength[a],
                        "max |S(X)(a)|": largest, "margin": abs(delta)},
                graph=g,
                note="final strength moved but every contributor set gets 0",
            ),
        )
    return PrincipleVerdict(principle, Status.INCONCLUSIVE, checked=checked)


def check_quantitative_contribution_existence(
    fn, g: Qbag, sem, a: str, mode: str = "All", *, cfg: SearchConfig | None = None,
    tol: float = TOL, ctx: EvalContext | None = None,
) -> PrincipleVerdict:
    """All-mode: every partition of the non-topic arguments must sum to
    sigma(a) - tau(a). Exists-mode: some partition must, with the
    reachability split tried first."""
    cfg = cfg or SearchConfig()
    ctx = _ctx(fn, g, sem, ctx)
    mode = str(mode).lower()
    if mode not in ("all", "exists"):
        raise ValueError(f"mode must be 'All' or 'Exists', got {mode!r}")
    principle = (
        Principle.QUANTITATIVE_CONTRIBUTION_EXISTENCE
        if mode == "all"
        else Principle.WEAK_QUANTITATIVE_CONTRIBUTION_EXISTENCE
    )
    delta = ctx.sigma(())[a] - g.initial_strength[a]
    base = sorted(g.arguments - {a})

    def partition_sum(blocks) -> float:
        return sum(ctx.set_value(fn, b, a) for b in blocks)

    if mode == "all":
        checked = 0
        for blocks in enumerate_partitions(base):
            total = partition_sum(blocks)
            checked += 1
            if abs(total - delta) > tol:
                return PrincipleVerdict(
                    principle, Status.VIOLATED, checked=checked,
                    witness=Witness(
                        topic=a,
                        sets=tuple(tuple(sorted(b)) for b in blocks),
                        values={"sum over blocks": total, "sigma(a)-tau(a)": delta,
                                "margin": abs(total - delta)},
                        graph=g,
                    ),
                )
        return PrincipleVerdict(principle, Status.SATISFIED, checked=checked)

    # Exists-mode: reachability split first.
    reach = frozenset(influencers(g, a, include_topic=False))
    rest = frozenset(base) - reach
    candidates = [tuple(b for b in (reach, rest) if b)]
    checked = 0
    best_gap = None
    best_blocks = ()
    for blocks in candidates:
        total = partition_sum(blocks)
        checked += 1
        gap = abs(total - delta)
        if best_gap is None or gap < best_gap:
            best_gap, best_blocks = gap, blocks
        if gap <= tol:
            return PrincipleVerdict(
                principle, Status.SATISFIED, checked=checked,
                witness=Witness(
                    topic=a, sets=tuple(tuple(sorted(b)) for b in blocks),
                    values={"sum over blocks": total, "sigma(a)-tau(a)": delta},
                    note="reachability split",
                ),
            )
    if len(base) <= MAX_PARTITION_ARGS:
        for blocks in enumerate_partitions(base):
            total = partition_sum(blocks)
            checked += 1
            gap = abs(total - delta)
            if best_gap is None or gap < best_gap:
                best_gap, best_blocks = gap, blocks
            if gap <= tol:
                return PrincipleVerdict(
                    principle, Status.SATISFIED, checked=checked,
                    witness=Witness(
                        topic=a, sets=tuple(tuple(sorted(b)) for b in blocks),
                        values={"sum over blocks": total, "sigma(a)-tau(a)": delta},
                    ),
                )
        return PrincipleVerdict(
            principle, Status.VIOLATED, checked=checked,
            witness=Witness(
                topic=a, sets=tuple(tuple(sorted(b)) for b in best_blocks),
                values={"sigma(a)-tau(a)": delta, "closest partition gap": best_gap,
                        "margin": best_gap},
                graph=g,
                note="no partition of the non-topic arguments sums to sigma-tau; "
                     "witness sets show the closest one",
            ),
        )
    return PrincipleVerdict(principle, Status.INCONCLUSIVE, checked=checked)


def check_directionality(
    fn, g: Qbag, sem, a: str, *, cfg: SearchConfig | None = None,
    tol: float = TOL, ctx: EvalContext | None = None,
) -> PrincipleVerdict:
    """Sets whose members cannot reach the topic must contribute exactly zero."""
    cfg = cfg or SearchConfig()
    ctx = _ctx(fn, g, sem, ctx)
    principle = Principle.DIRECTIONALITY
    unreachable = [x for x in sorted(g.arguments - {a}) if not can_reach(g, x, a)]
    if not unreachable:
        return PrincipleVerdict(
            principle, Status.SATISFIED, checked=0,
            witness=Witness(topic=a, sets=(), values={},
                            note="vacuous: every other argument reaches the topic"),
        )
    exhaustive = len(unreachable) <= MAX_SUBSET_ARGS
    pool = (
        _subsets(unreachable)
        if exhaustive
        else _sample_subsets(unreachable, random.Random(cfg.seed), cfg.sample_size)
    )
    checked = 0
    for xs in pool:
        value = ctx.set_value(fn, xs, a)
        checked += 1
        if abs(value) > tol:
            return PrincipleVerdict(
                principle, Status.VIOLATED, checked=checked,
                witness=Witness(
                    topic=a, sets=(xs,),
                    values={"S(X)(a)": value, "margin": abs(value)},
                    graph=g,
                    note="no member of X reaches the topic, yet the value is nonzero",
                ),
            )
    return PrincipleVerdict(principle, Status.SATISFIED, checked=checked)


def check_counterfactuality(
    fn, g: Qbag, sem, a: str, quantitative: bool = False, *,
    cfg: SearchConfig | None = None, tol: float = TOL, ctx: EvalContext | None = None,
) -> PrincipleVerdict:
    """Sign (or value, in the quantitative variant) of S(X)(a) must match the
    change in the topic's strength caused by actually removing X."""
    cfg = cfg or SearchConfig()
    ctx = _ctx(fn, g, sem, ctx)
    principle = (
        Principle.QUANTITATIVE_COUNTERFACTUALITY if quantitative
        else Principle.COUNTERFACTUALITY
    )
    others = sorted(g.arguments - {a})
    if not others:
        return PrincipleVerdict(principle, Status.SATISFIED, checked=0)
    exhaustive = len(others) <= MAX_SUBSET_ARGS
    pool = (
        _subsets(others)
        if exhaustive
        else _sample_subsets(others, random.Random(cfg.seed), cfg.sample_size)
    )
    sigma_full = ctx.sigma(())[a]
    checked = 0
    for xs in pool:
        value = ctx.set_value(fn, xs, a)
        removal_delta = sigma_full - ctx.sigma(xs)[a]
        checked += 1
        if quantitative:
            bad = abs(value - removal_delta) > tol
            margin = abs(value - removal_delta)
        else:
            bad = sign(value, tol) != sign(removal_delta, tol)
            margin = abs(value - removal_delta)
        if bad:
            return PrincipleVerdict(
                principle, Status.VIOLATED, checked=checked,
                witness=Witness(
                    topic=a, sets=(xs,),
                    values={"S(X)(a)": value, "removal delta": removal_delta,
                            "margin": margin},
                    graph=g,
                ),
            )
    return PrincipleVerdict(principle, Status.SATISFIED, checked=checked)


def check_consistency(
    fn, g: Qbag, sem, a: str, *, cfg: SearchConfig | None = None,
    tol: float = TOL, ctx: EvalContext | None = None,
) -> PrincipleVerdict:
    """Two sets agreeing in contribution sign must not flip the sign of their
    union."""
    cfg = cfg or SearchConfig()
    ctx = _ctx(fn, g, sem, ctx)
    principle = Principle.CONSISTENCY
    others = sorted(g.arguments - {a})
    if not others:
        return PrincipleVerdict(principle, Status.SATISFIED, checked=0)

    if len(others) <= MAX_PAIR_ARGS:
        pool = [frozenset(xs) for xs in _subsets(others)]
        pairs = itertools.combinations_with_replacement(range(len(pool)), 2)

        def pair_iter():
            for i, j in pairs:
                yield pool[i], pool[j]
    else:
        rng = random.Random(cfg.seed)

        def pair_iter():
            for _ in range(cfg.sample_size):
                yield (frozenset(next(_sample_subsets(others, rng, 1))),
                       frozenset(next(_sample_subsets(others, rng, 1))))

    values: dict[frozenset, float] = {}

    def val(s: frozenset) -> float:
        if s not in values:
            values[s] = ctx.set_value(fn, s, a)
        return values[s]

    checked = 0
    for x_set, y_set in pair_iter():
        vx, vy = val(x_set), val(y_set)
        vu = val(x_set | y_set)
        checked += 1
        if vx <= tol and vy <= tol and vu > tol:
            bad, margin = True, vu
        elif vx >= -tol and vy >= -tol and vu < -tol:
            bad, margin = True, -vu
        else:
            bad, margin = False, 0.0
        if bad:
            return PrincipleVerdict(
                principle, Status.VIOLATED, checked=checked,
                witness=Witness(
                    topic=a,
                    sets=(tuple(sorted(x_set)), tuple(sorted(y_set)),
                          tuple(sorted(x_set | y_set))),
                    values={"S(X)(a)": vx, "S(Y)(a)": vy,
                            "S(X∪Y)(a)": vu, "margin": margin},
                    graph=g,
                ),
            )
    return PrincipleVerdict(principle, Status.SATISFIED, checked=checked)


def check_monotonicity(
    fn, g: Qbag, sem, a: str, *, cfg: SearchConfig | None = None,
    tol: float = TOL, ctx: EvalContext | None = None,
) -> PrincipleVerdict:
    """Growing the contributor set must not shrink its contribution."""
    cfg = cfg or SearchConfig()
    ctx = _ctx(fn, g, sem, ctx)
    principle = Principle.MONOTONICITY
    others = sorted(g.arguments - {a})
    if not others:
        return PrincipleVerdict(principle, Status.SATISFIED, checked=0)

    values: dict[frozenset, float] = {}

    def val(s: frozenset) -> float:
        if s not in values:
            values[s] = ctx.set_value(fn, s, a)
        return values[s]

    checked = 0
    if len(others) <= MAX_SUBSET_ARGS:
        n = len(others)
        for y_mask in range(1, 1 << n):
            y_set = frozenset(others[i] for i in range(n) if y_mask >> i & 1)
            vy = val(y_set)
            x_mask = (y_mask - 1) & y_mask
            while x_mask:
                x_set = frozenset(others[i] for i in range(n) if x_mask >> i & 1)
                checked += 1
                vx = val(x_set)
                if vx > vy + tol:
                    return PrincipleVerdict(
                        principle, Status.VIOLATED, checked=checked,
                        witness=Witness(
                            topic=a,
                            sets=(tuple(sorted(x_set)), tuple(sorted(y_set))),
                            values={"S(X)(a)": vx, "S(Y)(a)": vy,
                                    "margin": vx - vy},
                            graph=g,
                            note="X ⊆ Y but S(X) > S(Y)",
                        ),
                    )
                x_mask = (x_mask - 1) & y_mask
    else:
        rng = random.Random(cfg.seed)
        for _ in range(cfg.sample_size):
            y = tuple(sorted(rng.sample(others, rng.randint(1, len(others)))))
            x = tuple(sorted(rng.sample(y, rng.randint(1, len(y)))))
            vx, vy = val(frozenset(x)), val(frozenset(y))
            checked += 1
            if vx > vy + tol:
                return PrincipleVerdict(
                    principle, Status.VIOLATED, checked=checked,
                    witness=Witness(
                        topic=a, sets=(x, y),
                        values={"S(X)(a)": vx, "S(Y)(a)": vy, "margin": vx - vy},
                        graph=g,
                    ),
                )
    return PrincipleVerdict(principle, Status.SATISFIED, checked=checked)


# --- random graphs and counterexample search --------------------------------------


def random_qbag(rng: random.Random, n: int, edge_prob: float,
                grid: Sequence[float]) -> Qbag:
    """A random acyclic graph: edges are oriented along a random permutation,
    so no cycle can appear by construction."""
    names = list(string.ascii_lowercase[:n])
    order = names[:]
    rng.shuffle(order)
    attacks, supports = [], []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < edge_prob:
                edge = (order[i], order[j])
                if rng.random() < 0.5:
                    attacks.append(edge)
                else:
                    supports.append(edge)
    tau = {x: rng.choice(list(grid)) for x in names}
    return qbag(tau, attacks=attacks, supports=supports)


def random_corpus(cfg: SearchConfig) -> list[Qbag]:
    rng = random.Random(cfg.seed)
    out = []
    for _ in range(cfg.random_graphs):
        n = rng.randint(2, cfg.max_exhaustive_args)
        p = rng.choice((0.2, 0.4, 0.6))
        out.append(random_qbag(rng, n, p, cfg.strength_grid))
    return out


_CHECKER_KWARGS: dict[Principle, dict] = {
    Principle.CONTRIBUTION_EXISTENCE: {},
    Principle.QUANTITATIVE_CONTRIBUTION_EXISTENCE: {"mode": "All"},
    Principle.WEAK_QUANTITATIVE_CONTRIBUTION_EXISTENCE: {"mode": "Exists"},
    Principle.DIRECTIONALITY: {},
    Principle.COUNTERFACTUALITY: {"quantitative": False},
    Principle.QUANTITATIVE_COUNTERFACTUALITY: {"quantitative": True},
    Principle.CONSISTENCY: {},
    Principle.MONOTONICITY: {},
}

_SINGLE_FOR_SET = {
    "removal": SingleKind.REMOVAL,
    "intrinsic": SingleKind.INTRINSIC_REMOVAL,
    "shapley": SingleKind.SHAPLEY,
    "gradient-max": SingleKind.GRADIENT,
}


def principle_from_name(name) -> Principle:
    if isinstance(name, Principle):
        return name
    token = str(name).replace("-", "").replace("_", "").lower()
    aliases = {
        "ce": Principle.CONTRIBUTION_EXISTENCE,
        "qce": Principle.QUANTITATIVE_CONTRIBUTION_EXISTENCE,
        "wqce": Principle.WEAK_QUANTITATIVE_CONTRIBUTION_EXISTENCE,
        "cf": Principle.COUNTERFACTUALITY,
        "qcf": Principle.QUANTITATIVE_COUNTERFACTUALITY,
        "generalization": Principle.CTRB_GENERALIZATION,
    }
    if token in aliases:
        return aliases[token]
    for p in Principle:
        if p.value.lower() == token:
            return p
    raise ValueError(
        f"unknown principle {name!r}; known: "
        + ", ".join(p.value for p in Principle)
    )


def run_check(
    principle: Principle, fn, g: Qbag, sem, a: str | None, *,
    cfg: SearchConfig | None = None, ctx: EvalContext | None = None,
) -> PrincipleVerdict:
    """Dispatch one principle check on one instance."""
    principle = principle_from_name(principle)
    if principle is Principle.STABILITY:
        return check_stability(semantics_from_spec(sem), g)
    if principle is Principle.CTRB_GENERALIZATION:
        pair = (_SINGLE_FOR_SET.get(fn, SingleKind.REMOVAL), fn)
        return check_generalization(pair, g, sem, ctx=ctx)
    if a is None:
        raise ValueError(f"principle {principle.value} needs a topic argument")
    checker = {
        Principle.CONTRIBUTION_EXISTENCE: check_contribution_existence,
        Principle.QUANTITATIVE_CONTRIBUTION_EXISTENCE:
            check_quantitative_contribution_existence,
        Principle.WEAK_QUANTITATIVE_CONTRIBUTION_EXISTENCE:
            check_quantitative_contribution_existence,
        Principle.DIRECTIONALITY: check_directionality,
        Principle.COUNTERFACTUALITY: check_counterfactuality,
        Principle.QUANTITATIVE_COUNTERFACTUALITY: check_counterfactuality,
        Principle.CONSISTENCY: check_consistency,
        Principle.MONOTONICITY: check_monotonicity,
    }[principle]
    kwargs = dict(_CHECKER_KWARGS[principle])
    return checker(fn, g, sem, a, cfg=cfg, ctx=ctx, **kwargs)


def _drop_edge(g: Qbag, edge, kind: str) -> Qbag:
    attacks = set(g.attacks)
    supports = set(g.supports)
    (attacks if kind == "attack" else supports).discard(edge)
    return Qbag(
        arguments=g.arguments,
        attacks=frozenset(attacks),
        supports=frozenset(supports),
        initial_strength=dict(g.initial_strength),
    )


def search_counterexample(
    principle, fn, sem, cfg: SearchConfig | None = None,
) -> PrincipleVerdict:
    """Hunt for a violation over random graphs and shrink the first hit."""
    cfg = cfg or SearchConfig()
    principle = principle_from_name(principle)
    rng = random.Random(cfg.seed)
    examined = 0

    def violated_on(g: Qbag) -> PrincipleVerdict | None:
        for topic in sorted(g.arguments):
            verdict = run_check(principle, fn, g, sem, topic, cfg=cfg)
            if verdict.violated:
                return verdict
        return None

    for _ in range(cfg.random_graphs):
        n = rng.randint(2, cfg.max_exhaustive_args)
        p = rng.choice((0.2, 0.4, 0.6))
        g = random_qbag(rng, n, p, cfg.strength_grid)
        examined += 1
        verdict = violated_on(g)
        if verdict is None:
            continue
        # Shrink: drop arguments, then edges, while the violation persists.
        improved = True
        while improved:
            improved = False
            for arg in sorted(g.arguments):
                if len(g.arguments) <= 2:
                    break
                smaller = restrict(g, g.arguments - {arg})
                v2 = violated_on(smaller)
                if v2 is not None:
                    g, verdict, improved = smaller, v2, True
                    break
        improved = True
        while improved:
            improved = False
            for kind, edges in (("attack", g.attacks), ("support", g.supports)):
                for edge in sorted(edges):
                    smaller = _drop_edge(g, edge, kind)
                    v2 = violated_on(smaller)
                    if v2 is not None:
                        g, verdict, improved = smaller, v2, True
                        break
                if improved:
                    break
        return PrincipleVerdict(
            verdict.principle, verdict.status, verdict.witness,
            checked=verdict.checked + examined,
        )
    return PrincipleVerdict(
        principle, Status.INCONCLUSIVE,
        witness=Witness(
            topic=None, sets=(), values={},
            note=f"no violation in {cfg.random_graphs} random graphs (seed {cfg.seed})",
        ),
        checked=examined,
    )


# --- the verdict matrix -----------------------------------------------------------


def _per_sem(value) -> dict[str, bool]:
    if isinstance(value, dict):
        return value
    return {name: value for name in PRESET_NAMES}


#: expected satisfaction pattern; True = satisfied, False = violated
EXPECTED_VERDICTS: dict[Principle, dict[str, dict[str, bool]]] = {
    Principle.CONTRIBUTION_EXISTENCE: {
        "removal": _per_sem(True),
        "intrinsic": _per_sem(True),
        "shapley": _per_sem(True),
        "gradient-max": {"QE": True, "DFQuAD": False, "SD-DFQuAD": False,
                         "EB": True, "EBT": False},
    },
    Principle.QUANTITATIVE_CONTRIBUTION_EXISTENCE: {
        fn: _per_sem(False) for fn in SET_FUNCTION_IDS
    },
    Principle.DIRECTIONALITY: {fn: _per_sem(True) for fn in SET_FUNCTION_IDS},
    Principle.COUNTERFACTUALITY: {
        "removal": _per_sem(True),
        "intrinsic": _per_sem(False),
        "shapley": _per_sem(False),
        "gradient-max": _per_sem(False),
    },
    Principle.QUANTITATIVE_COUNTERFACTUALITY: {
        "removal": _per_sem(True),
        "intrinsic": _per_sem(False),
        "shapley": _per_sem(False),
        "gradient-max": _per_sem(False),
    },
    Principle.WEAK_QUANTITATIVE_CONTRIBUTION_EXISTENCE: {
        "removal": _per_sem(True),
        "intrinsic": _per_sem(True),
        "shapley": _per_sem(True),
        "gradient-max": _per_sem(False),
    },
    Principle.CONSISTENCY: {
        "removal": _per_sem(False),
        "intrinsic": _per_sem(False),
        "shapley": _per_sem(False),
        "gradient-max": _per_sem(True),
    },
    Principle.MONOTONICITY: {
        "removal": _per_sem(False),
        "intrinsic": _per_sem(False),
        "shapley": _per_sem(False),
        "gradient-max": _per_sem(True),
    },
}

_SEM_SLUG = {"QE": "qe", "DFQuAD": "dfquad", "SD-DFQuAD": "sd-dfquad",
             "EB": "eb", "EBT": "ebt"}

_CF_INTRINSIC_FIXTURE = {"QE": "figA1", "DFQuAD": "figA1", "SD-DFQuAD": "figA1",
                         "EB": "figA2", "EBT": "figA3"}
_CF_SHAPLEY_FIXTURE = {"QE": "figA4", "DFQuAD": "figA5", "SD-DFQuAD": "figA6",
                       "EB": "figA7", "EBT": "figA8"}
_CF_GRADIENT_FIXTURE = {"QE": ("figA9", "a"), "DFQuAD": ("figA10", "a"),
                        "SD-DFQuAD": ("figA11", "a"), "EB": ("figA12", "b"),
                        "EBT": ("figA12", "b")}


def violation_fixture(principle: Principle, fn: str, sem_name: str):
    """(fixture id, topic) designated to witness an expected violation."""
    if principle is Principle.CONTRIBUTION_EXISTENCE:
        return "fig3", "a"
    if principle is Principle.QUANTITATIVE_CONTRIBUTION_EXISTENCE:
        return ("fig4", "a") if fn == "shapley" else ("fig3", "a")
    if principle in (Principle.COUNTERFACTUALITY,
                     Principle.QUANTITATIVE_COUNTERFACTUALITY):
        if fn == "intrinsic":
            return _CF_INTRINSIC_FIXTURE[sem_name], "a"
        if fn == "shapley":
            return _CF_SHAPLEY_FIXTURE[sem_name], "a"
        return _CF_GRADIENT_FIXTURE[sem_name]
    if principle is Principle.WEAK_QUANTITATIVE_CONTRIBUTION_EXISTENCE:
        return "fig5", "a"
    if principle is Principle.CONSISTENCY:
        slug = _SEM_SLUG[sem_name]
        return (f"fig6-shapley-{slug}" if fn == "shapley" else f"fig6-{slug}"), "a"
    if principle is Principle.MONOTONICITY:
        return "fig7", "a"
    raise ValueError(f"no designated violation fixture for {principle.value}")


@dataclass(frozen=True)
class MatrixCell:
    fn: str
    semantics: str
    principle: Principle
    expected_satisfied: bool
    status: str  # PASS | VIOLATION-REPRODUCED | MISMATCH
    fixture: str | None = None
    witness: Witness | None = None
    checked: int = 0

    @property
    def ok(self) -> bool:
        return self.status != "MISMATCH"

    def to_dict(self) -> dict:
        return {
            "fn": self.fn,
            "semantics": self.semantics,
            "principle": self.principle.value,
            "status": self.status,
            "expected": "satisfied" if self.expected_satisfied else "violated",
            "fixture": self.fixture,
            "witness": self.witness.to_dict() if self.witness else None,
        }


@dataclass(frozen=True)
class MatrixReport:
    cells: tuple[MatrixCell, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.cells)

    def mismatches(self) -> list[MatrixCell]:
        return [c for c in self.cells if not c.ok]

    def to_dict(self) -> dict:
        return {"cells": [c.to_dict() for c in self.cells]}

    def render(self) -> str:
        lines = []
        sems = list(dict.fromkeys(c.semantics for c in self.cells))
        fns = list(dict.fromkeys(c.fn for c in self.cells))
        index = {(c.principle, c.fn, c.semantics): c for c in self.cells}
        width = max(len(f) for f in fns) + 2
        for principle in dict.fromkeys(c.principle for c in self.cells):
            lines.append(principle.value)
            lines.append(" " * width + "  ".join(f"{s:>9}" for s in sems))
            for fn in fns:
                marks = []
                for s in sems:
                    cell = index.get((principle, fn, s))
                    if cell is None:
                        marks.append("-")
                    elif not cell.ok:
                        marks.append("?!")
                    elif cell.expected_satisfied:
                        marks.append("ok")
                    else:
                        marks.append("X")
                lines.append(f"{fn:<{width}}" + "  ".join(f"{m:>9}" for m in marks))
            lines.append("")
        return "\n".join(lines)


def topics_of(g: Qbag) -> list[str]:
    if len(g.arguments) <= 8:
        return sorted(g.arguments)
    with_out = {e[0] for e in g.attacks | g.supports}
    return sorted(g.arguments - with_out)


def run_matrix(
    fixtures: Mapping[str, Qbag] | None = None,
    fns: Sequence[str] = SET_FUNCTION_IDS,
    specs: Sequence[str] = PRESET_NAMES,
    principles: Sequence[Principle] = TABLE_PRINCIPLES,
    cfg: SearchConfig | None = None,
) -> MatrixReport:
    """Check every (function, semantics, principle) cell against the expected
    pattern: expected violations must reproduce on their designated fixture,
    expected satisfactions must survive the fixture corpus plus the seeded
    random corpus without a counterexample."""
    from .fixtures import FIXTURES

    fixtures = dict(FIXTURES if fixtures is None else fixtures)
    cfg = cfg or SearchConfig()
    randoms = random_corpus(cfg)
    corpus: list[Qbag] = [fixtures[k] for k in sorted(fixtures)] + randoms

    contexts: dict[tuple[int, str], EvalContext] = {}

    def ctx_for(g: Qbag, sem_name: str) -> EvalContext:
        key = (id(g), sem_name)
        if key not in contexts:
            contexts[key] = EvalContext(g, sem_name, budget=cfg.budget)
        return contexts[key]

    cells = []
    for principle in principles:
        for fn in fns:
            for sem_name in specs:
                expected = EXPECTED_VERDICTS[principle][fn][sem_name]
                if expected:
                    status, fixture_id, witness, checked = "PASS", None, None, 0
                    for g in corpus:
                        for topic in topics_of(g):
                            verdict = run_check(
                                principle, fn, g, sem_name, topic,
                                cfg=cfg, ctx=ctx_for(g, sem_name),
                            )
                            checked += verdict.checked
                            if verdict.violated:
                                status, witness = "MISMATCH", verdict.witness
                                break
                        if status == "MISMATCH":
                            break
                else:
                    fixture_id, topic = violation_fixture(principle, fn, sem_name)
                    g = fixtures[fixture_id]
                    verdict = run_check(
                        principle, fn, g, sem_name, topic,
                        cfg=cfg, ctx=ctx_for(g, sem_name),
                    )
                    checked = verdict.checked
                    if verdict.violated:
                        status, witness = "VIOLATION-REPRODUCED", verdict.witness
                    else:
                        status, witness = "MISMATCH", verdict.witness
                cells.append(MatrixCell(
                    fn=fn, semantics=sem_name, principle=principle,
                    expected_satisfied=expected, status=status,
                    fixture=fixture_id, witness=witness, checked=checked,
                ))
    return MatrixReport(cells=tuple(cells))
