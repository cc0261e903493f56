"""Contribution functions: how much does a set of arguments (or a single
argument) contribute to a topic's final strength?

Four set functions are provided:

* removal: final strength as-is minus final strength with the set removed.
* intrinsic removal: like removal, but the minuend is computed on a graph
  where edges entering the set from outside were detached first, which
  controls for upstream influence on the contributors themselves.
* shapley: average marginal removal effect over coalitions, where the set
  acts as one player and every remaining argument is a singleton player.
* gradient: partial derivative of the topic's final strength with respect
  to each member's initial strength, combined with max (or min / max-abs).

plus the partition variant of the Shapley function, where the players are
the blocks of a caller-supplied partition of all non-topic arguments.

The single-argument functions are implemented independently of the set
functions on purpose: agreement between `single_contribution(kind, ...)`
and the matching set function on a singleton is a meaningful cross-check,
not a tautology.
"""

from __future__ import annotations

import itertools
import math
import random
import statistics
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .errors import (
    BudgetError,
    ContributorError,
    TopicInSetError,
    UnknownArgumentError,
)
from .graph import Qbag, detach_incoming, restrict, set_initial_strength
from .semantics import Semantics, evaluate, evaluate_dual, semantics_from_spec

DEFAULT_BUDGET = 2 ** 20
SIGN_TOL = 1e-9


def sign(value: float, tol: float = SIGN_TOL) -> int:
    if value > tol:
        return 1
    if value < -tol:
        return -1
    return 0


class Psi(str, Enum):
    """How to combine the member gradients of a set contributor."""

    MAX = "max"
    MIN = "min"
    MAXABS = "maxabs"

    def combine(self, grads: Sequence[float]) -> float:
        if self is Psi.MAX:
            return max(grads)
        if self is Psi.MIN:
            return min(grads)
        return max(abs(g) for g in grads)


@dataclass(frozen=True)
class ContributionResult:
    value: float
    function: str
    semantics: str
    members: tuple[str, ...]
    topic: str
    evaluations: int
    std_error: float | None = None


class EvaluationCache:
    """Memo of final-strength assignments keyed by the set of removed arguments.

    Shapley sums re-evaluate heavily overlapping coalitions; this cache is
    the dominant cost saver. Inserts are idempotent, so sharing one cache
    across calls on the same (graph, semantics) pair is safe.
    """

    def __init__(self, g: Qbag, sem: Semantics | str):
        self.graph = g
        self.semantics = semantics_from_spec(sem)
        self._memo: dict[frozenset, dict[str, float]] = {}
        self.computed = 0

    def sigma_without(self, removed: Iterable[str]) -> dict[str, float]:
        key = frozenset(removed)
        hit = self._memo.get(key)
        if hit is None:
            hit = evaluate(restrict(self.graph, self.graph.arguments - key), self.semantics)
            self._memo[key] = hit
            self.computed += 1
        return hit


@dataclass(frozen=True)
class SetContributor:
    """A contributor set paired with the topic it is measured against."""

    members: frozenset
    topic: str

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        if self.topic in self.members:
            raise TopicInSetError(
                f"topic {self.topic!r} must not be part of the contributor set"
            )


@dataclass(frozen=True)
class Partition:
    """Pairwise-disjoint non-empty blocks, normally covering all non-topic
    arguments."""

    blocks: tuple[frozenset, ...]

    def __post_init__(self):
        blocks = tuple(frozenset(b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if any(not b for b in blocks):
            raise ContributorError("partition blocks must be non-empty")
        total = sum(len(b) for b in blocks)
        union = frozenset().union(*blocks) if blocks else frozenset()
        if total != len(union):
            raise ContributorError("partition blocks must be pairwise disjoint")


def _check_contributor(g: Qbag, members: Iterable[str], topic: str) -> frozenset[str]:
    members = frozenset(members)
    unknown = {x for x in members | {topic} if x not in g.arguments}
    if unknown:
        raise UnknownArgumentError(unknown)
    if topic in members:
        raise TopicInSetError(f"topic {topic!r} must not be part of the contributor set")
    return members


def _result(value, function, sem, members, topic, evaluations, std_error=None):
    return ContributionResult(
        value=value,
        function=function,
        semantics=sem.label(),
        members=tuple(sorted(members)),
        topic=topic,
        evaluations=evaluations,
        std_error=std_error,
    )


# --- set contribution functions ----------------------------------------------


def removal(
    g: Qbag, sem: Semantics, members: Iterable[str], topic: str,
    cache: EvaluationCache | None = None,
) -> ContributionResult:
    """sigma(topic) minus sigma(topic) after removing the whole set."""
    sem = semantics_from_spec(sem)
    members = _check_contributor(g, members, topic)
    cache = cache or EvaluationCache(g, sem)
    start = cache.computed
    value = cache.sigma_without(())[topic] - cache.sigma_without(members)[topic]
    return _result(value, "removal", sem, members, topic, cache.computed - start)


def intrinsic_removal(
    g: Qbag, sem: Semantics, members: Iterable[str], topic: str,
    cache: EvaluationCache | None = None,
) -> ContributionResult:
    sem = semantics_from_spec(sem)
    members = _check_contributor(g, members, topic)
    cache = cache or EvaluationCache(g, sem)
    start = cache.computed
    detached_sigma = evaluate(detach_incoming(g, members), sem)[topic]
    value = detached_sigma - cache.sigma_without(members)[topic]
    return _result(value, "intrinsic", sem, members, topic, cache.computed - start + 1)


def gradient(
    g: Qbag, sem: Semantics, members: Iterable[str], topic: str,
    psi: Psi = Psi.MAX,
) -> ContributionResult:
    sem = semantics_from_spec(sem)
    members = _check_contributor(g, members, topic)
    if not members:
        raise ContributorError(
            "gradient-based contribution of the empty set is undefined "
            "(nothing to aggregate)"
        )
    grads = [evaluate_dual(g, sem, x)[topic].deriv for x in sorted(members)]
    value = psi.combine(grads)
    return _result(value, f"gradient-{psi.value}", sem, members, topic, len(grads))


def shapley(
    g: Qbag, sem: Semantics, members: Iterable[str], topic: str,
    cache: EvaluationCache | None = None,
    budget: int = DEFAULT_BUDGET,
    monte_carlo: bool = False,
    samples: int = 20_000,
    seed: int = 0,
) -> ContributionResult:
    """The set acts as one Shapley player; all other non-topic arguments are
    singleton players. Exact enumeration unless it would blow the budget,
    in which case `monte_carlo=True` switches to permutation sampling."""
    sem = semantics_from_spec(sem)
    members = _check_contributor(g, members, topic)
    cache = cache or EvaluationCache(g, sem)
    start = cache.computed
    if not members:
        return _result(0.0, "shapley", sem, members, topic, 0)
    others = sorted(g.arguments - members - {topic})
    m = len(others)

    def marginal(coalition: frozenset) -> float:
        return (
            cache.sigma_without(coalition)[topic]
            - cache.sigma_without(coalition | members)[topic]
        )

    if monte_carlo:
        rng = random.Random(seed)
        draws = []
        for _ in range(samples):
            order = others[:]
            rng.shuffle(order)
            cut = rng.randint(0, m)  # position of the set player among m+1 slots
            draws.append(marginal(frozenset(order[:cut])))
        value = statistics.fmean(draws)
        err = statistics.stdev(draws) / math.sqrt(len(draws)) if len(draws) > 1 else None
        return _result(value, "shapley", sem, members, topic,
                       cache.computed - start, std_error=err)

    needed = 2 ** (m + 1)
    if needed > budget:
        raise BudgetError(needed, budget)
    value = 0.0
    denom = math.factorial(m + 1)
    for r in range(m + 1):
        weight = math.factorial(r) * math.factorial(m - r) / denom
        for combo in itertools.combinations(others, r):
            value += weight * marginal(frozenset(combo))
    return _result(value, "shapley", sem, members, topic, cache.computed - start)


def partition_shapley(
    g: Qbag, sem: Semantics, members: Iterable[str],
    partition: Iterable[Iterable[str]], topic: str,
    cache: EvaluationCache | None = None,
    budget: int = DEFAULT_BUDGET,
) -> ContributionResult:
    """Shapley value of the block `members` in the game whose players are the
    blocks of `partition` (which must partition all non-topic arguments)."""
    sem = semantics_from_spec(sem)
    members = _check_contributor(g, members, topic)
    blocks = [frozenset(b) for b in partition]
    if members not in blocks:
        raise ContributorError("the contributor set must be one of the partition blocks")
    if any(not b for b in blocks):
        raise ContributorError("partition blocks must be non-empty")
    union: set[str] = set()
    total = 0
    for b in blocks:
        union |= b
        total += len(b)
    if total != len(union) or union != set(g.arguments) - {topic}:
        raise ContributorError(
            "blocks must be disjoint and cover exactly the non-topic arguments"
        )
    cache = cache or EvaluationCache(g, sem)
    start = cache.computed
    others = sorted((b for b in blocks if b != members), key=sorted)
    n = len(others)
    needed = 2 ** (n + 1)
    if needed > budget:
        raise BudgetError(needed, budget)
    value = 0.0
    denom = math.factorial(n + 1)
    for r in range(n + 1):
        weight = math.factorial(r) * math.factorial(n - r) / denom
        for combo in itertools.combinations(others, r):
            joined = frozenset().union(*combo) if combo else frozenset()
            value += weight * (
                cache.sigma_without(joined)[topic]
                - cache.sigma_without(joined | members)[topic]
            )
    return _result(value, "partition-shapley", sem, members, topic, cache.computed - start)


# --- a uniform way to call set functions by id --------------------------------

FUNCTION_IDS = (
    "removal",
    "intrinsic",
    "shapley",
    "gradient-max",
    "gradient-min",
    "gradient-maxabs",
)

_GRADIENT_PSI = {
    "gradient-max": Psi.MAX,
    "gradient-min": Psi.MIN,
    "gradient-maxabs": Psi.MAXABS,
}


def apply_set_function(
    fn_id: str, g: Qbag, sem: Semantics, members: Iterable[str], topic: str,
    cache: EvaluationCache | None = None,
    budget: int = DEFAULT_BUDGET,
    monte_carlo: bool = False,
    samples: int = 20_000,
    seed: int = 0,
) -> ContributionResult:
    if fn_id == "removal":
        return removal(g, sem, members, topic, cache=cache)
    if fn_id == "intrinsic":
        return intrinsic_removal(g, sem, members, topic, cache=cache)
    if fn_id == "shapley":
        return shapley(g, sem, members, topic, cache=cache, budget=budget,
                       monte_carlo=monte_carlo, samples=samples, seed=seed)
    if fn_id in _GRADIENT_PSI:
        return gradient(g, sem, members, topic, psi=_GRADIENT_PSI[fn_id])
    raise ContributorError(
        f"unknown contribution function {fn_id!r}; known: {', '.join(FUNCTION_IDS)}"
    )


# --- single-argument functions (independent implementations) -------------------


class SingleKind(str, Enum):
    REMOVAL = "removal"
    INTRINSIC_REMOVAL = "intrinsic"
    SHAPLEY = "shapley"
    GRADIENT = "gradient"


#: which single-argument kind a set function is expected to agree with on
#: singleton contributor sets
SINGLE_FOR_SET = {
    "removal": SingleKind.REMOVAL,
    "intrinsic": SingleKind.INTRINSIC_REMOVAL,
    "shapley": SingleKind.SHAPLEY,
    "gradient-max": SingleKind.GRADIENT,
}


def single_contribution(
    kind: SingleKind, g: Qbag, sem: Semantics, x: str, topic: str,
    budget: int = DEFAULT_BUDGET,
) -> ContributionResult:
    sem = semantics_from_spec(sem)
    if x not in g.arguments or topic not in g.arguments:
        raise UnknownArgumentError({y for y in (x, topic) if y not in g.arguments})
    if x == topic:
        raise ContributorError("contributor and topic must differ")
    kind = SingleKind(kind)

    if kind is SingleKind.REMOVAL:
        value = (
            evaluate(g, sem)[topic]
            - evaluate(restrict(g, g.arguments - {x}), sem)[topic]
        )
        return _result(value, "single-removal", sem, {x}, topic, 2)

    if kind is SingleKind.INTRINSIC_REMOVAL:
        stripped = Qbag(
            arguments=g.arguments,
            attacks=frozenset(e for e in g.attacks if e[1] != x),
            supports=frozenset(e for e in g.supports if e[1] != x),
            initial_strength=dict(g.initial_strength),
        )
        value = (
            evaluate(stripped, sem)[topic]
            - evaluate(restrict(g, g.arguments - {x}), sem)[topic]
        )
        return _result(value, "single-intrinsic", sem, {x}, topic, 2)

    if kind is SingleKind.GRADIENT:
        value = evaluate_dual(g, sem, x)[topic].deriv
        return _result(value, "single-gradient", sem, {x}, topic, 1)

    # Shapley over coalitions of all other non-topic arguments
    others = sorted(g.arguments - {x, topic})
    n = len(g.arguments - {topic})
    needed = 2 ** (len(others) + 1)
    if needed > budget:
        raise BudgetError(needed, budget)
    memo: dict[frozenset, float] = {}

    def sig(removed: frozenset) -> float:
        if removed not in memo:
            memo[removed] = evaluate(restrict(g, g.arguments - removed), sem)[topic]
        return memo[removed]

    value = 0.0
    for r in range(len(others) + 1):
        weight = math.factorial(r) * math.factorial(n - r - 1) / math.factorial(n)
        for combo in itertools.combinations(others, r):
            coalition = frozenset(combo)
            value += weight * (sig(coalition) - sig(coalition | {x}))
    return _result(value, "single-shapley", sem, {x}, topic, len(memo))


# --- sign maps -----------------------------------------------------------------


def set_label(members: Iterable[str]) -> str:
    return ",".join(sorted(members))


@dataclass(frozen=True)
class SignMap:
    sweep: tuple[str, str]
    step: float
    labels: tuple[str, ...]
    rows: tuple[tuple[float, float, tuple[int, ...]], ...]

    def to_csv(self) -> str:
        import csv
        import io

        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["eps1", "eps2", *self.labels])
        for e1, e2, signs in self.rows:
            writer.writerow([f"{e1:g}", f"{e2:g}", *signs])
        return buf.getvalue()


def sign_map(
    g: Qbag, sem: Semantics, topic: str,
    contributor_sets: Sequence[Iterable[str]],
    sweep: tuple[str, str],
    step: float = 0.05,
    function: str = "removal",
    tol: float = SIGN_TOL,
) -> SignMap:
    """Sweep two arguments' initial strengths over a grid and record the sign
    of each listed set contribution at every grid point."""
    sem = semantics_from_spec(sem)
    x1, x2 = sweep
    if x1 == x2:
        raise ContributorError("sweep arguments must be distinct")
    if topic in (x1, x2):
        raise ContributorError("sweep arguments must differ from the topic")
    unknown = {x for x in (x1, x2, topic) if x not in g.arguments}
    if unknown:
        raise UnknownArgumentError(unknown)
    if not (0.0 < step <= 0.5):
        raise ContributorError(f"grid step must be in (0, 0.5], got {step}")
    sets = [_check_contributor(g, s, topic) for s in contributor_sets]
    labels = tuple(set_label(s) for s in sets)

    grid = []
    i = 0
    while i * step <= 1.0 + 1e-9:
        grid.append(min(1.0, i * step))
        i += 1

    rows = []
    for e1 in grid:
        for e2 in grid:
            g_mod = set_initial_strength(set_initial_strength(g, x1, e1), x2, e2)
            cache = EvaluationCache(g_mod, sem)
            signs = tuple(
                sign(apply_set_function(function, g_mod, sem, s, topic, cache=cache).value, tol)
                for s in sets
            )
            rows.append((e1, e2, signs))
    return SignMap(sweep=(x1, x2), step=step, labels=labels, rows=tuple(rows))


# --- naming aliases ------------------------------------------------------------
# Shorthand following the usual set-contribution notation: sctrb_* for set
# functions, pctrb_* for the partition variant, single_ctrb for the
# single-argument family. These take a SetContributor and accept preset names
# in place of Semantics objects.

GradientAggregator = Psi

_SINGLE_KIND_ALIASES = {
    "Removal": SingleKind.REMOVAL,
    "IntrinsicRemoval": SingleKind.INTRINSIC_REMOVAL,
    "Shapley": SingleKind.SHAPLEY,
    "Gradient": SingleKind.GRADIENT,
}


def sctrb_removal(g, sem, contributor: SetContributor, **kw) -> ContributionResult:
    return removal(g, sem, contributor.members, contributor.topic, **kw)


def sctrb_intrinsic_removal(g, sem, contributor: SetContributor, **kw) -> ContributionResult:
    return intrinsic_removal(g, sem, contributor.members, contributor.topic, **kw)


def sctrb_shapley(g, sem, contributor: SetContributor, **kw) -> ContributionResult:
    return shapley(g, sem, contributor.members, contributor.topic, **kw)


def sctrb_gradient(g, sem, contributor: SetContributor,
                   psi: Psi = Psi.MAX) -> ContributionResult:
    return gradient(g, sem, contributor.members, contributor.topic, psi=psi)


def pctrb_shapley(g, sem, members, partition, topic, **kw) -> ContributionResult:
    blocks = partition.blocks if isinstance(partition, Partition) else partition
    return partition_shapley(g, sem, members, blocks, topic, **kw)


def single_ctrb(kind, g, sem, x, topic, **kw) -> ContributionResult:
    kind = _SINGLE_KIND_ALIASES.get(kind, kind)
    return single_contribution(kind, g, sem, x, topic, **kw)
