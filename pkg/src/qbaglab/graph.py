"""Quantitative bipolar argumentation graphs as immutable values.

A graph couples a finite argument set with two disjoint edge relations
(attacks and supports) and an initial strength in [0, 1] per argument.
All surgery operations (restriction, edge detachment, strength updates)
return fresh graphs; nothing here mutates.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import (
    CycleError,
    GraphFormatError,
    StrengthRangeError,
    UnknownArgumentError,
)

ArgumentId = str
Edge = tuple[ArgumentId, ArgumentId]


@dataclass(frozen=True)
class Qbag:
    arguments: frozenset[ArgumentId]
    attacks: frozenset[Edge]
    supports: frozenset[Edge]
    initial_strength: Mapping[ArgumentId, float]

    def parents_of(self, a: ArgumentId) -> list[tuple[ArgumentId, int]]:
        """Attackers and supporters of `a` as (id, polarity) with -1/+1."""
        out = [(x, -1) for (x, y) in self.attacks if y == a]
        out += [(x, +1) for (x, y) in self.supports if y == a]
        out.sort()
        return out

    def edges(self) -> frozenset[Edge]:
        return self.attacks | self.supports


def qbag(
    initial_strength: Mapping[ArgumentId, float],
    attacks: Iterable[Edge] = (),
    supports: Iterable[Edge] = (),
) -> Qbag:
    """Build a Qbag from an id -> strength mapping plus edge lists."""
    return Qbag(
        arguments=frozenset(initial_strength),
        attacks=frozenset((str(s), str(t)) for s, t in attacks),
        supports=frozenset((str(s), str(t)) for s, t in supports),
        initial_strength={str(k): float(v) for k, v in initial_strength.items()},
    )


@dataclass(frozen=True)
class Violation:
    rule: str
    message: str
    elements: tuple


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def messages(self) -> list[str]:
        return [f"{v.rule}: {v.message}" for v in self.violations]


def validate(g: Qbag) -> ValidationReport:
    """Check every structural invariant and report all breaches at once.

    Rules: empty-id, att-supp-overlap, unknown-endpoint, strength-domain,
    strength-range, cycle. A cycle violation names one concrete cycle.
    """
    found: list[Violation] = []

    for a in sorted(g.arguments):
        if not isinstance(a, str) or a == "":
            found.append(Violation("empty-id", "argument ids must be non-empty strings", (a,)))

    overlap = sorted(g.attacks & g.supports)
    if overlap:
        found.append(
            Violation(
                "att-supp-overlap",
                f"edges in both attack and support: {overlap}",
                tuple(overlap),
            )
        )

    dangling = sorted(
        {x for e in g.edges() for x in e if x not in g.arguments}
    )
    if dangling:
        found.append(
            Violation(
                "unknown-endpoint",
                f"edge endpoints not in the argument set: {dangling}",
                tuple(dangling),
            )
        )

    missing = sorted(g.arguments - set(g.initial_strength))
    extra = sorted(set(g.initial_strength) - g.arguments)
    if missing or extra:
        found.append(
            Violation(
                "strength-domain",
                f"initial strength must be total on the arguments "
                f"(missing: {missing}, extra: {extra})",
                tuple(missing + extra),
            )
        )

    for a in sorted(set(g.initial_strength) & g.arguments):
        v = g.initial_strength[a]
        if not (0.0 <= v <= 1.0):  # also catches NaN
            found.append(
                Violation("strength-range", f"tau({a}) = {v} is outside [0, 1]", (a, v))
            )

    cycle = _find_cycle(g)
    if cycle is not None:
        found.append(
            Violation("cycle", f"[{','.join(cycle)}]", tuple(cycle))
        )

    return ValidationReport(tuple(found))


def _find_cycle(g: Qbag) -> list[ArgumentId] | None:
    """Return one directed cycle as a node list, or None. Ignores dangling edges."""
    succ: dict[ArgumentId, list[ArgumentId]] = {a: [] for a in g.arguments}
    for x, y in sorted(g.edges()):
        if x in succ and y in g.arguments:
            succ[x].append(y)

    WHITE, GREY, BLACK = 0, 1, 2
    color = {a: WHITE for a in g.arguments}
    stack: list[ArgumentId] = []

    def visit(node: ArgumentId) -> list[ArgumentId] | None:
        color[node] = GREY
        stack.append(node)
        for nxt in succ[node]:
            if color[nxt] == GREY:
                return stack[stack.index(nxt):]
            if color[nxt] == WHITE:
                cyc = visit(nxt)
                if cyc is not None:
                    return cyc
        color[node] = BLACK
        stack.pop()
        return None

    for a in sorted(g.arguments):
        if color[a] == WHITE:
            cyc = visit(a)
            if cyc is not None:
                return cyc
    return None


def _require_known(g: Qbag, ids: Iterable[ArgumentId]) -> None:
    unknown = {x for x in ids if x not in g.arguments}
    if unknown:
        raise UnknownArgumentError(unknown)


def restrict(g: Qbag, keep: Iterable[ArgumentId]) -> Qbag:
    """Induced subgraph on `keep`: drop other arguments and edges touching them."""
    keep = frozenset(keep)
    _require_known(g, keep)
    return Qbag(
        arguments=keep,
        attacks=frozenset((x, y) for (x, y) in g.attacks if x in keep and y in keep),
        supports=frozenset((x, y) for (x, y) in g.supports if x in keep and y in keep),
        initial_strength={a: g.initial_strength[a] for a in keep},
    )


def detach_incoming(g: Qbag, x_set: Iterable[ArgumentId]) -> Qbag:
    """Remove every edge entering `x_set` from outside it; keep everything else."""
    x_set = frozenset(x_set)
    _require_known(g, x_set)

    def keep_edge(e: Edge) -> bool:
        y, x = e
        return not (x in x_set and y not in x_set)

    return Qbag(
        arguments=g.arguments,
        attacks=frozenset(e for e in g.attacks if keep_edge(e)),
        supports=frozenset(e for e in g.supports if keep_edge(e)),
        initial_strength=dict(g.initial_strength),
    )


def set_initial_strength(g: Qbag, x: ArgumentId, eps: float) -> Qbag:
    """Return a copy of `g` with tau(x) set to `eps`."""
    _require_known(g, [x])
    if not (0.0 <= eps <= 1.0):
        raise StrengthRangeError(x, eps)
    tau = dict(g.initial_strength)
    tau[x] = float(eps)
    return Qbag(g.arguments, g.attacks, g.supports, tau)


def topological_order(g: Qbag) -> list[ArgumentId]:
    """Kahn's algorithm with lexicographic tie-breaking, so the order is
    deterministic for a fixed graph. Raises CycleError on cyclic input."""
    indeg = {a: 0 for a in g.arguments}
    succ: dict[ArgumentId, list[ArgumentId]] = {a: [] for a in g.arguments}
    for x, y in g.edges():
        if x in indeg and y in indeg:
            indeg[y] += 1
            succ[x].append(y)

    ready = [a for a, d in indeg.items() if d == 0]
    heapq.heapify(ready)
    order: list[ArgumentId] = []
    while ready:
        a = heapq.heappop(ready)
        order.append(a)
        for b in succ[a]:
            indeg[b] -= 1
            if indeg[b] == 0:
                heapq.heappush(ready, b)

    if len(order) != len(g.arguments):
        cycle = _find_cycle(g)
        raise CycleError(cycle if cycle else sorted(set(g.arguments) - set(order)))
    return order


def can_reach(g: Qbag, x: ArgumentId, a: ArgumentId) -> bool:
    """True iff there is a directed path from x to a, or x == a."""
    _require_known(g, [x, a])
    if x == a:
        return True
    succ: dict[ArgumentId, set[ArgumentId]] = {n: set() for n in g.arguments}
    for s, t in g.edges():
        if s in succ:
            succ[s].add(t)
    seen = {x}
    frontier = [x]
    while frontier:
        node = frontier.pop()
        for nxt in succ[node]:
            if nxt == a:
                return True
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return False


def influencers(g: Qbag, a: ArgumentId, include_topic: bool = False) -> set[ArgumentId]:
    """All arguments with a directed path to `a`; `a` itself iff include_topic."""
    _require_known(g, [a])
    pred: dict[ArgumentId, set[ArgumentId]] = {n: set() for n in g.arguments}
    for s, t in g.edges():
        if t in pred:
            pred[t].add(s)
    seen: set[ArgumentId] = set()
    frontier = [a]
    while frontier:
        node = frontier.pop()
        for src in pred[node]:
            if src not in seen and src in g.arguments:
                seen.add(src)
                frontier.append(src)
    seen.discard(a)
    if include_topic:
        seen.add(a)
    return seen


# --- the on-disk format ----------------------------------------------------
#
# {"arguments": [{"id": "a", "initial_strength": 0.3}, ...],
#  "attacks": [["b", "a"], ...],
#  "supports": [["c", "a"], ...]}
#
# json round-trips doubles exactly (repr emits the shortest string that
# parses back to the same float), which covers the 15-significant-digit
# requirement.


def graph_to_dict(g: Qbag) -> dict:
    return {
        "arguments": [
            {"id": a, "initial_strength": g.initial_strength[a]}
            for a in sorted(g.arguments)
        ],
        "attacks": [list(e) for e in sorted(g.attacks)],
        "supports": [list(e) for e in sorted(g.supports)],
    }


def graph_from_dict(doc: object) -> Qbag:
    if not isinstance(doc, dict):
        raise GraphFormatError("graph document must be a JSON object")
    raw_args = doc.get("arguments")
    if not isinstance(raw_args, list):
        raise GraphFormatError('missing or malformed "arguments" array')
    tau: dict[str, float] = {}
    for entry in raw_args:
        if not isinstance(entry, dict) or "id" not in entry or "initial_strength" not in entry:
            raise GraphFormatError(f"malformed argument entry: {entry!r}")
        aid = entry["id"]
        if not isinstance(aid, str):
            raise GraphFormatError(f"argument id must be a string, got {aid!r}")
        if aid in tau:
            raise GraphFormatError(f"duplicate argument id: {aid!r}")
        strength = entry["initial_strength"]
        if not isinstance(strength, (int, float)) or isinstance(strength, bool):
            raise GraphFormatError(f"initial_strength of {aid!r} must be a number")
        tau[aid] = float(strength)

    def parse_edges(key: str) -> list[Edge]:
        raw = doc.get(key, [])
        if not isinstance(raw, list):
            raise GraphFormatError(f'malformed "{key}" array')
        edges = []
        for e in raw:
            if not (isinstance(e, (list, tuple)) and len(e) == 2
                    and all(isinstance(x, str) for x in e)):
                raise GraphFormatError(f"malformed edge in {key}: {e!r}")
            edges.append((e[0], e[1]))
        return edges

    return Qbag(
        arguments=frozenset(tau),
        attacks=frozenset(parse_edges("attacks")),
        supports=frozenset(parse_edges("supports")),
        initial_strength=tau,
    )


def graph_to_json(g: Qbag, indent: int | None = 2) -> str:
    return json.dumps(graph_to_dict(g), indent=indent)


def graph_from_json(text: str) -> Qbag:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"not valid JSON: {exc}") from exc
    return graph_from_dict(doc)


def load_graph(path) -> Qbag:
    with open(path, "r", encoding="utf-8") as fh:
        return graph_from_json(fh.read())


def dump_graph(g: Qbag, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(graph_to_json(g))
        fh.write("\n")
