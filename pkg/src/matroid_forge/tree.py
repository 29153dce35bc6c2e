"""Finite trees of matroids of overlap 1.

Adjacent nodes share exactly one dummy element; gluing pastes the node
matroids together along those dummies and keeps only the real elements.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import (
    DummyTouched,
    InconsistentPrecircuit,
    LemmaViolation,
    NotAMatroid,
    OverlapViolation,
    OverlappingSets,
    StrayDummy,
)
from .errors import AxiomViolation
from .matroid import Matroid, antichain_minimal, from_circuits, sort_key


@dataclass(frozen=True)
class GroundView:
    """Partition of all node elements into real elements and dummies."""

    real: frozenset
    dummies: frozenset


@dataclass(frozen=True)
class Precircuit:
    """A connected subtree with one circuit chosen per node.

    The choice at a node contains the dummy toward a tree neighbour
    exactly when that neighbour belongs to the subtree.
    """

    subtree: frozenset
    choice: tuple[tuple[str, frozenset], ...]

    def choice_map(self) -> dict[str, frozenset]:
        return dict(self.choice)


@dataclass
class MatroidTree:
    """A tree whose nodes carry matroids; treat instances as immutable."""

    nodes: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    matroids: dict[str, Matroid]
    dummies: dict[tuple[str, str], str]

    def __post_init__(self):
        self.nodes = tuple(sorted(self.nodes))
        self.edges = tuple(sorted(tuple(sorted(e)) for e in self.edges))
        self.dummies = {tuple(sorted(k)): v for k, v in self.dummies.items()}
        self._adj: dict[str, tuple[str, ...]] = {}
        adj: dict[str, list[str]] = {n: [] for n in self.nodes}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self._adj = {n: tuple(sorted(vs)) for n, vs in adj.items()}

    def neighbors(self, node: str) -> tuple[str, ...]:
        return self._adj[node]

    def dummy(self, u: str, v: str) -> str:
        return self.dummies[tuple(sorted((u, v)))]

    def dummy_labels(self) -> frozenset:
        return frozenset(self.dummies.values())

    def real_elements(self) -> frozenset:
        all_elems = set()
        for m in self.matroids.values():
            all_elems |= set(m.ground)
        return frozenset(all_elems) - self.dummy_labels()


def validate_tree(T: MatroidTree) -> GroundView:
    """Check the overlap-1 invariants and split elements into real/dummy."""
    node_set = set(T.nodes)
    if set(T.matroids) != node_set:
        raise OverlapViolation("matroid map does not match the node set")
    # the edge set must form a tree
    if len(T.edges) != max(0, len(T.nodes) - 1):
        raise OverlapViolation("edge count is not |nodes| - 1")
    if T.nodes:
        seen = {T.nodes[0]}
        stack = [T.nodes[0]]
        while stack:
            n = stack.pop()
            for m in T.neighbors(n):
                if m not in seen:
                    seen.add(m)
                    stack.append(m)
        if seen != node_set:
            raise OverlapViolation("tree is not connected")
    edge_set = set(T.edges)
    if set(T.dummies) != edge_set:
        raise StrayDummy("dummy map does not match the edge set")
    for (u, v), d in T.dummies.items():
        gu = set(T.matroids[u].ground)
        gv = set(T.matroids[v].ground)
        if d not in gu or d not in gv:
            raise StrayDummy(f"dummy {d!r} missing from an endpoint of edge {(u, v)}")
    for i, u in enumerate(T.nodes):
        for v in T.nodes[i + 1:]:
            common = set(T.matroids[u].ground) & set(T.matroids[v].ground)
            if not common:
                continue
            key = tuple(sorted((u, v)))
            if key not in edge_set:
                raise OverlapViolation(
                    f"nodes {u!r} and {v!r} share {sorted(common)} without an edge")
            if common != {T.dummies[key]}:
                raise OverlapViolation(
                    f"edge {key} must share exactly its dummy, found {sorted(common)}")
    dummies = T.dummy_labels()
    real = T.real_elements()
    return GroundView(real, dummies)


def connected_subtrees(T: MatroidTree) -> Iterator[frozenset]:
    """All nonempty connected subtrees, each yielded exactly once.

    A subtree is listed under its least node: rooted there, connected
    subtrees are the downward-closed node sets through higher nodes.
    """
    order = {n: i for i, n in enumerate(T.nodes)}

    def closed_sets(v: str, parent: str | None, root: str) -> list[frozenset]:
        out = [frozenset([v])]
        for c in T.neighbors(v):
            if c == parent or order[c] < order[root]:
                continue
            opts = closed_sets(c, v, root) + [frozenset()]
            out = [s | extra for s in out for extra in opts]
        return out

    for root in T.nodes:
        yield from closed_sets(root, None, root)


def _node_candidates(T: MatroidTree, subtree: frozenset) -> dict[str, list[frozenset]] | None:
    cands: dict[str, list[frozenset]] = {}
    for t in sorted(subtree):
        required = {T.dummy(t, u) for u in T.neighbors(t) if u in subtree}
        forbidden = {T.dummy(t, u) for u in T.neighbors(t) if u not in subtree}
        opts = [c for c in T.matroids[t].circuits_sorted()
                if required <= c and not (c & forbidden)]
        if not opts:
            return None
        cands[t] = opts
    return cands


def enumerate_precircuits(T: MatroidTree) -> Iterator[Precircuit]:
    """All precircuits, grown over connected subtrees with dummy filtering."""
    from itertools import product

    for subtree in connected_subtrees(T):
        cands = _node_candidates(T, subtree)
        if cands is None:
            continue
        nodes = sorted(subtree)
        for combo in product(*(cands[n] for n in nodes)):
            yield Precircuit(subtree, tuple(zip(nodes, combo)))


def underlying_set(T: MatroidTree, p: Precircuit) -> frozenset:
    """Real elements used by a precircuit's choices."""
    choice = p.choice_map()
    if set(choice) != set(p.subtree):
        raise InconsistentPrecircuit("choice map does not cover the subtree")
    for t in sorted(p.subtree):
        circ = choice[t]
        if circ not in T.matroids[t].circuits:
            raise InconsistentPrecircuit(f"choice at {t!r} is not a circuit there")
        for u in T.neighbors(t):
            d = T.dummy(t, u)
            if (d in circ) != (u in p.subtree):
                raise InconsistentPrecircuit(
                    f"dummy {d!r} at node {t!r} disagrees with subtree membership of {u!r}")
    real = T.real_elements()
    used = set()
    for t in p.subtree:
        used |= choice[t]
    return frozenset(used) & real


def underlying_sets(T: MatroidTree) -> tuple[frozenset, ...]:
    """Distinct underlying sets of all precircuits (the empty set included)."""
    seen = {underlying_set(T, p) for p in enumerate_precircuits(T)}
    return tuple(sorted(seen, key=sort_key))


def enumerate_circuits(T: MatroidTree) -> tuple[frozenset, ...]:
    """Minimal nonempty underlying sets over all precircuits."""
    return antichain_minimal(s for s in underlying_sets(T) if s)


def glue(T: MatroidTree) -> Matroid:
    """The matroid glued from the tree; equals iterated 2-sums."""
    validate_tree(T)
    real = T.real_elements()
    try:
        return from_circuits(sorted(real), enumerate_circuits(T))
    except AxiomViolation as exc:  # pragma: no cover - impossible for valid trees
        raise NotAMatroid(str(exc)) from exc


def dual_tree(T: MatroidTree) -> MatroidTree:
    """Dualise every node matroid; dummies stay in place."""
    return MatroidTree(
        T.nodes,
        T.edges,
        {n: m.dual() for n, m in T.matroids.items()},
        dict(T.dummies),
    )


def tree_minor(T: MatroidTree, contract: Iterable[str], delete: Iterable[str]) -> MatroidTree:
    """Nodewise minor over the tree; only real elements may be named."""
    con = frozenset(contract)
    dele = frozenset(delete)
    if con & dele:
        raise OverlappingSets("contract and delete sets intersect")
    dummies = T.dummy_labels()
    touched = (con | dele) & dummies
    if touched:
        raise DummyTouched(f"dummies may not be contracted or deleted: {sorted(touched)}")
    real = T.real_elements()
    stray = (con | dele) - real
    if stray:
        raise DummyTouched(f"unknown elements: {sorted(stray)}")
    new_matroids = {}
    for n, m in T.matroids.items():
        gset = set(m.ground)
        new_matroids[n] = m.minor(con & gset, dele & gset)
    return MatroidTree(T.nodes, T.edges, new_matroids, dict(T.dummies))


@dataclass(frozen=True)
class NeverMeetOnceReport:
    """Exhaustive scan of precircuit/precocircuit underlying-set pairs."""

    precircuit_sets: int
    precocircuit_sets: int
    pairs: int
    max_intersection: int
    ok: bool

    def lines(self) -> list[str]:
        return [
            f"precircuit underlying sets: {self.precircuit_sets}",
            f"precocircuit underlying sets: {self.precocircuit_sets}",
            f"pairs checked: {self.pairs}",
            f"max intersection size: {self.max_intersection}",
            f"no pair meets in exactly one element: {'yes' if self.ok else 'NO'}",
        ]

    def __str__(self) -> str:
        return "\n".join(self.lines())


def check_never_meet_once(T: MatroidTree) -> NeverMeetOnceReport:
    """Assert no precircuit and precocircuit underlying sets meet exactly once."""
    validate_tree(T)
    sets_a = underlying_sets(T)
    sets_b = underlying_sets(dual_tree(T))
    max_int = 0
    pairs = 0
    for a in sets_a:
        for b in sets_b:
            pairs += 1
            size = len(a & b)
            max_int = max(max_int, size)
            if size == 1:
                raise LemmaViolation(
                    f"underlying sets {sorted(a)} and {sorted(b)} meet exactly once")
    return NeverMeetOnceReport(len(sets_a), len(sets_b), pairs, max_int, True)
