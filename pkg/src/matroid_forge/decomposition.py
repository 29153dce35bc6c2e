"""Adhesion-2 tree decompositions: torsos, canonical splitting, round trips.

A tree decomposition partitions the ground set over the nodes of a tree
so that every tree edge induces a separation of connectivity order at
most 2.  Torsos replace the far side of each incident edge by one dummy
element.  The canonical decomposition refines a connected matroid until
every torso is a circuit, a cocircuit or 3-connected, then merges
same-kind circuit/cocircuit neighbours; brute-force enumeration on
small instances certifies uniqueness.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations, permutations
from typing import Iterable, Iterator

from .errors import (
    InvalidDecomposition,
    NotConnected,
    PreconditionViolated,
    UniquenessFailure,
)
from .matroid import Matroid, antichain_minimal, from_circuits, sort_key
from .tree import MatroidTree, Precircuit, glue


class TorsoKind(Enum):
    CIRCUIT = "circuit"
    COCIRCUIT = "cocircuit"
    THREE_CONNECTED = "three_connected"


def classify_torso(m: Matroid) -> TorsoKind | None:
    """Circuit = whole-ground circuit, cocircuit = all pairs, else test
    3-connectivity; sizes below 3 stay unclassified."""
    n = len(m.ground)
    if n >= 3 and m.circuits == frozenset({frozenset(m.ground)}):
        return TorsoKind.CIRCUIT
    if n >= 3 and m.circuits == frozenset(frozenset(p) for p in combinations(m.ground, 2)):
        return TorsoKind.COCIRCUIT
    if m.is_three_connected():
        return TorsoKind.THREE_CONNECTED
    return None


@dataclass
class TreeDecomposition:
    """Tree plus a partition of the matroid's ground set over the nodes.

    ``parts`` may be empty at internal hub nodes.  ``below_policy``
    marks the degenerate single-node case for ground sets of size at
    most 2, which sits outside the torso-size-3 regime.
    """

    nodes: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    parts: dict[str, frozenset]
    below_policy: bool = False

    def __post_init__(self):
        self.nodes = tuple(sorted(self.nodes))
        self.edges = tuple(sorted(tuple(sorted(e)) for e in self.edges))
        adj: dict[str, list[str]] = {n: [] for n in self.nodes}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self._adj = {n: tuple(sorted(vs)) for n, vs in adj.items()}

    def neighbors(self, node: str) -> tuple[str, ...]:
        return self._adj[node]

    def side_nodes(self, v: str, u: str) -> frozenset:
        """Nodes of the component of the tree minus v that contains u."""
        seen = {v, u}
        stack = [u]
        while stack:
            n = stack.pop()
            for w in self._adj[n]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return frozenset(seen - {v})

    def side_union(self, v: str, u: str) -> frozenset:
        out = set()
        for n in self.side_nodes(v, u):
            out |= self.parts[n]
        return frozenset(out)


def dummy_prefix(N: Matroid) -> str:
    """A label prefix guaranteed fresh against the matroid's elements."""
    depth = 1
    while any(e.startswith("~" * depth) for e in N.ground):
        depth += 1
    return "~" * depth


def dummy_label(prefix: str, u: str, v: str) -> str:
    a, b = sorted((u, v))
    return f"{prefix}{a}|{b}"


def validate_decomposition(N: Matroid, D: TreeDecomposition) -> dict[tuple[str, str], int]:
    """Check the partition and every edge's connectivity order; returns
    the order per tree edge."""
    if set(D.parts) != set(D.nodes):
        raise InvalidDecomposition("parts must be indexed by the tree nodes")
    if len(D.edges) != max(0, len(D.nodes) - 1):
        raise InvalidDecomposition("edge count is not |nodes| - 1")
    if D.nodes:
        seen = {D.nodes[0]}
        stack = [D.nodes[0]]
        while stack:
            n = stack.pop()
            for w in D.neighbors(n):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if seen != set(D.nodes):
            raise InvalidDecomposition("tree is not connected")
    union = set()
    total = 0
    for p in D.parts.values():
        union |= p
        total += len(p)
    if union != set(N.ground) or total != len(N.ground):
        raise InvalidDecomposition("parts do not partition the ground set")
    orders = {}
    r = N.rank()
    for u, v in D.edges:
        side_u = D.side_union(v, u)
        side_v = D.side_union(u, v)
        if not side_u or not side_v:
            raise InvalidDecomposition(f"edge {(u, v)} has an empty side")
        lam = N.rank(side_u) + N.rank(side_v) - r
        if lam > 1:
            raise InvalidDecomposition(
                f"edge {(u, v)} induces connectivity order {lam + 1} > 2")
        orders[(u, v)] = lam + 1
    return orders


def torso(N: Matroid, D: TreeDecomposition, v: str) -> Matroid:
    """The matroid at a node: its part plus one dummy per incident edge.

    Circuits are the traces of circuits of N that are not confined to a
    single far side, each trace picking up the dummies of the sides it
    meets; the family is reduced to an antichain and validated.
    """
    if v not in D.parts:
        raise InvalidDecomposition(f"unknown node {v!r}")
    prefix = dummy_prefix(N)
    sides = {u: D.side_union(v, u) for u in D.neighbors(v)}
    ground = set(D.parts[v]) | {dummy_label(prefix, v, u) for u in D.neighbors(v)}
    traces = set()
    for o in N.circuits:
        if any(o <= side for side in sides.values()):
            continue
        trace = set(o & D.parts[v])
        for u, side in sides.items():
            if o & side:
                trace.add(dummy_label(prefix, v, u))
        if trace:
            traces.add(frozenset(trace))
    return from_circuits(sorted(ground), antichain_minimal(traces))


def decomposition_tree(N: Matroid, D: TreeDecomposition) -> MatroidTree:
    """Overlap-1 tree of torsos with the shared dummies in place."""
    validate_decomposition(N, D)
    prefix = dummy_prefix(N)
    matroids = {v: torso(N, D, v) for v in D.nodes}
    dummies = {tuple(sorted((u, v))): dummy_label(prefix, u, v) for u, v in D.edges}
    return MatroidTree(D.nodes, D.edges, matroids, dummies)


def circuit_precircuit(N: Matroid, D: TreeDecomposition, o: Iterable[str]) -> Precircuit:
    """The precircuit tracing a circuit of N through the torso tree."""
    oset = frozenset(o)
    if oset not in N.circuits:
        raise PreconditionViolated(f"{sorted(oset)} is not a circuit")
    prefix = dummy_prefix(N)
    subtree = []
    choices = {}
    for v in D.nodes:
        sides = {u: D.side_union(v, u) for u in D.neighbors(v)}
        if any(oset <= side for side in sides.values()):
            continue
        trace = set(oset & D.parts[v])
        for u, side in sides.items():
            if oset & side:
                trace.add(dummy_label(prefix, v, u))
        if not trace:
            continue
        subtree.append(v)
        choices[v] = frozenset(trace)
    return Precircuit(frozenset(subtree), tuple(sorted(choices.items())))


# ----------------------------------------------------------------------
# canonical decomposition
# ----------------------------------------------------------------------

def _fresh_node(existing: set) -> str:
    i = len(existing)
    while f"v{i}" in existing:
        i += 1
    return f"v{i}"


def _least_two_separation(m: Matroid):
    seps = m.two_separations()
    least = min(m.ground)

    def canon(s):
        return s.sideA if least in s.sideA else s.sideB

    return min(seps, key=lambda s: sort_key(canon(s))) if seps else None


def canonical_decompose(N: Matroid) -> TreeDecomposition:
    """Split along 2-separations until every torso is a circuit, a
    cocircuit or 3-connected, then merge same-kind adjacent circuit or
    cocircuit torsos.

    Splitting picks the lexicographically least 2-separation of the
    offending torso; the merge phase restores canonicity, which
    :func:`verify_canonical` certifies on small instances.
    """
    if not N.is_connected():
        raise NotConnected("canonical decomposition needs a connected matroid")
    if len(N.ground) < 1:
        raise PreconditionViolated("ground set must be nonempty")
    if len(N.ground) <= 2:
        return TreeDecomposition(("v0",), (), {"v0": frozenset(N.ground)},
                                 below_policy=True)
    prefix = dummy_prefix(N)
    D = TreeDecomposition(("v0",), (), {"v0": frozenset(N.ground)})

    while True:
        split_done = False
        for v in D.nodes:
            m_v = torso(N, D, v)
            if classify_torso(m_v) is not None:
                continue
            sep = _least_two_separation(m_v)
            if sep is None:
                raise AssertionError(
                    f"torso at {v!r} is unclassified yet has no 2-separation")
            least = min(m_v.ground)
            side_a = sep.sideA if least in sep.sideA else sep.sideB
            side_b = sep.sideB if least in sep.sideA else sep.sideA
            D = _split_node(N, D, v, side_a, side_b, prefix)
            split_done = True
            break
        if not split_done:
            break

    while True:
        kinds = {v: classify_torso(torso(N, D, v)) for v in D.nodes}
        merge_edge = None
        for u, v in D.edges:
            if kinds[u] == kinds[v] and kinds[u] in (TorsoKind.CIRCUIT, TorsoKind.COCIRCUIT):
                merge_edge = (u, v)
                break
        if merge_edge is None:
            break
        D = _merge_nodes(D, *merge_edge)
    validate_decomposition(N, D)
    return D


def _split_node(N: Matroid, D: TreeDecomposition, v: str,
                side_a: frozenset, side_b: frozenset, prefix: str) -> TreeDecomposition:
    existing = set(D.nodes)
    va = _fresh_node(existing)
    existing.add(va)
    vb = _fresh_node(existing)
    new_parts = {n: D.parts[n] for n in D.nodes if n != v}
    new_parts[va] = frozenset(D.parts[v] & side_a)
    new_parts[vb] = frozenset(D.parts[v] & side_b)
    new_edges = [e for e in D.edges if v not in e]
    for u in D.neighbors(v):
        d = dummy_label(prefix, v, u)
        target = va if d in side_a else vb
        new_edges.append(tuple(sorted((target, u))))
    new_edges.append(tuple(sorted((va, vb))))
    nodes = tuple(n for n in D.nodes if n != v) + (va, vb)
    return TreeDecomposition(nodes, tuple(new_edges), new_parts)


def _merge_nodes(D: TreeDecomposition, u: str, v: str) -> TreeDecomposition:
    keep, drop = sorted((u, v))
    new_parts = {n: D.parts[n] for n in D.nodes if n != drop}
    new_parts[keep] = D.parts[u] | D.parts[v]
    new_edges = []
    for a, b in D.edges:
        if {a, b} == {u, v}:
            continue
        a2 = keep if a == drop else a
        b2 = keep if b == drop else b
        new_edges.append(tuple(sorted((a2, b2))))
    nodes = tuple(n for n in D.nodes if n != drop)
    return TreeDecomposition(nodes, tuple(new_edges), new_parts)


def torso_kinds(N: Matroid, D: TreeDecomposition) -> dict[str, TorsoKind | None]:
    return {v: classify_torso(torso(N, D, v)) for v in D.nodes}


def reconstruct(T: MatroidTree) -> Matroid:
    """Glue the torso tree back into a matroid."""
    return glue(T)


# ----------------------------------------------------------------------
# uniqueness by brute force
# ----------------------------------------------------------------------

def decompositions_isomorphic(D1: TreeDecomposition, D2: TreeDecomposition) -> bool:
    """Tree isomorphism matching parts exactly (both decompose one matroid)."""
    if len(D1.nodes) != len(D2.nodes) or len(D1.edges) != len(D2.edges):
        return False
    parts1 = sorted((sort_key(D1.parts[n]) for n in D1.nodes))
    parts2 = sorted((sort_key(D2.parts[n]) for n in D2.nodes))
    if parts1 != parts2:
        return False
    nodes2 = list(D2.nodes)
    edge_set2 = set(D2.edges)
    for perm in permutations(nodes2):
        phi = dict(zip(D1.nodes, perm))
        if any(D1.parts[n] != D2.parts[phi[n]] for n in D1.nodes):
            continue
        if all(tuple(sorted((phi[a], phi[b]))) in edge_set2 for a, b in D1.edges):
            return True
    return False


def _set_partitions(items: list, max_blocks: int) -> Iterator[list[frozenset]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for sub in _set_partitions(rest, max_blocks):
        for i in range(len(sub)):
            yield sub[:i] + [sub[i] | {first}] + sub[i + 1:]
        if len(sub) < max_blocks:
            yield sub + [frozenset([first])]


def _labelled_trees(n: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """All labelled trees on 0..n-1 via Pruefer sequences."""
    import heapq
    from itertools import product as iproduct

    if n == 1:
        yield ()
        return
    if n == 2:
        yield ((0, 1),)
        return
    for seq in iproduct(range(n), repeat=n - 2):
        deg = [1] * n
        for x in seq:
            deg[x] += 1
        heap = [i for i in range(n) if deg[i] == 1]
        heapq.heapify(heap)
        edges = []
        for x in seq:
            leaf = heapq.heappop(heap)
            edges.append(tuple(sorted((leaf, x))))
            deg[leaf] -= 1
            deg[x] -= 1
            if deg[x] == 1:
                heapq.heappush(heap, x)
        u, v = heapq.heappop(heap), heapq.heappop(heap)
        edges.append(tuple(sorted((u, v))))
        yield tuple(sorted(edges))


def _candidate_decompositions(N: Matroid) -> Iterator[TreeDecomposition]:
    """Adhesion-2 decompositions with torso size >= 3, all torsos
    classified and no two same-kind circuit/cocircuit neighbours."""
    elems = sorted(N.ground)
    max_nodes = max(1, len(elems) - 2)
    for blocks in _set_partitions(elems, max_nodes):
        blocks = sorted((frozenset(b) for b in blocks), key=sort_key)
        j = len(blocks)
        for m in range(max(j, 1), max_nodes + 1):
            names = tuple(f"n{i}" for i in range(m))
            for tree in _labelled_trees(m):
                edges = tuple((names[a], names[b]) for a, b in tree)
                degree = {name: 0 for name in names}
                for a, b in edges:
                    degree[a] += 1
                    degree[b] += 1
                for placement in permutations(range(m), j):
                    parts = {names[i]: frozenset() for i in range(m)}
                    for bi, pos in enumerate(placement):
                        parts[names[pos]] = blocks[bi]
                    # torso size is |part| + degree; below 3 can never validate
                    if any(len(parts[n]) + degree[n] < 3 for n in names):
                        continue
                    D = TreeDecomposition(names, edges, parts)
                    try:
                        validate_decomposition(N, D)
                    except InvalidDecomposition:
                        continue
                    kinds = {}
                    ok = True
                    for v in names:
                        t = torso(N, D, v)
                        if len(t.ground) < 3:
                            ok = False
                            break
                        kinds[v] = classify_torso(t)
                        if kinds[v] is None:
                            ok = False
                            break
                    if not ok:
                        continue
                    if any(kinds[u] == kinds[v]
                           and kinds[u] in (TorsoKind.CIRCUIT, TorsoKind.COCIRCUIT)
                           for u, v in edges):
                        continue
                    yield D


@dataclass(frozen=True)
class UniquenessReport:
    candidates_found: int
    all_isomorphic: bool

    def __str__(self) -> str:
        return (f"{self.candidates_found} valid decompositions found; "
                f"all isomorphic to the canonical one: "
                f"{'yes' if self.all_isomorphic else 'NO'}")


def verify_canonical(N: Matroid, D: TreeDecomposition) -> UniquenessReport:
    """Enumerate every valid decomposition of a small matroid and check
    all are isomorphic to the given one."""
    if len(N.ground) > 6:
        raise PreconditionViolated("uniqueness brute force is limited to 6 elements")
    count = 0
    for cand in _candidate_decompositions(N):
        count += 1
        if not decompositions_isomorphic(cand, D):
            raise UniquenessFailure(
                f"found a valid decomposition with parts "
                f"{sorted(sorted(p) for p in cand.parts.values())} not isomorphic "
                f"to the canonical one")
    if count == 0:
        raise UniquenessFailure("enumeration found no valid decomposition at all")
    return UniquenessReport(count, True)
