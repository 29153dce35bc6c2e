"""Finite multigraphs: cycle and bond enumeration, shortcuts, reroutes.

Graphs carry labelled edges; loops and parallel edges are allowed.  The
cycle matroid of a graph has the edge sets of cycles as circuits and the
bonds (minimal nonempty edge cuts) as cocircuits.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

from .errors import AssertionFailure, NoPath, PreconditionViolated
from .matroid import Matroid, from_circuits, sort_key


@dataclass(frozen=True)
class FiniteGraph:
    """A finite multigraph with labelled edges.

    ``edges`` holds (label, u, v) triples; ``isolated`` lists vertices
    that carry no edge.  Labels must be unique.
    """

    edges: tuple[tuple[str, str, str], ...]
    isolated: frozenset = frozenset()

    def __post_init__(self):
        labels = [e[0] for e in self.edges]
        if len(labels) != len(set(labels)):
            raise PreconditionViolated("duplicate edge labels")

    @cached_property
    def vertices(self) -> tuple[str, ...]:
        vs = set(self.isolated)
        for _, u, v in self.edges:
            vs.add(u)
            vs.add(v)
        return tuple(sorted(vs))

    @cached_property
    def edge_by_label(self) -> dict[str, tuple[str, str]]:
        return {lbl: (u, v) for lbl, u, v in self.edges}

    @cached_property
    def adjacency(self) -> dict[str, tuple[tuple[str, str], ...]]:
        """vertex -> sorted (label, other endpoint) pairs, loops excluded."""
        adj: dict[str, list[tuple[str, str]]] = {v: [] for v in self.vertices}
        for lbl, u, v in self.edges:
            if u == v:
                continue
            adj[u].append((lbl, v))
            adj[v].append((lbl, u))
        return {v: tuple(sorted(pairs)) for v, pairs in adj.items()}

    def labels(self) -> tuple[str, ...]:
        return tuple(sorted(e[0] for e in self.edges))

    def subgraph_without_vertices(self, removed: Iterable[str]) -> "FiniteGraph":
        removed = set(removed)
        edges = tuple(e for e in self.edges if e[1] not in removed and e[2] not in removed)
        iso = frozenset(v for v in self.vertices if v not in removed) - \
            frozenset(v for e in edges for v in (e[1], e[2]))
        return FiniteGraph(edges, iso)

    def subgraph_without_edges(self, removed: Iterable[str]) -> "FiniteGraph":
        removed = set(removed)
        edges = tuple(e for e in self.edges if e[0] not in removed)
        iso = frozenset(self.vertices) - frozenset(v for e in edges for v in (e[1], e[2]))
        return FiniteGraph(edges, iso)


def graph_from_edges(edges: Iterable[tuple[str, str, str]],
                     isolated: Iterable[str] = ()) -> FiniteGraph:
    return FiniteGraph(tuple(sorted(edges)), frozenset(isolated))


def connected_components(G: FiniteGraph) -> tuple[frozenset, ...]:
    """Vertex sets of the connected components, deterministically ordered."""
    seen: set[str] = set()
    comps = []
    for start in G.vertices:
        if start in seen:
            continue
        stack, comp = [start], {start}
        seen.add(start)
        while stack:
            v = stack.pop()
            for _, w in G.adjacency[v]:
                if w not in comp:
                    comp.add(w)
                    seen.add(w)
                    stack.append(w)
        comps.append(frozenset(comp))
    return tuple(sorted(comps, key=sort_key))


def _induced_connected(G: FiniteGraph, vertices: frozenset) -> bool:
    if not vertices:
        return False
    start = min(vertices)
    comp = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for _, w in G.adjacency[v]:
            if w in vertices and w not in comp:
                comp.add(w)
                stack.append(w)
    return comp == set(vertices)


def cycles(G: FiniteGraph) -> tuple[frozenset, ...]:
    """Edge sets of all cycles: loops, parallel pairs and longer circuits."""
    found: set[frozenset] = set()
    for lbl, u, v in G.edges:
        if u == v:
            found.add(frozenset([lbl]))
    adj = G.adjacency
    for start in G.vertices:
        # simple cycles whose least vertex is `start`
        def walk(current: str, visited: set, used: list):
            for lbl, nxt in adj[current]:
                if lbl in visited_edges:
                    continue
                if nxt == start:
                    if len(used) >= 1:
                        found.add(frozenset(used + [lbl]))
                elif nxt > start and nxt not in visited:
                    visited.add(nxt)
                    visited_edges.add(lbl)
                    walk(nxt, visited, used + [lbl])
                    visited_edges.discard(lbl)
                    visited.discard(nxt)

        visited_edges: set = set()
        walk(start, {start}, [])
    return tuple(sorted(found, key=sort_key))


def bonds(G: FiniteGraph) -> tuple[frozenset, ...]:
    """Minimal nonempty edge cuts: both sides induce connected subgraphs."""
    out: set[frozenset] = set()
    for comp in connected_components(G):
        verts = sorted(comp)
        if len(verts) < 2:
            continue
        rest = verts[1:]
        for k in range(1 << len(rest)):
            side = {verts[0]} | {rest[i] for i in range(len(rest)) if k >> i & 1}
            other = comp - side
            if not other:
                continue
            if not _induced_connected(G, frozenset(side)):
                continue
            if not _induced_connected(G, other):
                continue
            cut = frozenset(lbl for lbl, u, v in G.edges
                            if u != v and (u in side) != (v in side))
            if cut:
                out.add(cut)
    return tuple(sorted(out, key=sort_key))


def from_graph(G: FiniteGraph) -> Matroid:
    """The cycle matroid of a finite multigraph, fully validated."""
    return from_circuits(G.labels(), cycles(G))


# ----------------------------------------------------------------------
# oriented circles, shortcut paths and reroutes
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class OrientedArcSpec:
    """A circle with two marked vertices and a traversal direction.

    The arc of interest runs from ``v`` to ``w`` following the circle's
    canonical orientation, or against it when ``reverse`` is set.  The
    circle may be an edge set or any object carrying a finite ``core``
    of edge labels (a symbolic set with no tail).
    """

    circle: object
    v: str
    w: str
    reverse: bool = False

    def circle_edges(self) -> frozenset:
        circle = self.circle
        if hasattr(circle, "core"):
            if getattr(circle, "tail_start", None) is not None:
                raise PreconditionViolated(
                    "finite-graph operations need a circle with no tail")
            return frozenset(circle.core)
        return frozenset(circle)


class CycleWalk:
    """A cycle as an explicit closed vertex/edge sequence.

    ``verts[i]`` connects to ``verts[i+1]`` through ``edge_seq[i]``
    (indices mod length).  Construction canonicalises the start and
    direction so equal edge sets give equal walks.
    """

    def __init__(self, verts: list[str], edge_seq: list[str]):
        if len(verts) != len(edge_seq):
            raise PreconditionViolated("walk length mismatch")
        self.verts = list(verts)
        self.edge_seq = list(edge_seq)

    @classmethod
    def from_edges(cls, G: FiniteGraph, circle: Iterable[str]) -> "CycleWalk":
        labels = sorted(set(circle))
        if not labels:
            raise PreconditionViolated("empty circle")
        by_label = G.edge_by_label
        for lbl in labels:
            if lbl not in by_label:
                raise PreconditionViolated(f"edge {lbl!r} not in graph")
        if len(labels) == 1:
            u, v = by_label[labels[0]]
            if u != v:
                raise PreconditionViolated("single non-loop edge is not a cycle")
            return cls([u], [labels[0]])
        incident: dict[str, list[str]] = {}
        for lbl in labels:
            u, v = by_label[lbl]
            if u == v:
                raise PreconditionViolated("loop edge inside a longer circle")
            incident.setdefault(u, []).append(lbl)
            incident.setdefault(v, []).append(lbl)
        for v, ls in incident.items():
            if len(ls) != 2:
                raise PreconditionViolated(f"vertex {v!r} has degree {len(ls)} on the circle")
        start = min(incident)
        first = min(incident[start])
        verts, edge_seq = [start], [first]
        prev_v, prev_e = start, first
        while True:
            u, v = by_label[prev_e]
            nxt = v if u == prev_v else u
            if nxt == start:
                break
            verts.append(nxt)
            a, b = incident[nxt]
            prev_e = b if a == prev_e else a
            edge_seq.append(prev_e)
            prev_v = nxt
        if len(verts) != len(labels):
            raise PreconditionViolated("edge set is not a single cycle")
        return cls(verts, edge_seq)

    def reversed(self) -> "CycleWalk":
        n = len(self.verts)
        verts = [self.verts[0]] + [self.verts[n - i] for i in range(1, n)]
        edge_seq = [self.edge_seq[n - 1 - i] for i in range(n)]
        return CycleWalk(verts, edge_seq)

    def edge_set(self) -> frozenset:
        return frozenset(self.edge_seq)

    def index(self, v: str) -> int:
        try:
            return self.verts.index(v)
        except ValueError:
            raise PreconditionViolated(f"vertex {v!r} not on the circle") from None

    def arc(self, x: str, y: str) -> tuple[list[str], list[str]]:
        """Edges and interior vertices from x to y along the orientation.

        With x == y the arc is the whole circle (never the trivial path).
        """
        i, j = self.index(x), self.index(y)
        n = len(self.verts)
        edges, interior = [], []
        k = i
        while True:
            edges.append(self.edge_seq[k])
            k = (k + 1) % n
            if k == j:
                break
            interior.append(self.verts[k])
        return edges, interior


def _bfs_path(G: FiniteGraph, allowed_vertices: frozenset, banned_edges: frozenset,
              src: str, dst: str) -> tuple[list[str], list[str]] | None:
    """Deterministic shortest path inside a vertex set; returns (edges, verts)."""
    if src == dst:
        return [], [src]
    prev: dict[str, tuple[str, str]] = {}
    seen = {src}
    frontier = [src]
    while frontier:
        nxt_frontier = []
        for v in frontier:
            for lbl, w in G.adjacency[v]:
                if lbl in banned_edges or w not in allowed_vertices or w in seen:
                    continue
                seen.add(w)
                prev[w] = (v, lbl)
                if w == dst:
                    path_e, path_v = [], [dst]
                    cur = dst
                    while cur != src:
                        p, lab = prev[cur]
                        path_e.append(lab)
                        path_v.append(p)
                        cur = p
                    return path_e[::-1], path_v[::-1]
                nxt_frontier.append(w)
        frontier = sorted(nxt_frontier)
    return None


@dataclass(frozen=True)
class ShortcutResult:
    path_edges: tuple[str, ...]
    path_vertices: tuple[str, ...]
    bond: frozenset | None


def shortcut_path(G: FiniteGraph, spec: OrientedArcSpec, S: Iterable[str]) -> ShortcutResult:
    """A v-w path avoiding S and the interior of the arc v->w.

    When the arc has at least two edges the result carries a bond of G
    separating (path ∪ opposite arc) from the arc's interior vertices.
    """
    S = frozenset(S)
    walk = CycleWalk.from_edges(G, spec.circle_edges())
    if spec.reverse:
        walk = walk.reversed()
    circle_vs = set(walk.verts)
    if S & circle_vs:
        raise PreconditionViolated("S must avoid the circle's vertices")
    if spec.v not in circle_vs or spec.w not in circle_vs:
        raise PreconditionViolated("endpoints must lie on the circle")
    if spec.v == spec.w:
        return ShortcutResult((), (spec.v,), None)
    arc_edges, arc_interior = walk.arc(spec.v, spec.w)
    if len(arc_edges) == 1:
        return ShortcutResult((arc_edges[0],), (spec.v, spec.w), None)
    e_v, e_w = arc_edges[0], arc_edges[-1]
    G2 = G.subgraph_without_vertices(S)
    M2 = from_graph(G2)
    b = M2.cocircuit_through_pair(walk.edge_set(), e_v, e_w)
    # v and w sit on the side of the opposite arc; the arc interior on the other
    remaining = G2.subgraph_without_edges(b)
    comp_v = None
    for comp in connected_components(remaining):
        if spec.v in comp:
            comp_v = comp
            break
    if comp_v is None or spec.w not in comp_v:
        raise NoPath("endpoints separated; circle is not a cycle of G - S")
    found = _bfs_path(G2, comp_v, frozenset(), spec.v, spec.w)
    if found is None:
        raise NoPath("no path inside the bond side containing both endpoints")
    path_e, path_v = found
    interior_set = set(arc_interior)
    far_side = None
    for comp in connected_components(remaining):
        if interior_set & comp:
            far_side = comp
            break
    if far_side is None or not interior_set <= far_side:
        raise NoPath("arc interior is not confined to one bond side")
    # grow the G-bond between the interior side and the component holding v
    comp_far = far_side
    rest = G.subgraph_without_vertices(comp_far)
    comp_near = None
    for comp in connected_components(rest):
        if spec.v in comp:
            comp_near = comp
            break
    bond = frozenset(lbl for lbl, u, v in G.edges
                     if u != v and ((u in comp_far and v in comp_near)
                                    or (v in comp_far and u in comp_near)))
    return ShortcutResult(tuple(path_e), tuple(path_v), bond)


def rerouted_circuit(G: FiniteGraph, N: Matroid, spec: OrientedArcSpec,
                     path_edges: Iterable[str]) -> frozenset:
    """Assert that (arc x->y) ∪ P is a circuit of N and return it.

    ``N`` must be a matroid on E(G) whose circuits are cycles of G and
    whose cocircuits are bonds of G.  The path may meet the circle in
    interior points of the opposite arc; the reduction peels those
    meetings off one at a time, asserting each intermediate circle.
    """
    if set(N.ground) != set(G.labels()):
        raise PreconditionViolated("matroid ground set must equal the edge set")
    cyc = set(cycles(G))
    if not set(N.circuits) <= cyc:
        raise PreconditionViolated("matroid circuits must be cycles of the graph")
    if not set(N.cocircuits()) <= set(bonds(G)):
        raise PreconditionViolated("matroid cocircuits must be bonds of the graph")
    walk = CycleWalk.from_edges(G, spec.circle_edges())
    if spec.reverse:
        walk = walk.reversed()
    return _reroute(G, N, walk, spec.v, spec.w, list(path_edges))


def _path_vertices(G: FiniteGraph, start: str, path_edges: list[str]) -> list[str]:
    verts = [start]
    cur = start
    for lbl in path_edges:
        u, v = G.edge_by_label[lbl]
        if cur == u:
            cur = v
        elif cur == v:
            cur = u
        else:
            raise PreconditionViolated(f"path edge {lbl!r} does not continue the walk")
        verts.append(cur)
    return verts


def _reroute(G: FiniteGraph, N: Matroid, walk: CycleWalk, x: str, y: str,
             path: list[str]) -> frozenset:
    if x == y:
        full = walk.edge_set()
        if full not in N.circuits:
            raise AssertionFailure(f"{sorted(full)} is not a circuit of the matroid")
        return full
    pverts = _path_vertices(G, x, path)
    if pverts[-1] != y:
        raise PreconditionViolated("path does not end at the arc's endpoint")
    if len(set(pverts)) != len(pverts):
        raise PreconditionViolated("path is not simple")
    arc_edges, arc_interior = walk.arc(x, y)
    if set(pverts) & set(arc_interior):
        raise PreconditionViolated("path meets the forward arc in interior points")
    circle_vs = set(walk.verts)
    meets = [(i, v) for i, v in enumerate(pverts) if v in circle_vs]
    if meets[0][1] != x:
        raise PreconditionViolated("path must start on the circle at x")
    if len(meets) == 2:
        result = frozenset(arc_edges) | frozenset(path)
        if result not in N.circuits:
            raise AssertionFailure(f"{sorted(result)} is not a circuit of the matroid")
        return result
    zi, z = meets[1]
    # replace the arc x..z (through y) by the path segment x..z, keeping
    # the orientation of the original circle on the preserved part
    seg = path[:zi]
    new_verts = []
    new_edges = []
    i = walk.index(x)
    n = len(walk.verts)
    k = i
    while True:
        new_verts.append(walk.verts[k])
        new_edges.append(walk.edge_seq[k])
        k = (k + 1) % n
        if walk.verts[k] == z:
            break
    seg_verts = pverts[:zi + 1]
    for j in range(len(seg) - 1, -1, -1):
        new_verts.append(seg_verts[j + 1])
        new_edges.append(seg[j])
    new_walk = CycleWalk(new_verts, new_edges)
    inner = frozenset(new_walk.edge_set())
    if inner not in N.circuits:
        raise AssertionFailure(f"{sorted(inner)} is not a circuit of the matroid")
    return _reroute(G, N, new_walk, z, y, path[zi:])
