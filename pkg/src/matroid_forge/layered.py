"""One-ended, eventually periodic layered graphs with symbolic edge sets.

A layered graph is a finite prefix plus a repeating layer whose left
boundary is glued onto the previous right boundary.  Finite objects live
in window unrollings; end-using double rays and infinite bonds are
carried as a finite core plus a per-layer tail pattern.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import LemmaViolation, PreconditionViolated
from .graphs import FiniteGraph, connected_components, cycles, graph_from_edges
from .matroid import sort_key


@dataclass(frozen=True)
class LayeredGraph:
    """Prefix graph plus a repeating layer with a fixed boundary interface.

    Copy ``k`` of the layer renames vertex v to ``v@k`` and edge e to
    ``e@k``; its left-boundary vertices are identified with the previous
    right boundary (the prefix right boundary for copy 1).
    """

    prefix: FiniteGraph
    prefix_right: tuple[str, ...]
    layer: FiniteGraph
    layer_left: tuple[str, ...]
    layer_right: tuple[str, ...]

    def __post_init__(self):
        if len(self.layer_left) != len(self.layer_right):
            raise PreconditionViolated("boundary interfaces must have equal size")
        if len(self.prefix_right) != len(self.layer_left):
            raise PreconditionViolated("prefix boundary must match the layer interface")
        if set(self.layer_left) & set(self.layer_right):
            raise PreconditionViolated("left and right boundary vertices must differ")
        for v in self.prefix_right:
            if v not in self.prefix.vertices:
                raise PreconditionViolated(f"boundary vertex {v!r} missing from the prefix")
        for v in self.layer_left + self.layer_right:
            if v not in self.layer.vertices:
                raise PreconditionViolated(f"boundary vertex {v!r} missing from the layer")
        for name in (list(self.prefix.vertices) + [e[0] for e in self.prefix.edges]
                     + list(self.layer.vertices) + [e[0] for e in self.layer.edges]):
            if "@" in name:
                raise PreconditionViolated(f"name {name!r} uses the reserved character @")

    def right_boundary(self, k: int) -> tuple[str, ...]:
        """Resolved names of the seam vertices after copy k (k = 0: prefix)."""
        if k == 0:
            return self.prefix_right
        return tuple(f"{v}@{k}" for v in self.layer_right)

    def _vertex_name(self, template: str, k: int) -> str:
        if template in self.layer_left:
            prev = self.right_boundary(k - 1)
            return prev[self.layer_left.index(template)]
        return f"{template}@{k}"

    def layer_edges_at(self, k: int) -> list[tuple[str, str, str]]:
        out = []
        for lbl, u, v in self.layer.edges:
            out.append((f"{lbl}@{k}", self._vertex_name(u, k), self._vertex_name(v, k)))
        return out

    def unroll(self, d: int) -> FiniteGraph:
        if d < 0:
            raise PreconditionViolated("depth must be nonnegative")
        edges = list(self.prefix.edges)
        iso = set(self.prefix.isolated)
        for k in range(1, d + 1):
            edges.extend(self.layer_edges_at(k))
        return graph_from_edges(edges, iso)

    def window_edge_labels(self, d: int) -> frozenset:
        out = set(e[0] for e in self.prefix.edges)
        for k in range(1, d + 1):
            out |= {f"{lbl}@{k}" for lbl, _, _ in self.layer.edges}
        return frozenset(out)

    def validate(self, probe: int = 4) -> None:
        """Desk-scale sanity: unrollings connected and one-ended."""
        for k in (1, probe):
            g = self.unroll(k)
            if len(connected_components(g)) != 1:
                raise PreconditionViolated("unrolling is not connected")
        g = self.unroll(probe + 2)
        early = set(self.prefix.vertices)
        for k in range(1, 3):
            for lbl, u, v in self.layer_edges_at(k):
                early.add(u)
                early.add(v)
        far = g.subgraph_without_vertices(early)
        comps = [c for c in connected_components(far) if len(c) > 0]
        touching = [c for c in comps
                    if any(v in c for v in self.right_boundary(probe + 2))]
        if len(touching) != 1:
            raise PreconditionViolated("removing a finite ball leaves several infinite parts; "
                                       "the unrolling is not one-ended")


@dataclass(frozen=True)
class SymbolicEdgeSet:
    """A finite or eventually periodic edge set of the infinite unrolling.

    ``core`` holds resolved labels; from copy ``tail_start`` on, copy
    ``tail_start + i`` contributes ``pattern[i % len(pattern)]``
    (template labels).  A ``None`` tail start means the set is finite.
    """

    core: frozenset
    tail_start: int | None = None
    pattern: tuple[frozenset, ...] = ()

    def __post_init__(self):
        if self.tail_start is None:
            if self.pattern:
                raise PreconditionViolated("pattern requires a tail start")
        elif not self.pattern or all(not p for p in self.pattern):
            object.__setattr__(self, "tail_start", None)
            object.__setattr__(self, "pattern", ())

    @property
    def is_finite(self) -> bool:
        return self.tail_start is None

    @property
    def uses_end(self) -> bool:
        return self.tail_start is not None

    def realize(self, LG: LayeredGraph, d: int) -> frozenset:
        out = set(self.core)
        if self.tail_start is not None:
            for k in range(self.tail_start, d + 1):
                pat = self.pattern[(k - self.tail_start) % len(self.pattern)]
                out |= {f"{lbl}@{k}" for lbl in pat}
        return frozenset(out)

    def _max_core_copy(self) -> int:
        best = 0
        for lbl in self.core:
            if "@" in lbl:
                best = max(best, int(lbl.rsplit("@", 1)[1]))
        return best

    def intersection_size(self, other: "SymbolicEdgeSet", LG: LayeredGraph) -> int | float:
        """Exact intersection size; ``inf`` when tails overlap per period."""
        if self.is_finite and other.is_finite:
            return len(self.core & other.core)
        if self.is_finite:
            horizon = self._max_core_copy() + 1
            return len(self.core & other.realize(LG, horizon))
        if other.is_finite:
            return other.intersection_size(self, LG)
        pa, pb = len(self.pattern), len(other.pattern)
        cycle = math.lcm(pa, pb)
        start = max(self.tail_start, other.tail_start)
        per_cycle = 0
        for k in range(start, start + cycle):
            sa = self.pattern[(k - self.tail_start) % pa]
            sb = other.pattern[(k - other.tail_start) % pb]
            per_cycle += len(sa & sb)
        horizon = max(self._max_core_copy(), other._max_core_copy(), start + cycle)
        finite_part = len(self.realize(LG, horizon) & other.realize(LG, horizon))
        if per_cycle > 0:
            return math.inf
        return finite_part

    def sort_token(self):
        return (0 if self.is_finite else 1, sort_key(self.core),
                self.tail_start or 0, tuple(sort_key(p) for p in self.pattern))


# ----------------------------------------------------------------------
# symbolic circuit and bond families
# ----------------------------------------------------------------------

def _pattern_graph(LG: LayeredGraph, pattern: frozenset, start: int, end: int) -> FiniteGraph:
    edges = []
    for k in range(start, end + 1):
        for lbl, u, v in LG.layer_edges_at(k):
            if lbl.rsplit("@", 1)[0] in pattern:
                edges.append((lbl, u, v))
    return graph_from_edges(edges)


def _steady_double_ray_patterns(LG: LayeredGraph) -> list[frozenset]:
    """Layer-edge subsets whose infinite repetition forms exactly two
    rightward strands with all degrees 0 or 2 and no repeated cycles."""
    labels = [e[0] for e in LG.layer.edges]
    good = []
    probe_lo, probe_hi = 1, 6
    for k in range(1, 1 << len(labels)):
        pattern = frozenset(labels[i] for i in range(len(labels)) if k >> i & 1)
        g = _pattern_graph(LG, pattern, probe_lo, probe_hi)
        if not g.edges:
            continue
        deg: dict[str, int] = {}
        for lbl, u, v in g.edges:
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + (2 if u == v else 1)
        # interior copies must be steady: degree 0 or 2 everywhere
        interior_bad = False
        for vtx, dv in deg.items():
            if "@" in vtx:
                copy = int(vtx.rsplit("@", 1)[1])
                if 2 <= copy <= probe_hi - 2 and dv not in (0, 2):
                    interior_bad = True
                    break
        if interior_bad:
            continue
        if cycles(g):
            continue
        inner = g.subgraph_without_vertices(
            [v for v in g.vertices if "@" not in v or
             int(v.rsplit("@", 1)[1]) < 2])
        comps = [c for c in connected_components(inner)
                 if any(inner.adjacency[v] for v in c)]
        last_seam = set(LG.right_boundary(probe_hi))
        through = [c for c in comps if c & last_seam]
        if len(through) != 2 or len(comps) != len(through):
            continue
        good.append(pattern)
    return good


def _strand_entries(LG: LayeredGraph, pattern: frozenset, start: int) -> list[str] | None:
    """The two vertices where the repeated pattern's strands begin."""
    g = _pattern_graph(LG, pattern, start, start + 4)
    deg: dict[str, int] = {}
    for lbl, u, v in g.edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + (2 if u == v else 1)
    seam = set(LG.right_boundary(start - 1))
    entries = sorted(v for v in deg if v in seam and deg[v] == 1)
    if len(entries) != 2:
        return None
    return entries


def _simple_paths(G: FiniteGraph, src: str, dst: str, banned_vertices: frozenset,
                  banned_edges: frozenset) -> Iterator[tuple[frozenset, frozenset]]:
    """All simple src-dst paths avoiding the given vertices and edges;
    yields (edge set, interior vertex set)."""
    def walk(v: str, visited: set, edges: list):
        if v == dst:
            yield frozenset(edges), frozenset(visited) - {src, dst}
            return
        for lbl, w in G.adjacency[v]:
            if lbl in banned_edges or w in banned_vertices or w in visited:
                continue
            visited.add(w)
            edges.append(lbl)
            yield from walk(w, visited, edges)
            edges.pop()
            visited.discard(w)

    if src == dst:
        return
    yield from walk(src, {src}, [])


def layered_circuits(LG: LayeredGraph, psi: str, d: int) -> tuple[SymbolicEdgeSet, ...]:
    """Circuits visible at the window: finite cycles, plus symbolic
    double rays toward the end when ``psi`` is ``"end"``."""
    if psi not in ("empty", "end"):
        raise PreconditionViolated("psi must be 'empty' or 'end'")
    out = {SymbolicEdgeSet(c) for c in cycles(LG.unroll(d))}
    if psi == "end":
        window = LG.unroll(d)
        for pattern in _steady_double_ray_patterns(LG):
            for s in range(1, d + 1):
                entries = _strand_entries(LG, pattern, s)
                if entries is None:
                    continue
                a, b = entries
                strand_graph = _pattern_graph(LG, pattern, s, d + 4)
                strand_vertices = frozenset(
                    v for v in strand_graph.vertices
                    if strand_graph.adjacency[v]) - {a, b}
                early_edges = frozenset(
                    lbl for lbl in window.labels()
                    if "@" not in lbl or int(lbl.rsplit("@", 1)[1]) < s)
                banned_edges = frozenset(window.labels()) - early_edges
                for core, _interior in _simple_paths(window, a, b,
                                                     strand_vertices, banned_edges):
                    out.add(SymbolicEdgeSet(core, s, (pattern,)))
    dedup: dict[tuple, SymbolicEdgeSet] = {}
    for s in out:
        key = (sort_key(s.realize(LG, d + 3)), s.tail_start is not None)
        dedup.setdefault(key, s)
    return tuple(sorted(dedup.values(), key=SymbolicEdgeSet.sort_token))


def _finite_bonds(LG: LayeredGraph, d: int) -> set[frozenset]:
    """Finite bonds of the infinite graph whose edges sit in the window."""
    probe = LG.unroll(d + 2)
    window_labels = LG.window_edge_labels(d)
    allowed = [v for v in probe.vertices
               if "@" not in v or int(v.rsplit("@", 1)[1]) <= d]
    out = set()
    n = len(allowed)
    for k in range(1, 1 << n):
        side = frozenset(allowed[i] for i in range(n) if k >> i & 1)
        cut = set()
        ok = True
        for lbl, u, v in probe.edges:
            if u == v:
                continue
            if (u in side) != (v in side):
                if lbl not in window_labels:
                    ok = False
                    break
                cut.add(lbl)
        if not ok or not cut:
            continue
        sub_side = probe.subgraph_without_vertices(set(probe.vertices) - side)
        if len(connected_components(sub_side)) != 1:
            continue
        rest = probe.subgraph_without_vertices(side)
        comps = connected_components(rest)
        if len([c for c in comps if c]) != 1:
            continue
        out.add(frozenset(cut))
    return out


def _steady_bond_patterns(LG: LayeredGraph) -> list[dict[str, int]]:
    """Seam-consistent two-colourings of the layer template with both
    realized sides connected; crossings give the per-layer bond pattern."""
    verts = sorted(LG.layer.vertices)
    out = []
    seen_patterns = set()
    for k in range(1 << len(verts)):
        colour = {verts[i]: (k >> i & 1) for i in range(len(verts))}
        if any(colour[l] != colour[r]
               for l, r in zip(LG.layer_left, LG.layer_right)):
            continue
        crossing = frozenset(lbl for lbl, u, v in LG.layer.edges
                             if u != v and colour[u] != colour[v])
        if not crossing:
            continue
        # each side's realized subgraph must stay connected in steady state
        probe = _colour_probe(LG, colour)
        if probe is None:
            continue
        key = crossing
        if key in seen_patterns:
            continue
        seen_patterns.add(key)
        out.append(colour)
    return out


def _colour_probe(LG: LayeredGraph, colour: dict[str, int]):
    lo, hi = 1, 6
    g = LG.unroll(hi)
    resolved: dict[str, int] = {}
    for k in range(lo, hi + 1):
        for template in LG.layer.vertices:
            resolved[LG._vertex_name(template, k)] = colour[template]
    for side in (0, 1):
        side_vs = frozenset(v for v, c in resolved.items() if c == side
                            and _copy_of(v, LG) >= 2)
        if not side_vs:
            return None
        sub = g.subgraph_without_vertices(set(g.vertices) - side_vs)
        comps = [c for c in connected_components(sub) if c]
        if len(comps) != 1:
            return None
    return colour


def _copy_of(vertex: str, LG: LayeredGraph) -> int:
    if "@" in vertex:
        return int(vertex.rsplit("@", 1)[1])
    return 0


def layered_bonds(LG: LayeredGraph, psi: str, d: int) -> tuple[SymbolicEdgeSet, ...]:
    """Bonds matching the gluing: finite ones only for ``psi = "end"``,
    finite plus periodic end-using ones for ``psi = "empty"``."""
    if psi not in ("empty", "end"):
        raise PreconditionViolated("psi must be 'empty' or 'end'")
    out = {SymbolicEdgeSet(b) for b in _finite_bonds(LG, d)}
    if psi == "empty":
        probe_depth = d + 4
        probe = LG.unroll(probe_depth)
        for colour in _steady_bond_patterns(LG):
            crossing = frozenset(lbl for lbl, u, v in LG.layer.edges
                                 if u != v and colour[u] != colour[v])
            for s in range(1, d + 1):
                free = [v for v in probe.vertices if _copy_of(v, LG) < s
                        and v not in LG.right_boundary(s - 1)]
                seam = list(LG.right_boundary(s - 1))
                fixed: dict[str, int] = {}
                for k in range(s, probe_depth + 1):
                    for template in LG.layer.vertices:
                        fixed[LG._vertex_name(template, k)] = colour[template]
                for i, v in enumerate(seam):
                    fixed[v] = colour[LG.layer_left[i]]
                for k in range(1 << len(free)):
                    assign = dict(fixed)
                    for i, v in enumerate(free):
                        assign[v] = k >> i & 1
                    sides = {0: set(), 1: set()}
                    for v, c in assign.items():
                        sides[c].add(v)
                    if not sides[0] or not sides[1]:
                        continue
                    good = True
                    for side_vs in sides.values():
                        sub = probe.subgraph_without_vertices(
                            set(probe.vertices) - side_vs)
                        if len([c for c in connected_components(sub) if c]) != 1:
                            good = False
                            break
                    if not good:
                        continue
                    core = frozenset(
                        lbl for lbl, u, v in probe.edges
                        if u != v and assign[u] != assign[v]
                        and _copy_of_label(lbl) < s)
                    out.add(SymbolicEdgeSet(core, s, (crossing,)))
    dedup: dict[tuple, SymbolicEdgeSet] = {}
    for s in out:
        key = (sort_key(s.realize(LG, d + 3)), s.tail_start is not None)
        dedup.setdefault(key, s)
    return tuple(sorted(dedup.values(), key=SymbolicEdgeSet.sort_token))


def _copy_of_label(label: str) -> int:
    if "@" in label:
        return int(label.rsplit("@", 1)[1])
    return 0


# ----------------------------------------------------------------------
# reports
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class GraphMeetOnceReport:
    psi: str
    depth: int
    circuits: int
    bonds: int
    pairs: int
    max_finite_intersection: int
    ok: bool

    def lines(self) -> list[str]:
        return [
            f"psi={self.psi} depth={self.depth}",
            f"circuits: {self.circuits}, bonds: {self.bonds}, pairs: {self.pairs}",
            f"max finite intersection: {self.max_finite_intersection}",
            f"no pair meets in exactly one edge: {'yes' if self.ok else 'NO'}",
        ]

    def __str__(self) -> str:
        return "\n".join(self.lines())


def check_never_meet_once_graph(LG: LayeredGraph, psi: str, d: int) -> GraphMeetOnceReport:
    """All circuit/bond pairs of one gluing intersected symbolically."""
    circs = layered_circuits(LG, psi, d)
    bnds = layered_bonds(LG, psi, d)
    pairs = 0
    best = 0
    for c in circs:
        for b in bnds:
            pairs += 1
            size = c.intersection_size(b, LG)
            if size == 1:
                raise LemmaViolation(
                    f"circuit {sorted(c.core)}... meets bond {sorted(b.core)}... "
                    f"in exactly one edge")
            if size is not math.inf:
                best = max(best, int(size))
    return GraphMeetOnceReport(psi, d, len(circs), len(bnds), pairs, best, True)


@dataclass(frozen=True)
class EndDisjointnessReport:
    psi: str
    depth: int
    circuits_using_end: int
    bonds_using_end: int
    disjoint: bool

    def lines(self) -> list[str]:
        return [
            f"psi={self.psi} depth={self.depth}",
            f"circuits using the end: {self.circuits_using_end}",
            f"bonds using the end: {self.bonds_using_end}",
            f"no end shared by a circuit and a bond: {'yes' if self.disjoint else 'NO'}",
        ]

    def __str__(self) -> str:
        return "\n".join(self.lines())


def end_disjointness_report(LG: LayeredGraph, psi: str, d: int) -> EndDisjointnessReport:
    """No circuit and bond of one gluing may both reach toward the end."""
    circs = layered_circuits(LG, psi, d)
    bnds = layered_bonds(LG, psi, d)
    c_end = sum(1 for c in circs if c.uses_end)
    b_end = sum(1 for b in bnds if b.uses_end)
    disjoint = not (c_end > 0 and b_end > 0)
    if not disjoint:
        raise LemmaViolation(
            f"psi={psi}: a circuit and a bond both use the end")
    return EndDisjointnessReport(psi, d, c_end, b_end, disjoint)


# ----------------------------------------------------------------------
# the ladder instance
# ----------------------------------------------------------------------

def ladder() -> LayeredGraph:
    """One-ended ladder: two rails and a rung per layer."""
    prefix = graph_from_edges([("rung0", "u0", "v0")])
    layer = graph_from_edges([
        ("top", "uL", "uR"),
        ("bot", "vL", "vR"),
        ("rung", "uR", "vR"),
    ])
    return LayeredGraph(prefix, ("u0", "v0"), layer, ("uL", "vL"), ("uR", "vR"))


def ray_tail_graph() -> LayeredGraph:
    """A finite kite with an infinite tail ray: prefix-only circuits."""
    prefix = graph_from_edges([
        ("a", "p", "q"),
        ("b", "q", "r"),
        ("c", "r", "p"),
        ("d", "r", "x0"),
    ])
    layer = graph_from_edges([("t", "xL", "xR")])
    return LayeredGraph(prefix, ("x0",), layer, ("xL",), ("xR",))
