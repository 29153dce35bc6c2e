"""Built-in desk-scale instances: named matroids, graphs, trees and rays.

The graphic family realises "all small graphs" as every connected simple
graph on up to five vertices with at most eight edges (one per
isomorphism class) plus a fixed list of multigraphs with loops and
parallel edges.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations

from .graphs import FiniteGraph, from_graph, graph_from_edges
from .layered import LayeredGraph, ladder, ray_tail_graph
from .matroid import Matroid, from_circuits, uniform
from .ray import RayTree, c4_ray, q_ray
from .tree import MatroidTree


# ----------------------------------------------------------------------
# named graphs
# ----------------------------------------------------------------------

def triangle() -> FiniteGraph:
    return graph_from_edges([("ab", "a", "b"), ("bc", "b", "c"), ("ca", "c", "a")])


def k4() -> FiniteGraph:
    return graph_from_edges([
        ("12", "1", "2"), ("13", "1", "3"), ("14", "1", "4"),
        ("23", "2", "3"), ("24", "2", "4"), ("34", "3", "4"),
    ])


def k4_minus_edge() -> FiniteGraph:
    """Two triangles sharing one edge; five edges."""
    return graph_from_edges([
        ("12", "1", "2"), ("13", "1", "3"), ("14", "1", "4"),
        ("23", "2", "3"), ("24", "2", "4"),
    ])


def wheel4() -> FiniteGraph:
    """Four rim vertices around a hub; eight edges."""
    rim = [("r12", "1", "2"), ("r23", "2", "3"), ("r34", "3", "4"), ("r41", "4", "1")]
    spokes = [(f"s{i}", "h", str(i)) for i in range(1, 5)]
    return graph_from_edges(rim + spokes)


def cycle_graph(n: int) -> FiniteGraph:
    edges = [(f"c{i}", f"v{i}", f"v{(i + 1) % n}") for i in range(n)]
    return graph_from_edges(edges)


def theta_graph() -> FiniteGraph:
    """Two hubs joined by three internally disjoint two-edge paths."""
    edges = []
    for i in range(1, 4):
        edges.append((f"a{i}", "u", f"x{i}"))
        edges.append((f"b{i}", f"x{i}", "w"))
    return graph_from_edges(edges)


def named_multigraphs() -> list[tuple[str, FiniteGraph]]:
    return [
        ("single-loop", graph_from_edges([("l", "v", "v")])),
        ("digon", graph_from_edges([("e1", "u", "v"), ("e2", "u", "v")])),
        ("triple-edge", graph_from_edges([("e1", "u", "v"), ("e2", "u", "v"),
                                          ("e3", "u", "v")])),
        ("loop-plus-edge", graph_from_edges([("l", "u", "u"), ("e", "u", "v")])),
        ("triangle-with-loop", graph_from_edges([
            ("ab", "a", "b"), ("bc", "b", "c"), ("ca", "c", "a"), ("l", "a", "a")])),
        ("triangle-doubled-edge", graph_from_edges([
            ("ab", "a", "b"), ("ab2", "a", "b"), ("bc", "b", "c"), ("ca", "c", "a")])),
        ("k4-doubled-edge", graph_from_edges([
            ("12", "1", "2"), ("12x", "1", "2"), ("13", "1", "3"), ("14", "1", "4"),
            ("23", "2", "3"), ("24", "2", "4"), ("34", "3", "4")])),
        ("square-doubled-edge", graph_from_edges([
            ("e1", "1", "2"), ("e1x", "1", "2"), ("e2", "2", "3"),
            ("e3", "3", "4"), ("e4", "4", "1")])),
    ]


@lru_cache(maxsize=None)
def connected_simple_graphs(max_vertices: int = 5, max_edges: int = 8) -> tuple[FiniteGraph, ...]:
    """One representative per isomorphism class of connected simple graphs."""
    out = []
    for n in range(1, max_vertices + 1):
        pairs = list(combinations(range(n), 2))
        seen = set()
        for k in range(1 << len(pairs)):
            edges = [pairs[i] for i in range(len(pairs)) if k >> i & 1]
            if len(edges) > max_edges:
                continue
            if n == 1:
                if edges:
                    continue
            else:
                touched = {v for e in edges for v in e}
                if touched != set(range(n)):
                    continue
                if not _connected_on(n, edges):
                    continue
            canon = _canonical_form(n, edges)
            if canon in seen:
                continue
            seen.add(canon)
            g = graph_from_edges(
                [(f"{u}-{v}", f"v{u}", f"v{v}") for u, v in edges],
                isolated=[f"v{i}" for i in range(n)] if not edges else [],
            )
            out.append(g)
    return tuple(out)


def _connected_on(n: int, edges: list[tuple[int, int]]) -> bool:
    adj = {i: set() for i in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == n


def _canonical_form(n: int, edges: list[tuple[int, int]]):
    best = None
    for perm in permutations(range(n)):
        mapped = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in edges))
        if best is None or mapped < best:
            best = mapped
    return n, best


def graphic_corpus() -> list[tuple[str, FiniteGraph]]:
    """All small graphs feeding the graphic part of the matroid corpus."""
    out = []
    for i, g in enumerate(connected_simple_graphs()):
        out.append((f"simple-{i:03d}-v{len(g.vertices)}-e{len(g.edges)}", g))
    out.extend(named_multigraphs())
    return out


# ----------------------------------------------------------------------
# named matroids
# ----------------------------------------------------------------------

def fano() -> Matroid:
    """The seven-point plane from its circuit list: 7 lines plus their
    complements."""
    lines = [
        {"1", "2", "3"}, {"1", "4", "5"}, {"1", "6", "7"},
        {"2", "4", "6"}, {"2", "5", "7"}, {"3", "4", "7"}, {"3", "5", "6"},
    ]
    ground = [str(i) for i in range(1, 8)]
    circuits = [frozenset(l) for l in lines]
    circuits += [frozenset(set(ground) - l) for l in lines]
    return from_circuits(ground, circuits)


def matroid_corpus() -> list[tuple[str, Matroid]]:
    """Uniform matroids up to 7 elements, the graphic family, the Fano
    plane, and the named small graphs."""
    out: list[tuple[str, Matroid]] = []
    for n in range(0, 8):
        for r in range(0, n + 1):
            out.append((f"U_{r}_{n}", uniform(r, n)))
    for name, g in graphic_corpus():
        out.append((f"graphic-{name}", from_graph(g)))
    out.append(("fano", fano()))
    out.append(("m-k4", from_graph(k4())))
    out.append(("m-k4-minus-edge", from_graph(k4_minus_edge())))
    out.append(("m-wheel4", from_graph(wheel4())))
    out.append(("m-theta", from_graph(theta_graph())))
    return out


def connected_matroid_corpus(max_elements: int = 9) -> list[tuple[str, Matroid]]:
    seen = set()
    out = []
    for name, m in matroid_corpus():
        if len(m.ground) < 1 or len(m.ground) > max_elements:
            continue
        if not m.is_connected():
            continue
        key = (m.ground, m.circuits)
        if key in seen:
            continue
        seen.add(key)
        out.append((name, m))
    return out


# ----------------------------------------------------------------------
# mutated circuit families: each fails validation at a known axiom
# ----------------------------------------------------------------------

def mutated_families() -> list[tuple[str, list[str], list[frozenset], str]]:
    """(name, ground, circuits, expected axiom) for twenty bad families."""
    f = frozenset
    fam: list[tuple[str, list[str], list[frozenset], str]] = [
        ("empty-circuit", ["a", "b"], [f()], "C1"),
        ("empty-among-good", ["a", "b", "c"], [f("ab"), f()], "C1"),
        ("empty-only", ["a"], [f()], "C1"),
        ("nested-pair", ["a", "b"], [f("a"), f("ab")], "C2"),
        ("nested-triangle", ["a", "b", "c"], [f("ab"), f("abc")], "C2"),
        ("nested-deep", ["a", "b", "c", "d", "e"],
         [f("abc"), f("abcd"), f("e")], "C2"),
        ("duplicate-cover", ["a", "b", "c", "d"], [f("ab"), f("abcd")], "C2"),
        ("nested-quad", ["a", "b", "c", "d"], [f("bcd"), f("abcd")], "C2"),
        ("chain-of-pairs", ["a", "b", "c"], [f("ab"), f("bc")], "C3"),
        ("triangle-plus-pair", ["a", "b", "c", "d"], [f("abc"), f("cd")], "C3"),
        ("two-k4-triangles", ["p", "q", "r", "s", "t"],
         [frozenset({"p", "q", "r"}), frozenset({"p", "s", "t"})], "C3"),
        ("k4-missing-square", ["1", "2", "3", "4", "5", "6"],
         # triangles of K4 with edges 1=12 2=13 3=14 4=23 5=24 6=34, one
         # four-cycle deleted
         [frozenset({"1", "2", "4"}), frozenset({"1", "3", "5"}),
          frozenset({"2", "3", "6"}), frozenset({"4", "5", "6"}),
          frozenset({"1", "6", "2", "5"})], "C3"),
        ("sibling-triangles", ["a", "b", "c", "d"], [f("abc"), f("abd")], "C3"),
        ("fan-of-pairs", ["a", "b", "c"], [f("ab"), f("ac")], "C3"),
        ("triangle-cap", ["a", "b", "c", "d"],
         [f("abc"), f("bcd"), f("ad")], "C3"),
        ("triangle-pair-mix", ["a", "b", "c", "d"],
         [f("abc"), f("abd"), f("cd")], "C3"),
        ("star-of-pairs", ["a", "b", "c", "d"],
         [f("ab"), f("ac"), f("ad")], "C3"),
        ("pair-on-triangle", ["a", "b", "c", "d"], [f("abc"), f("ad")], "C3"),
        ("disjoint-quads-overlap", ["a", "b", "c", "d", "e", "f", "g"],
         [f("abcd"), f("defg")], "C3"),
        ("shifted-quads", ["a", "b", "c", "d", "e"],
         [f("abcd"), f("abce")], "C3"),
    ]
    return [(name, ground, [frozenset(c) for c in circuits], axiom)
            for name, ground, circuits, axiom in fam]


# ----------------------------------------------------------------------
# trees of matroids
# ----------------------------------------------------------------------

def make_tree(nodes: dict[str, Matroid], edges: list[tuple[str, str, str]]) -> MatroidTree:
    """Build a tree from node matroids and (u, v, dummy) edge triples."""
    return MatroidTree(
        tuple(nodes),
        tuple((u, v) for u, v, _ in edges),
        dict(nodes),
        {tuple(sorted((u, v))): d for u, v, d in edges},
    )


def two_triangle_path() -> MatroidTree:
    t1 = uniform(2, 3, ["a", "b", "e"])
    t2 = uniform(2, 3, ["e", "c", "d"])
    return make_tree({"n1": t1, "n2": t2}, [("n1", "n2", "e")])


def three_triangle_path() -> MatroidTree:
    t1 = uniform(2, 3, ["a", "b", "s1"])
    t2 = uniform(2, 3, ["s1", "c", "s2"])
    t3 = uniform(2, 3, ["s2", "d", "f"])
    return make_tree({"n1": t1, "n2": t2, "n3": t3},
                     [("n1", "n2", "s1"), ("n2", "n3", "s2")])


def triangle_star() -> MatroidTree:
    """Three triangles around a central triangle made of dummies."""
    center = uniform(2, 3, ["d1", "d2", "d3"])
    leaves = {f"l{i}": uniform(2, 3, [f"d{i}", f"x{i}", f"y{i}"]) for i in (1, 2, 3)}
    nodes = {"c": center, **leaves}
    edges = [("c", f"l{i}", f"d{i}") for i in (1, 2, 3)]
    return make_tree(nodes, edges)


def k4_pair_tree() -> MatroidTree:
    base = from_graph(k4())
    left = base.relabel({e: ("sh" if e == "34" else f"L{e}") for e in base.ground})
    right = base.relabel({e: ("sh" if e == "12" else f"R{e}") for e in base.ground})
    return make_tree({"n1": left, "n2": right}, [("n1", "n2", "sh")])


def mixed_path_tree() -> MatroidTree:
    base = from_graph(k4())
    t1 = base.relabel({e: ("m" if e == "34" else f"k{e}") for e in base.ground})
    t2 = uniform(2, 4, ["m", "p", "q", "r"])
    return make_tree({"n1": t1, "n2": t2}, [("n1", "n2", "m")])


def single_node_tree() -> MatroidTree:
    return make_tree({"n1": uniform(2, 3, ["a", "b", "c"])}, [])


def corpus_trees() -> list[tuple[str, MatroidTree]]:
    return [
        ("single-triangle", single_node_tree()),
        ("two-triangle-path", two_triangle_path()),
        ("three-triangle-path", three_triangle_path()),
        ("triangle-star", triangle_star()),
        ("k4-pair", k4_pair_tree()),
        ("mixed-path", mixed_path_tree()),
    ]


# ----------------------------------------------------------------------
# rays and layered graphs
# ----------------------------------------------------------------------

def parallel_dummy_ray() -> RayTree:
    """A ray whose period node has its two dummies in parallel, so the
    all-dummy tail pattern is a phantom."""
    prefix_m = uniform(1, 2, ["x0", "r0"])
    period_m = uniform(1, 3, ["l", "x", "r"])
    return RayTree(((prefix_m, "r0"),), ((period_m, "l", "r"),))


def corpus_rays() -> list[tuple[str, RayTree]]:
    return [
        ("q-ray", q_ray()),
        ("c4-ray", c4_ray()),
        ("parallel-dummy-ray", parallel_dummy_ray()),
    ]


def corpus_layered() -> list[tuple[str, LayeredGraph]]:
    return [
        ("ladder", ladder()),
        ("ray-tail", ray_tail_graph()),
    ]
