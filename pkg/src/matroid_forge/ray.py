"""One-ended, eventually periodic rays of matroids of overlap 1.

A ray is a finite prefix of matroids followed by a period block repeated
forever, consecutive nodes sharing a single dummy element.  Windows
(finite unrollings) make the infinite object checkable: finite circuits
live inside windows, end-using circuits are carried symbolically as a
start completion plus a pure-periodic tail pattern.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable

from .errors import LemmaViolation, NotNice, PreconditionViolated
from .matroid import Matroid, antichain_minimal, from_circuits, sort_key, uniform
from .graphs import FiniteGraph, from_graph
from .tree import (
    MatroidTree,
    Precircuit,
    dual_tree,
    underlying_set,
    underlying_sets,
    validate_tree,
)

_FORBIDDEN_CHARS = "@#"


@dataclass(frozen=True)
class Window:
    """A finite truncation depth plus the boundary-dummy policy."""

    depth: int
    mode: str  # "forbid-end" or "allow-end"

    def __post_init__(self):
        if self.depth < 1:
            raise PreconditionViolated("window depth must be at least 1")
        if self.mode not in ("forbid-end", "allow-end"):
            raise PreconditionViolated(f"unknown window mode {self.mode!r}")


@dataclass(frozen=True)
class RayTree:
    """Prefix plus repeating period block; nodes are numbered from 1.

    Prefix entries are (matroid, right dummy) and are used verbatim;
    consecutive prefix matroids share exactly their wiring dummy.
    Period entries are (matroid, left dummy, right dummy) templates;
    unrolling relabels copy ``i`` with an ``@i`` suffix and renames the
    left dummy to the previous node's resolved right dummy.  With an
    empty prefix the first node's left-dummy template stays an ordinary
    element.
    """

    prefix: tuple[tuple[Matroid, str], ...]
    period: tuple[tuple[Matroid, str, str], ...]

    def __post_init__(self):
        if not self.period:
            raise PreconditionViolated("period block must be nonempty")
        for m, rd in self.prefix:
            if rd not in m.ground:
                raise PreconditionViolated(f"prefix right dummy {rd!r} not in ground")
        for m, ld, rd in self.period:
            if ld not in m.ground or rd not in m.ground:
                raise PreconditionViolated("period dummies must lie in the ground set")
            if ld == rd:
                raise PreconditionViolated("left and right dummies must differ")
        for entry in self.prefix:
            for x in entry[0].ground:
                if any(ch in x for ch in _FORBIDDEN_CHARS):
                    raise PreconditionViolated(f"label {x!r} uses a reserved character")
        for entry in self.period:
            for x in entry[0].ground:
                if any(ch in x for ch in _FORBIDDEN_CHARS):
                    raise PreconditionViolated(f"label {x!r} uses a reserved character")
        for i in range(len(self.prefix)):
            for j in range(i + 1, len(self.prefix)):
                common = set(self.prefix[i][0].ground) & set(self.prefix[j][0].ground)
                if j == i + 1:
                    if common != {self.prefix[i][1]}:
                        raise PreconditionViolated(
                            f"consecutive prefix nodes must share exactly the dummy, "
                            f"found {sorted(common)}")
                elif common:
                    raise PreconditionViolated(
                        "non-consecutive prefix nodes share elements")
        if self.prefix and len(self.prefix) >= 1:
            last_m, last_rd = self.prefix[-1]
            if last_rd not in last_m.ground:
                raise PreconditionViolated("dangling prefix dummy missing")

    # ------------------------------------------------------------------
    # node templates and resolved labels
    # ------------------------------------------------------------------

    def period_position(self, i: int) -> int:
        L = len(self.prefix)
        if i <= L:
            raise PreconditionViolated(f"node {i} lies in the prefix")
        return (i - L - 1) % len(self.period)

    def template(self, i: int) -> tuple[Matroid, str | None, str]:
        """Node i as (matroid, left template or None, right template)."""
        L = len(self.prefix)
        if i < 1:
            raise PreconditionViolated("nodes are numbered from 1")
        if i <= L:
            m, rd = self.prefix[i - 1]
            left = self.prefix[i - 2][1] if i >= 2 else None
            return m, left, rd
        m, ld, rd = self.period[self.period_position(i)]
        return m, (ld if i >= 2 else None), rd

    def right_label(self, i: int) -> str:
        """Resolved label of node i's right dummy."""
        L = len(self.prefix)
        if i <= L:
            return self.prefix[i - 1][1]
        return f"{self.period[self.period_position(i)][2]}@{i}"

    def resolve(self, i: int, labels: Iterable[str]) -> frozenset:
        """Map template labels of node i to their unrolled names."""
        m, left, _right = self.template(i)
        L = len(self.prefix)
        if i <= L:
            return frozenset(labels)
        prev_right = self.right_label(i - 1) if i >= 2 else None
        out = set()
        for x in labels:
            if left is not None and x == left and prev_right is not None:
                out.add(prev_right)
            else:
                out.add(f"{x}@{i}")
        return frozenset(out)

    def node_matroid(self, i: int) -> Matroid:
        m, left, _right = self.template(i)
        L = len(self.prefix)
        if i <= L:
            return m
        mapping = {x: next(iter(self.resolve(i, [x]))) for x in m.ground}
        return m.relabel(mapping)

    def boundary_dummy(self, d: int) -> str:
        return self.right_label(d)

    def dual(self) -> "RayTree":
        return RayTree(
            tuple((m.dual(), rd) for m, rd in self.prefix),
            tuple((m.dual(), ld, rd) for m, ld, rd in self.period),
        )

    def rotated(self, k: int) -> "RayTree":
        """Move the first k period nodes into the prefix (same infinite tree)."""
        ray = self
        for step in range(k):
            m, ld, rd = ray.period[0]
            if ray.prefix:
                prev_rd = ray.prefix[-1][1]
            else:
                prev_rd = None
            mapping = {}
            for x in m.ground:
                if x == ld and prev_rd is not None:
                    mapping[x] = prev_rd
                else:
                    mapping[x] = f"{x}_r{step}"
            shifted = m.relabel(mapping)
            new_prefix = ray.prefix + ((shifted, mapping[rd]),)
            new_period = ray.period[1:] + (ray.period[0],)
            ray = RayTree(new_prefix, new_period)
        return ray


@dataclass(frozen=True)
class PeriodicPrecircuit:
    """An eventually periodic precircuit on the tail of a ray.

    ``prefix_choices`` are explicit circuits for nodes ``start``,
    ``start+1``, ...; ``cycle_choices`` repeat forever afterwards, one
    per period position, every tail choice containing both its dummies.
    Circuits are stored with template labels.
    """

    start: int
    prefix_choices: tuple[frozenset, ...]
    cycle_choices: tuple[frozenset, ...]


def unroll(R: RayTree, d: int) -> MatroidTree:
    """The finite path tree of the first d nodes, labels resolved.

    The dangling right dummy of node d stays an ordinary element; window
    callers decide whether using it means "continues toward the end".
    """
    if d < 1:
        raise PreconditionViolated("depth must be at least 1")
    names = [f"t{i:03d}" for i in range(1, d + 1)]
    matroids = {names[i - 1]: R.node_matroid(i) for i in range(1, d + 1)}
    edges = [(names[i - 1], names[i]) for i in range(1, d)]
    dummies = {tuple(sorted((names[i - 1], names[i]))): R.right_label(i)
               for i in range(1, d)}
    return MatroidTree(tuple(names), tuple(edges), matroids, dummies)


def _node_index(node_name: str) -> int:
    return int(node_name[1:])


# ----------------------------------------------------------------------
# finite and periodic circuits
# ----------------------------------------------------------------------

def finite_circuits(R: RayTree, d: int) -> tuple[frozenset, ...]:
    """Circuits of the window gluing whose precircuits avoid the boundary.

    These are exactly the no-end circuits supported in the first d
    nodes; the family is monotone nondecreasing in d.
    """
    T = unroll(R, d)
    boundary = R.boundary_dummy(d)
    sets = set()
    for s in underlying_sets(T):
        if s and boundary not in s:
            sets.add(s)
    return antichain_minimal(sets)


def window_circuits_with_boundary(R: RayTree, d: int) -> tuple[frozenset, ...]:
    """Window circuits with the boundary dummy kept as an ordinary element."""
    T = unroll(R, d)
    return antichain_minimal(s for s in underlying_sets(T) if s)


def periodic_circuits(R: RayTree) -> tuple[PeriodicPrecircuit, ...]:
    """All pure-periodic tail patterns, one circuit choice per period node.

    Every choice contains both of its node's dummies; the empty tuple
    means the ray supports no purely periodic tail at all.
    """
    options = []
    for m, ld, rd in R.period:
        opts = [c for c in m.circuits_sorted() if ld in c and rd in c]
        if not opts:
            return ()
        options.append(opts)
    start = len(R.prefix) + 1
    out = []
    for combo in product(*options):
        out.append(PeriodicPrecircuit(start, (), tuple(combo)))
    return tuple(out)


def _choice_is_dummy_only(circuit: frozenset, left: str | None, right: str) -> bool:
    dummies = {right} if left is None else {left, right}
    return circuit <= dummies


def is_phantom(R: RayTree, p: PeriodicPrecircuit | Precircuit) -> bool:
    """True when some subtree edge has only dummy contributions beyond it."""
    if isinstance(p, PeriodicPrecircuit):
        _validate_periodic(R, p)
        flags = []
        idx = p.start
        for c in p.prefix_choices:
            _m, left, right = R.template(idx)
            flags.append(_choice_is_dummy_only(c, left if idx > 1 else None, right))
            idx += 1
        cycle_flags = []
        for j, c in enumerate(p.cycle_choices):
            _m, left, right = R.template(idx + j)
            cycle_flags.append(_choice_is_dummy_only(c, left, right))
        # left of the first edge: the start node alone
        if flags:
            if flags[0]:
                return True
        elif cycle_flags and cycle_flags[0]:
            return True
        # right of some edge: needs the whole cycle dummy-only
        if all(cycle_flags):
            return True
        return False
    # finite precircuit over a window: subtrees of a path are intervals
    nodes = sorted(p.subtree, key=_node_index)
    idxs = [_node_index(n) for n in nodes]
    if idxs != list(range(idxs[0], idxs[-1] + 1)):
        raise PreconditionViolated("precircuit subtree is not an interval of the ray")
    choice = p.choice_map()
    flags = []
    for n in nodes:
        i = _node_index(n)
        _m, left, right = R.template(i)
        resolved = choice[n]
        left_resolved = R.right_label(i - 1) if i >= 2 else None
        right_resolved = R.right_label(i)
        dummyset = {right_resolved} if left_resolved is None else {left_resolved, right_resolved}
        flags.append(resolved <= dummyset)
    for cut in range(1, len(flags)):
        if all(flags[:cut]) or all(flags[cut:]):
            return True
    return False


def _validate_periodic(R: RayTree, p: PeriodicPrecircuit) -> None:
    if p.start < 1:
        raise PreconditionViolated("start must be at least 1")
    idx = p.start
    for c in p.prefix_choices:
        m, left, right = R.template(idx)
        if c not in m.circuits:
            raise PreconditionViolated(f"choice at node {idx} is not a circuit")
        if right not in c:
            raise PreconditionViolated(f"choice at node {idx} must contain its right dummy")
        if idx > p.start and left is not None and left not in c:
            raise PreconditionViolated(f"choice at node {idx} must contain its left dummy")
        if idx == p.start and idx > 1 and left is not None and left in c:
            raise PreconditionViolated("start choice must avoid the left dummy")
        idx += 1
    if len(p.cycle_choices) != len(R.period):
        raise PreconditionViolated("cycle choices must cover the period exactly once")
    for j, c in enumerate(p.cycle_choices):
        i = idx + j
        m, left, right = R.template(i)
        if c not in m.circuits:
            raise PreconditionViolated(f"cycle choice {j} is not a circuit of its node")
        need_left = not (i == p.start and (i == 1 or left is None))
        if right not in c or (need_left and left is not None and left not in c):
            raise PreconditionViolated("tail choices must contain both dummies")


# ----------------------------------------------------------------------
# niceness via loop/coloop fixpoints
# ----------------------------------------------------------------------

def _predicates(R: RayTree, i: int) -> dict[str, bool]:
    m, left, right = R.template(i)
    circuits = m.circuits
    has_r = any(right in c for c in circuits)
    if left is None:
        return {
            "has_r_only": has_r,
            "has_l_only": False,
            "has_both": False,
            "loop_l": False,
            "loop_r": frozenset([right]) in circuits,
            "par": False,
        }
    return {
        "has_r_only": any(right in c and left not in c for c in circuits),
        "has_l_only": any(left in c and right not in c for c in circuits),
        "has_both": any(left in c and right in c for c in circuits),
        "loop_l": frozenset([left]) in circuits,
        "loop_r": frozenset([right]) in circuits,
        "par": frozenset([left, right]) in circuits,
    }


@dataclass(frozen=True)
class NicenessReport:
    nice: bool
    witness: str | None

    def __str__(self) -> str:
        return "nice" if self.nice else f"not nice: {self.witness}"


def is_nice(R: RayTree) -> NicenessReport:
    """Decide niceness: no dummy is a loop of the allow-end gluing or a
    coloop of the forbid-end gluing on either side of its edge.

    Tail-side verdicts come from fixpoints over the period positions
    (finite-completion reachability as a least fixpoint, dummy-chain
    loops as a greatest fixpoint); prefix-side verdicts are iterated
    along the ray until they stabilise.
    """
    L = len(R.prefix)
    p = len(R.period)
    horizon = L + 4 * p + 4

    period_preds = []
    for j in range(p):
        i = L + j + 1
        if i == 1:
            # with an empty prefix node 1 has no left dummy; use position
            # semantics from the second copy onward for the fixpoint
            i = L + p + j + 1
        period_preds.append(_predicates(R, i))

    # least fixpoint: a finite completion to the right exists
    freach_fix = [False] * p
    for _ in range(p + 1):
        nxt = [period_preds[j]["has_l_only"]
               or (period_preds[j]["has_both"] and freach_fix[(j + 1) % p])
               for j in range(p)]
        if nxt == freach_fix:
            break
        freach_fix = nxt

    # greatest fixpoint: an all-dummy chain to the right exists
    floop_fix = [True] * p
    for _ in range(p + 1):
        nxt = [period_preds[j]["loop_l"]
               or (period_preds[j]["par"] and floop_fix[(j + 1) % p])
               for j in range(p)]
        if nxt == floop_fix:
            break
        floop_fix = nxt

    preds = {i: _predicates(R, i) for i in range(1, horizon + 2)}

    freach: dict[int, bool] = {}
    floop: dict[int, bool] = {}
    for i in range(horizon + 1, 1, -1):
        if i > L:
            freach[i] = freach_fix[(i - L - 1) % p]
            floop[i] = floop_fix[(i - L - 1) % p]
        else:
            freach[i] = preds[i]["has_l_only"] or (preds[i]["has_both"] and freach[i + 1])
            floop[i] = preds[i]["loop_l"] or (preds[i]["par"] and floop[i + 1])

    back: dict[int, bool] = {1: preds[1]["has_r_only"]}
    bloop: dict[int, bool] = {1: preds[1]["loop_r"]}
    for i in range(2, horizon + 1):
        back[i] = preds[i]["has_r_only"] or (preds[i]["has_both"] and back[i - 1])
        bloop[i] = preds[i]["loop_r"] or (preds[i]["par"] and bloop[i - 1])

    def verdict(j: int) -> str | None:
        if floop[j + 1]:
            return f"dummy {R.right_label(j)!r} is a loop of the allow-end tail gluing"
        if not freach[j + 1]:
            return f"dummy {R.right_label(j)!r} is a coloop of the forbid-end tail gluing"
        if bloop[j]:
            return f"dummy {R.right_label(j)!r} is a loop of the allow-end head gluing"
        if not back[j]:
            return f"dummy {R.right_label(j)!r} is a coloop of the forbid-end head gluing"
        return None

    verdicts = {j: verdict(j) for j in range(1, horizon)}
    # the per-position verdicts must repeat over the last two periods
    for j in range(horizon - 2 * p, horizon - p):
        if (verdicts[j] is None) != (verdicts[j + p] is None):
            raise AssertionError("edge verdicts failed to stabilise over the period")
    for j in range(1, horizon):
        if verdicts[j] is not None:
            return NicenessReport(False, f"edge {j}: {verdicts[j]}")
    return NicenessReport(True, None)


# ----------------------------------------------------------------------
# window descriptions of the two gluings
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class TruncatedOmegaCircuit:
    """Window truncation of an end-using circuit.

    ``support`` is the visible real-element part, ``pattern_index``
    points into the pattern list, ``alignment`` is the period position
    of the first node beyond the window.
    """

    support: frozenset
    pattern_index: int
    alignment: int


@dataclass(frozen=True)
class OmegaWindowDescription:
    """Symbolic allow-end description at a window: finite circuits plus
    truncated eventually periodic ones."""

    depth: int
    finite: tuple[frozenset, ...]
    patterns: tuple[PeriodicPrecircuit, ...]
    members: tuple[TruncatedOmegaCircuit, ...]
    differs_from_forbid_end: bool


def _start_options(R: RayTree, s: int) -> list[frozenset]:
    m, left, right = R.template(s)
    if left is None:
        return [c for c in m.circuits_sorted() if right in c]
    return [c for c in m.circuits_sorted() if right in c and left not in c]


def _through_options(R: RayTree, i: int) -> list[frozenset]:
    m, left, right = R.template(i)
    if left is None:
        return []
    return [c for c in m.circuits_sorted() if left in c and right in c]


def omega_members(R: RayTree, d: int) -> tuple[TruncatedOmegaCircuit, ...]:
    """Truncations of all end-using precircuits with window-visible starts."""
    pats = periodic_circuits(R)
    if not pats:
        return ()
    T = unroll(R, d)
    reals = T.real_elements() - {R.boundary_dummy(d)}
    alignment = R.period_position(max(d + 1, len(R.prefix) + 1))
    seen = set()
    out = []
    for s in range(1, d + 1):
        starts = _start_options(R, s)
        if not starts:
            continue
        mids = [_through_options(R, i) for i in range(s + 1, d + 1)]
        if any(not m for m in mids):
            continue
        for combo in product(starts, *mids):
            support = set()
            for offset, circ in enumerate(combo):
                support |= R.resolve(s + offset, circ)
            support = frozenset(support) & reals
            for k in range(len(pats)):
                key = (support, k)
                if key not in seen:
                    seen.add(key)
                    out.append(TruncatedOmegaCircuit(support, k, alignment))
    out.sort(key=lambda t: (sort_key(t.support), t.pattern_index))
    return tuple(out)


def _omega_circuit_exists(R: RayTree) -> bool:
    """For rays whose period supports patterns: is some end-using
    precircuit realisable at all (start anywhere, not just in a window)?"""
    if not periodic_circuits(R):
        return False
    L = len(R.prefix)
    p = len(R.period)
    limit = L + p + 1
    for s in range(1, limit + 1):
        if not _start_options(R, s):
            continue
        if all(_through_options(R, i) for i in range(s + 1, limit + 1)):
            return True
    return False


def psi_matroids_of_ray(R: RayTree, d: int) -> tuple[Matroid, OmegaWindowDescription]:
    """The forbid-end window matroid and the allow-end window description.

    The two descriptions differ exactly when the ray supports periodic
    tail patterns; this equivalence is verified and a failure raises.
    """
    report = is_nice(R)
    if not report.nice:
        raise NotNice(report.witness)
    fin = finite_circuits(R, d)
    T = unroll(R, d)
    reals = sorted(T.real_elements() - {R.boundary_dummy(d)})
    forbid = from_circuits(reals, fin)
    pats = periodic_circuits(R)
    members = omega_members(R, d)
    differs = bool(members) or (_omega_circuit_exists(R) and bool(pats))
    if differs != bool(pats):
        raise LemmaViolation(
            "allow-end and forbid-end descriptions should differ exactly "
            "when periodic tail patterns exist")
    omega = OmegaWindowDescription(d, fin, pats, members, differs)
    return forbid, omega


# ----------------------------------------------------------------------
# reports
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class GluingSummary:
    name: str
    finite_circuits: int
    periodic_circuits: int
    finite_cocircuits: int
    periodic_cocircuits: int
    circuits_use_end: bool
    cocircuits_use_end: bool
    shared_end: bool
    max_finite_intersection: int

    def lines(self) -> list[str]:
        return [
            f"gluing {self.name}:",
            f"  circuits: {self.finite_circuits} finite, {self.periodic_circuits} periodic",
            f"  cocircuits: {self.finite_cocircuits} finite, {self.periodic_cocircuits} periodic",
            f"  circuits use the end: {'yes' if self.circuits_use_end else 'no'}",
            f"  cocircuits use the end: {'yes' if self.cocircuits_use_end else 'no'}",
            f"  end shared by a circuit and a cocircuit: {'YES' if self.shared_end else 'no'}",
            f"  max finite circuit/cocircuit intersection: {self.max_finite_intersection}",
        ]


@dataclass(frozen=True)
class TamenessReport:
    depth: int
    forbid_end: GluingSummary
    allow_end: GluingSummary
    cross_pattern_per_period: tuple[tuple[int, int, int], ...]
    ok: bool

    def lines(self) -> list[str]:
        out = [f"window depth {self.depth}"]
        out += self.forbid_end.lines()
        out += self.allow_end.lines()
        if self.cross_pattern_per_period:
            out.append("per-period intersections of circuit and cocircuit tail patterns:")
            for i, j, size in self.cross_pattern_per_period:
                out.append(f"  circuit pattern {i} x cocircuit pattern {j}: {size} per period")
        out.append(f"tameness and end-disjointness hold: {'yes' if self.ok else 'NO'}")
        return out

    def __str__(self) -> str:
        return "\n".join(self.lines())


def _max_intersection(circuit_sets: Iterable[frozenset],
                      cocircuit_sets: Iterable[frozenset]) -> int:
    best = 0
    cocircuit_sets = list(cocircuit_sets)
    for a in circuit_sets:
        for b in cocircuit_sets:
            size = len(a & b)
            if size > best:
                best = size
    return best


def tameness_report(R: RayTree, d: int) -> TamenessReport:
    """Symbolic circuit/cocircuit intersection accounting for both gluings.

    In each gluing one of the two families is all-finite, so every
    intersection is finite; the end is never shared by a circuit and a
    cocircuit of the same gluing.  Per-period overlaps of circuit and
    cocircuit tail patterns are reported: a positive count shows the two
    patterns could never coexist in one tame matroid.
    """
    dual = R.dual()
    fin_c = finite_circuits(R, d)
    fin_b = finite_circuits(dual, d)
    pats_c = periodic_circuits(R)
    pats_b = periodic_circuits(dual)
    members_c = omega_members(R, d)
    members_b = omega_members(dual, d)

    forbid = GluingSummary(
        "forbid-end",
        len(fin_c), 0,
        len(fin_b), len(pats_b),
        circuits_use_end=False,
        cocircuits_use_end=bool(pats_b),
        shared_end=False,
        max_finite_intersection=max(
            _max_intersection(fin_c, fin_b),
            _max_intersection(fin_c, (m.support for m in members_b)),
        ),
    )
    allow = GluingSummary(
        "allow-end",
        len(fin_c), len(pats_c),
        len(fin_b), 0,
        circuits_use_end=bool(pats_c),
        cocircuits_use_end=False,
        shared_end=False,
        max_finite_intersection=max(
            _max_intersection(fin_c, fin_b),
            _max_intersection((m.support for m in members_c), fin_b),
        ),
    )
    cross = []
    for i, pc in enumerate(pats_c):
        for j, pb in enumerate(pats_b):
            size = 0
            for pos in range(len(R.period)):
                _m, ld, rd = R.period[pos]
                real_c = pc.cycle_choices[pos] - {ld, rd}
                real_b = pb.cycle_choices[pos] - {ld, rd}
                size += len(real_c & real_b)
            cross.append((i, j, size))
    ok = not forbid.shared_end and not allow.shared_end
    return TamenessReport(d, forbid, allow, tuple(cross), ok)


@dataclass(frozen=True)
class RayMeetOnceReport:
    pairs: int
    max_intersection: int
    ok: bool


def check_never_meet_once_ray(R: RayTree, d: int) -> RayMeetOnceReport:
    """Window check that no compatible precircuit/precocircuit pair of
    underlying sets meets in exactly one element.

    Pairs combine finite sets with finite sets and finite sets with
    truncated periodic ones; two end-using objects are skipped because
    no single end assignment admits both at once.
    """
    dual = R.dual()
    T = unroll(R, d)
    boundary = R.boundary_dummy(d)
    fin_c = [s for s in underlying_sets(T) if boundary not in s]
    fin_b = [s for s in underlying_sets(dual_tree(T)) if boundary not in s]
    per_c = [m.support for m in omega_members(R, d)]
    per_b = [m.support for m in omega_members(dual, d)]
    pairs = 0
    best = 0
    for a_family, b_family in ((fin_c, fin_b), (fin_c, per_b), (per_c, fin_b)):
        for a in a_family:
            for b in b_family:
                pairs += 1
                size = len(a & b)
                best = max(best, size)
                if size == 1:
                    raise LemmaViolation(
                        f"sets {sorted(a)} and {sorted(b)} meet in exactly one element")
    return RayMeetOnceReport(pairs, best, True)


@dataclass(frozen=True)
class FinitarisationReport:
    depth: int
    finitarisation_holds: bool
    cofinitarisation_holds: bool

    @property
    def ok(self) -> bool:
        return self.finitarisation_holds and self.cofinitarisation_holds

    def lines(self) -> list[str]:
        return [
            f"window depth {self.depth}",
            f"finite circuits of the allow-end description match the "
            f"forbid-end gluing: {'yes' if self.finitarisation_holds else 'NO'}",
            f"finite cocircuits of the forbid-end description match the "
            f"allow-end dual gluing: {'yes' if self.cofinitarisation_holds else 'NO'}",
        ]

    def __str__(self) -> str:
        return "\n".join(self.lines())


def finitarisation_check(R: RayTree, d: int) -> FinitarisationReport:
    """Window identities: the forbid-end gluing is the finitarisation of
    the allow-end one, and dually for cocircuits."""
    report = is_nice(R)
    if not report.nice:
        raise NotNice(report.witness)
    boundary = R.boundary_dummy(d)
    route_a = set(finite_circuits(R, d))
    route_b = {c for c in window_circuits_with_boundary(R, d) if boundary not in c}
    dual = R.dual()
    route_a_dual = set(finite_circuits(dual, d))
    route_b_dual = {c for c in window_circuits_with_boundary(dual, d) if boundary not in c}
    return FinitarisationReport(d, route_a == route_b, route_a_dual == route_b_dual)


# ----------------------------------------------------------------------
# the two canonical rays
# ----------------------------------------------------------------------

def _m_k4() -> Matroid:
    edges = [("12", "1", "2"), ("13", "1", "3"), ("14", "1", "4"),
             ("23", "2", "3"), ("24", "2", "4"), ("34", "3", "4")]
    return from_graph(FiniteGraph(tuple(edges)))


def q_ray() -> RayTree:
    """A ray of K4 cycle matroids wired along a disjoint edge pair.

    Every node is the cycle matroid of the complete graph on four
    vertices; the wiring dummies are the perfect-matching pair of edges
    12 and 34.
    """
    m = _m_k4()
    return RayTree(((m, "34"),), ((m, "12", "34"),))


def c4_ray() -> RayTree:
    """A ray of 4-cycle matroids whose single circuit holds both dummies.

    The forbid-end gluing is free at every window, and every wiring
    dummy is a coloop of its tail gluing, so the ray is not nice.
    """
    m = uniform(3, 4, ["c1", "c2", "c3", "c4"])
    return RayTree(((m, "c4"),), ((m, "c1", "c4"),))
