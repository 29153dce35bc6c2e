"""Finite matroids stored as explicit circuit families.

The circuit family is the canonical representation; independence, rank,
bases, cocircuits and duals are derived lazily and cached per instance.
Every enumeration is emitted in lexicographic order of sorted element
labels, so identical inputs always produce identical output.

Ground sets are capped (default 12, override with the environment
variable ``MATROID_FORGE_MAX_E``) because rank tables and separation
scans are exhaustive over all subsets.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, NamedTuple

from .errors import (
    AxiomViolation,
    BruteForceCapExceeded,
    ElementPositionInvalid,
    NotABase,
    OverlappingSets,
    PreconditionViolated,
)

Element = str

DEFAULT_MAX_GROUND = 12
MAX_GROUND_ENV = "MATROID_FORGE_MAX_E"


def brute_force_cap() -> int:
    """Ground-set size limit for exhaustive scans."""
    raw = os.environ.get(MAX_GROUND_ENV)
    if raw is None:
        return DEFAULT_MAX_GROUND
    try:
        return int(raw)
    except ValueError:
        return DEFAULT_MAX_GROUND


def _check_cap(n: int) -> None:
    cap = brute_force_cap()
    if n > cap:
        raise BruteForceCapExceeded(
            f"ground set of size {n} exceeds the brute-force cap {cap} "
            f"(set {MAX_GROUND_ENV} to raise it)"
        )


def _sorted_set(labels: Iterable[Element]) -> frozenset:
    return frozenset(labels)


def sort_key(subset: Iterable[Element]):
    """Canonical ordering key for element subsets: by size, then labels."""
    t = tuple(sorted(subset))
    return (len(t), t)


def antichain_minimal(sets: Iterable[frozenset]) -> tuple[frozenset, ...]:
    """Inclusion-minimal members of a family, deterministically ordered."""
    pool = sorted(set(sets), key=sort_key)
    kept: list[frozenset] = []
    for cand in pool:
        if not any(prev <= cand for prev in kept):
            kept.append(cand)
    return tuple(kept)


class ScrawlResult(NamedTuple):
    """Outcome of a union-of-circuits test.

    ``cover`` lists circuits whose union is the queried set when
    ``is_scrawl`` is true; otherwise ``witness`` is a cocircuit meeting
    the set in exactly one element.
    """

    is_scrawl: bool
    cover: tuple[frozenset, ...] | None
    witness: frozenset | None


@dataclass(frozen=True)
class Separation:
    """A partition of the ground set with small connectivity.

    ``order`` equals r(sideA) + r(sideB) - r(E) + 1; a 2-separation has
    order 2, a separation of a disconnected matroid has order 1.
    """

    sideA: frozenset
    sideB: frozenset
    order: int


@dataclass(frozen=True)
class Matroid:
    """A finite matroid given by its ground set and circuit family.

    Instances are immutable and hashable; two matroids are equal exactly
    when they have the same ground set and the same circuits.  Use
    :func:`from_circuits` to build a validated instance.
    """

    ground: tuple[Element, ...]
    circuits: frozenset[frozenset]

    # ------------------------------------------------------------------
    # bitmask plumbing
    # ------------------------------------------------------------------

    @cached_property
    def _bit(self) -> dict[Element, int]:
        return {e: 1 << i for i, e in enumerate(self.ground)}

    @cached_property
    def _full_mask(self) -> int:
        return (1 << len(self.ground)) - 1

    def _mask(self, labels: Iterable[Element]) -> int:
        m = 0
        for e in labels:
            try:
                m |= self._bit[e]
            except KeyError:
                raise PreconditionViolated(f"element {e!r} not in ground set") from None
        return m

    def _labels(self, mask: int) -> frozenset:
        return frozenset(e for e in self.ground if self._bit[e] & mask)

    @cached_property
    def _circuit_masks(self) -> tuple[int, ...]:
        return tuple(sorted(self._mask(c) for c in self.circuits))

    # ------------------------------------------------------------------
    # rank / independence / bases
    # ------------------------------------------------------------------

    @cached_property
    def _rank_table(self) -> list[int]:
        """rank of every subset, indexed by bitmask.

        rank(X) is the size of a largest subset of X containing no
        circuit; the recursion max over one-element removals is exact
        for arbitrary set families, so it never presumes the axioms.
        """
        _check_cap(len(self.ground))
        n = len(self.ground)
        cmasks = self._circuit_masks
        table = [0] * (1 << n)
        for x in range(1, 1 << n):
            if any(cm & ~x == 0 for cm in cmasks):
                best = 0
                y = x
                while y:
                    bit = y & -y
                    r = table[x ^ bit]
                    if r > best:
                        best = r
                    y ^= bit
                table[x] = best
            else:
                table[x] = bin(x).count("1")
        return table

    def rank(self, subset: Iterable[Element] | None = None) -> int:
        """Rank of ``subset`` (whole ground set when omitted)."""
        if subset is None:
            return self._rank_table[self._full_mask]
        return self._rank_table[self._mask(subset)]

    def is_independent(self, subset: Iterable[Element]) -> bool:
        m = self._mask(subset)
        return self._rank_table[m] == bin(m).count("1")

    @cached_property
    def _base_masks(self) -> tuple[int, ...]:
        r = self._rank_table[self._full_mask]
        out = []
        for x in range(1 << len(self.ground)):
            if bin(x).count("1") == r and self._rank_table[x] == r:
                out.append(x)
        return tuple(sorted(out))

    def bases(self) -> tuple[frozenset, ...]:
        """All maximal circuit-free subsets, lexicographically ordered."""
        fams = [self._labels(m) for m in self._base_masks]
        return tuple(sorted(fams, key=sort_key))

    def loops(self) -> frozenset:
        return frozenset(e for e in self.ground if frozenset([e]) in self.circuits)

    def coloops(self) -> frozenset:
        covered = set()
        for c in self.circuits:
            covered |= c
        return frozenset(e for e in self.ground if e not in covered)

    # ------------------------------------------------------------------
    # duality
    # ------------------------------------------------------------------

    @cached_property
    def _cocircuit_masks(self) -> tuple[int, ...]:
        """Minimal sets meeting every base, via the rank table."""
        full = self._full_mask
        r = self._rank_table[full]
        n = len(self.ground)
        out = []
        for x in range(1, 1 << n):
            comp = full ^ x
            if self._rank_table[comp] >= r:
                continue
            minimal = True
            y = x
            while y:
                bit = y & -y
                if self._rank_table[comp | bit] < r:
                    minimal = False
                    break
                y ^= bit
            if minimal:
                out.append(x)
        return tuple(sorted(out))

    def cocircuits(self) -> tuple[frozenset, ...]:
        fams = [self._labels(m) for m in self._cocircuit_masks]
        return tuple(sorted(fams, key=sort_key))

    def dual(self) -> "Matroid":
        """The dual matroid; bases are complements of bases of self."""
        cached = self.__dict__.get("_dual")
        if cached is not None:
            return cached
        d = Matroid(self.ground, frozenset(self.cocircuits()))
        d.__dict__["_dual"] = self
        self.__dict__["_dual"] = d
        return d

    # ------------------------------------------------------------------
    # minors
    # ------------------------------------------------------------------

    def minor(self, contract: Iterable[Element], delete: Iterable[Element]) -> "Matroid":
        """Contract ``contract`` and delete ``delete``.

        Circuits of the result are the minimal nonempty sets o - contract
        over circuits o avoiding ``delete``.  In debug mode every result
        circuit is checked to lift back to a circuit o of self with
        o' <= o <= o' + contract.
        """
        cmask = self._mask(contract)
        dmask = self._mask(delete)
        if cmask & dmask:
            raise OverlappingSets("contract and delete sets intersect")
        keep = [e for e in self.ground if not (self._bit[e] & (cmask | dmask))]
        reduced = set()
        for om in self._circuit_masks:
            if om & dmask:
                continue
            m = om & ~cmask
            if m:
                reduced.add(m)
        minimal = antichain_minimal(self._labels(m) for m in reduced)
        result = Matroid(tuple(keep), frozenset(minimal))
        if __debug__:
            for oc in minimal:
                o2 = self._mask(oc)
                if not any(om & ~(o2 | cmask) == 0 and o2 & ~om == 0
                           for om in self._circuit_masks):
                    raise AssertionError(
                        f"minor circuit {sorted(oc)} has no lift within contract set"
                    )
        return result

    def delete(self, delete: Iterable[Element]) -> "Matroid":
        return self.minor((), delete)

    def contract(self, contract: Iterable[Element]) -> "Matroid":
        return self.minor(contract, ())

    def restrict(self, keep: Iterable[Element]) -> "Matroid":
        keep = set(keep)
        return self.minor((), [e for e in self.ground if e not in keep])

    # ------------------------------------------------------------------
    # fundamental circuits and cocircuits
    # ------------------------------------------------------------------

    def _require_base(self, base: Iterable[Element]) -> int:
        bm = self._mask(base)
        r = self._rank_table[self._full_mask]
        if self._rank_table[bm] != bin(bm).count("1") or bin(bm).count("1") != r:
            raise NotABase(f"{sorted(set(base))} is not a base")
        return bm

    def fundamental_circuit(self, base: Iterable[Element], e: Element) -> frozenset:
        """The unique circuit inside base + e, which contains e."""
        bm = self._require_base(base)
        eb = self._mask([e])
        if eb & bm:
            raise ElementPositionInvalid(f"{e!r} lies in the base")
        inside = bm | eb
        hits = [om for om in self._circuit_masks if om & ~inside == 0]
        if len(hits) != 1 or not hits[0] & eb:
            raise AssertionError("fundamental circuit not unique; invalid matroid state")
        return self._labels(hits[0])

    def fundamental_cocircuit(self, base: Iterable[Element], f: Element) -> frozenset:
        """The unique cocircuit inside (E - base) + f, which contains f."""
        bm = self._require_base(base)
        fb = self._mask([f])
        if not fb & bm:
            raise ElementPositionInvalid(f"{f!r} lies outside the base")
        inside = (self._full_mask ^ bm) | fb
        hits = [om for om in self._cocircuit_masks if om & ~inside == 0]
        if len(hits) != 1 or not hits[0] & fb:
            raise AssertionError("fundamental cocircuit not unique; invalid matroid state")
        return self._labels(hits[0])

    def cocircuit_through_pair(self, o: Iterable[Element], e: Element, f: Element) -> frozenset:
        """A cocircuit b with o ∩ b = {e, f}.

        Found by extending o - e to a base and taking the fundamental
        cocircuit of f there.
        """
        oset = frozenset(o)
        if oset not in self.circuits:
            raise PreconditionViolated(f"{sorted(oset)} is not a circuit")
        if e == f or e not in oset or f not in oset:
            raise PreconditionViolated("e and f must be distinct elements of the circuit")
        bm = self._mask(oset) & ~self._mask([e])
        r = self._rank_table[self._full_mask]
        for el in self.ground:
            if self._rank_table[bm] == r:
                break
            b = self._bit[el]
            if not bm & b and self._rank_table[bm | b] == bin(bm | b).count("1"):
                bm |= b
        cocircuit = self.fundamental_cocircuit(self._labels(bm), f)
        got = oset & cocircuit
        if got != frozenset([e, f]):
            raise AssertionError(f"cocircuit meets circuit in {sorted(got)}, not {{e,f}}")
        return cocircuit

    # ------------------------------------------------------------------
    # scrawls and elimination
    # ------------------------------------------------------------------

    def is_scrawl(self, w: Iterable[Element]) -> ScrawlResult:
        """Test whether ``w`` is a union of circuits.

        Uses the criterion that a set is such a union exactly when no
        cocircuit meets it in a single element.  The empty set counts as
        the union of zero circuits.
        """
        wm = self._mask(w)
        for bm in self._cocircuit_masks:
            if bin(bm & wm).count("1") == 1:
                return ScrawlResult(False, None, self._labels(bm))
        cover = tuple(sorted((self._labels(om) for om in self._circuit_masks
                              if om & ~wm == 0), key=sort_key))
        covered = 0
        for om in self._circuit_masks:
            if om & ~wm == 0:
                covered |= om
        if covered != wm:
            raise AssertionError("scrawl criterion passed but circuits do not cover the set")
        return ScrawlResult(True, cover, None)

    def circuit_eliminate(self, o: Iterable[Element], o2: Iterable[Element],
                          x: Element, z: Element) -> frozenset:
        """A circuit through z inside (o ∪ o2) - x, for x ∈ o∩o2, z ∈ o\\o2."""
        oset, o2set = frozenset(o), frozenset(o2)
        if oset not in self.circuits or o2set not in self.circuits:
            raise PreconditionViolated("both arguments must be circuits")
        if x not in oset or x not in o2set:
            raise PreconditionViolated(f"{x!r} must lie in both circuits")
        if z not in oset or z in o2set:
            raise PreconditionViolated(f"{z!r} must lie in the first circuit only")
        allowed = (self._mask(oset) | self._mask(o2set)) & ~self._mask([x])
        zb = self._mask([z])
        hits = [self._labels(om) for om in self._circuit_masks
                if om & zb and om & ~allowed == 0]
        if not hits:
            raise AssertionError("no elimination circuit; invalid matroid state")
        return min(hits, key=sort_key)

    # ------------------------------------------------------------------
    # connectivity
    # ------------------------------------------------------------------

    def two_separations(self) -> tuple[Separation, ...]:
        """All partitions (A, B) with |A|,|B| >= 2 and connectivity order <= 2."""
        n = len(self.ground)
        if n < 4:
            return ()
        _check_cap(n)
        r = self._rank_table[self._full_mask]
        full = self._full_mask
        out = []
        # fix the least element on side A to scan unordered partitions once
        for x in range(1 << n):
            if not x & 1:
                continue
            ka = bin(x).count("1")
            if ka < 2 or n - ka < 2:
                continue
            lam = self._rank_table[x] + self._rank_table[full ^ x] - r
            if lam <= 1:
                out.append(Separation(self._labels(x), self._labels(full ^ x), lam + 1))
        out.sort(key=lambda s: sort_key(s.sideA))
        return tuple(out)

    def is_connected(self) -> bool:
        """True when every pair of elements lies on a common circuit."""
        n = len(self.ground)
        if n <= 1:
            return True
        parent = {e: e for e in self.ground}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for c in self.circuits:
            it = iter(sorted(c))
            first = next(it)
            for other in it:
                parent[find(other)] = find(first)
        roots = {find(e) for e in self.ground}
        return len(roots) == 1

    def is_three_connected(self) -> bool:
        """Connected, at least 4 elements, and free of 2-separations."""
        if len(self.ground) < 4:
            return False
        if not self.is_connected():
            return False
        return not self.two_separations()

    # ------------------------------------------------------------------
    # uniform minors
    # ------------------------------------------------------------------

    def has_uniform_minor(self, r: int, n: int) -> bool:
        """True when some minor is isomorphic to the uniform matroid U_{r,n}."""
        if n > len(self.ground):
            raise PreconditionViolated("n exceeds the ground-set size")
        if r < 0 or r > n:
            raise PreconditionViolated("need 0 <= r <= n")
        elems = self.ground
        want = None  # circuits of U_{r,n} relative to the kept set
        for kept in combinations(elems, n):
            keptset = set(kept)
            rest = [e for e in elems if e not in keptset]
            if r == n:
                want_sets = set()
            else:
                want_sets = {frozenset(c) for c in combinations(kept, r + 1)}
            for k in range(1 << len(rest)):
                con = [rest[i] for i in range(len(rest)) if k >> i & 1]
                dele = [rest[i] for i in range(len(rest)) if not k >> i & 1]
                m = self.minor(con, dele)
                if set(m.circuits) == want_sets:
                    return True
        return False

    # ------------------------------------------------------------------
    # misc
    # ------------------------------------------------------------------

    def relabel(self, mapping: dict[Element, Element]) -> "Matroid":
        """Rename elements through a bijection; validity is preserved."""
        if sorted(mapping) != sorted(self.ground):
            raise PreconditionViolated("mapping must cover the ground set exactly")
        if len(set(mapping.values())) != len(mapping):
            raise PreconditionViolated("mapping must be injective")
        ground = tuple(sorted(mapping[e] for e in self.ground))
        circuits = frozenset(frozenset(mapping[e] for e in c) for c in self.circuits)
        return Matroid(ground, circuits)

    def circuits_sorted(self) -> tuple[frozenset, ...]:
        return tuple(sorted(self.circuits, key=sort_key))

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Matroid(|E|={len(self.ground)}, circuits={len(self.circuits)})"


# ----------------------------------------------------------------------
# constructors
# ----------------------------------------------------------------------

def _validate_circuits(ground: tuple[Element, ...], circuits: list[frozenset]) -> None:
    index = {e: 1 << i for i, e in enumerate(ground)}
    masks = []
    for c in sorted(circuits, key=sort_key):
        m = 0
        for e in c:
            if e not in index:
                raise PreconditionViolated(f"circuit element {e!r} not in ground set")
            m |= index[e]
        masks.append((m, c))

    # (C1) no empty circuit
    for m, c in masks:
        if m == 0:
            raise AxiomViolation("C1", (c,), "empty circuit present")

    # (C2) antichain
    for (m1, c1), (m2, c2) in combinations(masks, 2):
        if m1 & ~m2 == 0 or m2 & ~m1 == 0:
            raise AxiomViolation("C2", (c1, c2))

    # (C3) single-element elimination with a kept element
    by_bit: dict[int, list[int]] = {}
    for m, _ in masks:
        mm = m
        while mm:
            bit = mm & -mm
            by_bit.setdefault(bit, []).append(m)
            mm ^= bit
    bit_to_label = {1 << i: e for i, e in enumerate(ground)}
    for (m1, c1) in masks:
        for (m2, c2) in masks:
            if m1 == m2:
                continue
            inter = m1 & m2
            if not inter:
                continue
            union = m1 | m2
            outside = m1 & ~m2
            xx = inter
            while xx:
                xbit = xx & -xx
                xx ^= xbit
                allowed = union & ~xbit
                zz = outside
                while zz:
                    zbit = zz & -zz
                    zz ^= zbit
                    if not any(cm & ~allowed == 0 for cm in by_bit.get(zbit, ())):
                        raise AxiomViolation(
                            "C3",
                            (c1, c2, bit_to_label[xbit], bit_to_label[zbit]),
                            f"eliminating {bit_to_label[xbit]} keeping "
                            f"{bit_to_label[zbit]} from {sorted(c1)} and {sorted(c2)}",
                        )

    # all maximal circuit-free sets must share one size
    n = len(ground)
    cmasks = [m for m, _ in masks]
    indep = [True] * (1 << n)
    for x in range(1 << n):
        if any(cm & ~x == 0 for cm in cmasks):
            indep[x] = False
    sizes = set()
    witnesses = {}
    for x in range(1 << n):
        if not indep[x]:
            continue
        maximal = True
        for i in range(n):
            y = x | (1 << i)
            if y != x and indep[y]:
                maximal = False
                break
        if maximal:
            k = bin(x).count("1")
            sizes.add(k)
            witnesses.setdefault(k, x)
    if len(sizes) > 1:
        w = [frozenset(ground[i] for i in range(n) if witnesses[k] >> i & 1)
             for k in sorted(sizes)]
        raise AxiomViolation("BASES", tuple(w), "maximal independent sets of unequal size")


def from_circuits(ground: Iterable[Element], circuits: Iterable[Iterable[Element]]) -> Matroid:
    """Build and validate a matroid from its circuit family.

    Raises :class:`AxiomViolation` naming the broken axiom (C1, C2, C3
    or BASES) together with a witness.
    """
    ground_list = list(ground)
    ground_t = tuple(sorted(set(ground_list)))
    if len(ground_t) != len(ground_list):
        raise PreconditionViolated("duplicate labels in ground set")
    _check_cap(len(ground_t))
    circ = sorted({frozenset(c) for c in circuits}, key=sort_key)
    _validate_circuits(ground_t, circ)
    return Matroid(ground_t, frozenset(circ))


def uniform(r: int, n: int, labels: Iterable[Element] | None = None) -> Matroid:
    """The uniform matroid U_{r,n}; circuits are the (r+1)-subsets."""
    if labels is None:
        labels = [f"e{i + 1}" for i in range(n)]
    ground = tuple(sorted(labels))
    if len(ground) != n:
        raise PreconditionViolated("label count must equal n")
    if r < 0 or r > n:
        raise PreconditionViolated("need 0 <= r <= n")
    if r == n:
        circuits: frozenset = frozenset()
    else:
        circuits = frozenset(frozenset(c) for c in combinations(ground, r + 1))
    return Matroid(ground, circuits)
