"""Binary 2-sums of matroids sharing exactly one element."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import BadOverlap, DegenerateSharedEdge
from .matroid import Matroid, from_circuits


@dataclass(frozen=True)
class SharedEdgeWitness:
    """Two matroids whose ground sets meet in a single shared element.

    The shared element must be neither a loop nor a coloop on either
    side; degenerate sharing is rejected rather than given a convention.
    """

    left: Matroid
    right: Matroid
    shared: str

    def check(self) -> None:
        common = set(self.left.ground) & set(self.right.ground)
        if common != {self.shared}:
            raise BadOverlap(
                f"ground sets share {sorted(common)}, expected exactly {{{self.shared}}}")
        for side, m in (("left", self.left), ("right", self.right)):
            if self.shared in m.loops():
                raise DegenerateSharedEdge(f"shared element is a loop of the {side} matroid")
            if self.shared in m.coloops():
                raise DegenerateSharedEdge(f"shared element is a coloop of the {side} matroid")


def two_sum(witness: SharedEdgeWitness) -> Matroid:
    """The 2-sum: circuits avoid the shared element or join across it.

    Circuit types: left circuits avoiding the shared element, right
    circuits avoiding it, and symmetric differences of a left and a
    right circuit both containing it.  The result is re-validated.
    """
    witness.check()
    e = witness.shared
    left, right = witness.left, witness.right
    circuits: set[frozenset] = set()
    for c in left.circuits:
        if e not in c:
            circuits.add(c)
    for c in right.circuits:
        if e not in c:
            circuits.add(c)
    for cl in left.circuits:
        if e not in cl:
            continue
        for cr in right.circuits:
            if e in cr:
                circuits.add((cl | cr) - {e})
    ground = (set(left.ground) | set(right.ground)) - {e}
    return from_circuits(sorted(ground), circuits)


def fold_two_sums(chain: Sequence[tuple[Matroid, str | None]]) -> Matroid:
    """Left-fold a chain of 2-sums.

    Each entry pairs a matroid with the element it shares with the next
    entry; the final entry carries ``None``.  Consecutive matroids must
    share exactly that one element and non-consecutive ones none, so any
    association order yields the same matroid.
    """
    if not chain:
        raise BadOverlap("empty chain")
    if chain[-1][1] is not None:
        raise BadOverlap("last chain entry must not name a shared element")
    acc = chain[0][0]
    pending = chain[0][1]
    for matroid, shared in chain[1:]:
        if pending is None:
            raise BadOverlap("only the last chain entry may omit the shared element")
        if pending not in acc.ground or pending not in matroid.ground:
            raise BadOverlap(f"shared element {pending!r} missing from a summand")
        acc = two_sum(SharedEdgeWitness(acc, matroid, pending))
        pending = shared
    return acc
