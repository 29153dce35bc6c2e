"""Exception types shared across the package."""
from __future__ import annotations


class MatroidForgeError(Exception):
    """Base class for every error raised by this package."""


class AxiomViolation(MatroidForgeError):
    """A circuit family failed validation.

    ``axiom`` is one of ``"C1"``, ``"C2"``, ``"C3"`` or ``"BASES"``;
    ``witness`` is the offending circuit, pair, or elimination quadruple.
    """

    def __init__(self, axiom: str, witness, message: str = ""):
        self.axiom = axiom
        self.witness = witness
        detail = message or _format_witness(witness)
        super().__init__(f"axiom {axiom} violated: {detail}")


def _format_witness(witness) -> str:
    if isinstance(witness, (tuple, list)):
        return ", ".join(_format_witness(w) for w in witness)
    if isinstance(witness, (set, frozenset)):
        return "{" + " ".join(sorted(witness)) + "}"
    return str(witness)


class BruteForceCapExceeded(MatroidForgeError):
    """Ground set larger than the exhaustive-scan cap (MATROID_FORGE_MAX_E)."""


class OverlappingSets(MatroidForgeError):
    """Contract and delete sets must be disjoint."""


class NotABase(MatroidForgeError):
    """The supplied set is not a base of the matroid."""


class ElementPositionInvalid(MatroidForgeError):
    """Element on the wrong side of a base for a fundamental (co)circuit."""


class PreconditionViolated(MatroidForgeError):
    """An operation was called with arguments outside its contract."""


class BadOverlap(MatroidForgeError):
    """Two matroids fed to a 2-sum do not share exactly one element."""


class DegenerateSharedEdge(MatroidForgeError):
    """The shared element of a 2-sum is a loop or a coloop of a summand."""


class OverlapViolation(MatroidForgeError):
    """Two tree nodes share elements in a way the overlap-1 rule forbids."""


class StrayDummy(MatroidForgeError):
    """A declared dummy element is missing from an endpoint matroid."""


class InconsistentPrecircuit(MatroidForgeError):
    """A precircuit's choices break the dummy-edge consistency rule."""


class NotAMatroid(MatroidForgeError):
    """Gluing a tree produced a family that fails circuit validation."""


class DummyTouched(MatroidForgeError):
    """Tree minors may only contract or delete real elements."""


class NotNice(MatroidForgeError):
    """The ray tree has a phantom precircuit or precocircuit."""


class InvalidDecomposition(MatroidForgeError):
    """A tree decomposition violates the adhesion-2 contract."""


class NotConnected(MatroidForgeError):
    """Canonical decomposition requires a connected matroid."""


class UniquenessFailure(MatroidForgeError):
    """Brute-force enumeration found a non-isomorphic valid decomposition."""


class NoPath(MatroidForgeError):
    """The graph lacks the connectivity a shortcut construction presumes."""


class AssertionFailure(MatroidForgeError):
    """A rerouted edge set is not a circuit of the supplied matroid."""


class LemmaViolation(MatroidForgeError):
    """An exhaustive check found a counterexample; indicates a bug."""


class ParseError(MatroidForgeError):
    """An input file does not conform to its text format."""

    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")
