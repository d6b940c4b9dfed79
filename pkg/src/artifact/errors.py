"""Exception types raised across the package.

Every error carries an optional ``witness`` so that callers (and the CLI)
can report the smallest offending object.
"""

from __future__ import annotations


class ArtifactError(Exception):
    def __init__(self, message: str = "", witness=None):
        super().__init__(message)
        self.witness = witness


class InputError(ArtifactError):
    """Malformed or out-of-domain input (CLI exit code 2)."""


class VerificationError(ArtifactError):
    """A checked mathematical property failed (CLI exit code 1)."""


# linalg
class SideConditionViolated(InputError):
    pass


# poset
class CycleDetected(InputError):
    pass


class NonPositiveWeight(InputError):
    pass


class TooLarge(InputError):
    pass


class UnknownElement(InputError):
    pass


class MissingWeights(InputError):
    pass


class BadParams(InputError):
    pass


class NotAnExtension(InputError):
    pass


# structures
class AxiomViolation(InputError):
    pass


class NotPrefixClosed(InputError):
    pass


class WordNotInLanguage(InputError):
    pass


class RankOutOfRange(InputError):
    pass


class Degenerate(InputError):
    pass


class NotAMorphism(InputError):
    pass


# counting
class WeightDomainMismatch(InputError):
    pass


class NotAParallelClass(InputError):
    pass


# inequalities
class Disconnected(InputError):
    pass


class CMViolated(InputError):
    pass


class NotAdmissible(InputError):
    pass


class NotInterval(InputError):
    pass


class ZeroMiddleTerm(InputError):
    pass


class NotOrderReversing(InputError):
    pass


class NoBelt(InputError):
    pass


class SubmodViolated(InputError):
    pass


# atlas
class NoSuchEdge(InputError):
    pass


class NotASink(InputError):
    pass


class NotAGlobalPair(InputError):
    pass


class EmptyEdgeSet(InputError):
    pass
