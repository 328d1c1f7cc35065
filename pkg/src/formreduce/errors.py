"""Exception types raised by the formreduce package."""


class FormReduceError(Exception):
    """Base class for all package errors."""


class UnsupportedDegree(FormReduceError):
    """Form degree below the supported minimum (3)."""


class ZeroLeadingCoefficient(FormReduceError):
    """Leading coefficient is zero; not a degree-n form."""


class NonConvergentRoots(FormReduceError):
    """Simultaneous root iteration did not reach the residual tolerance."""


class ConjugacyViolation(FormReduceError):
    """Root multiset is not closed under complex conjugation within tolerance."""


class DeterminantNotOne(FormReduceError):
    """Integer 2x2 matrix does not have determinant one."""


class DegreeDrop(FormReduceError):
    """A root maps to infinity under the substitution (degree would drop)."""


class NonPositiveU(FormReduceError):
    """Height coordinate u must be strictly positive."""


class DegenerateCluster(FormReduceError):
    """Too much root multiplicity at a single real point; the height
    coordinate of the covariant point would collapse to zero."""


class NoConvergence(FormReduceError):
    """Covariant solver failed to meet the residual tolerance."""


class BadCovariant(FormReduceError):
    """Supplied point does not satisfy the covariant equations."""


class EmptyInput(FormReduceError):
    """Operation requires a nonempty point set."""


class OddDegree(FormReduceError):
    """Half-splits require an even number of roots."""


class WrongClusterSize(FormReduceError):
    """Cluster index set must contain exactly half of the roots."""


class MissingDistances(FormReduceError):
    """Split has no center distances attached yet."""


class TriangleViolation(FormReduceError):
    """Root distances inconsistent with the split and covariant point."""


class NotMajority(FormReduceError):
    """Bound requires strictly more than half of the roots in the disk."""


class NotApplicable(FormReduceError):
    """Neither strict-side hypothesis of the ratio bounds holds."""


class HypothesesNotMet(FormReduceError):
    """Growth-factor bound evaluated outside its hypotheses."""


class StepLimit(FormReduceError):
    """Reduction did not finish within the allowed number of steps."""


class GrowthAssertionFailed(FormReduceError):
    """A cluster translation step failed its guaranteed height growth;
    signals a violated bound on the instance being reduced."""


class MalformedInput(FormReduceError):
    """Input JSON does not match the form encoding."""
