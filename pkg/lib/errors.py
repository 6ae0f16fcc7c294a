#!/usr/bin/env python3
"""
Error types for HyperQ.

Every error carries the process exit status the command line reports for it:
2 for rejected input, 3 for a mathematical precondition that does not hold,
1 for file system trouble.
"""


class HyperQError(Exception):
    """Base class for all HyperQ failures."""
    exit_code = 3

    @property
    def name(self):
        return type(self).__name__


# --- Input validation (exit status 2) ---

class InputError(HyperQError):
    exit_code = 2


class SchemaError(InputError):
    """A command parameter could not be parsed into the expected shape."""


class InvalidTolerance(InputError):
    pass


class ZeroVector(InputError):
    """A homogeneous coordinate vector is zero or not finite."""


class ZeroCovector(InputError):
    pass


class NotUnitary(InputError):
    pass


class NotInSU2(NotUnitary):
    pass


class NotSymmetric(InputError):
    pass


class InvalidRadius(InputError):
    pass


# --- Mathematical preconditions (exit status 3) ---

class PreconditionError(HyperQError):
    exit_code = 3


class ChartUndefined(PreconditionError):
    pass


class FrameUndefined(PreconditionError):
    pass


class NotOnHypersurface(PreconditionError):
    pass


class NotTangent(PreconditionError):
    pass


class NotOnSigma(PreconditionError):
    """A base point was expected on the unit quaternion sphere."""


class CriteriaDisagree(PreconditionError):
    """Two equivalent criteria gave different answers; the tolerances are miscalibrated."""


class FibreInput(PreconditionError):
    pass


class DegenerateConfiguration(PreconditionError):
    pass


class NotOnCommonLine(PreconditionError):
    pass


class TangentPlane(PreconditionError):
    pass


class NotJInvariant(PreconditionError):
    pass


class OnBranchLocus(PreconditionError):
    pass


class FibreContained(PreconditionError):
    pass


class NotDisjoint(PreconditionError):
    """Global section labelling needs a discriminant circle disjoint from the unit circle."""


class MonodromyDetected(PreconditionError):
    pass


class ContinuationFailed(PreconditionError):
    pass


class NotOnIntersection(PreconditionError):
    pass


class NonTransverse(PreconditionError):
    pass


# --- Output ---

class IOFailure(HyperQError):
    exit_code = 1
