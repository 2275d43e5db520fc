"""Exception hierarchy.

Two families matter to callers: ``InputError`` for bad arguments or
descriptors, and ``ConsistencyError`` for internal cross-checks that failed.
The CLI maps them to exit codes 2 and 3.
"""


class FlipError(Exception):
    pass


class InputError(FlipError, ValueError):
    pass


class ConsistencyError(FlipError, RuntimeError):
    pass


class ExchangeAxiomViolated(InputError):
    pass


class UnequalBasisSizes(InputError):
    pass


class IndexOutOfRange(InputError):
    pass


class SubsetOutOfRange(IndexOutOfRange):
    pass


class RankOutOfRange(InputError):
    pass


class NotCircuitHyperplane(InputError):
    pass


class GroundSetMismatch(InputError):
    pass


class SizeCapExceeded(InputError):
    pass


class NotSimple(InputError):
    pass


class HasLoop(InputError):
    pass


class RankRegimeUnsupported(InputError):
    pass


class NotFullRank(InputError):
    pass


class WrongGroup(InputError):
    pass


class EdgeNotFound(InputError):
    pass


class NotMinimallyRigid(InputError):
    pass


class DegeneracyRetriesExhausted(ConsistencyError):
    pass


class GainRuleMismatch(ConsistencyError):
    pass


class OddSelfProduct(ConsistencyError):
    pass
