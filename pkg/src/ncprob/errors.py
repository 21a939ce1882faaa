"""Exception hierarchy shared by all ncprob modules."""


class NcprobError(Exception):
    """Base class for all errors raised by this package."""


class RangeError(NcprobError):
    """An index or size is outside the configured bounds."""


class DimensionError(NcprobError):
    """Operands have incompatible sizes (ground set, arity, truncation, base)."""


class StructureError(NcprobError):
    """A combinatorial structure constraint is violated (crossing blocks, bad partition)."""


class MembershipError(NcprobError):
    """An element does not belong to the algebra or subspace it was claimed to."""


class DegreeError(NcprobError):
    """A requested degree exceeds the configured truncation cap."""


class ContractError(NcprobError):
    """An operation was called with data of the wrong kind (series kind discipline)."""


class ModelError(NcprobError):
    """A supplied model does not satisfy the hypothesis a verifier needs."""


class InvariantError(NcprobError):
    """Input data failed its own declared invariants on load or construction."""
