"""Exception taxonomy shared across the package."""


class QcError(Exception):
    """Base class for all library errors."""


class StructureError(QcError):
    """Malformed input: bad table shapes, unknown names, bad file syntax."""


class DomainMismatchError(QcError):
    """An element, point, or space was used outside the instance it belongs to."""


class PreconditionError(QcError):
    """A documented mathematical precondition does not hold for the inputs."""


class InvariantError(QcError):
    """An internally re-checked theorem failed; indicates a bug, not bad input."""
