"""Exception taxonomy shared across the package."""


class QcvError(Exception):
    """Base class for all package errors."""


class RingMismatchError(QcvError):
    """Operands live in different coefficient rings."""


class StructuralError(QcvError):
    """An internal solve failed; the fixed structural tensors are wrong."""


class SurfaceMismatchError(QcvError):
    """Elements or diagrams attached to incompatible surfaces or modes."""


class DiagramError(QcvError):
    """Invalid diagram input.  Carries slice/atom coordinates when known."""

    def __init__(self, message, slice_index=None, atom_index=None):
        loc = ""
        if slice_index is not None:
            loc = f" (slice {slice_index}"
            loc += f", atom {atom_index})" if atom_index is not None else ")"
        super().__init__(message + loc)
        self.slice_index = slice_index
        self.atom_index = atom_index


class NotClosedError(QcvError):
    """A closed diagram was required but boundary points remain."""


class BudgetError(QcvError):
    """An enumeration or verification exceeded its configured budget."""


class RewriteLimitError(QcvError):
    """The straightening rewriter hit its step bound (should never happen)."""
