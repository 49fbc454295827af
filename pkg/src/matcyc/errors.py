"""Exception hierarchy shared by all matcyc modules.

The CLI maps these onto exit codes: resource limits exit 3, malformed
input or arguments exit 2, analysis failures exit 1.
"""


class MatcycError(Exception):
    """Base class for all library errors."""


class InvalidSubsetError(MatcycError):
    """A subset refers to elements outside the ground set / column range."""


class InvalidArgumentError(MatcycError):
    """An argument violates a documented precondition."""


class IncompatibleMatricesError(MatcycError):
    """Two matrices cannot be compared (different modulus or width)."""


class InvalidMinorSpecError(MatcycError):
    """A minor specification does not satisfy contract ⊆ restrict ⊆ ground."""


class InvalidEdgeError(MatcycError):
    """A pair of cyclic flats is not a covering edge of the lattice."""


class DegenerateCodeError(MatcycError):
    """The (restricted) code is degenerate: zero, has a zero column, or
    a coordinate no codeword depends on."""


class NoLocalityError(MatcycError):
    """No repair set with the requested local distance exists."""


class InapplicableTheoremError(MatcycError):
    """A structural check was requested for an input outside its scope."""


class ResourceLimitError(MatcycError):
    """An enumeration or search exceeded its configured budget."""


class InputFormatError(MatcycError):
    """A matrix / matroid description file could not be parsed."""
