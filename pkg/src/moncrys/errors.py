"""Exception types shared across the package."""


class MonomialCrystalError(Exception):
    """Base class for all errors raised by this package."""


class UnknownDiagram(MonomialCrystalError):
    """Diagram name is not a supported ADE type or the rank is out of range."""


class ParityViolation(MonomialCrystalError):
    """An index k was paired with a node of the wrong parity class."""


class NotInRootLattice(MonomialCrystalError):
    """A weight vector has no integral expression in the simple-root basis."""


class NotMinuscule(MonomialCrystalError):
    """The requested fundamental weight is not minuscule for this diagram."""


class NotDecomposable(MonomialCrystalError):
    """The monomial is not of the form y_R * z_S^{-1} for any multiset tuple S."""


class ContainmentViolation(MonomialCrystalError):
    """A multiset difference required by the T-multiset formula is undefined."""


class CapExceeded(MonomialCrystalError):
    """Crystal generation would exceed the configured element cap."""


class NotAnElement(MonomialCrystalError):
    """The monomial does not belong to the crystal it was queried against."""


class CosetMismatch(MonomialCrystalError):
    """Chain decomposition inputs do not lie in a single integer coset."""


class SizeMismatch(MonomialCrystalError):
    """Chain decomposition inputs have different cardinalities."""
