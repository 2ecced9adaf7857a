"""Exceptions raised by univshift components."""
from typing import Dict


class UnivShiftError(Exception):
    """Base class of all domain errors.

    The class name doubles as a stable machine readable ``kind`` which the
    CLI reports on stderr.
    """

    @property
    def kind(self) -> str:
        """Stable name of the error kind.

        Returns:
            str: Class name of the error
        """
        return type(self).__name__

    def to_json(self) -> Dict[str, str]:
        """Machine readable form of the error.

        Returns:
            Dict: error kind and message
        """
        return {"error": self.kind, "message": str(self)}


class OutOfWindow(UnivShiftError):
    """A pattern or query reaches outside a finite window."""


class BudgetExceeded(UnivShiftError):
    """An enumeration would exceed the configured cap."""


class WindowTooSmall(UnivShiftError):
    """A word is shorter than the block code window."""


class ZeroAlphabet(UnivShiftError):
    """A stream header announces an empty alphabet."""


class EmptySet(UnivShiftError):
    """The empty set has no canonical enumeration."""


class NoPatterns(UnivShiftError):
    """A subshift without forbidden patterns cannot be Godel coded."""


class HeaderMismatch(UnivShiftError):
    """Pattern alphabet or dimension disagrees with a header."""


class BudgetExhausted(UnivShiftError):
    """An oracle machine did not halt within its step budget."""


class CapExceeded(UnivShiftError):
    """A search level exceeded its cap."""


class OutOfDomainQuery(UnivShiftError):
    """A machine queried a cell outside the finite oracle it was given."""


class SizeMismatch(UnivShiftError):
    """Bit assignments do not fit the requested layout."""


class NoCompleteCell(UnivShiftError):
    """A window holds no complete meta coding cell of the layer."""


class AlphabetTooLarge(UnivShiftError):
    """A target alphabet does not fit in the bits of a layer."""


class NotBit(UnivShiftError):
    """A packed stream carries a value other than 0 or 1."""


class NotSFT(UnivShiftError):
    """An operation needs a finite forbidden set."""


class ManifestError(UnivShiftError):
    """A manifest or bundle file is malformed."""
