"""Exception types shared across epikit."""

from __future__ import annotations


class EpikitError(Exception):
    """Base class for all library errors."""


class InvalidInput(EpikitError, ValueError):
    """Malformed or inconsistent user input (bad type name, bad Kac string, ...)."""


class NotABarycentre(InvalidInput):
    """The point is not the barycentre of a facet of the closed fundamental alcove."""


class Unsupported(EpikitError):
    """A case the library deliberately refuses to guess at."""


class NonCompact(EpikitError):
    """A support set whose negative cone is nontrivial, so a region is unbounded."""


class Unstable(EpikitError):
    """A support family that is not F_q-stable where stability is required."""
