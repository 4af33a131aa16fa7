"""Exception types shared across the package.

Every validation failure raises one of these rather than a bare ValueError,
so callers (and the CLI exit-code mapping) can tell input problems apart
from resource problems.
"""

from __future__ import annotations

__all__ = [
    "KhcoverError",
    "MalformedCode",
    "NonPlanar",
    "BadArcCount",
    "LengthMismatch",
    "NoMark",
    "NotSuccessor",
    "BudgetExceeded",
    "NotAComplex",
    "NotCubeShaped",
    "NotChainMap",
    "HypothesisFails",
    "Disconnected",
    "NotAlternating",
    "IndefiniteForm",
    "DisconnectedResolution",
]


class KhcoverError(Exception):
    """Base class for all package errors."""


class MalformedCode(KhcoverError, ValueError):
    """The planar-diagram code cannot be parsed or is internally inconsistent."""


class NonPlanar(KhcoverError, ValueError):
    """The rotation system of the code does not embed in the plane."""


class BadArcCount(KhcoverError, ValueError):
    """Some arc label does not appear exactly twice."""


class LengthMismatch(KhcoverError, ValueError):
    """A state vector has the wrong length for the diagram."""


class NoMark(KhcoverError, ValueError):
    """A reduced-complex operation was requested on an unmarked diagram."""


class NotSuccessor(KhcoverError, ValueError):
    """Edge maps require states that differ by raising a single coordinate."""


class BudgetExceeded(KhcoverError, RuntimeError):
    """A computation would exceed the configured size budget."""


class NotAComplex(KhcoverError, ValueError):
    """Composite of consecutive differentials is nonzero."""


class NotCubeShaped(KhcoverError, ValueError):
    """The input complex is not a cube of resolutions."""


class NotChainMap(KhcoverError, ValueError):
    """A purported chain map fails to commute with the differentials."""


class HypothesisFails(KhcoverError, ValueError):
    """A homotopy-algebra hypothesis (for example dH + Hd = f.g) fails."""


class Disconnected(KhcoverError, ValueError):
    """The diagram (as a 4-valent graph) is not connected."""


class NotAlternating(KhcoverError, ValueError):
    """The diagram is not alternating."""


class IndefiniteForm(KhcoverError, ValueError):
    """A bilinear form that must be negative definite is not."""


class DisconnectedResolution(KhcoverError, ValueError):
    """Resolving a crossing produced a split diagram where connectivity is required."""
