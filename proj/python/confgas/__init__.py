"""Ideal Bose and Fermi gases in bounded planar domains and long tubes."""

from ._confgas import (
    AccuracyError,
    ConvergenceError,
    DomainError,
    Error,
    GeometryError,
    ModelError,
    NoBracketError,
    NonMonotoneError,
    PlanarDomain,
    ResourceError,
    SingularityError,
    TruncationError,
    TubeDomain,
    exact_thermo,
    h,
    solve,
    spectrum,
    theta,
    thermo,
    verify,
)

__all__ = [
    "AccuracyError",
    "ConvergenceError",
    "DomainError",
    "Error",
    "GeometryError",
    "ModelError",
    "NoBracketError",
    "NonMonotoneError",
    "PlanarDomain",
    "ResourceError",
    "SingularityError",
    "TruncationError",
    "TubeDomain",
    "exact_thermo",
    "h",
    "solve",
    "spectrum",
    "theta",
    "thermo",
    "verify",
]
