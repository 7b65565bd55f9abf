"""
Exception hierarchy shared by the numerical domains.

Configuration-type problems derive from ValueError, numerical breakdowns from
ArithmeticError, so callers can catch either the broad builtin or ClfError.
"""

from __future__ import annotations

from typing import Any


class ClfError(Exception):
    """Base class for every error raised by the domain packages."""


class GeometryError(ClfError, ValueError):
    """Invalid ellipsoid, parameter point, box, or quadrature grid."""


class PatchError(ClfError, ValueError):
    """A patch cannot be built for the requested scale."""


class ScheduleError(ClfError, ValueError):
    """The alpha schedule exceeds its log-domain budget."""


class NonFiniteIntegrandError(ClfError, ArithmeticError):
    """An integrand returned NaN or infinity at a quadrature node."""

    def __init__(self, node: dict[str, Any], value: complex):
        self.node = node
        self.value = value
        super().__init__(f"non-finite integrand value {value!r} at node {node}")


class NearSingularKernelError(ClfError, ArithmeticError):
    """|w(xi, z)| fell below the kernel guard at some node."""

    def __init__(self, index: int, magnitude: float, guard: float):
        self.index = index
        self.magnitude = magnitude
        self.guard = guard
        super().__init__(
            f"near-singular kernel evaluation: |w| = {magnitude:.3e} < {guard:.3g} at node {index}"
        )


class BracketError(ClfError, ArithmeticError):
    """A monotone root search could not bracket its target."""
