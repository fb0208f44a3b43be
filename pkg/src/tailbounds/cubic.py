"""Closed-form cubic roots behind the mode-at-mean bounds.

Both bounds for unimodal distributions with coinciding mode and mean lead
to a cubic stationarity condition.  The asymmetric two-sided bound needs
the unique positive root of

    z^3 + 3 z^2 - 3 r z - r = 0,    r > 0,

and the one-sided bound needs the root x > 3/2 of

    2 v^2 x^3 - 3 v^2 x^2 - 3 = 0,  v > 0.

Both are solved by the trigonometric (Vieta) substitution and then
polished with one safeguarded Newton step.  The polish matters near
r = 1 where the cosine is flat: equal distances must report z = 1 to
1e-12 so that symmetric queries reproduce the classical symmetric bound
without drift.
"""

from dataclasses import dataclass
from math import atan, cos, isfinite, pi, sqrt

from .errors import InvalidParameter

__all__ = ["CubicRoot", "ModeMeanSolution", "cubic_positive_root", "gamma_for", "mode_mean_x"]


@dataclass(frozen=True)
class CubicRoot:
    """Positive root ``z`` of ``z^3 + 3 z^2 - 3 r z - r = 0``."""

    r: float
    z: float

    def residual(self) -> float:
        return self.z**3 + 3.0 * self.z**2 - 3.0 * self.r * self.z - self.r

    def residual_scale(self) -> float:
        z, r = abs(self.z), abs(self.r)
        return z**3 + 3.0 * z**2 + 3.0 * r * z + r


@dataclass(frozen=True)
class ModeMeanSolution:
    """Stationary point ``x`` of the one-sided mode-at-mean bound at ``v``."""

    v: float
    w: float
    x: float

    def residual(self) -> float:
        v2 = self.v * self.v
        return 2.0 * v2 * self.x**3 - 3.0 * v2 * self.x**2 - 3.0

    def residual_scale(self) -> float:
        return 1.0 + self.v * self.v * self.x**3


def cubic_positive_root(r: float) -> CubicRoot:
    """Unique positive root of ``z^3 + 3 z^2 - 3 r z - r = 0`` for r > 0.

    Closed trigonometric form, then one safeguarded Newton step.  In
    particular the root at r = 1 is exactly 1 after polishing.
    """
    if not (isfinite(r) and r > 0.0):
        raise InvalidParameter(f"cubic parameter must be a positive real, got {r!r}")
    z = 2.0 * sqrt(1.0 + r) * cos((pi - atan(sqrt(r))) / 3.0) - 1.0
    z = _polish(z, lambda t: ((t + 3.0) * t - 3.0 * r) * t - r,
                lambda t: (3.0 * t + 6.0) * t - 3.0 * r)
    return CubicRoot(r=r, z=z)


def gamma_for(u: float, v: float) -> float:
    """Shape parameter of the asymmetric two-sided mode-at-mean bound.

    Equals the positive root of ``g^3 + 3 g^2 - 3 (u/v) g - (u/v) = 0``
    and is exactly 1 when u = v.
    """
    if not (u > 0.0 and v > 0.0 and isfinite(v)):
        raise InvalidParameter(f"distances must be positive reals, got u={u!r}, v={v!r}")
    return cubic_positive_root(u / v).z


def mode_mean_x(v: float) -> ModeMeanSolution:
    """Root x > 3/2 of ``2 v^2 x^3 - 3 v^2 x^2 - 3 = 0`` via Vieta.

    The auxiliary value is w = (sqrt(3+v^2) + sqrt(3))^(2/3) * v^(-2/3);
    the two Vieta branches are reciprocal, so x = (w + 1 + 1/w)/2 is the
    same for both and exceeds 3/2 whenever w != 1, which always holds.
    """
    if not (isfinite(v) and v > 0.0):
        raise InvalidParameter(f"distance must be a positive real, got {v!r}")
    w = (sqrt(3.0 + v * v) + sqrt(3.0)) ** (2.0 / 3.0) * v ** (-2.0 / 3.0)
    x = 0.5 * (w + 1.0 + 1.0 / w)
    v2 = v * v
    x = _polish(x, lambda t: (2.0 * v2 * t - 3.0 * v2) * t * t - 3.0,
                lambda t: 6.0 * v2 * t * (t - 1.0), floor=1.5)
    return ModeMeanSolution(v=v, w=w, x=x)


def _polish(x0, f, fprime, floor=0.0):
    """One Newton step from x0, kept only if it improves the residual."""
    fp = fprime(x0)
    if fp == 0.0 or not isfinite(fp):
        return x0
    x1 = x0 - f(x0) / fp
    if isfinite(x1) and x1 > floor and abs(f(x1)) <= abs(f(x0)):
        return x1
    return x0
