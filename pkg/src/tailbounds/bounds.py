"""Sharp upper bounds on P(Z <= -u or Z >= v) for standardized Z.

Each function returns the supremum of the tail probability over one of
six nonparametric distribution classes, together with the regime of the
piecewise formula that applied.  Distances are measured in standard
deviations from the mean; ``u`` is the distance below the mean and ``v``
the distance above it, and ``u = inf`` encodes the one-sided query
P(Z >= v).  Tail events use closed boundaries throughout.

All formulas are sharp: the ``extremal`` module constructs a mixture
distribution attaining each returned value, and the ``oracles`` module
re-derives the values by independent numerical maximization.

Conventions:

* Classes closed under reflection (all, symmetric, unimodal, symmetric
  unimodal) canonicalize two-sided queries by swapping so that v <= u.
  The mode-at-mean class states both orderings explicitly, so no swap
  happens there.
* Regime intervals are closed on both sides.  Adjacent formulas agree at
  shared endpoints; the label reports the lower-indexed regime.
* v = 0 makes the tail event the whole line for every class, so the
  one-sided bounds return the trivial value 1 there.  (For the symmetric
  classes the small-v formula does not extend to v = 0: an atom at the
  origin is counted fully by the closed one-sided event but only half by
  the two-sided event, so the formula's value 1/2 is not an upper bound.)
* Parameters outside a theorem's range raise OutOfTheoremRange; there is
  no silent fallback to a weaker class.
"""

import enum
import math
from dataclasses import dataclass
from math import inf, isfinite, sqrt

from .cubic import gamma_for, mode_mean_x
from .errors import InvalidClassQuery, InvalidInterval, InvalidMoment, OutOfTheoremRange

__all__ = [
    "DistributionClass",
    "IntervalSpec",
    "TailBound",
    "VPInput",
    "bound",
    "bound_all_one_sided",
    "bound_all_two_sided",
    "bound_symmetric_one_sided",
    "bound_symmetric_two_sided",
    "bound_concave_one_sided",
    "bound_gauss_two_sided",
    "bound_vp",
    "bound_unimodal_one_sided",
    "bound_unimodal_two_sided",
    "bound_mode_mean_one_sided",
    "bound_mode_mean_two_sided",
    "bound_sym_unimodal_one_sided",
    "bound_sym_unimodal_two_sided",
]

SQRT3 = sqrt(3.0)

# Citation labels, shared with the Table-1 renderer in the CLI.
CANTELLI = "Cantelli (1928)"
BIENAYME_CHEBYSHEV = "Bienayme-Chebyshev (1853/1867)"
SELBERG = "Selberg (1940)"
CHEBYSHEV_SYM = "Chebyshev (1867), symmetric"
SYM_TWO_SIDED = "symmetric two-sided Chebyshev"
ONE_SIDED_GAUSS = "one-sided Gauss"
GAUSS = "Gauss (1823)"
VYSOCHANSKII_PETUNIN = "Vysochanskii-Petunin (1980)"
UNIMODAL_CANTELLI = "unimodal Cantelli"
VP_TWO_SIDED = "Vysochanskii-Petunin (1983)"
UNIMODAL_TWO_SIDED = "unimodal two-sided Gauss"
MODE_MEAN_ONE_SIDED = "one-sided Gauss at the mean"
MODE_MEAN_TWO_SIDED = "two-sided Gauss at the mean"
CAMP = "Camp (1922)"
SEMENIKHIN = "Semenikhin (2019)"


class DistributionClass(enum.Enum):
    """The six distribution classes, keyed by their CLI tag."""

    ALL = "all"
    SYMMETRIC = "symmetric"
    CONCAVE_HALF_LINE = "concave"
    UNIMODAL = "unimodal"
    UNIMODAL_MODE_EQ_MEAN = "mode-mean"
    SYMMETRIC_UNIMODAL = "sym-unimodal"

    @classmethod
    def from_tag(cls, tag: str) -> "DistributionClass":
        for member in cls:
            if member.value == tag:
                return member
        raise InvalidClassQuery(f"unknown distribution class {tag!r}")


@dataclass(frozen=True)
class IntervalSpec:
    """Standardized tail interval: Z <= -u or Z >= v, with u possibly inf."""

    u: float
    v: float

    def __post_init__(self):
        if not (isfinite(self.v) and self.v > 0.0):
            raise InvalidInterval(f"v must be a positive real, got {self.v!r}")
        if not (self.u > 0.0) or math.isnan(self.u):
            raise InvalidInterval(f"u must be positive or inf, got {self.u!r}")

    @classmethod
    def one_sided(cls, v: float) -> "IntervalSpec":
        return cls(u=inf, v=v)

    @classmethod
    def two_sided(cls, u: float, v: float) -> "IntervalSpec":
        if not isfinite(u):
            raise InvalidInterval("two-sided interval needs a finite u")
        return cls(u=u, v=v)

    @property
    def is_one_sided(self) -> bool:
        return self.u == inf


@dataclass(frozen=True)
class TailBound:
    """A sharp bound value with the regime and citation that produced it."""

    value: float
    regime: str
    theorem: str
    conditions_ok: bool = True
    note: str | None = None


@dataclass(frozen=True)
class VPInput:
    """Threshold w and second moment E W^2 for the unrestricted unimodal bound."""

    w: float
    m2: float

    def __post_init__(self):
        if not (isfinite(self.m2) and self.m2 > 0.0):
            raise InvalidMoment(f"second moment must be positive, got {self.m2!r}")
        if not (isfinite(self.w) and self.w >= 0.0):
            raise InvalidInterval(f"threshold must be a nonnegative real, got {self.w!r}")


def _check_one_sided_v(v: float) -> None:
    if not (isfinite(v) and v >= 0.0):
        raise InvalidInterval(f"v must be a nonnegative real, got {v!r}")


def _canonical(u: float, v: float) -> tuple[float, float, bool]:
    """Order a two-sided query so v <= u; returns (u, v, swapped)."""
    if not (isfinite(u) and u > 0.0 and isfinite(v) and v > 0.0):
        raise InvalidInterval(f"two-sided distances must be positive reals, got u={u!r}, v={v!r}")
    if v > u:
        return v, u, True
    return u, v, False


def bound_all_one_sided(v: float) -> TailBound:
    """P(Z >= v) <= 1/(1 + v^2) for any standardized Z."""
    _check_one_sided_v(v)
    return TailBound(1.0 / (1.0 + v * v), "cantelli", CANTELLI)


def bound_all_two_sided(u: float, v: float) -> TailBound:
    """Two-sided bound for arbitrary standardized Z.

    With v <= u: 1 when u v <= 1; (4 + (u-v)^2)/(u+v)^2 when
    1/v <= u <= v + 2/v; 1/(1 + v^2) when u >= v + 2/v.
    """
    u, v, _ = _canonical(u, v)
    if u * v <= 1.0:
        return TailBound(1.0, "thm2.trivial", SELBERG)
    if u <= v + 2.0 / v:
        d = u - v
        s = u + v
        return TailBound((4.0 + d * d) / (s * s), "thm2.mid", SELBERG)
    return TailBound(1.0 / (1.0 + v * v), "thm2.cap", SELBERG)


def bound_symmetric_one_sided(v: float) -> TailBound:
    """P(Z >= v) <= 1/(2 w^2) with w = max(v, 1) for symmetric Z, v > 0."""
    _check_one_sided_v(v)
    if v == 0.0:
        return TailBound(1.0, "trivial", CHEBYSHEV_SYM,
                         note="v=0 makes the closed event almost sure in the limit")
    w = max(v, 1.0)
    return TailBound(0.5 / (w * w), "thm3", CHEBYSHEV_SYM)


def bound_symmetric_two_sided(u: float, v: float) -> TailBound:
    """Two-sided bound for symmetric standardized Z, in four regimes.

    With v <= u: 1 when u <= 1; 1/u^2 when u <= sqrt(2) v and u >= 1;
    1/2 + (1-v^2)/(2(u^2-v^2)) when v <= 1 < u and sqrt(2) v <= u;
    1/(2 v^2) when 1 <= v and sqrt(2) v <= u.
    """
    u, v, _ = _canonical(u, v)
    r2v = math.sqrt(2.0) * v
    if u <= 1.0:
        return TailBound(1.0, "thm4.c1", SYM_TWO_SIDED)
    if u <= r2v:
        return TailBound(1.0 / (u * u), "thm4.c2", SYM_TWO_SIDED)
    if v <= 1.0:
        return TailBound(0.5 + (1.0 - v * v) / (2.0 * (u * u - v * v)), "thm4.c3", SYM_TWO_SIDED)
    return TailBound(0.5 / (v * v), "thm4.c4", SYM_TWO_SIDED)


def _gauss_pieces(v: float) -> tuple[float, str]:
    if v <= 2.0 / SQRT3:
        return 1.0 - v / SQRT3, "lin"
    return (4.0 / 9.0) / (v * v), "cap"


def bound_concave_one_sided(v: float) -> TailBound:
    """P(Y >= v) for Y on [0, inf) with concave CDF there and E Y^2 = 1.

    1 - v/sqrt(3) for v <= 2/sqrt(3), then (4/9)/v^2.  Note the
    normalization is the raw second moment, not mean zero/variance one.
    """
    _check_one_sided_v(v)
    value, piece = _gauss_pieces(v)
    return TailBound(value, f"thm5.{piece}", ONE_SIDED_GAUSS)


def bound_gauss_two_sided(v: float) -> TailBound:
    """P(|Y| >= v) for unimodal Y with mode 0 and E Y^2 = 1 (Gauss)."""
    _check_one_sided_v(v)
    value, piece = _gauss_pieces(v)
    return TailBound(value, f"thm6.{piece}", GAUSS)


def bound_vp(inp: VPInput) -> TailBound:
    """P(|W| >= w) for any unimodal W with second moment m2.

    1 for w <= sqrt(m2); (4/3) m2/w^2 - 1/3 up to w = sqrt(8 m2/3);
    (4/9) m2/w^2 beyond.
    """
    w, m2 = inp.w, inp.m2
    if w * w <= m2:
        return TailBound(1.0, "vp.trivial", VYSOCHANSKII_PETUNIN)
    if w * w <= 8.0 * m2 / 3.0:
        return TailBound((4.0 / 3.0) * m2 / (w * w) - 1.0 / 3.0, "vp.mid", VYSOCHANSKII_PETUNIN)
    return TailBound((4.0 / 9.0) * m2 / (w * w), "vp.cap", VYSOCHANSKII_PETUNIN)


def bound_unimodal_one_sided(v: float) -> TailBound:
    """P(Z >= v) for unimodal standardized Z.

    (3 - v^2)/(3 (1 + v^2)) for v <= sqrt(5/3), then (4/9)/(1 + v^2).
    """
    _check_one_sided_v(v)
    if v * v <= 5.0 / 3.0:
        return TailBound((3.0 - v * v) / (3.0 * (1.0 + v * v)), "thm8.lin", UNIMODAL_CANTELLI)
    return TailBound((4.0 / 9.0) / (1.0 + v * v), "thm8.cap", UNIMODAL_CANTELLI)


def _vp_lower_u(v: float) -> float:
    """Smallest u for which the narrow-interval unimodal bound is proved."""
    return max(v, (11.0 * v - 4.0 * sqrt(6.0 * v * v - 10.0)) / 5.0)


def bound_unimodal_two_sided(u: float, v: float) -> TailBound:
    """Two-sided bound for unimodal standardized Z, v <= u after swap.

    For v >= sqrt(3): (4/9)(4 + (u-v)^2)/(u+v)^2 when u <= v + 2/v, else
    (4/9)/(1 + v^2).  For sqrt(5/3) <= v < sqrt(3) the first formula
    still holds on the narrower strip max(v, (11v - 4 sqrt(6v^2-10))/5)
    <= u <= v + 2/v.  Anything else is out of proved range.
    """
    u, v, _ = _canonical(u, v)
    if v >= SQRT3:
        if u <= v + 2.0 / v:
            d = u - v
            s = u + v
            return TailBound((4.0 / 9.0) * (4.0 + d * d) / (s * s), "thm10.mid", UNIMODAL_TWO_SIDED)
        return TailBound((4.0 / 9.0) / (1.0 + v * v), "thm10.cap", UNIMODAL_TWO_SIDED)
    if v * v >= 5.0 / 3.0 and _vp_lower_u(v) <= u <= v + 2.0 / v:
        d = u - v
        s = u + v
        return TailBound((4.0 / 9.0) * (4.0 + d * d) / (s * s), "thm9", VP_TWO_SIDED)
    raise OutOfTheoremRange(
        f"no sharp unimodal two-sided bound proved at u={u:.6g}, v={v:.6g}; "
        "the class-all bound applies but is not sharp for unimodal Z"
    )


def bound_mode_mean_one_sided(v: float) -> TailBound:
    """P(Z >= v) for unimodal standardized Z with mode at the mean.

    2 (x-1) / (v^2 x^2 + 2 x + 1) with x the root of
    2 v^2 x^3 - 3 v^2 x^2 - 3 = 0 exceeding 3/2.  Stated for every
    v > 0; no upper range restriction is known.
    """
    if not (isfinite(v) and v > 0.0):
        raise InvalidInterval(f"v must be a positive real, got {v!r}")
    x = mode_mean_x(v).x
    value = 2.0 * (x - 1.0) / (v * v * x * x + 2.0 * x + 1.0)
    return TailBound(value, "thm11", MODE_MEAN_ONE_SIDED)


def bound_mode_mean_two_sided(u: float, v: float) -> TailBound:
    """Two-sided bound for unimodal standardized Z with mode at the mean.

    Defined for sqrt(3) <= u <= v <= u + 2/u or sqrt(3) <= v <= u <= v + 2/v,
    without swapping (the formula's v is the right-side distance).  With
    g the positive root of g^3 + 3 g^2 - 3 (u/v) g - (u/v) = 0:

        (1024 v^-2 + 27 (g-1)^2 (g+3)^2) / (9 (g+3)^3 (3 g + 1)).
    """
    if not (isfinite(u) and u > 0.0 and isfinite(v) and v > 0.0):
        raise InvalidInterval(f"two-sided distances must be positive reals, got u={u!r}, v={v!r}")
    ok = (SQRT3 <= u <= v <= u + 2.0 / u) or (SQRT3 <= v <= u <= v + 2.0 / v)
    if not ok:
        raise OutOfTheoremRange(
            f"mode-at-mean two-sided bound needs sqrt(3) <= min(u,v) and "
            f"max(u,v) <= min(u,v) + 2/min(u,v); got u={u:.6g}, v={v:.6g}"
        )
    g = gamma_for(u, v)
    g3 = g + 3.0
    value = (1024.0 / (v * v) + 27.0 * (g - 1.0) ** 2 * g3 * g3) / (9.0 * g3**3 * (3.0 * g + 1.0))
    return TailBound(value, "thm13", MODE_MEAN_TWO_SIDED)


def bound_sym_unimodal_one_sided(v: float) -> TailBound:
    """P(Z >= v) for symmetric unimodal standardized Z, v > 0.

    (1/2)(1 - v/sqrt(3)) for v < 2/sqrt(3), then (4/9)/(2 v^2).
    """
    _check_one_sided_v(v)
    if v == 0.0:
        return TailBound(1.0, "trivial", CAMP,
                         note="v=0 makes the closed event almost sure in the limit")
    value, piece = _gauss_pieces(v)
    return TailBound(0.5 * value, f"thm14.{piece}", CAMP)


def bound_sym_unimodal_two_sided(u: float, v: float) -> TailBound:
    """Two-sided bound for symmetric unimodal standardized Z.

    Needs v >= sqrt(3) after the canonicalizing swap.  Then
    (4/9) * 4/(u+v)^2 for u <= (2 sqrt(2) - 1) v, else (4/9)/(2 v^2).
    """
    u, v, _ = _canonical(u, v)
    if v < SQRT3:
        raise OutOfTheoremRange(
            f"symmetric unimodal two-sided bound needs min(u,v) >= sqrt(3), got {v:.6g}"
        )
    if u <= (2.0 * math.sqrt(2.0) - 1.0) * v:
        s = u + v
        return TailBound((4.0 / 9.0) * 4.0 / (s * s), "thm15.mid", SEMENIKHIN)
    return TailBound((4.0 / 9.0) / (2.0 * v * v), "thm15.cap", SEMENIKHIN)


_ONE_SIDED = {
    DistributionClass.ALL: bound_all_one_sided,
    DistributionClass.SYMMETRIC: bound_symmetric_one_sided,
    DistributionClass.CONCAVE_HALF_LINE: bound_concave_one_sided,
    DistributionClass.UNIMODAL: bound_unimodal_one_sided,
    DistributionClass.UNIMODAL_MODE_EQ_MEAN: bound_mode_mean_one_sided,
    DistributionClass.SYMMETRIC_UNIMODAL: bound_sym_unimodal_one_sided,
}

_TWO_SIDED = {
    DistributionClass.ALL: bound_all_two_sided,
    DistributionClass.SYMMETRIC: bound_symmetric_two_sided,
    DistributionClass.UNIMODAL: bound_unimodal_two_sided,
    DistributionClass.UNIMODAL_MODE_EQ_MEAN: bound_mode_mean_two_sided,
    DistributionClass.SYMMETRIC_UNIMODAL: bound_sym_unimodal_two_sided,
}


def bound(dist_class: DistributionClass, interval: IntervalSpec) -> TailBound:
    """Dispatch to the sharp bound for (class, interval).

    One-sided queries (u = inf) route to the one-sided formulas.  The
    concave half-line class only supports one-sided queries.
    """
    if interval.is_one_sided:
        return _ONE_SIDED[dist_class](interval.v)
    if dist_class is DistributionClass.CONCAVE_HALF_LINE:
        raise InvalidClassQuery(
            "the concave half-line class is defined on [0, inf) and only "
            "supports one-sided queries (u = inf)"
        )
    return _TWO_SIDED[dist_class](interval.u, interval.v)
