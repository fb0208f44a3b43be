"""Equality-attaining distributions for every sharp bound.

Each construction reproduces the distribution stated alongside the
corresponding inequality.  Unimodal-class witnesses are stored in the
mixture form M + U*Y with discrete Y: one atom at the mode M for each
zero of Y, and one uniform segment between M and M + y for each nonzero
atom y of Y, carrying the same mass.  In particular a symmetric uniform
block appears as two half-segments meeting at the mode, so the
structural unimodality check (every segment touching the mode) passes by
construction.

Queries with v > u on a reflection-closed class are answered by
reflecting the witness of the swapped query.
"""

from dataclasses import dataclass
from math import sqrt

from . import bounds as _b
from .bounds import DistributionClass, IntervalSpec
from .cubic import gamma_for, mode_mean_x
from .errors import NoWitness
from .mixture import MixtureDistribution, make_mixture, reflect

__all__ = ["ExtremalWitness", "extremal_for"]

SQRT3 = sqrt(3.0)


@dataclass(frozen=True)
class ExtremalWitness:
    """A distribution attaining ``claimed_value`` for (dist_class, interval)."""

    distribution: MixtureDistribution
    dist_class: DistributionClass
    interval: IntervalSpec
    mode: float | None
    claimed_value: float
    regime: str


def _khintchine(mode: float, y_atoms) -> MixtureDistribution:
    """Mixture of M + U*y over the given (y, mass) atoms of Y."""
    atoms = []
    segments = []
    for y, m in y_atoms:
        if m <= 0.0:
            continue
        if y == 0.0:
            atoms.append((mode, m))
        elif y > 0.0:
            segments.append((mode, mode + y, m))
        else:
            segments.append((mode + y, mode, m))
    return make_mixture(atoms, segments)


def _all_one_sided(v):
    # Two atoms: v and -1/v.
    return make_mixture([(v, 1.0 / (1.0 + v * v)), (-1.0 / v, v * v / (1.0 + v * v))]), None


def _all_two_sided(u, v, regime):
    if regime == "thm2.trivial":
        return make_mixture([(-sqrt(u / v), v / (u + v)), (sqrt(v / u), u / (u + v))]), None
    if regime == "thm2.mid":
        s2 = (u + v) ** 2
        mid_mass = 1.0 - (4.0 + (u - v) ** 2) / s2
        return make_mixture([
            (-u, (2.0 + v * (v - u)) / s2),
            ((v - u) / 2.0, mid_mass),
            (v, (2.0 + u * (u - v)) / s2),
        ]), None
    return make_mixture([(-1.0 / v, v * v / (1.0 + v * v)), (v, 1.0 / (1.0 + v * v))]), None


def _symmetric_one_sided(v):
    w = max(v, 1.0)
    m = 0.5 / (w * w)
    return make_mixture([(-w, m), (0.0, 1.0 - 2.0 * m), (w, m)]), None


def _symmetric_two_sided(u, v, regime):
    if regime == "thm4.c1":
        return make_mixture([(-1.0, 0.5), (1.0, 0.5)]), None
    if regime == "thm4.c2":
        m = 0.5 / (u * u)
        return make_mixture([(-u, m), (0.0, 1.0 - 2.0 * m), (u, m)]), None
    if regime == "thm4.c3":
        p = (1.0 - v * v) / (2.0 * (u * u - v * v))
        q = (u * u - 1.0) / (2.0 * (u * u - v * v))
        return make_mixture([(-u, p), (-v, q), (v, q), (u, p)]), None
    m = 0.5 / (v * v)
    return make_mixture([(-v, m), (0.0, 1.0 - 2.0 * m), (v, m)]), None


def _concave_one_sided(v):
    if v <= 2.0 / SQRT3:
        return make_mixture([], [(0.0, SQRT3, 1.0)]), 0.0
    q = 4.0 / (3.0 * v * v)
    return make_mixture([(0.0, 1.0 - q)], [(0.0, 1.5 * v, q)]), 0.0


def _unimodal_one_sided(v, regime):
    if regime == "thm8.lin":
        atom = (3.0 - v * v) / (3.0 * (1.0 + v * v))
        return make_mixture([(v, atom)], [(-(3.0 + v * v) / (2.0 * v), v, 1.0 - atom)]), v
    atom = (3.0 * v * v - 1.0) / (3.0 * (1.0 + v * v))
    return make_mixture(
        [(-1.0 / v, atom)],
        [(-1.0 / v, (1.0 + 3.0 * v * v) / (2.0 * v), 1.0 - atom)],
    ), -1.0 / v


def _unimodal_two_sided(u, v, regime):
    if regime == "thm10.cap":
        return _unimodal_one_sided(v, "thm8.cap")
    # Narrow intervals: Z = (v-u)/2 + U*Y with a three-point Y.
    mode = (v - u) / 2.0
    s2 = (u + v) ** 2
    arm = 0.75 * (u + v)
    p_lo = (4.0 / 3.0) * (2.0 + v * (v - u)) / s2
    p_hi = (4.0 / 3.0) * (2.0 + u * (u - v)) / s2
    p_mid = 1.0 - (4.0 / 3.0) * (4.0 + (v - u) ** 2) / s2
    return _khintchine(mode, [(-arm, p_lo), (0.0, p_mid), (arm, p_hi)]), mode


def _mode_mean_one_sided(v):
    x = mode_mean_x(v).x
    c = v * x
    return _khintchine(0.0, [(-3.0 / c, c * c / (3.0 + c * c)), (c, 3.0 / (3.0 + c * c))]), 0.0


def _mode_mean_two_sided(u, v):
    g = gamma_for(u, v)
    c = 0.375 * (g + 3.0) * v
    c2 = c * c
    y_atoms = [
        (-g * c, 3.0 * (4.0 / c2 - g + 1.0) / ((g + 1.0) * (g + 3.0))),
        (0.75 * (1.0 - g) * c, 16.0 * (g - 3.0 / c2) / ((g + 3.0) * (3.0 * g + 1.0))),
        (c, 3.0 * (4.0 / c2 + g * (g - 1.0)) / ((g + 1.0) * (3.0 * g + 1.0))),
    ]
    return _khintchine(0.0, y_atoms), 0.0


def _sym_unimodal_block(half_width, block_mass) -> MixtureDistribution:
    """Uniform on [-L, L] with the given mass plus a point mass at 0."""
    return _khintchine(0.0, [(-half_width, 0.5 * block_mass),
                             (0.0, 1.0 - block_mass),
                             (half_width, 0.5 * block_mass)])


def _sym_unimodal_one_sided(v):
    half = max(1.5 * v, SQRT3)
    block = min(1.0, 4.0 / (3.0 * v * v))
    return _sym_unimodal_block(half, block), 0.0


def _sym_unimodal_two_sided(u, v, regime):
    if regime == "thm15.mid":
        s = u + v
        return _sym_unimodal_block(0.75 * s, 16.0 / (3.0 * s * s)), 0.0
    return _sym_unimodal_block(1.5 * v, 4.0 / (3.0 * v * v)), 0.0


def extremal_for(dist_class: DistributionClass, interval: IntervalSpec) -> ExtremalWitness:
    """Construct the distribution attaining the sharp bound.

    Out-of-range (class, interval) pairs propagate OutOfTheoremRange from
    the bound dispatch.  NoWitness is raised where a bound is approached
    but not attained; every in-range query of the six classes has an
    attaining distribution, so this currently only guards future regimes.
    """
    tb = _b.bound(dist_class, interval)
    u, v = interval.u, interval.v
    swapped = (not interval.is_one_sided) and v > u
    if swapped:
        u, v = v, u

    if dist_class is DistributionClass.ALL:
        d, mode = _all_one_sided(v) if interval.is_one_sided else _all_two_sided(u, v, tb.regime)
    elif dist_class is DistributionClass.SYMMETRIC:
        d, mode = (_symmetric_one_sided(v) if interval.is_one_sided
                   else _symmetric_two_sided(u, v, tb.regime))
    elif dist_class is DistributionClass.CONCAVE_HALF_LINE:
        d, mode = _concave_one_sided(v)
    elif dist_class is DistributionClass.UNIMODAL:
        d, mode = (_unimodal_one_sided(v, tb.regime) if interval.is_one_sided
                   else _unimodal_two_sided(u, v, tb.regime))
    elif dist_class is DistributionClass.UNIMODAL_MODE_EQ_MEAN:
        # No swap: the two-sided formula distinguishes the two sides itself.
        if interval.is_one_sided:
            d, mode = _mode_mean_one_sided(v)
        else:
            d, mode = _mode_mean_two_sided(interval.u, interval.v)
        swapped = False
    elif dist_class is DistributionClass.SYMMETRIC_UNIMODAL:
        d, mode = (_sym_unimodal_one_sided(v) if interval.is_one_sided
                   else _sym_unimodal_two_sided(u, v, tb.regime))
    else:  # pragma: no cover
        raise NoWitness(f"no construction for {dist_class}")

    if swapped:
        d = reflect(d)
        if mode is not None:
            mode = -mode
    return ExtremalWitness(
        distribution=d,
        dist_class=dist_class,
        interval=interval,
        mode=mode,
        claimed_value=tb.value,
        regime=tb.regime,
    )
