"""Independent numerical maximizers that confirm each bound is sharp.

Every oracle searches a finite-dimensional family of distributions that
provably contains (or approaches) the extremal ones, evaluates the tail
functional exactly on each candidate, and reports the best value found.
Soundness means the best value never exceeds the analytic bound beyond
floating-point slack; approach means it gets within grid resolution of
it.  A violation of soundness is a formula bug, never a tuning issue.

Search families:

* linear program vertices for the symmetric two-sided bound (exact);
* mixtures M + U*Y with discrete 2- or 3-atom Y (the unimodal classes),
  where the masses of Y are pinned by E Y = -2M, E Y^2 = 3(1 + M^2);
* plain 2- or 3-atom distributions with mean 0 and variance 1 (all),
  or two symmetric atom pairs plus an optional atom at 0 (symmetric);
* two-atom distributions with given mean and variance for the capped
  reciprocal moment E[1/max(Y, 1)];
* seeded Monte Carlo on a constructed witness.

Grid searches refine iteratively: each round re-grids a window around
the best cell so far.  Everything is deterministic: no randomness except
the seeded Monte Carlo, sequential scans, and ties broken toward the
earliest candidate in enumeration order (families first, then
lexicographic grid order).
"""

import math
from dataclasses import dataclass
from math import inf, isfinite, sqrt

import numpy as np

from . import kernels
from .bounds import DistributionClass, IntervalSpec, bound, bound_symmetric_two_sided
from .errors import (
    InvalidCount,
    InvalidInterval,
    InvalidMoment,
    OracleInconclusive,
    OracleViolation,
)
from .mixture import MixtureDistribution, mixture_sample

__all__ = [
    "GridSpec",
    "OracleReport",
    "PolygonQ",
    "symmetric_lp_oracle",
    "khintchine_grid_oracle",
    "discrete_atoms_oracle",
    "capped_reciprocal_bound",
    "capped_reciprocal_oracle",
    "monte_carlo_tail",
    "segment_tail_weight",
    "ensure_sound",
]

SQRT3 = sqrt(3.0)


@dataclass(frozen=True)
class GridSpec:
    """Resolution of the refining grid searches.

    ``mode_steps`` grids the mode location, ``atom_steps`` each atom
    coordinate; both apply to the one- and two-dimensional searches.
    Higher-dimensional products cap the per-axis count (101 for three
    axes, 41 for four) so a round stays near a million cells; the
    ``rounds`` zoom passes recover resolution far beyond a single flat
    grid.  ``window`` overrides the atom-coordinate search window.
    """

    mode_steps: int = 201
    atom_steps: int = 201
    rounds: int = 4
    window: tuple[float, float] | None = None

    def __post_init__(self):
        if self.mode_steps < 2 or self.atom_steps < 2 or self.rounds < 1:
            raise InvalidCount("grid needs at least 2 steps per axis and 1 round")


@dataclass(frozen=True)
class OracleReport:
    """Best value found, the parameters that achieved it, and the target."""

    oracle: str
    dist_class: DistributionClass | None
    interval: IntervalSpec | None
    best_value: float
    witness_params: tuple[float, ...]
    analytic_bound: float

    @property
    def gap(self) -> float:
        return self.analytic_bound - self.best_value


@dataclass(frozen=True)
class PolygonQ:
    """Feasible (p, q) mass region of the symmetric two-sided program."""

    u: float
    v: float
    vertices: tuple[tuple[float, float], ...]


def segment_tail_weight(y: float, u: float, v: float, mode: float = 0.0) -> float:
    """P(Z <= -u or Z >= v) for Z uniform between ``mode`` and ``mode + y``.

    This is the per-atom integrand of the mixture searches: for
    Z = M + U*Y the tail probability is the expectation of this weight
    over the atoms y of Y.
    """
    neg = -(u + mode)
    pos = v - mode
    if y < neg:
        return 1.0 - neg / y
    if y > pos:
        return 1.0 - pos / y
    return 0.0


def _default_window(u: float, v: float) -> tuple[float, float]:
    return -10.0 * (1.0 + min(u, 10.0)), 10.0 * (1.0 + v)


def _refine(scan, axes, rounds):
    """Iteratively re-grid ``axes`` around the best cell of ``scan``.

    ``axes`` is a list of (lo, hi, steps, hard_lo, hard_hi); ``scan``
    maps a list of grids to (value, index_tuple | None).  Returns the
    best (value, point) seen over all rounds.
    """
    best_val = -inf
    best_pt = None
    windows = [(lo, hi) for lo, hi, _, _, _ in axes]
    for _ in range(rounds):
        grids = [np.linspace(lo, hi, axes[k][2]) for k, (lo, hi) in enumerate(windows)]
        val, idx = scan(grids)
        if idx is not None and val > best_val:
            best_val = val
            best_pt = tuple(float(g[i]) for g, i in zip(grids, idx))
        if best_pt is None:
            break
        windows = []
        for g, center, (_, _, steps, hard_lo, hard_hi) in zip(grids, best_pt, axes):
            span = float(g[-1] - g[0])
            step = span / (steps - 1) if span > 0.0 else 0.0
            lo = max(hard_lo, center - 2.0 * step)
            hi = min(hard_hi, center + 2.0 * step)
            windows.append((lo, hi) if hi >= lo else (center, center))
    return best_val, best_pt


def _unflatten(flat, shape):
    out = []
    for n in reversed(shape):
        out.append(flat % n)
        flat //= n
    return tuple(reversed(out))


# The khintchine searches loop over the mode grid in python and call the
# per-mode kernel; the first maximum in (M, atoms) order wins ties.

def _mode_pair_scan(u, v):
    def scan(grids):
        m_grid, t_grid = grids
        t_arr = np.ascontiguousarray(t_grid)
        best, best_idx = -inf, None
        for i, m in enumerate(m_grid):
            mu = -2.0 * m
            m2 = 3.0 * (1.0 + m * m)
            val, j = kernels.pair_scan(t_arr, mu, m2, -(u + m), v - m, True)
            if j >= 0 and val > best:
                best, best_idx = val, (i, j)
        return best, best_idx

    return scan


def _mode_triple_scan(u, v):
    def scan(grids):
        m_grid, g1, g2, g3 = (np.ascontiguousarray(g) for g in grids)
        shape = (len(g1), len(g2), len(g3))
        best, best_idx = -inf, None
        for i, m in enumerate(m_grid):
            mu = -2.0 * m
            m2 = 3.0 * (1.0 + m * m)
            val, flat = kernels.triple_scan(g1, g2, g3, mu, m2, -(u + m), v - m, True)
            if flat >= 0 and val > best:
                best, best_idx = val, (i, *_unflatten(flat, shape))
        return best, best_idx

    return scan


def _fixed_mode_pair_scan(u, v, mu=0.0, m2=3.0, psi=True):
    def scan(grids):
        val, j = kernels.pair_scan(np.ascontiguousarray(grids[0]), mu, m2, -u, v, psi)
        return val, (j,) if j >= 0 else None

    return scan


def _fixed_mode_triple_scan(u, v, mu=0.0, m2=3.0, psi=True):
    def scan(grids):
        g1, g2, g3 = (np.ascontiguousarray(g) for g in grids)
        val, flat = kernels.triple_scan(g1, g2, g3, mu, m2, -u, v, psi)
        return (val, _unflatten(flat, (len(g1), len(g2), len(g3)))) if flat >= 0 else (val, None)

    return scan


def _sym_arm(u, v):
    def scan(grids):
        val, j = kernels.sym_arm_scan(np.ascontiguousarray(grids[0]), u, v)
        return val, (j,) if j >= 0 else None

    return scan


def _sym_pairs(u, v):
    def scan(grids):
        s_grid, t_grid = (np.ascontiguousarray(g) for g in grids)
        val, flat, _ = kernels.sym_pair_scan(s_grid, t_grid, u, v)
        return (val, _unflatten(flat, (len(s_grid), len(t_grid)))) if flat >= 0 else (val, None)

    return scan


def _best_of(candidates):
    """(value, params) with the largest value; earliest candidate wins ties."""
    best_val, best_params = -inf, None
    for val, params in candidates:
        if params is not None and val > best_val:
            best_val, best_params = val, params
    return best_val, best_params


def khintchine_grid_oracle(dist_class: DistributionClass, u: float, v: float,
                           grid: GridSpec = GridSpec()) -> OracleReport:
    """Maximize the tail over mixtures M + U*Y with discrete Y.

    Y runs over 2-atom (and, for two-sided queries, 3-atom) laws with
    the moments forced by standardization; the mode M runs over
    [-sqrt(3), sqrt(3)] clipped to [-u, v], or is pinned to 0 for the
    mode-at-mean class; for the symmetric unimodal class Y is a
    symmetric pair plus an optional atom at 0.
    """
    interval = IntervalSpec(u=u, v=v)
    analytic = bound(dist_class, interval).value
    lo, hi = grid.window or _default_window(u, v)
    rounds = grid.rounds
    two_sided = not interval.is_one_sided
    candidates = []

    if dist_class is DistributionClass.SYMMETRIC_UNIMODAL:
        if grid.window:
            t_axis = (lo, hi, grid.atom_steps, lo, hi)
        else:
            t_axis = (SQRT3, max(hi, 2.0 * SQRT3), grid.atom_steps, SQRT3, inf)
        val, pt = _refine(_sym_arm(u, v), [t_axis], rounds)
        candidates.append((val, pt))
    elif dist_class is DistributionClass.UNIMODAL_MODE_EQ_MEAN:
        atom_axis = (lo, hi, grid.atom_steps, -inf, inf)
        val, pt = _refine(_fixed_mode_pair_scan(u, v), [atom_axis], rounds)
        candidates.append((val, (0.0, *pt) if pt else None))
        if two_sided:
            n3 = min(grid.atom_steps, 101)
            axes = [(lo, hi, n3, -inf, inf)] * 3
            val, pt = _refine(_fixed_mode_triple_scan(u, v), axes, rounds)
            candidates.append((val, (0.0, *pt) if pt else None))
    elif dist_class is DistributionClass.UNIMODAL:
        m_lo, m_hi = max(-SQRT3, -u), min(SQRT3, v)
        mode_axis = (m_lo, m_hi, grid.mode_steps, m_lo, m_hi)
        val, pt = _refine(_mode_pair_scan(u, v),
                          [mode_axis, (lo, hi, grid.atom_steps, -inf, inf)], rounds)
        candidates.append((val, pt))
        if two_sided:
            n_m = min(grid.mode_steps, 41)
            n3 = min(grid.atom_steps, 41)
            axes = [(m_lo, m_hi, n_m, m_lo, m_hi)] + [(lo, hi, n3, -inf, inf)] * 3
            val, pt = _refine(_mode_triple_scan(u, v), axes, rounds)
            candidates.append((val, pt))
    else:
        raise InvalidInterval(
            f"the mixture grid oracle applies to the unimodal classes, not {dist_class.value}"
        )

    best_val, best_params = _best_of(candidates)
    if best_params is None:
        raise OracleInconclusive("no feasible mixture candidate on the grid")
    return OracleReport("grid", dist_class, interval, best_val, tuple(best_params), analytic)


def discrete_atoms_oracle(dist_class: DistributionClass, u: float, v: float,
                          grid: GridSpec = GridSpec()) -> OracleReport:
    """Maximize the tail over small discrete standardized distributions.

    Class "all": two atoms (one location free, the partner and masses
    pinned by the moments), plus three free atoms for two-sided queries.
    Class "symmetric": two symmetric pairs with an optional atom at 0;
    per location pair the three vertex mass allocations are tried.
    """
    interval = IntervalSpec(u=u, v=v)
    analytic = bound(dist_class, interval).value
    lo, hi = grid.window or _default_window(u, v)
    rounds = grid.rounds
    candidates = []

    if dist_class is DistributionClass.ALL:
        axis = (lo, hi, grid.atom_steps, -inf, inf)
        val, pt = _refine(_fixed_mode_pair_scan(u, v, mu=0.0, m2=1.0, psi=False), [axis], rounds)
        candidates.append((val, pt))
        if not interval.is_one_sided:
            n3 = min(grid.atom_steps, 101)
            axes = [(lo, hi, n3, -inf, inf)] * 3
            val, pt = _refine(_fixed_mode_triple_scan(u, v, mu=0.0, m2=1.0, psi=False),
                              axes, rounds)
            candidates.append((val, pt))
    elif dist_class is DistributionClass.SYMMETRIC:
        pos_hi = 10.0 * (1.0 + max(v, 1.0, u if isfinite(u) else v))
        axis = (1e-6, pos_hi, grid.atom_steps, 1e-12, inf)
        val, pt = _refine(_sym_pairs(u, v), [axis, axis], rounds)
        candidates.append((val, pt))
    else:
        raise InvalidInterval(
            f"the discrete atoms oracle applies to classes all/symmetric, not {dist_class.value}"
        )

    best_val, best_params = _best_of(candidates)
    if best_params is None:
        raise OracleInconclusive("no feasible atom candidate on the grid")
    return OracleReport("atoms", dist_class, interval, best_val, tuple(best_params), analytic)


def polygon_q(u: float, v: float) -> PolygonQ:
    """Vertices of the polygon p, q >= 0, p + q <= 1/2, u^2 p + v^2 q <= 1/2.

    p is the mass placed at each of -u, u and q at each of -v, v of a
    symmetric standardized distribution; the vertices are the feasible
    pairwise intersections of the four constraint lines.
    """
    if not (isfinite(u) and isfinite(v) and 0.0 < v <= u):
        raise InvalidInterval(f"need finite 0 < v <= u, got u={u!r}, v={v!r}")
    half = 0.5
    pts = [
        (0.0, 0.0),
        (0.0, half),
        (half, 0.0),
        (0.0, half / (v * v)),
        (half / (u * u), 0.0),
    ]
    denom = u * u - v * v
    if denom > 1e-12 * u * u:
        pts.append(((1.0 - v * v) / (2.0 * denom), (u * u - 1.0) / (2.0 * denom)))
    # Coinciding intersections are kept as-is: at case boundaries two
    # line pairs meet in one point, and the tie is informative.
    tol = 1e-12 * max(1.0, u * u)
    feasible = tuple(
        (p, q)
        for p, q in sorted(pts)
        if p >= -tol and q >= -tol and p + q <= half + tol
        and u * u * p + v * v * q <= half + tol
    )
    return PolygonQ(u=u, v=v, vertices=feasible)


def symmetric_lp_oracle(u: float, v: float) -> OracleReport:
    """Exact linear-programming check of the symmetric two-sided bound.

    The sharp symmetric two-sided bound equals the maximum of 2p + q
    over ``polygon_q(u, v)``; the maximum sits at a vertex, so vertex
    enumeration is exact and must match the closed-form dispatch to
    full precision.
    """
    polygon = polygon_q(u, v)
    best_val, best_pq = -inf, None
    for p, q in polygon.vertices:
        val = 2.0 * p + q
        if val > best_val:
            best_val, best_pq = val, (p, q)
    if best_pq is None:
        raise OracleInconclusive("empty feasible polygon")
    analytic = bound_symmetric_two_sided(u, v).value
    interval = IntervalSpec.two_sided(u, v)
    return OracleReport("lp", DistributionClass.SYMMETRIC, interval,
                        best_val, best_pq, analytic)


def capped_reciprocal_bound(mu: float, sigma: float) -> float:
    """Largest possible E[1/max(Y, 1)] given mean mu and deviation sigma.

    Equals 1 - (mu-1)^2/(sigma^2 + mu^2 - mu) for mu > 1 and 1 otherwise
    (for mu = 1 the value 1 is approached but not attained).
    """
    if not (isfinite(sigma) and sigma > 0.0):
        raise InvalidMoment(f"sigma must be positive, got {sigma!r}")
    if mu <= 1.0:
        return 1.0
    return 1.0 - (mu - 1.0) ** 2 / (sigma * sigma + mu * mu - mu)


def capped_reciprocal_oracle(mu: float, sigma: float,
                             grid: GridSpec = GridSpec()) -> OracleReport:
    """Maximize E[1/max(Y, 1)] over two-point laws with mean mu, sd sigma.

    The family is parametrized by the lower atom a < mu; the upper atom
    and the masses follow from the moments.  For mu > 1 the kink a = 1
    is tried exactly, which reproduces the attaining distribution; for
    mu <= 1 the supremum 1 is approached as a tends to mu from below.
    """
    analytic = capped_reciprocal_bound(mu, sigma)
    var = sigma * sigma
    candidates = []
    if mu > 1.0:
        e = mu - 1.0
        b = mu + var / e
        pa = var / (var + e * e)
        val = pa * 1.0 + (1.0 - pa) * (1.0 / b if b > 1.0 else 1.0)
        candidates.append((val, (1.0, b, pa)))

    def scan(grids):
        val, j = kernels.recip_scan(np.ascontiguousarray(grids[0]), mu, var)
        return val, (j,) if j >= 0 else None

    lo = mu - 10.0 * (sigma + 1.0)
    val, pt = _refine(scan, [(lo, mu, grid.atom_steps, -inf, mu)], grid.rounds)
    if pt is not None:
        a = pt[0]
        e = mu - a
        candidates.append((val, (a, mu + var / e, var / (var + e * e))))

    best_val, best_params = _best_of(candidates)
    if best_params is None:
        raise OracleInconclusive("no feasible two-point candidate")
    return OracleReport("recip", None, None, best_val, tuple(best_params), analytic)


def monte_carlo_tail(d: MixtureDistribution, u: float, v: float, n: int,
                     seed: int) -> tuple[float, float]:
    """Empirical closed-boundary tail frequency and its standard error."""
    if n < 1:
        raise InvalidCount(f"sample count must be >= 1, got {n!r}")
    x = mixture_sample(d, n, seed)
    hits = (x <= -u) | (x >= v)
    est = float(hits.mean())
    se = math.sqrt(est * (1.0 - est) / n)
    return est, se


def ensure_sound(report: OracleReport, slack: float = 1e-6) -> None:
    """Raise OracleViolation if the oracle exceeded the analytic bound."""
    if report.best_value > report.analytic_bound + slack:
        raise OracleViolation(
            f"oracle {report.oracle} found {report.best_value!r} above the "
            f"analytic bound {report.analytic_bound!r} (slack {slack:g})"
        )
