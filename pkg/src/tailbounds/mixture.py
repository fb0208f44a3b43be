"""Atom-plus-uniform-segment mixtures and their exact functionals.

Every extremal distribution in this package is a finite mixture of point
masses and uniform segments, so first and second moments, the CDF, and
closed-boundary tail probabilities all have closed forms.  Mixtures are
immutable after construction; sampling takes the seed as an argument, so
there is no shared random state.
"""

import json
from dataclasses import dataclass
from math import inf, isfinite

import numpy as np

from .errors import InvalidCount

__all__ = [
    "MixtureDistribution",
    "make_mixture",
    "reflect",
    "mixture_mean",
    "mixture_second_moment",
    "mixture_variance",
    "mixture_tail",
    "mixture_cdf",
    "mixture_sample",
    "check_khintchine_unimodal",
    "check_symmetric",
    "to_json_obj",
    "from_json_obj",
    "dumps",
    "loads",
]

MASS_TOL = 1e-12
DEGENERATE_WIDTH = 1e-12


@dataclass(frozen=True)
class MixtureDistribution:
    """Finite mixture of atoms (location, mass) and segments (left, right, mass)."""

    atoms: tuple[tuple[float, float], ...] = ()
    segments: tuple[tuple[float, float, float], ...] = ()

    def __post_init__(self):
        total = 0.0
        for x, m in self.atoms:
            if not (isfinite(x) and isfinite(m) and 0.0 < m <= 1.0):
                raise ValueError(f"bad atom ({x!r}, {m!r})")
            total += m
        for left, right, m in self.segments:
            if not (isfinite(left) and isfinite(right) and left < right):
                raise ValueError(f"bad segment endpoints ({left!r}, {right!r})")
            if not (isfinite(m) and 0.0 < m <= 1.0):
                raise ValueError(f"bad segment mass {m!r}")
            total += m
        if abs(total - 1.0) > MASS_TOL:
            raise ValueError(f"total mass {total!r} differs from 1 by more than {MASS_TOL}")


def make_mixture(atoms=(), segments=()) -> MixtureDistribution:
    """Build a mixture, dropping zero-mass parts and promoting degenerate segments.

    Extremal formulas legitimately produce zero masses and zero-width
    segments at regime boundaries; those collapse here so the stored
    components always carry positive mass.
    """
    out_atoms = [(float(x), float(m)) for x, m in atoms if m > 0.0]
    out_segments = []
    for left, right, m in segments:
        if m <= 0.0:
            continue
        left, right, m = float(left), float(right), float(m)
        if right - left < DEGENERATE_WIDTH:
            out_atoms.append((0.5 * (left + right), m))
        else:
            out_segments.append((left, right, m))
    return MixtureDistribution(tuple(out_atoms), tuple(out_segments))


def reflect(d: MixtureDistribution) -> MixtureDistribution:
    """The distribution of -Z for Z ~ d."""
    atoms = tuple((-x, m) for x, m in d.atoms)
    segments = tuple((-right, -left, m) for left, right, m in d.segments)
    return MixtureDistribution(atoms, segments)


def mixture_mean(d: MixtureDistribution) -> float:
    mean = sum(x * m for x, m in d.atoms)
    mean += sum(0.5 * (left + right) * m for left, right, m in d.segments)
    return mean


def mixture_second_moment(d: MixtureDistribution) -> float:
    m2 = sum(x * x * m for x, m in d.atoms)
    # E X^2 of uniform [l, r] is (l^2 + l r + r^2)/3
    m2 += sum((left * left + left * right + right * right) / 3.0 * m
              for left, right, m in d.segments)
    return m2


def mixture_variance(d: MixtureDistribution) -> float:
    mean = mixture_mean(d)
    return mixture_second_moment(d) - mean * mean


def mixture_tail(d: MixtureDistribution, u: float, v: float) -> float:
    """P(Z <= -u or Z >= v) with closed boundaries; u may be inf.

    Atoms exactly at -u or at v count fully toward the tail.
    """
    total = sum(m for x, m in d.atoms if x <= -u or x >= v)
    for left, right, m in d.segments:
        width = right - left
        frac = 0.0
        if u != inf:
            frac += max(0.0, min(right, -u) - left)
        frac += max(0.0, right - max(left, v))
        total += m * min(1.0, frac / width)
    return total


def mixture_cdf(d: MixtureDistribution, z: float) -> float:
    """Right-continuous CDF at z."""
    total = sum(m for x, m in d.atoms if x <= z)
    for left, right, m in d.segments:
        if z >= right:
            total += m
        elif z > left:
            total += m * (z - left) / (right - left)
    return total


def mixture_sample(d: MixtureDistribution, n: int, seed: int) -> np.ndarray:
    """n samples, deterministic for a fixed seed.

    One uniform draw picks the component against the cumulative masses;
    samples landing in a segment take one further uniform draw for the
    position inside it.
    """
    if n < 0:
        raise InvalidCount(f"sample count must be nonnegative, got {n!r}")
    rng = np.random.default_rng(seed)
    locs = [x for x, _ in d.atoms]
    masses = [m for _, m in d.atoms] + [m for *_, m in d.segments]
    cum = np.cumsum(masses)
    cum[-1] = max(cum[-1], 1.0)  # guard against cumulative rounding below 1
    pick = np.searchsorted(cum, rng.random(n), side="right")
    out = np.empty(n, dtype=float)
    n_atoms = len(locs)
    atom_mask = pick < n_atoms
    if n_atoms:
        out[atom_mask] = np.asarray(locs, dtype=float)[pick[atom_mask]]
    seg_mask = ~atom_mask
    k = int(seg_mask.sum())
    if k:
        lefts = np.asarray([left for left, _, _ in d.segments])
        rights = np.asarray([right for _, right, _ in d.segments])
        which = pick[seg_mask] - n_atoms
        pos = rng.random(k)
        out[seg_mask] = lefts[which] + pos * (rights[which] - lefts[which])
    return out


def check_khintchine_unimodal(d: MixtureDistribution, mode: float, tol: float = 1e-9) -> bool:
    """True iff d is structurally unimodal with the given mode.

    Every atom must sit at the mode and every uniform segment must have
    one endpoint there, which is exactly the shape of a mixture M + U*Y
    with discrete Y.
    """
    for x, _ in d.atoms:
        if abs(x - mode) > tol:
            return False
    for left, right, _ in d.segments:
        if abs(left - mode) > tol and abs(right - mode) > tol:
            return False
    return True


def _canonical_parts(d: MixtureDistribution, tol: float):
    """Merge coincident atoms and coincident segments, sorted for comparison."""
    atoms: list[list[float]] = []
    for x, m in sorted(d.atoms):
        if atoms and abs(x - atoms[-1][0]) <= tol:
            atoms[-1][1] += m
        else:
            atoms.append([x, m])
    segments: list[list[float]] = []
    for left, right, m in sorted(d.segments):
        if segments and abs(left - segments[-1][0]) <= tol and abs(right - segments[-1][1]) <= tol:
            segments[-1][2] += m
        else:
            segments.append([left, right, m])
    return atoms, segments


def check_symmetric(d: MixtureDistribution, tol: float = 1e-9) -> bool:
    """True iff d is invariant under reflection about 0, up to tol."""
    a1, s1 = _canonical_parts(d, tol)
    a2, s2 = _canonical_parts(reflect(d), tol)
    if len(a1) != len(a2) or len(s1) != len(s2):
        return False
    for (x1, m1), (x2, m2) in zip(a1, a2):
        if abs(x1 - x2) > tol or abs(m1 - m2) > tol:
            return False
    for (l1, r1, m1), (l2, r2, m2) in zip(s1, s2):
        if abs(l1 - l2) > tol or abs(r1 - r2) > tol or abs(m1 - m2) > tol:
            return False
    return True


def to_json_obj(d: MixtureDistribution) -> dict:
    """Canonical JSON object: {"atoms": [{"x", "mass"}], "segments": [{"left", "right", "mass"}]}."""
    return {
        "atoms": [{"x": x, "mass": m} for x, m in d.atoms],
        "segments": [{"left": left, "right": right, "mass": m} for left, right, m in d.segments],
    }


def from_json_obj(obj: dict) -> MixtureDistribution:
    atoms = tuple((float(a["x"]), float(a["mass"])) for a in obj.get("atoms", ()))
    segments = tuple(
        (float(s["left"]), float(s["right"]), float(s["mass"])) for s in obj.get("segments", ())
    )
    return MixtureDistribution(atoms, segments)


def dumps(d: MixtureDistribution) -> str:
    return json.dumps(to_json_obj(d))


def loads(text: str) -> MixtureDistribution:
    return from_json_obj(json.loads(text))
