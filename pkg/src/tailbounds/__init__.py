"""Sharp tail bounds for standardized random variables.

Upper bounds on P(Z <= -u or Z >= v) that cannot be improved, for six
nonparametric classes of distributions, together with the distributions
attaining them and independent numerical verification oracles.
"""

__version__ = "0.1.0"

from .bounds import (
    DistributionClass,
    IntervalSpec,
    TailBound,
    VPInput,
    bound,
    bound_all_one_sided,
    bound_all_two_sided,
    bound_concave_one_sided,
    bound_gauss_two_sided,
    bound_mode_mean_one_sided,
    bound_mode_mean_two_sided,
    bound_sym_unimodal_one_sided,
    bound_sym_unimodal_two_sided,
    bound_symmetric_one_sided,
    bound_symmetric_two_sided,
    bound_unimodal_one_sided,
    bound_unimodal_two_sided,
    bound_vp,
)
from .capability import CapabilityInput, capability_table
from .cubic import CubicRoot, ModeMeanSolution, cubic_positive_root, gamma_for, mode_mean_x
from .extremal import ExtremalWitness, extremal_for
from .kernels import USING_COMPILED
from .mixture import (
    MixtureDistribution,
    check_khintchine_unimodal,
    check_symmetric,
    make_mixture,
    mixture_cdf,
    mixture_mean,
    mixture_sample,
    mixture_second_moment,
    mixture_tail,
    mixture_variance,
)
from .oracles import (
    GridSpec,
    OracleReport,
    PolygonQ,
    capped_reciprocal_bound,
    capped_reciprocal_oracle,
    discrete_atoms_oracle,
    khintchine_grid_oracle,
    monte_carlo_tail,
    polygon_q,
    symmetric_lp_oracle,
)

from . import errors  # noqa: F401  (public error types live here)
