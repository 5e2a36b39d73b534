"""Truncated-expectation pricing for heavy-tailed payoffs.

Buyers ignore outcomes whose total probability is below a chosen hopeless
probability and pay a multiple of what remains; sellers quote either the full
expectation or a truncated one.  The package also simulates the
St. Petersburg game and prices options under Cauchy densities with truncated
integrals.
"""
from .densities import Cauchy, Gaussian, make_density
from .distributions import (
    UNBOUNDED,
    DiscretePayoutDistribution,
    expectation,
    lottery_game,
    make_finite,
    st_petersburg,
    tail_mass,
)
from .errors import (
    ConvergenceFailure,
    DegenerateBoundsWarning,
    EmptyDistribution,
    IndexOutOfRange,
    InvalidParameter,
    NegativePayout,
    NoFiniteTruncation,
    PricingError,
    ProbabilityMassError,
)
from .lab import (
    SimulationConfig,
    feller_check,
    feller_fair_fee,
    simulate_play,
    simulate_session,
    two_banker_demo,
    verify_decomposition,
)
from .options import (
    EpsilonQuantile,
    ExplicitBounds,
    ExplicitMultiple,
    OptionSpec,
    divergence_table,
    quantile_upper,
    truncated_price,
)
from .quadrature import QuadratureResult, integrate
from .rules import (
    BuyerProfile,
    TruncationResult,
    buyer_accepts,
    buyer_max_price,
    find_n_epsilon,
    seller_min_price_committed,
    seller_quote_closeable,
    truncated_expectation,
)

__version__ = "0.1.0"
