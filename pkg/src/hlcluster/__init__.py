"""Symbolic engine for iced-quiver mutation with dominance-tracked
highest loop-weight labels, plus an exact Laurent-polynomial oracle."""

from .gridseeds import (
    ExchangeRecord,
    IncomparableExchangeError,
    TrackedSeed,
    initial_seed,
    mutate_tracked,
    run,
    t_system_conform,
)
from .heights import HeightFunction, TProfile, build_from_hlr, omega, t_profile
from .hl import GhlSpec, closed_x_alpha, closed_x_bracket, ghl_monomial, validate_hl
from .oracle import LaurentPoly, LaurentSeed, closure, init_oracle, x_alpha
from .quiver import IcedQuiver
from .sequences import build_q_xi, seq_S, seq_S_prime, seq_S_t, to_Sm_prime
from .ymon import (
    CartanData,
    DomOrdering,
    YMonomial,
    a_inverse,
    compare_dominance,
    kr_monomial,
    lift_r,
    shift_equivalent,
    shifted_kr,
)

__version__ = "0.1.0"

__all__ = [
    "CartanData",
    "DomOrdering",
    "ExchangeRecord",
    "GhlSpec",
    "HeightFunction",
    "IcedQuiver",
    "IncomparableExchangeError",
    "LaurentPoly",
    "LaurentSeed",
    "TProfile",
    "TrackedSeed",
    "YMonomial",
    "a_inverse",
    "build_from_hlr",
    "build_q_xi",
    "closed_x_alpha",
    "closed_x_bracket",
    "closure",
    "compare_dominance",
    "ghl_monomial",
    "init_oracle",
    "initial_seed",
    "kr_monomial",
    "lift_r",
    "mutate_tracked",
    "omega",
    "run",
    "seq_S",
    "seq_S_prime",
    "seq_S_t",
    "shift_equivalent",
    "shifted_kr",
    "t_profile",
    "t_system_conform",
    "to_Sm_prime",
    "validate_hl",
    "x_alpha",
]
