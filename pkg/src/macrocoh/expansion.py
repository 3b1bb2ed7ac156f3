"""Wave-packet expansion and accumulated decoherence.

The released wave packet spreads as sigma(t) = sqrt(x0^2 + v_m^2 t^2).  A
decoherence law F(separation) acting on the outermost coherence element (at
separation 2 sigma(t)) accumulates the exposure

    Gamma(tau) = integral_0^tau F(2 sigma(t)) dt ,

which for a quadratic law F = Lambda * dx^2 plus a constant rate F_c has the
closed form 4 Lambda (x0^2 tau + v_m^2 tau^3 / 3) + F_c tau.  The coherent
expansion time (CET) is the tau at which 4 Gamma(tau) = 1, i.e. the predicted
fringe visibility exp(-4 Gamma) has dropped to 1/e; the coherent expansion
distance is CED = v_m * CET.
"""

import math
from collections import namedtuple
from dataclasses import dataclass

from .numerics import bisect_increasing, cbrt, quad_checked

# Expansion times beyond this are treated as unbounded coherence.
TAU_CAP = 1e9  # s


class InfiniteCoherenceError(Exception):
    """The decoherence exposure never reaches the 4*Gamma = 1 threshold."""


@dataclass(frozen=True)
class ExpansionKinematics:
    x0: float   # m, ground-state width
    v_m: float  # m/s, spreading velocity

    def __post_init__(self):
        if not (self.x0 > 0.0 and self.v_m > 0.0):
            raise ValueError("x0 and v_m must be positive")


@dataclass(frozen=True)
class DecoherenceSpec:
    """Decoherence law split into quadratic, constant, and general parts.

    Total rate at separation dx:
        quadratic_lambda * dx^2 + constant_rate + general_rate(dx).
    `general_breakpoints` lists separations where the general law has kinks;
    they are forwarded to the quadrature as known split points.
    """

    quadratic_lambda: float = 0.0   # 1/(m^2 s)
    constant_rate: float = 0.0      # 1/s
    general_rate: object = None     # callable dx -> 1/s, or None
    general_breakpoints: tuple = ()

    def __post_init__(self):
        if self.quadratic_lambda < 0.0 or self.constant_rate < 0.0:
            raise ValueError("decoherence components must be non-negative")

    @property
    def is_null(self):
        return (self.quadratic_lambda == 0.0 and self.constant_rate == 0.0
                and self.general_rate is None)

    def rate(self, separation):
        """Total decoherence rate (1/s) at the given separation (m)."""
        total = self.quadratic_lambda * separation**2 + self.constant_rate
        if self.general_rate is not None:
            total += self.general_rate(separation)
        return total


def sigma(t, kin):
    """Wave-packet width sqrt(x0^2 + (v_m t)^2) at time t >= 0."""
    if t < 0.0:
        raise ValueError("time must be non-negative")
    return math.hypot(kin.x0, kin.v_m * t)


def gamma(tau, spec, kin):
    """Accumulated decoherence exposure Gamma(tau), dimensionless.

    The quadratic and constant parts use the exact closed form; a general
    component is integrated numerically with the rate evaluated at
    separation 2 sigma(t).
    """
    if tau < 0.0:
        raise ValueError("expansion time must be non-negative")
    value = (4.0 * spec.quadratic_lambda
             * (kin.x0**2 * tau + kin.v_m**2 * tau**3 / 3.0)
             + spec.constant_rate * tau)
    if spec.general_rate is not None and tau > 0.0:
        value += _general_exposure(tau, spec, kin)
    return value


def _general_exposure(tau, spec, kin):
    rate = spec.general_rate
    points = [_time_at_separation(s, kin) for s in spec.general_breakpoints]
    points = [t for t in points if t is not None]
    value, _ = quad_checked(lambda t: rate(2.0 * sigma(t, kin)), 0.0, tau,
                            points=points)
    return value


def _time_at_separation(separation, kin):
    """Time at which 2 sigma(t) reaches the given separation, or None."""
    half = 0.5 * separation
    if half <= kin.x0:
        return None
    return math.sqrt(half**2 - kin.x0**2) / kin.v_m


def gamma_quadrature(tau, spec, kin):
    """Gamma(tau) with every component under the quadrature; oracle path."""
    if tau == 0.0:
        return 0.0
    value, _ = quad_checked(
        lambda t: spec.rate(2.0 * sigma(t, kin)), 0.0, tau,
        points=[t for t in (_time_at_separation(s, kin)
                            for s in spec.general_breakpoints) if t is not None])
    return value


def cet_closed_form(spec, kin):
    """Analytic CET for a quadratic + constant spec (no general component).

    4 Gamma = A tau^3 + B tau with A = (16/3) Lambda v_m^2 and
    B = 16 Lambda x0^2 + 4 F_c; the unique positive root of A tau^3 + B tau = 1
    comes from the depressed-cubic formula, arranged to stay stable when the
    linear term dominates.
    """
    if spec.general_rate is not None:
        raise ValueError("closed form does not cover a general rate component")
    if spec.is_null:
        raise InfiniteCoherenceError("no decoherence channels; coherence never decays")
    a_cub = 16.0 / 3.0 * spec.quadratic_lambda * kin.v_m**2
    b_lin = 16.0 * spec.quadratic_lambda * kin.x0**2 + 4.0 * spec.constant_rate
    if a_cub == 0.0:
        return 1.0 / b_lin
    if b_lin == 0.0:
        return cbrt(1.0 / a_cub)
    # tau^3 + p tau + q = 0 with p >= 0, q < 0: single real root
    p = b_lin / a_cub
    q = -1.0 / a_cub
    disc = math.sqrt((0.5 * q) ** 2 + (p / 3.0) ** 3)
    u = cbrt(-0.5 * q + disc)
    return u - p / (3.0 * u)


def solve_cet(spec, kin, *, rel_tol=1e-12):
    """Coherent expansion time: the unique tau with 4 Gamma(tau) = 1.

    Gamma is strictly increasing, so the root is bracketed by doubling and
    then bisected.  Raises InfiniteCoherenceError when the spec carries no
    decoherence at all or the threshold is not reached below TAU_CAP.
    """
    if spec.is_null:
        raise InfiniteCoherenceError("no decoherence channels; coherence never decays")

    def residual(tau):
        return 4.0 * gamma(tau, spec, kin) - 1.0

    lo = 1e-12
    f_lo = residual(lo)
    if f_lo > 0.0:
        # decoherence strong enough that the root sits below the nominal
        # bracket start; walk down until it is enclosed
        hi = lo
        while f_lo > 0.0:
            lo /= 16.0
            if lo < 1e-300:
                return lo
            f_lo = residual(lo)
    else:
        hi = lo
        f_hi = f_lo
        while f_hi < 0.0:
            hi *= 2.0
            if hi > TAU_CAP:
                raise InfiniteCoherenceError(
                    f"4*Gamma(tau) < 1 for all tau up to {TAU_CAP:.0e} s; "
                    "effectively infinite coherent expansion time")
            f_hi = residual(hi)
    return bisect_increasing(residual, lo, hi, rel_tol=rel_tol)


def ced(spec, kin, **kwargs):
    """Coherent expansion distance v_m * CET in meters."""
    return kin.v_m * solve_cet(spec, kin, **kwargs)


VisibilityFactors = namedtuple("VisibilityFactors", ["amplitude", "visibility"])


def visibility_factor(gamma_value):
    """Off-diagonal amplitude factor exp(-2 Gamma) and fringe visibility exp(-4 Gamma)."""
    if gamma_value < 0.0:
        raise ValueError("Gamma must be non-negative")
    return VisibilityFactors(math.exp(-2.0 * gamma_value),
                             math.exp(-4.0 * gamma_value))
