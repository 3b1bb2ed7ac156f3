"""Decoherence rates predicted by macrorealistic collapse models.

Four models are covered: continuous spontaneous localization (CSL), the
wormhole-based quantum-gravity model (QG), the metric-fluctuation model (K),
and gravitational self-energy collapse (DP).  CSL, QG, and K are quadratic
laws F = Lambda * dx^2; DP is quadratic below the sphere radius and saturates
to a constant above it.
"""

import enum
import math
from dataclasses import dataclass

from .constants import CONSTANTS
from .scenario import particle_mass


class ModelId(str, enum.Enum):
    CSL = "csl"
    QG = "qg"
    K = "k"
    DP = "dp"


@dataclass(frozen=True)
class CslParams:
    """CSL localization rate and inverse-squared localization length."""

    lambda0: float = 1e-16  # 1/s
    alpha: float = 1e14     # 1/m^2

    def __post_init__(self):
        if not (self.lambda0 > 0.0 and self.alpha > 0.0):
            raise ValueError("CSL parameters must be positive")


CSL_DEFAULT = CslParams()
# Stronger localization rate sized to collapse a latent photographic image
# within its formation time.
CSL_ADLER = CslParams(lambda0=1e-8)


def csl_shape(x):
    """Finite-size suppression factor f(x) for a sphere, x = sqrt(alpha) * r.

    f(x) = (6/x^4) [1 - 2/x^2 + (1 + 2/x^2) exp(-x^2)], with f(0) = 1 and
    f ~ 6/x^4 for large x.  Below x = 0.2 the bracket loses ~10 digits to
    cancellation, so a series expansion takes over there.
    """
    if x < 0.0:
        raise ValueError("x must be non-negative")
    if x <= 0.2:
        x2 = x * x
        return (1.0 - x2 / 2.0 + 3.0 * x2**2 / 20.0 - x2**3 / 30.0
                + x2**4 / 168.0)
    x2 = x * x
    return (6.0 / x2**2) * (1.0 - 2.0 / x2 + (1.0 + 2.0 / x2) * math.exp(-x2))


def csl_lambda(particle, params=CSL_DEFAULT):
    """CSL decoherence coefficient m^2 lambda0 alpha f(sqrt(alpha) r) / (4 m0^2)."""
    mass = particle_mass(particle)
    shape = csl_shape(math.sqrt(params.alpha) * particle.radius)
    return (mass**2 * params.lambda0 * params.alpha * shape
            / (4.0 * CONSTANTS.m_nucleon**2))


def qg_lambda(mass):
    """QG decoherence coefficient, linear in mass: m c^4 m0^5 / (hbar^3 mP^3)."""
    if mass < 0.0:
        raise ValueError("mass must be non-negative")
    return (mass * CONSTANTS.c**4 * CONSTANTS.m_nucleon**5
            / (CONSTANTS.hbar**3 * CONSTANTS.m_planck**3))


def k_coherence_cell(particle):
    """Coherence cell a_c of the K model, in meters.

    Two regimes, both scaled by the particle's reduced Compton wavelength
    L = hbar / (m c): the extended-body candidate a1 = (r / l_P)^(2/3) L
    applies when the sphere is larger than the cell it predicts (r >= a1);
    otherwise the point-particle value a2 = (L / l_P)^2 L holds.
    """
    mass = particle_mass(particle)
    compton = CONSTANTS.hbar / (mass * CONSTANTS.c)
    extended = (particle.radius / CONSTANTS.planck_length) ** (2.0 / 3.0) * compton
    if particle.radius >= extended:
        return extended
    return (compton / CONSTANTS.planck_length) ** 2 * compton


def k_lambda(particle):
    """K-model decoherence coefficient hbar / (8 m a_c^4)."""
    mass = particle_mass(particle)
    cell = k_coherence_cell(particle)
    return CONSTANTS.hbar / (8.0 * mass * cell**4)


def dp_lambda(particle):
    """Small-separation DP coefficient 20 G rho^2 r^3 / hbar, 1/(m^2 s)."""
    return (20.0 * CONSTANTS.G * particle.density**2 * particle.radius**3
            / CONSTANTS.hbar)


def dp_rate(particle, delta_x):
    """DP decoherence rate, 1/s: quadratic below the sphere radius, then flat.

    The two branches meet continuously at delta_x = r (r^3 dx^2 = r^5 there).
    """
    if delta_x < 0.0:
        raise ValueError("separation must be non-negative")
    coeff = dp_lambda(particle)
    if delta_x < particle.radius:
        return coeff * delta_x**2
    return coeff * particle.radius**2


def model_rate_fn(model, particle, params=None, k_saturation=False):
    """Rate function F(dx) in 1/s for the requested model.

    CSL requires its parameter set.  With k_saturation the K-model rate stops
    growing beyond one coherence cell: F = Lambda_K * min(dx, a_c)^2.
    The returned callable captures only plain floats and is pure.
    """
    if model is ModelId.CSL:
        if params is None:
            raise ValueError("CSL requires a CslParams instance")
        coeff = csl_lambda(particle, params)
        return lambda dx: coeff * dx * dx
    if model is ModelId.QG:
        coeff = qg_lambda(particle_mass(particle))
        return lambda dx: coeff * dx * dx
    if model is ModelId.K:
        coeff = k_lambda(particle)
        if k_saturation:
            cell = k_coherence_cell(particle)
            return lambda dx: coeff * min(dx, cell) ** 2
        return lambda dx: coeff * dx * dx
    if model is ModelId.DP:
        coeff = dp_lambda(particle)
        radius = particle.radius
        return lambda dx: coeff * (dx * dx if dx < radius else radius * radius)
    raise ValueError(f"unknown model {model!r}")
