"""Domain records for a trapped-nanosphere experiment and derived kinematics.

A Scenario bundles the particle, its environment, and the optical trap.  The
kinematic helpers give the ground-state width of the trapped oscillator and
the spreading velocity of the freely expanding wave packet, chosen such that
the free-evolution width is sigma(t) = sqrt(x0^2 + v_m^2 t^2).
"""

import math
from dataclasses import dataclass, replace

from . import config
from .constants import CONSTANTS

# Typical mechanical frequency for a nanosphere in a ~10 um-waist optical
# trap; a configuration input, not derivable from trap power alone.
DEFAULT_TRAP_FREQUENCY = 2.0 * math.pi * 1e5  # rad/s


@dataclass(frozen=True)
class ComplexPermittivity:
    """Relative permittivity; imaginary part >= 0 for a passive material."""

    real_part: float
    imag_part: float

    def __post_init__(self):
        if self.imag_part < 0.0:
            raise ValueError("passive material requires Im(eps) >= 0")

    def as_complex(self):
        return complex(self.real_part, self.imag_part)


@dataclass(frozen=True)
class Particle:
    radius: float    # m
    density: float   # kg/m^3
    permittivity_trap: ComplexPermittivity  # at the trapping wavelength
    permittivity_bb: ComplexPermittivity    # spectrally constant thermal-band value

    def __post_init__(self):
        if not self.radius > 0.0:
            raise ValueError("particle radius must be positive")
        if not self.density > 0.0:
            raise ValueError("particle density must be positive")


@dataclass(frozen=True)
class Environment:
    temperature: float        # K
    pressure: float           # Pa
    gas_particle_mass: float  # kg

    def __post_init__(self):
        # temperature 0 is admitted as the no-radiation limiting case
        if self.temperature < 0.0 or self.pressure < 0.0:
            raise ValueError("temperature and pressure must be non-negative")
        if not self.gas_particle_mass > 0.0:
            raise ValueError("gas particle mass must be positive")


@dataclass(frozen=True)
class Trap:
    wavelength: float            # m
    power: float                 # W
    waist: float                 # m
    internal_temperature: float  # K, steady-state temperature of the trapped sphere
    angular_frequency: float = DEFAULT_TRAP_FREQUENCY  # rad/s, mechanical frequency

    def __post_init__(self):
        for name in ("wavelength", "power", "waist", "angular_frequency"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"trap {name} must be positive")
        if self.internal_temperature < 0.0:
            raise ValueError("internal temperature must be non-negative")


@dataclass(frozen=True)
class Scenario:
    particle: Particle
    environment: Environment
    trap: Trap
    label: str = ""

    def with_radius(self, radius):
        """Same material/environment/trap with a different sphere radius."""
        return replace(self, particle=replace(self.particle, radius=radius))


def particle_mass(particle):
    """Mass in kg of a homogeneous sphere, (4/3) pi r^3 rho."""
    return 4.0 / 3.0 * math.pi * particle.radius**3 * particle.density


def ground_state_width(mass, omega):
    """Ground-state extension sqrt(hbar / (2 m omega)) of a harmonic trap."""
    if not (mass > 0.0 and omega > 0.0):
        raise ValueError("mass and trap frequency must be positive")
    return math.sqrt(CONSTANTS.hbar / (2.0 * mass * omega))


def expansion_velocity(mass, x0):
    """Spreading velocity hbar / (2 m x0) of the released Gaussian wave packet."""
    if not (mass > 0.0 and x0 > 0.0):
        raise ValueError("mass and ground-state width must be positive")
    return CONSTANTS.hbar / (2.0 * mass * x0)


def clausius_mossotti(eps):
    """Polarizability factor (eps - 1) / (eps + 2) as a complex number."""
    value = eps.as_complex()
    if abs(value + 2.0) == 0.0:
        raise ValueError("eps = -2 has no Clausius-Mossotti factor")
    return (value - 1.0) / (value + 2.0)


def scenario_kinematics(scenario):
    """(mass, x0, v_m) of the scenario's particle in its trap."""
    mass = particle_mass(scenario.particle)
    x0 = ground_state_width(mass, scenario.trap.angular_frequency)
    return mass, x0, expansion_velocity(mass, x0)


def _permittivity_from(doc, key, path):
    sub = config.section(doc, key, path)
    return ComplexPermittivity(
        real_part=config.number(sub, "real", f"{path}.{key}"),
        imag_part=config.number(sub, "imag", f"{path}.{key}"),
    )


def scenario_from_mapping(doc, source="<scenario>"):
    """Build a Scenario from a parsed configuration mapping."""
    part = config.section(doc, "particle", source)
    env = config.section(doc, "environment", source)
    trap = config.section(doc, "trap", source)

    particle = Particle(
        radius=config.quantity(part, f"{source}.particle",
                               {"radius_m": 1.0, "radius_nm": 1e-9}),
        density=config.number(part, "density_kg_m3", f"{source}.particle"),
        permittivity_trap=_permittivity_from(part, "permittivity_trap",
                                             f"{source}.particle"),
        permittivity_bb=_permittivity_from(part, "permittivity_bb",
                                           f"{source}.particle"),
    )
    environment = Environment(
        temperature=config.number(env, "temperature_K", f"{source}.environment"),
        pressure=config.quantity(env, f"{source}.environment",
                                 {"pressure_Pa": 1.0, "pressure_mbar": 100.0}),
        gas_particle_mass=config.quantity(
            env, f"{source}.environment",
            {"gas_mass_kg": 1.0, "gas_mass_amu": CONSTANTS.m_u}),
    )
    trap_rec = Trap(
        wavelength=config.quantity(trap, f"{source}.trap",
                                   {"wavelength_m": 1.0, "wavelength_nm": 1e-9}),
        power=config.number(trap, "power_W", f"{source}.trap"),
        waist=config.quantity(trap, f"{source}.trap",
                              {"waist_m": 1.0, "waist_um": 1e-6}),
        internal_temperature=config.number(trap, "internal_temperature_K",
                                           f"{source}.trap"),
        angular_frequency=config.number(trap, "frequency_rad_s", f"{source}.trap",
                                        default=DEFAULT_TRAP_FREQUENCY),
    )
    label = doc.get("label", "")
    if not isinstance(label, str):
        raise config.ConfigError(f"{source}.label: expected a string")
    return Scenario(particle=particle, environment=environment, trap=trap_rec,
                    label=label)


def load_scenario(path):
    return scenario_from_mapping(config.load_yaml(path), source=str(path))


def load_packaged_scenario(filename):
    doc = config.load_packaged_yaml("scenarios", filename)
    return scenario_from_mapping(doc, source=f"<packaged {filename}>")
