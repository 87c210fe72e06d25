"""Material models: complex relative permittivity eps(omega, T) and
resistivity / sheet-resistance helpers for trap electrode stacks.

Supported material kinds:

* vacuum
* conductor        -- metallic, conductivity-dominated: eps = i sigma(T)/(omega eps0)
* two-fluid superconductor -- below Tc a superfluid term -1/(k lambda(T))^2 plus a
  normal-carrier conductivity term; at or above Tc a normal metal backed by a
  resistivity table
* lossy dielectric -- eps = eps_r (1 + i tan_delta)

Resistivity tables interpolate log-linearly in rho vs T.  Lookups are allowed
to extrapolate by at most one grid step beyond either end of the table;
anything further raises :class:`TemperatureRangeError`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .constants import CONSTANTS, DomainError


class TemperatureRangeError(ValueError):
    """Temperature outside the tabulated range (plus one grid step)."""


@dataclass(frozen=True)
class ResistivityTable:
    """Tabulated DC resistivity rho(T), log-linearly interpolated."""

    temperatures: tuple[float, ...]  # K, strictly increasing
    resistivities: tuple[float, ...]  # Ohm*m, > 0
    label: str = ""

    def __post_init__(self):
        t, r = self.temperatures, self.resistivities
        if len(t) != len(r) or len(t) < 2:
            raise ValueError("table needs >= 2 (T, rho) pairs of equal length")
        if any(b <= a for a, b in zip(t, t[1:])):
            raise ValueError(f"temperatures must be strictly increasing: {self.label}")
        if any(x <= 0.0 for x in r):
            raise ValueError(f"resistivities must be positive: {self.label}")

    @classmethod
    def from_pairs(cls, pairs, label: str = "") -> "ResistivityTable":
        pairs = sorted(pairs)
        return cls(
            temperatures=tuple(p[0] for p in pairs),
            resistivities=tuple(p[1] for p in pairs),
            label=label,
        )

    @property
    def t_min(self) -> float:
        return self.temperatures[0]

    @property
    def t_max(self) -> float:
        return self.temperatures[-1]

    def lookup(self, temperature: float) -> float:
        """Interpolated rho(T) in Ohm*m.

        Within the table: piecewise-linear in (T, ln rho).  Outside: the end
        segment is continued for at most one grid step, beyond which a
        :class:`TemperatureRangeError` is raised.
        """
        t, r = self.temperatures, self.resistivities
        lo_margin = t[1] - t[0]
        hi_margin = t[-1] - t[-2]
        if temperature < t[0] - lo_margin or temperature > t[-1] + hi_margin:
            raise TemperatureRangeError(
                f"T = {temperature} K outside table '{self.label}' "
                f"range [{t[0]}, {t[-1]}] K (one-step margin exceeded)"
            )
        if temperature <= t[0]:
            i = 0
        elif temperature >= t[-1]:
            i = len(t) - 2
        else:
            i = max(j for j in range(len(t) - 1) if t[j] <= temperature)
        frac = (temperature - t[i]) / (t[i + 1] - t[i])
        log_rho = (1.0 - frac) * math.log(r[i]) + frac * math.log(r[i + 1])
        return math.exp(log_rho)


@dataclass(frozen=True)
class Vacuum:
    name: str = "vacuum"

    def permittivity(self, omega: float, temperature: float) -> complex:
        return complex(1.0, 0.0)


@dataclass(frozen=True)
class LossyDielectric:
    eps_r: float
    tan_delta: float
    name: str = "dielectric"

    def __post_init__(self):
        if self.eps_r < 1.0:
            raise ValueError(f"eps_r must be >= 1, got {self.eps_r}")
        if self.tan_delta < 0.0:
            raise ValueError(f"tan_delta must be >= 0, got {self.tan_delta}")

    def permittivity(self, omega: float, temperature: float) -> complex:
        return self.eps_r * complex(1.0, self.tan_delta)


@dataclass(frozen=True)
class Conductor:
    rho: ResistivityTable
    name: str = "conductor"

    def conductivity(self, temperature: float) -> float:
        return 1.0 / self.rho.lookup(temperature)

    def permittivity(self, omega: float, temperature: float) -> complex:
        if omega <= 0.0:
            raise DomainError(f"omega must be > 0, got {omega}")
        return complex(0.0, self.conductivity(temperature) / (omega * CONSTANTS.eps0))


@dataclass(frozen=True)
class SCSheetSpec:
    """Superconducting-state residual sheet resistance model.

    The film datasheet quotes rs_ref at omega_ref; BCS-like losses scale as
    omega^2, but measured films bottom out at a residual floor at low
    frequency, so the model is rs_ref*(omega/omega_ref)^2 + rs_residual.
    """

    rs_ref: float = 0.11e-3        # Ohm/sq
    omega_ref: float = 2.0 * math.pi * 10.9e9  # rad/s
    rs_residual: float = 1.0e-7    # Ohm/sq, measured floor at tens of MHz

    def sheet_resistance(self, omega: float) -> float:
        return self.rs_ref * (omega / self.omega_ref) ** 2 + self.rs_residual


@dataclass(frozen=True)
class TwoFluidSC:
    """Two-fluid superconductor with d-wave penetration-depth scaling."""

    lambda0: float                 # m, zero-temperature London depth
    Tc: float                      # K
    sigma_n: float                 # S/m, normal conductivity just above Tc
    rho_normal: ResistivityTable   # used for T >= Tc
    sc_sheet: SCSheetSpec = field(default_factory=SCSheetSpec)
    name: str = "superconductor"

    def __post_init__(self):
        if self.lambda0 <= 0.0:
            raise ValueError(f"lambda0 must be > 0, got {self.lambda0}")
        if self.Tc <= 0.0:
            raise ValueError(f"Tc must be > 0, got {self.Tc}")
        if self.sigma_n <= 0.0:
            raise ValueError(f"sigma_n must be > 0, got {self.sigma_n}")

    def permittivity(self, omega: float, temperature: float) -> complex:
        if omega <= 0.0:
            raise DomainError(f"omega must be > 0, got {omega}")
        if temperature >= self.Tc:
            sigma = 1.0 / self.rho_normal.lookup(temperature)
            return complex(0.0, sigma / (omega * CONSTANTS.eps0))
        lam = london_depth(self.lambda0, self.Tc, temperature)
        k = omega / CONSTANTS.c
        sigma_normal_carriers = self.sigma_n * temperature / self.Tc
        return complex(
            1.0 - 1.0 / (k * lam) ** 2,
            sigma_normal_carriers / (omega * CONSTANTS.eps0),
        )


MaterialModel = Vacuum | Conductor | TwoFluidSC | LossyDielectric


@dataclass(frozen=True)
class FilmSheet:
    """A thin film of a given material, for sheet-resistance budgets."""

    material: MaterialModel
    thickness: float  # m

    def __post_init__(self):
        if self.thickness <= 0.0:
            raise ValueError(f"thickness must be > 0, got {self.thickness}")


def london_depth(lambda0: float, Tc: float, temperature: float) -> float:
    """London penetration depth lambda(T) = lambda0 / sqrt(1 - T/Tc)."""
    if not 0.0 < temperature < Tc:
        raise DomainError(
            f"T = {temperature} K outside superconducting range (0, {Tc}) K"
        )
    return lambda0 / math.sqrt(1.0 - temperature / Tc)


def permittivity(model: MaterialModel, omega: float, temperature: float) -> complex:
    """Complex relative permittivity of ``model`` at (omega, T)."""
    if omega <= 0.0:
        raise DomainError(f"omega must be > 0, got {omega}")
    if temperature <= 0.0:
        raise DomainError(f"temperature must be > 0, got {temperature}")
    return model.permittivity(omega, temperature)


def resistivity_lookup(table: ResistivityTable, temperature: float) -> float:
    """rho(T) from a table; see :meth:`ResistivityTable.lookup`."""
    return table.lookup(temperature)


def sheet_resistance(
    film: FilmSheet,
    temperature: float,
    omega: float = 2.0 * math.pi * 1.0e6,
) -> float:
    """Sheet resistance (Ohm/sq) of a film at temperature T.

    Conductors and normal-state superconductors: rho(T)/thickness.
    Superconducting films below Tc return the configured residual AC sheet
    resistance, which depends on omega rather than on thickness.
    """
    mat = film.material
    if isinstance(mat, Conductor):
        return mat.rho.lookup(temperature) / film.thickness
    if isinstance(mat, TwoFluidSC):
        if temperature >= mat.Tc:
            return mat.rho_normal.lookup(temperature) / film.thickness
        return mat.sc_sheet.sheet_resistance(omega)
    raise DomainError(f"sheet resistance undefined for material {mat!r}")


def parallel_sheet(a: float, b: float) -> float:
    """Parallel combination a*b/(a+b) of two sheet resistances."""
    if a <= 0.0 or b <= 0.0:
        raise DomainError(f"sheet resistances must be > 0, got {a}, {b}")
    if math.isinf(a):
        return b
    if math.isinf(b):
        return a
    return a * b / (a + b)


def ybco_normal_default(
    sigma_n: float = 1.81e6, Tc: float = 89.0, t_max: float = 320.0, n: int = 24
) -> ResistivityTable:
    """Constant-slope normal-state resistivity for YBCO above Tc.

    Anchored at rho(Tc) = 1/sigma_n and extrapolated linearly through the
    origin, the usual approximation when no measured 4-wire data is supplied.
    """
    rho_c = 1.0 / sigma_n
    temps = [Tc + i * (t_max - Tc) / (n - 1) for i in range(n)]
    return ResistivityTable(
        temperatures=tuple(temps),
        resistivities=tuple(rho_c * t / Tc for t in temps),
        label="ybco-normal-default",
    )
