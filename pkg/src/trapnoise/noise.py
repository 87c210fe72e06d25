"""Physical noise estimates seen by a trapped ion.

Two independent routes to the electric-field noise density S_E (V^2 m^-2 Hz^-1,
single-sided, at angular frequency omega):

* fluctuation-dissipation: blackbody noise times the surface response
  factor (1 + g_parallel) of the layered chip;
* Johnson noise of the drive circuitry: 4 kB T R_eff / D^2 summed over
  electrodes, with R_eff = R_filter + R_lead + R_elec.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .constants import CONSTANTS, DomainError
from .layers import GreensResult, LayerStack, greens_parallel
from .materials import Conductor, FilmSheet, parallel_sheet
from .materials import resistivity_lookup, sheet_resistance

__all__ = [
    "RegimeWarning",
    "FdtResult",
    "FilterCapacitor",
    "FilterNetwork",
    "RectTrace",
    "WireBond",
    "LeadModel",
    "ElectrodeModel",
    "NoiseBudget",
    "blackbody_noise",
    "fdt_noise",
    "filter_effective_resistance",
    "skin_depth",
    "lead_resistance",
    "electrode_resistance",
    "jnn_budget",
]


class RegimeWarning(UserWarning):
    """A formula is being used outside its stated validity regime."""


def blackbody_noise(omega: float, temperature: float) -> float:
    """Classical blackbody field noise 2 kB T omega^2 / (3 pi eps0 c^3).

    Valid for hbar*omega << kB*T; warns above a 1% ratio.
    """
    if omega <= 0.0:
        raise DomainError(f"omega must be > 0, got {omega}")
    if temperature < 0.0:
        raise DomainError(f"temperature must be >= 0, got {temperature}")
    if temperature > 0.0:
        ratio = CONSTANTS.hbar * omega / (CONSTANTS.kB * temperature)
        if ratio > 0.01:
            warnings.warn(
                f"hbar*omega/kB*T = {ratio:.3g} > 0.01; classical blackbody "
                "formula loses validity",
                RegimeWarning,
                stacklevel=2,
            )
    return (
        2.0 * CONSTANTS.kB * temperature * omega**2
        / (3.0 * np.pi * CONSTANTS.eps0 * CONSTANTS.c**3)
    )


@dataclass(frozen=True)
class FdtResult:
    """Field noise at the ion with the surface-response diagnostics."""

    s_e: float
    s_blackbody: float
    greens: GreensResult

    @property
    def g_parallel(self) -> float:
        return self.greens.g_parallel


def fdt_noise(
    stack: LayerStack,
    omega: float,
    temperature: float,
    distance: float,
    **quad_kwargs,
) -> FdtResult:
    """S_E = S_bb * (1 + g_parallel) above the given layer stack."""
    s_bb = blackbody_noise(omega, temperature)
    res = greens_parallel(stack, omega, temperature, distance, **quad_kwargs)
    factor = 1.0 + res.g_parallel
    if factor < 0.0:
        # tiny negative excursions within the quadrature error are noise
        if -factor <= 10.0 * max(res.error, 1e-15):
            factor = 0.0
        else:
            raise DomainError(
                f"unphysical negative noise factor 1+g = {factor:.3e} "
                f"(quadrature error {res.error:.3e})"
            )
    return FdtResult(s_e=s_bb * factor, s_blackbody=s_bb, greens=res)


# ---------------------------------------------------------------------------
# Johnson noise of filters, leads, and patterned electrodes


@dataclass(frozen=True)
class FilterCapacitor:
    capacitance: float
    esr: float = 0.0

    def __post_init__(self):
        if self.capacitance <= 0.0:
            raise DomainError(f"capacitance must be > 0, got {self.capacitance}")
        if self.esr < 0.0:
            raise DomainError(f"ESR must be >= 0, got {self.esr}")


@dataclass(frozen=True)
class FilterNetwork:
    """First-order RC low-pass: series R shunted by lossy capacitors."""

    series_r: float
    capacitors: tuple[FilterCapacitor, ...] = ()

    def __post_init__(self):
        if self.series_r <= 0.0:
            raise DomainError(f"series R must be > 0, got {self.series_r}")


def filter_effective_resistance(net: FilterNetwork, omega: float) -> float:
    """Re Z of the filter as seen from the electrode."""
    if omega <= 0.0:
        raise DomainError(f"omega must be > 0, got {omega}")
    admittance = 1.0 / complex(net.series_r)
    for cap in net.capacitors:
        admittance += 1.0 / (cap.esr + 1.0 / (1j * omega * cap.capacitance))
    return (1.0 / admittance).real


def skin_depth(rho: float, omega: float) -> float:
    if rho <= 0.0 or omega <= 0.0:
        raise DomainError(f"need rho, omega > 0, got {rho}, {omega}")
    return float(np.sqrt(2.0 * rho / (omega * CONSTANTS.mu0)))


@dataclass(frozen=True)
class RectTrace:
    """Rectangular conductor trace; current crowds into a skin-depth shell."""

    width: float
    thickness: float
    length: float
    material: Conductor

    def __post_init__(self):
        if min(self.width, self.thickness, self.length) <= 0.0:
            raise DomainError("trace dimensions must be > 0")

    def resistance(self, omega: float, temperature: float) -> float:
        rho = resistivity_lookup(self.material.rho, temperature)
        delta = skin_depth(rho, omega)
        core_w = max(self.width - 2.0 * delta, 0.0)
        core_t = max(self.thickness - 2.0 * delta, 0.0)
        area = self.width * self.thickness - core_w * core_t
        return rho * self.length / area


@dataclass(frozen=True)
class WireBond:
    """Round bond wire; multiplicity counts parallel bonds."""

    diameter: float
    length: float
    material: Conductor
    multiplicity: int = 1

    def __post_init__(self):
        if min(self.diameter, self.length) <= 0.0:
            raise DomainError("bond dimensions must be > 0")
        if self.multiplicity < 1:
            raise DomainError(f"multiplicity must be >= 1, got {self.multiplicity}")

    def resistance_single(self, omega: float, temperature: float) -> float:
        rho = resistivity_lookup(self.material.rho, temperature)
        delta = skin_depth(rho, omega)
        r = 0.5 * self.diameter
        area = np.pi * (r**2 - max(r - delta, 0.0) ** 2)
        return rho * self.length / area


@dataclass(frozen=True)
class LeadModel:
    """Series path from filter board to chip: trace, bond wires, contacts.

    Bond and contact resistances are divided by the bond multiplicity.
    """

    pcb_trace: RectTrace | None = None
    wire_bond: WireBond | None = None
    contact_r_per_bond: float = 0.0

    def __post_init__(self):
        if self.contact_r_per_bond < 0.0:
            raise DomainError("contact resistance must be >= 0")


def lead_resistance(lead: LeadModel, omega: float, temperature: float) -> float:
    total = 0.0
    if lead.pcb_trace is not None:
        total += lead.pcb_trace.resistance(omega, temperature)
    n = lead.wire_bond.multiplicity if lead.wire_bond is not None else 1
    per_bond = lead.contact_r_per_bond
    if lead.wire_bond is not None:
        per_bond += lead.wire_bond.resistance_single(omega, temperature)
    return total + per_bond / n


@dataclass(frozen=True)
class ElectrodeModel:
    """One DC electrode with its film stack, lead, filter, and coupling D."""

    name: str
    characteristic_distance: float
    strip_length: float
    strip_width: float
    films: tuple[FilmSheet, ...] = ()
    lead: LeadModel = field(default_factory=LeadModel)
    filter: FilterNetwork | None = None
    approximate: bool = False

    def __post_init__(self):
        if self.characteristic_distance <= 0.0:
            raise DomainError("characteristic distance must be > 0")
        if min(self.strip_length, self.strip_width) <= 0.0:
            raise DomainError("strip dimensions must be > 0")


def electrode_resistance(
    e: ElectrodeModel, temperature: float, omega: float = 2.0 * np.pi * 1.0e6
) -> float:
    """Strip resistance R_sq * l/w of the parallel film sheets (0 if bare)."""
    if not e.films:
        return 0.0
    r_sq = sheet_resistance(e.films[0], temperature, omega)
    for film in e.films[1:]:
        r_sq = parallel_sheet(r_sq, sheet_resistance(film, temperature, omega))
    return r_sq * e.strip_length / e.strip_width


@dataclass(frozen=True)
class NoiseBudget:
    per_source: dict[str, float]
    total: float

    def fractions(self) -> dict[str, float]:
        if self.total <= 0.0:
            return {k: 0.0 for k in self.per_source}
        return {k: v / self.total for k, v in self.per_source.items()}


def electrode_effective_resistance(
    e: ElectrodeModel, omega: float, temperature: float
) -> float:
    r = electrode_resistance(e, temperature, omega)
    r += lead_resistance(e.lead, omega, temperature)
    if e.filter is not None:
        r += filter_effective_resistance(e.filter, omega)
    return r


def jnn_budget(
    electrodes: list[ElectrodeModel] | tuple[ElectrodeModel, ...],
    omega: float,
    temperature: float,
) -> NoiseBudget:
    """S_E = 4 kB T sum_i R_eff,i / D_i^2 over the electrode inventory."""
    if not electrodes:
        raise DomainError("electrode list must be non-empty")
    if temperature < 0.0:
        raise DomainError(f"temperature must be >= 0, got {temperature}")
    per: dict[str, float] = {}
    for e in electrodes:
        r_eff = electrode_effective_resistance(e, omega, temperature)
        per[e.name] = (
            4.0 * CONSTANTS.kB * temperature * r_eff
            / e.characteristic_distance**2
        )
    return NoiseBudget(per_source=per, total=sum(per.values()))
