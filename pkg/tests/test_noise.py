"""Blackbody/FDT field noise and the Johnson-noise budget machinery."""

import math

import numpy as np
import pytest

from trapnoise.constants import CONSTANTS, DomainError, heating_rate_from_noise
from trapnoise.layers import Layer, LayerStack, greens_parallel
from trapnoise.materials import (
    Conductor,
    FilmSheet,
    ResistivityTable,
    TwoFluidSC,
    Vacuum,
    parallel_sheet,
    sheet_resistance,
    ybco_normal_default,
)
from trapnoise.noise import (
    ElectrodeModel,
    FilterCapacitor,
    FilterNetwork,
    LeadModel,
    RectTrace,
    RegimeWarning,
    WireBond,
    blackbody_noise,
    electrode_resistance,
    fdt_noise,
    filter_effective_resistance,
    jnn_budget,
    lead_resistance,
    skin_depth,
)

OMEGA_1MHZ = 2.0 * math.pi * 1.0e6

GOLD = ResistivityTable.from_pairs(
    [(4, 2.20e-10), (10, 2.26e-10), (20, 3.5e-10), (40, 1.41e-9),
     (60, 3.08e-9), (80, 4.81e-9), (100, 6.50e-9), (150, 1.061e-8),
     (200, 1.462e-8), (250, 1.866e-8), (273, 2.051e-8), (300, 2.271e-8)],
    label="au",
)
COPPER = ResistivityTable.from_pairs(
    [(4, 2.00e-11), (10, 2.02e-11), (20, 2.80e-11), (40, 2.39e-10),
     (60, 9.71e-10), (80, 2.15e-9), (100, 3.48e-9), (150, 6.99e-9),
     (200, 1.046e-8), (250, 1.386e-8), (273, 1.543e-8), (300, 1.725e-8)],
    label="cu",
)
ALUMINIUM = ResistivityTable.from_pairs(
    [(4, 9.90e-9), (10, 9.92e-9), (20, 1.000e-8), (40, 1.02e-8),
     (60, 1.10e-8), (80, 1.25e-8), (100, 1.44e-8), (150, 2.00e-8),
     (200, 2.59e-8), (250, 3.16e-8), (300, 3.73e-8)],
    label="al",
)


# ---------------------------------------------------------------------------
# blackbody and FDT


def test_blackbody_hand_value():
    # 2 kB T omega^2 / (3 pi eps0 c^3) at 300 K, 2pi x 1 MHz
    expected = (
        2.0 * CONSTANTS.kB * 300.0 * OMEGA_1MHZ**2
        / (3.0 * math.pi * CONSTANTS.eps0 * CONSTANTS.c**3)
    )
    assert blackbody_noise(OMEGA_1MHZ, 300.0) == pytest.approx(expected, rel=1e-15)
    assert expected == pytest.approx(4.85e-23, rel=0.01)


def test_blackbody_scalings():
    base = blackbody_noise(OMEGA_1MHZ, 100.0)
    assert blackbody_noise(OMEGA_1MHZ, 200.0) == pytest.approx(2 * base, rel=1e-12)
    assert blackbody_noise(2 * OMEGA_1MHZ, 100.0) == pytest.approx(
        4 * base, rel=1e-12
    )


def test_blackbody_warns_outside_classical_regime():
    # hbar omega ~ kB T at THz frequencies and kelvin temperatures
    with pytest.warns(RegimeWarning):
        blackbody_noise(2 * math.pi * 1e12, 4.0)


def test_blackbody_domain():
    with pytest.raises(DomainError):
        blackbody_noise(0.0, 300.0)
    with pytest.raises(DomainError):
        blackbody_noise(OMEGA_1MHZ, -1.0)
    assert blackbody_noise(OMEGA_1MHZ, 0.0) == 0.0


def test_fdt_above_vacuum_equals_blackbody():
    stack = LayerStack((Layer(Vacuum()),), name="empty")
    res = fdt_noise(stack, OMEGA_1MHZ, 300.0, 225e-6)
    assert res.s_e == res.s_blackbody
    assert res.g_parallel == 0.0


def test_fdt_combines_blackbody_and_surface_response():
    stack = LayerStack((Layer(Conductor(GOLD, name="au")),), name="gold")
    res = fdt_noise(stack, OMEGA_1MHZ, 300.0, 225e-6)
    greens = greens_parallel(stack, OMEGA_1MHZ, 300.0, 225e-6)
    s_bb = blackbody_noise(OMEGA_1MHZ, 300.0)
    assert res.s_blackbody == pytest.approx(s_bb, rel=1e-15)
    assert res.s_e == pytest.approx(s_bb * (1.0 + greens.g_parallel), rel=1e-6)
    # a warm conductor close by adds far more noise than free space
    assert res.s_e > 100.0 * s_bb


# ---------------------------------------------------------------------------
# filter network


def trap_filter() -> FilterNetwork:
    return FilterNetwork(
        series_r=100.0,
        capacitors=(
            FilterCapacitor(330e-9, esr=24e-3),
            FilterCapacitor(470e-12, esr=1.3),
        ),
    )


def test_filter_effective_resistance_against_direct_admittance():
    omega = OMEGA_1MHZ
    y = 1.0 / 100.0
    y += 1.0 / (24e-3 + 1.0 / (1j * omega * 330e-9))
    y += 1.0 / (1.3 + 1.0 / (1j * omega * 470e-12))
    expected = (1.0 / y).real
    assert filter_effective_resistance(trap_filter(), omega) == pytest.approx(
        expected, rel=1e-14
    )
    assert expected == pytest.approx(26.25e-3, rel=1e-3)


def test_filter_without_capacitors_is_plain_resistor():
    net = FilterNetwork(series_r=47.0)
    assert filter_effective_resistance(net, OMEGA_1MHZ) == pytest.approx(47.0)


def test_filter_low_frequency_limit_is_series_r():
    # capacitors open up as omega -> 0
    assert filter_effective_resistance(trap_filter(), 1e-2) == pytest.approx(
        100.0, rel=1e-6
    )


def test_filter_validation():
    with pytest.raises(DomainError):
        FilterNetwork(series_r=0.0)
    with pytest.raises(DomainError):
        FilterCapacitor(-1e-9)
    with pytest.raises(DomainError):
        FilterCapacitor(1e-9, esr=-0.1)
    with pytest.raises(DomainError):
        filter_effective_resistance(trap_filter(), 0.0)


# ---------------------------------------------------------------------------
# skin effect, traces, bonds, leads


def test_skin_depth_hand_value():
    # sqrt(2 rho / (omega mu0)) for gold at 300 K and 1 MHz is ~76 um
    delta = skin_depth(2.271e-8, OMEGA_1MHZ)
    assert delta == pytest.approx(
        math.sqrt(2 * 2.271e-8 / (OMEGA_1MHZ * CONSTANTS.mu0)), rel=1e-12
    )
    assert delta == pytest.approx(75.8e-6, rel=1e-2)
    with pytest.raises(DomainError):
        skin_depth(-1e-8, OMEGA_1MHZ)


def test_trace_resistance_dc_limit():
    # skin depth far larger than the cross-section: R = rho L / (w t)
    trace = RectTrace(10e-6, 300e-9, 5.18e-3, Conductor(ALUMINIUM, name="al"))
    expected = 1.000e-8 * 5.18e-3 / (10e-6 * 300e-9)
    assert trace.resistance(OMEGA_1MHZ, 20.0) == pytest.approx(expected, rel=1e-9)
    assert expected == pytest.approx(17.27, rel=1e-3)


def test_trace_resistance_skin_limited():
    # fat copper trace at 150 K: current flows in a skin-depth shell
    trace = RectTrace(300e-6, 100e-6, 1e-2, Conductor(COPPER, name="cu"))
    rho = 6.99e-9
    delta = skin_depth(rho, OMEGA_1MHZ)
    assert 2 * delta < 100e-6  # genuinely shell-limited
    shell = 300e-6 * 100e-6 - (300e-6 - 2 * delta) * (100e-6 - 2 * delta)
    assert trace.resistance(OMEGA_1MHZ, 150.0) == pytest.approx(
        rho * 1e-2 / shell, rel=1e-12
    )
    # and it exceeds the DC value
    assert trace.resistance(OMEGA_1MHZ, 150.0) > rho * 1e-2 / (300e-6 * 100e-6)


def test_bond_resistance_limits():
    bond = WireBond(25e-6, 1e-2, Conductor(GOLD, name="au"))
    rho = GOLD.lookup(40.0)
    delta = skin_depth(rho, OMEGA_1MHZ)
    r = 12.5e-6
    if delta >= r:
        area = math.pi * r**2
    else:
        area = math.pi * (r**2 - (r - delta) ** 2)
    assert bond.resistance_single(OMEGA_1MHZ, 40.0) == pytest.approx(
        rho * 1e-2 / area, rel=1e-12
    )


def test_lead_resistance_divides_bond_and_contact_by_multiplicity():
    trace = RectTrace(300e-6, 100e-6, 1e-2, Conductor(COPPER, name="cu"))
    single = LeadModel(
        pcb_trace=trace,
        wire_bond=WireBond(25e-6, 1e-2, Conductor(GOLD, name="au"), 1),
        contact_r_per_bond=75e-3,
    )
    double = LeadModel(
        pcb_trace=trace,
        wire_bond=WireBond(25e-6, 1e-2, Conductor(GOLD, name="au"), 2),
        contact_r_per_bond=75e-3,
    )
    r_trace = trace.resistance(OMEGA_1MHZ, 40.0)
    r1 = lead_resistance(single, OMEGA_1MHZ, 40.0)
    r2 = lead_resistance(double, OMEGA_1MHZ, 40.0)
    assert r2 - r_trace == pytest.approx(0.5 * (r1 - r_trace), rel=1e-12)


def test_lead_resistance_contact_only():
    lead = LeadModel(contact_r_per_bond=0.1)
    assert lead_resistance(lead, OMEGA_1MHZ, 40.0) == pytest.approx(0.1)
    assert lead_resistance(LeadModel(), OMEGA_1MHZ, 40.0) == 0.0


# ---------------------------------------------------------------------------
# electrodes and the budget


def ybco() -> TwoFluidSC:
    return TwoFluidSC(
        lambda0=150e-9, Tc=89.0, sigma_n=1.81e6,
        rho_normal=ybco_normal_default(), name="ybco",
    )


def strip_electrode(films=(), filter_net=None, name="E") -> ElectrodeModel:
    return ElectrodeModel(
        name=name,
        characteristic_distance=5.10e-3,
        strip_length=5.0e-3,
        strip_width=25e-6,
        films=films,
        filter=filter_net,
    )


def test_electrode_resistance_bare_strip_is_zero():
    assert electrode_resistance(strip_electrode(), 40.0) == 0.0


def test_electrode_resistance_parallel_films():
    films = (
        FilmSheet(Conductor(GOLD, name="au"), 200e-9),
        FilmSheet(ybco(), 300e-9),
    )
    e = strip_electrode(films=films)
    r_sq = parallel_sheet(
        sheet_resistance(films[0], 40.0, OMEGA_1MHZ),
        sheet_resistance(films[1], 40.0, OMEGA_1MHZ),
    )
    expected = r_sq * 5.0e-3 / 25e-6
    assert electrode_resistance(e, 40.0, OMEGA_1MHZ) == pytest.approx(
        expected, rel=1e-12
    )
    # below Tc the superconductor shorts the strip to the ~1e-7 Ohm/sq floor
    assert r_sq == pytest.approx(1e-7, rel=0.01)


def test_jnn_budget_single_resistor_hand_value():
    # one electrode whose only dissipation is a filter: S = 4 kB T R / D^2
    e = strip_electrode(filter_net=FilterNetwork(series_r=50.0))
    budget = jnn_budget([e], OMEGA_1MHZ, 40.0)
    r_eff = filter_effective_resistance(e.filter, OMEGA_1MHZ)
    expected = 4.0 * CONSTANTS.kB * 40.0 * r_eff / 5.10e-3**2
    assert budget.total == pytest.approx(expected, rel=1e-12)
    assert budget.per_source == {"E": pytest.approx(expected, rel=1e-12)}


def test_jnn_budget_linear_in_temperature_for_fixed_resistance():
    e = strip_electrode(filter_net=FilterNetwork(series_r=50.0))
    b1 = jnn_budget([e], OMEGA_1MHZ, 40.0)
    b2 = jnn_budget([e], OMEGA_1MHZ, 80.0)
    assert b2.total == pytest.approx(2.0 * b1.total, rel=1e-12)


def test_jnn_budget_sums_electrodes_and_reports_fractions():
    e1 = strip_electrode(filter_net=FilterNetwork(series_r=50.0), name="A")
    e2 = ElectrodeModel(
        name="B",
        characteristic_distance=10.2e-3,  # double distance: quarter noise
        strip_length=5.0e-3,
        strip_width=25e-6,
        filter=FilterNetwork(series_r=50.0),
    )
    budget = jnn_budget([e1, e2], OMEGA_1MHZ, 40.0)
    assert budget.total == pytest.approx(sum(budget.per_source.values()))
    fr = budget.fractions()
    assert sum(fr.values()) == pytest.approx(1.0, rel=1e-12)
    assert fr["A"] == pytest.approx(0.8, rel=1e-12)
    assert fr["B"] == pytest.approx(0.2, rel=1e-12)


def test_jnn_budget_validation():
    with pytest.raises(DomainError):
        jnn_budget([], OMEGA_1MHZ, 40.0)
    e = strip_electrode()
    with pytest.raises(DomainError):
        jnn_budget([e], OMEGA_1MHZ, -4.0)


def test_aluminium_lead_benchmark():
    # thin-film meander lead at 20 K: R ~ 17.3 Ohm, S_E ~ 7.33e-16 per lead,
    # and ~0.21 phonons/s for an ion coupled to two such leads at 1 MHz
    lead = LeadModel(
        pcb_trace=RectTrace(10e-6, 300e-9, 5.18e-3, Conductor(ALUMINIUM, "al"))
    )
    electrodes = [
        ElectrodeModel(
            name=name,
            characteristic_distance=5.10e-3,
            strip_length=5.0e-3,
            strip_width=25e-6,
            lead=lead,
        )
        for name in ("C1", "C2")
    ]
    r = lead_resistance(lead, OMEGA_1MHZ, 20.0)
    assert r == pytest.approx(17.3, rel=0.01)
    budget = jnn_budget(electrodes, OMEGA_1MHZ, 20.0)
    per_lead = budget.per_source["C1"]
    assert per_lead == pytest.approx(7.33e-16, rel=0.01)
    gamma = heating_rate_from_noise(budget.total, OMEGA_1MHZ)
    assert gamma == pytest.approx(0.21, rel=0.05)
