"""Plane-layered media: Fresnel reflections and the surface response integral.

Conventions
-----------
In-plane wavevector is written as u = q/k with k = omega/c.  Vertical
wavevector factors W = sqrt(eps - u^2) take the branch Im W >= 0 so that
evanescent phase factors decay; for real non-negative arguments this reduces
to the ordinary positive square root.  Layer phase factors use the physical
vertical wavenumber k*W (rad/m) times the layer thickness in metres.

The surface response g_parallel multiplies the blackbody field noise density
as S = S_bb * (1 + g_parallel) for the field component parallel to the
surface at height d above a laterally infinite stack.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import CONSTANTS, DomainError
from .materials import MaterialModel, permittivity
from .quadrature import adaptive_gk

__all__ = [
    "Layer",
    "LayerStack",
    "GreensResult",
    "DegenerateInterfaceError",
    "branch_sqrt",
    "fresnel_interface",
    "fresnel_three_layer",
    "fresnel_four_layer",
    "stack_reflection",
    "fresnel_stack",
    "greens_parallel",
]


class DegenerateInterfaceError(ZeroDivisionError):
    """A Fresnel denominator vanished exactly for some (eps_a, eps_b, u)."""


@dataclass(frozen=True)
class Layer:
    """One stratum: a material and its thickness (None marks the bulk)."""

    material: MaterialModel
    thickness: float | None = None

    def __post_init__(self):
        if self.thickness is not None and not self.thickness > 0.0:
            raise DomainError(f"layer thickness must be > 0, got {self.thickness}")


@dataclass(frozen=True)
class LayerStack:
    """Strata listed top (nearest the ion) to bottom (semi-infinite bulk)."""

    layers: tuple[Layer, ...]
    name: str = ""

    def __post_init__(self):
        if not self.layers:
            raise DomainError("stack needs at least one layer")
        if self.layers[-1].thickness is not None:
            raise DomainError("bottom layer must be semi-infinite (thickness None)")
        for lay in self.layers[:-1]:
            if lay.thickness is None:
                raise DomainError("only the bottom layer may be semi-infinite")

    def permittivities(self, omega: float, temperature: float) -> tuple[complex, ...]:
        return tuple(
            permittivity(lay.material, omega, temperature) for lay in self.layers
        )


@dataclass(frozen=True)
class GreensResult:
    g_parallel: float
    error: float
    evaluations: int
    propagating: float
    evanescent: float


def branch_sqrt(z):
    """Square root with Im >= 0 (ties resolved toward Re >= 0)."""
    w = np.sqrt(np.asarray(z, dtype=complex))
    flip = (w.imag < 0.0) | ((w.imag == 0.0) & (w.real < 0.0))
    return np.where(flip, -w, w)


def _check_denominator(den, eps_a, eps_b, pol: str):
    if np.any(den == 0.0):
        raise DegenerateInterfaceError(
            f"{pol}-polarised Fresnel denominator vanished for "
            f"eps_a={eps_a!r}, eps_b={eps_b!r}"
        )


def fresnel_interface(eps_a, eps_b, u):
    """(Rs, Rp) for a wave in medium a reflecting off medium b."""
    u2 = np.asarray(u, dtype=float) ** 2
    wa = branch_sqrt(eps_a - u2)
    wb = branch_sqrt(eps_b - u2)
    den_s = wa + wb
    den_p = eps_b * wa + eps_a * wb
    _check_denominator(den_s, eps_a, eps_b, "s")
    _check_denominator(den_p, eps_a, eps_b, "p")
    rs = (wa - wb) / den_s
    rp = (eps_b * wa - eps_a * wb) / den_p
    return rs, rp


def _phase(eps, u2, k, thickness):
    w = branch_sqrt(eps - u2)
    return np.exp(2j * k * thickness * w)


def fresnel_three_layer(eps_a, eps_b, eps_c, t_b, u, k):
    """Explicit a|b|c reflection with finite middle layer of thickness t_b."""
    rs_ab, rp_ab = fresnel_interface(eps_a, eps_b, u)
    rs_bc, rp_bc = fresnel_interface(eps_b, eps_c, u)
    ph = _phase(eps_b, np.asarray(u, dtype=float) ** 2, k, t_b)
    rs = (rs_ab + rs_bc * ph) / (1.0 + rs_ab * rs_bc * ph)
    rp = (rp_ab + rp_bc * ph) / (1.0 + rp_ab * rp_bc * ph)
    return rs, rp


def fresnel_four_layer(eps_a, eps_b, eps_c, eps_d, t_b, t_c, u, k):
    """Explicit a|b|c|d reflection written as one rational expression."""
    u2 = np.asarray(u, dtype=float) ** 2
    ph_b = _phase(eps_b, u2, k, t_b)
    ph_c = _phase(eps_c, u2, k, t_c)
    out = []
    for pol in (0, 1):
        r_ab = fresnel_interface(eps_a, eps_b, u)[pol]
        r_bc = fresnel_interface(eps_b, eps_c, u)[pol]
        r_cd = fresnel_interface(eps_c, eps_d, u)[pol]
        num = r_ab + r_bc * ph_b + (r_ab * r_bc + ph_b) * r_cd * ph_c
        den = 1.0 + r_ab * r_bc * ph_b + (r_bc + r_ab * ph_b) * r_cd * ph_c
        out.append(num / den)
    return tuple(out)


def stack_reflection(eps_media, thicknesses, u, k):
    """Downward recursion over interfaces; media listed top to bulk.

    eps_media has N+1 entries (index 0 is the upper half-space) and
    thicknesses has N-1 entries for the interior finite media.
    """
    u2 = np.asarray(u, dtype=float) ** 2
    n_if = len(eps_media) - 1
    rs, rp = fresnel_interface(eps_media[-2], eps_media[-1], u)
    for i in range(n_if - 2, -1, -1):
        ph = _phase(eps_media[i + 1], u2, k, thicknesses[i])
        r_s, r_p = fresnel_interface(eps_media[i], eps_media[i + 1], u)
        rs = (r_s + rs * ph) / (1.0 + r_s * rs * ph)
        rp = (r_p + rp * ph) / (1.0 + r_p * rp * ph)
    return rs, rp


def fresnel_stack(stack: LayerStack, u, omega: float, temperature: float):
    """(Rs, Rp) of a vacuum-terminated stack at normalised wavevector u."""
    eps_media = (1.0 + 0.0j, *stack.permittivities(omega, temperature))
    thicknesses = tuple(lay.thickness for lay in stack.layers[:-1])
    k = omega / CONSTANTS.c
    return stack_reflection(eps_media, thicknesses, u, k)


def greens_parallel(
    stack: LayerStack,
    omega: float,
    temperature: float,
    distance: float,
    rel_tol: float = 1e-6,
    abs_tol: float = 1e-5,
    max_evals: int = 2_000_000,
) -> GreensResult:
    """Surface response for the in-plane field at height ``distance``.

    g_parallel = (3/4) Re int_0^inf (u du / v) e^{2 i k d v}
                 [Rs(u) + (u^2 - 1) Rp(u)],  v = sqrt(1 - u^2), Im v >= 0.

    The propagating part (u in [0, 1]) is computed with u = sin(theta),
    which removes the 1/v endpoint singularity.  The evanescent part uses
    t = sqrt(u^2 - 1), giving int_0^inf e^{-2 k d t} Im[Rs + t^2 Rp] dt.
    ``abs_tol`` is an absolute floor in g units; errors far below 1 are
    irrelevant to the observable 1 + g_parallel.
    """
    if distance <= 0.0:
        raise DomainError(f"ion height must be > 0, got {distance}")
    eps_media = (1.0 + 0.0j, *stack.permittivities(omega, temperature))
    thicknesses = tuple(lay.thickness for lay in stack.layers[:-1])
    k = omega / CONSTANTS.c
    kd = k * distance

    def integrand_prop(theta):
        u = np.sin(theta)
        cos = np.cos(theta)
        rs, rp = stack_reflection(eps_media, thicknesses, u, k)
        return u * np.exp(2j * kd * cos) * (rs - cos**2 * rp)

    def integrand_evan(t):
        u = np.sqrt(1.0 + t * t)
        rs, rp = stack_reflection(eps_media, thicknesses, u, k)
        return (np.exp(-2.0 * kd * t) * (rs + t * t * rp)).imag

    budget = max_evals // 2
    res_p = adaptive_gk(
        integrand_prop, 0.0, np.pi / 2, rel_tol=rel_tol,
        abs_tol=abs_tol / 2.0, max_evals=budget,
    )

    t_cap = max(37.0 / (2.0 * kd), 10.0)
    scales = [np.sqrt(max(abs(e) - 1.0, 1e-6)) for e in eps_media]
    lo = min(1.0, 1e-3 / (2.0 * kd))
    n_dec = max(int(np.ceil(np.log10(t_cap / lo))) * 4, 8)
    breaks = set(np.geomspace(lo, t_cap, n_dec))
    breaks.update(s for s in scales if lo < s < t_cap)
    res_e = adaptive_gk(
        integrand_evan, 0.0, t_cap, rel_tol=rel_tol,
        abs_tol=abs_tol / 2.0, max_evals=budget, breakpoints=sorted(breaks),
    )

    prop = 0.75 * float(np.real(res_p.value))
    evan = 0.75 * float(np.real(res_e.value))
    err = 0.75 * (res_p.error + res_e.error)
    return GreensResult(
        g_parallel=prop + evan,
        error=err,
        evaluations=res_p.evaluations + res_e.evaluations,
        propagating=prop,
        evanescent=evan,
    )
