"""Physical constants (CODATA 2018) and heating-rate / field-noise conversion.

All angular frequencies in this package are in rad/s. File formats and the
CLI accept ordinary frequencies in Hz and convert at the boundary.

Electric-field noise spectral densities are single-sided throughout,
in V^2 m^-2 Hz^-1.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, asdict


@dataclass(frozen=True)
class PhysicalConstants:
    """SI constants, CODATA 2018 exact/recommended values."""

    kB: float = 1.380649e-23        # J/K (exact)
    hbar: float = 1.054571817e-34   # J*s (exact, from h = 6.62607015e-34)
    eps0: float = 8.8541878128e-12  # F/m
    mu0: float = 1.25663706212e-6   # H/m
    c: float = 299792458.0          # m/s (exact)
    q_e: float = 1.602176634e-19    # C (exact)
    # 40Ca mass: 39.9625909 u; electron-mass deficit of the ion neglected
    # (relative effect < 1e-5).
    m_Ca40: float = 39.9625909 * 1.66053906660e-27  # kg

    def fingerprint(self) -> str:
        """Stable hash of the constant set, for output provenance."""
        blob = json.dumps(asdict(self), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


CONSTANTS = PhysicalConstants()


class DomainError(ValueError):
    """Input outside the physical domain of an operation."""


def heating_rate_from_noise(
    s_e: float,
    omega: float,
    charge: float = CONSTANTS.q_e,
    mass: float = CONSTANTS.m_Ca40,
) -> float:
    """Motional heating rate (phonons/s) of a trapped ion of the given charge
    and mass, from the single-sided electric-field noise density ``s_e``
    (V^2 m^-2 Hz^-1) at the secular frequency ``omega`` (rad/s).

    Gamma = q^2 * S_E / (4 m hbar omega).
    """
    if omega <= 0.0:
        raise DomainError(f"omega must be > 0, got {omega}")
    if mass <= 0.0:
        raise DomainError(f"mass must be > 0, got {mass}")
    if s_e < 0.0:
        raise DomainError(f"noise density must be >= 0, got {s_e}")
    return charge**2 * s_e / (4.0 * mass * CONSTANTS.hbar * omega)


def noise_from_heating_rate(
    gamma: float,
    omega: float,
    charge: float = CONSTANTS.q_e,
    mass: float = CONSTANTS.m_Ca40,
) -> float:
    """Electric-field noise density (V^2 m^-2 Hz^-1) equivalent to a heating
    rate ``gamma`` (phonons/s); exact algebraic inverse of
    :func:`heating_rate_from_noise`.
    """
    if omega <= 0.0:
        raise DomainError(f"omega must be > 0, got {omega}")
    if mass <= 0.0:
        raise DomainError(f"mass must be > 0, got {mass}")
    if gamma < 0.0:
        raise DomainError(f"heating rate must be >= 0, got {gamma}")
    return gamma * 4.0 * mass * CONSTANTS.hbar * omega / charge**2


def omega_from_hz(f_hz: float) -> float:
    """Ordinary frequency (Hz) to angular frequency (rad/s)."""
    return 2.0 * math.pi * f_hz


def hz_from_omega(omega: float) -> float:
    """Angular frequency (rad/s) to ordinary frequency (Hz)."""
    return omega / (2.0 * math.pi)
