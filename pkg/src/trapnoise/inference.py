"""Inference on ion heating-rate data.

Covers the analysis chain from measured heating rates Gamma_h(omega, T):
frequency power laws Gamma = gamma (omega/omega0)^(alpha-1), global
temperature models (simple versus piecewise power law, ranked by AIC/BIC),
surface-noise offset fits, spline-based log-log slopes, and the
thermally-activated-fluctuator (TAF) prediction linking the temperature
slope to the frequency exponent.

All fits minimise sigma-weighted residuals; quoted RSS and information
criteria use the same weighted residual definition.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from .constants import (
    CONSTANTS,
    DomainError,
    heating_rate_from_noise,
    noise_from_heating_rate,
)
from .leastsq import FitResult, levenberg_marquardt
from .smoothing import SmoothingSpline, fit_smoothing_spline

__all__ = [
    "OMEGA0",
    "FitRangeWarning",
    "IllConditionedWarning",
    "HeatingRecord",
    "HeatingDataset",
    "FreqPowerLawFit",
    "TempFitParams",
    "TempModelFit",
    "TempModelComparison",
    "ModelScore",
    "SurfaceModelFit",
    "SurfaceFitParams",
    "SlopeCurve",
    "model_gamma1",
    "model_gamma2",
    "fit_freq_power_law",
    "fit_temperature_models",
    "information_criteria",
    "plateau_width",
    "fit_surface_models",
    "loglog_spline_slope",
    "taf_alpha",
    "taf_consistency_chi2",
    "jnn_corrected_alpha",
    "synth_dataset",
    "synth_surface",
]

OMEGA0 = 2.0 * math.pi * 1.0e6


class FitRangeWarning(UserWarning):
    """A fitted parameter sits outside the range the data constrains."""


class IllConditionedWarning(UserWarning):
    """A formula is evaluated where it is numerically ill-conditioned."""


@dataclass(frozen=True)
class HeatingRecord:
    temperature: float
    f_secular: float
    gamma: float
    sigma_gamma: float

    def __post_init__(self):
        if self.temperature <= 0.0 or self.f_secular <= 0.0:
            raise DomainError("temperature and frequency must be > 0")
        if self.gamma < 0.0:
            raise DomainError(f"heating rate must be >= 0, got {self.gamma}")
        if self.sigma_gamma <= 0.0:
            raise DomainError(f"sigma must be > 0, got {self.sigma_gamma}")


@dataclass(frozen=True)
class HeatingDataset:
    records: tuple[HeatingRecord, ...]

    def __post_init__(self):
        if not self.records:
            raise DomainError("dataset must be non-empty")

    def by_frequency(self) -> dict[float, list[HeatingRecord]]:
        """Records grouped by secular frequency, each group sorted by T."""
        groups: dict[float, list[HeatingRecord]] = {}
        for rec in self.records:
            groups.setdefault(rec.f_secular, []).append(rec)
        return {
            f: sorted(g, key=lambda r: r.temperature)
            for f, g in sorted(groups.items())
        }


# ---------------------------------------------------------------------------
# frequency power law


@dataclass(frozen=True, eq=False)
class FreqPowerLawFit:
    """Gamma(omega) = gamma_coeff * (omega/omega0)^(alpha - 1)."""

    gamma_coeff: float
    alpha: float
    covariance: np.ndarray
    omega0: float
    points: tuple[tuple[float, float, float], ...]  # (omega, gamma, sigma)
    fit: FitResult = field(repr=False, compare=False, default=None)

    def __call__(self, omega):
        return self.gamma_coeff * (np.asarray(omega) / self.omega0) ** (
            self.alpha - 1.0
        )

    def errors(self) -> tuple[float, float]:
        d = np.sqrt(np.clip(np.diag(self.covariance), 0.0, None))
        return float(d[0]), float(d[1])


def fit_freq_power_law(points, omega0: float = OMEGA0) -> FreqPowerLawFit:
    """Weighted fit of the frequency power law at fixed temperature."""
    pts = [(float(w), float(g), float(s)) for w, g, s in points]
    if len(pts) < 3:
        raise DomainError(f"need at least 3 points, got {len(pts)}")
    omegas = np.array([p[0] for p in pts])
    if np.unique(omegas).size != omegas.size:
        raise DomainError("frequencies must be distinct")
    gammas = np.array([p[1] for p in pts])
    sigmas = np.array([p[2] for p in pts])
    if np.any(gammas <= 0.0) or np.any(sigmas <= 0.0):
        raise DomainError("gamma and sigma must be > 0 for the power-law fit")

    # log-log regression seeds the nonlinear fit
    lx = np.log(omegas / omega0)
    slope, intercept = np.polyfit(lx, np.log(gammas), 1)
    theta0 = np.array([intercept, slope + 1.0])

    def residual(theta):
        model = np.exp(theta[0]) * (omegas / omega0) ** (theta[1] - 1.0)
        return (gammas - model) / sigmas

    res = levenberg_marquardt(residual, theta0)
    ln_g, alpha = res.params
    # delta method: var(gamma) = gamma^2 var(ln gamma)
    jac_t = np.array([[math.exp(ln_g), 0.0], [0.0, 1.0]])
    cov = jac_t @ res.covariance @ jac_t.T
    return FreqPowerLawFit(
        gamma_coeff=float(math.exp(ln_g)),
        alpha=float(alpha),
        covariance=cov,
        omega0=omega0,
        points=tuple(pts),
        fit=res,
    )


# ---------------------------------------------------------------------------
# temperature models


def model_gamma1(t, gamma0, t1, beta1):
    """Simple power law Gamma0 [1 + (T/T1)^beta1]."""
    t = np.asarray(t, dtype=float)
    return gamma0 * (1.0 + (t / t1) ** beta1)


def model_gamma2(t, gamma0, t1, beta1, t2, beta2, t_star):
    """Piecewise power law: simple below T*, second rise above it.

    Continuous at T* because the upper branch equals Gamma1(T*) there.
    """
    t = np.asarray(t, dtype=float)
    # During optimization trial parameters may turn unphysical (T* <= 0,
    # runaway exponents); let NaN/inf propagate silently so the step is
    # simply rejected.
    with np.errstate(invalid="ignore", over="ignore", divide="ignore"):
        below = model_gamma1(t, gamma0, t1, beta1)
        at_star = gamma0 * (1.0 + (t_star / t1) ** beta1)
        dt = np.clip(t - t_star, 0.0, None)
        above = at_star * (1.0 + (dt / t2) ** beta2)
        return np.where(t < t_star, below, above)


@dataclass(frozen=True)
class TempFitParams:
    gamma0: dict[float, float]  # per secular frequency (Hz)
    t1: float
    beta1: float
    t2: float | None = None
    beta2: float | None = None
    t_star: float | None = None

    @property
    def piecewise(self) -> bool:
        return self.t_star is not None

    def __call__(self, t, f_secular: float):
        g0 = self.gamma0[f_secular]
        if self.piecewise:
            return model_gamma2(
                t, g0, self.t1, self.beta1, self.t2, self.beta2, self.t_star
            )
        return model_gamma1(t, g0, self.t1, self.beta1)


@dataclass(frozen=True)
class ModelScore:
    rss: float
    n_data: int
    n_params: int
    aic: float
    bic: float
    perfect: bool = False


def information_criteria(rss: float, n_data: int, n_params: int) -> ModelScore:
    """AIC = N ln(RSS/N) + 2M and BIC = N ln(RSS/N) + M ln N."""
    if n_data <= n_params:
        raise DomainError(f"need n_data > n_params, got {n_data} <= {n_params}")
    if rss < 0.0:
        raise DomainError(f"rss must be >= 0, got {rss}")
    if rss == 0.0:
        return ModelScore(0.0, n_data, n_params, float("-inf"), float("-inf"), True)
    base = n_data * math.log(rss / n_data)
    return ModelScore(
        rss=rss,
        n_data=n_data,
        n_params=n_params,
        aic=base + 2.0 * n_params,
        bic=base + n_params * math.log(n_data),
    )


@dataclass(frozen=True, eq=False)
class TempModelFit:
    params: TempFitParams
    score: ModelScore
    fit: FitResult
    global_errors: dict[str, float]


@dataclass(frozen=True, eq=False)
class TempModelComparison:
    simple: TempModelFit
    piecewise: TempModelFit

    @property
    def delta_aic(self) -> float:
        return self.piecewise.score.aic - self.simple.score.aic


def _flatten(groups):
    freqs = list(groups)
    temps = np.array([r.temperature for f in freqs for r in groups[f]])
    gammas = np.array([r.gamma for f in freqs for r in groups[f]])
    sigmas = np.array([r.sigma_gamma for f in freqs for r in groups[f]])
    owner = np.concatenate(
        [np.full(len(groups[f]), i) for i, f in enumerate(freqs)]
    )
    return freqs, temps, gammas, sigmas, owner


def _fit_gamma1(freqs, temps, gammas, sigmas, owner):
    k = len(freqs)

    def residual(theta):
        g0 = np.exp(theta[:k])[owner]
        t1 = math.exp(theta[k])
        b1 = math.exp(theta[k + 1])
        return (gammas - model_gamma1(temps, g0, t1, b1)) / sigmas

    g0_init = np.array(
        [max(gammas[owner == i].min(), 1e-12) for i in range(k)]
    )
    theta0 = np.concatenate(
        [np.log(g0_init), [math.log(np.median(temps)), math.log(2.0)]]
    )
    return levenberg_marquardt(residual, theta0), residual


def _fit_gamma2(freqs, temps, gammas, sigmas, owner, seed1: FitResult):
    k = len(freqs)

    def residual(theta):
        g0 = np.exp(theta[:k])[owner]
        t1 = math.exp(theta[k])
        b1 = math.exp(theta[k + 1])
        t2 = math.exp(theta[k + 2])
        b2 = math.exp(theta[k + 3])
        ts = theta[k + 4]
        return (gammas - model_gamma2(temps, g0, t1, b1, t2, b2, ts)) / sigmas

    t_lo, t_hi = temps.min(), temps.max()
    span = t_hi - t_lo
    rng = np.random.default_rng(1849)
    best = None
    for s in range(8):
        t_star0 = t_lo + span * (0.35 + 0.45 * s / 7.0)
        theta0 = np.concatenate(
            [
                seed1.params[: k + 2],
                [math.log(0.5 * span), math.log(3.0), t_star0],
            ]
        )
        if s > 0:
            theta0[: k + 2] += rng.normal(0.0, 0.05, k + 2)
            theta0[k + 2] += rng.normal(0.0, 0.3)
            theta0[k + 3] += rng.normal(0.0, 0.3)
        try:
            res = levenberg_marquardt(residual, theta0)
        except Exception:
            continue
        if best is None or res.rss < best.rss:
            best = res
    if best is None:
        raise DomainError("piecewise temperature fit failed from all starts")
    return best, residual


def fit_temperature_models(dataset: HeatingDataset) -> TempModelComparison:
    """Global fits of both temperature models with shared shape parameters.

    Gamma0 is free per frequency set; (T1, beta1) and, for the piecewise
    model, (T2, beta2, T*) are shared across sets.  Both models are scored
    on the same weighted residuals.
    """
    groups = dataset.by_frequency()
    if len(groups) < 1:
        raise DomainError("no frequency groups")
    temps_all = [r.temperature for recs in groups.values() for r in recs]
    if len(set(temps_all)) < 4:
        raise DomainError("need at least 4 distinct temperatures")
    freqs, temps, gammas, sigmas, owner = _flatten(groups)
    k = len(freqs)
    n = temps.size

    res1, _ = _fit_gamma1(freqs, temps, gammas, sigmas, owner)
    params1 = TempFitParams(
        gamma0={f: float(math.exp(res1.params[i])) for i, f in enumerate(freqs)},
        t1=float(math.exp(res1.params[k])),
        beta1=float(math.exp(res1.params[k + 1])),
    )
    err1 = res1.errors()
    global_err1 = {
        "t1": params1.t1 * err1[k],
        "beta1": params1.beta1 * err1[k + 1],
    }
    score1 = information_criteria(res1.rss, n, k + 2)

    res2, _ = _fit_gamma2(freqs, temps, gammas, sigmas, owner, res1)
    t_star = float(res2.params[k + 4])
    params2 = TempFitParams(
        gamma0={f: float(math.exp(res2.params[i])) for i, f in enumerate(freqs)},
        t1=float(math.exp(res2.params[k])),
        beta1=float(math.exp(res2.params[k + 1])),
        t2=float(math.exp(res2.params[k + 2])),
        beta2=float(math.exp(res2.params[k + 3])),
        t_star=t_star,
    )
    if not temps.min() <= t_star <= temps.max():
        warnings.warn(
            f"T* = {t_star:.1f} K lies outside the data range "
            f"[{temps.min():.1f}, {temps.max():.1f}] K",
            FitRangeWarning,
            stacklevel=2,
        )
    err2 = res2.errors()
    global_err2 = {
        "t1": params2.t1 * err2[k],
        "beta1": params2.beta1 * err2[k + 1],
        "t2": params2.t2 * err2[k + 2],
        "beta2": params2.beta2 * err2[k + 3],
        "t_star": err2[k + 4],
    }
    score2 = information_criteria(res2.rss, n, k + 5)

    return TempModelComparison(
        simple=TempModelFit(params1, score1, res1, global_err1),
        piecewise=TempModelFit(params2, score2, res2, global_err2),
    )


def plateau_width(params: TempFitParams, tolerance_frac: float) -> float:
    """Width over which the upper branch rises by at most tolerance_frac."""
    if not params.piecewise:
        raise DomainError("plateau width requires the piecewise model")
    if tolerance_frac <= 0.0:
        raise DomainError(f"tolerance must be > 0, got {tolerance_frac}")
    return params.t2 * tolerance_frac ** (1.0 / params.beta2)


# ---------------------------------------------------------------------------
# surface-noise offset models


@dataclass(frozen=True)
class SurfaceModelFit:
    kind: str
    params: dict[str, float]
    errors: dict[str, float]
    chi2: float
    chi2_red: float
    p_value: float

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        p = self.params
        if self.kind == "power":
            return p["s_e0"] * (1.0 + t / p["t0"]) ** p["beta"]
        return p["s_e0"] + p["s_et"] * np.exp(-p["t0"] / t)


@dataclass(frozen=True)
class SurfaceFitParams:
    power: SurfaceModelFit
    arrhenius: SurfaceModelFit


def _surface_fit(kind, temps, s_e, sigmas) -> SurfaceModelFit:
    n = temps.size

    if kind == "power":

        def model(theta):
            return np.exp(theta[0]) * (1.0 + temps / math.exp(theta[2])) ** theta[1]

        slope0 = (math.log(s_e[-1] / s_e[0])) / math.log(
            (1.0 + temps[-1] / np.median(temps)) / (1.0 + temps[0] / np.median(temps))
        )
        theta0 = np.array(
            [math.log(s_e.min()), max(slope0, 0.5), math.log(np.median(temps))]
        )
        names = ("s_e0", "beta", "t0")

        def unpack(theta):
            return {
                "s_e0": math.exp(theta[0]),
                "beta": theta[1],
                "t0": math.exp(theta[2]),
            }

        def grads(theta):
            return np.array([math.exp(theta[0]), 1.0, math.exp(theta[2])])

    else:

        def model(theta):
            return np.exp(theta[0]) + np.exp(theta[1]) * np.exp(
                -math.exp(theta[2]) / temps
            )

        theta0 = np.array(
            [
                math.log(max(s_e.min(), 1e-300)),
                math.log(max(s_e.max() - 0.9 * s_e.min(), 1e-300))
                + (temps.max() - temps.min()) / temps.max(),
                math.log(temps.max()),
            ]
        )
        names = ("s_e0", "s_et", "t0")

        def unpack(theta):
            return {
                "s_e0": math.exp(theta[0]),
                "s_et": math.exp(theta[1]),
                "t0": math.exp(theta[2]),
            }

        def grads(theta):
            return np.exp(theta)

    def residual(theta):
        return (s_e - model(theta)) / sigmas

    res = levenberg_marquardt(residual, theta0)
    params = unpack(res.params)
    scale = grads(res.params)
    cov = res.covariance * np.outer(scale, scale)
    errors = {nm: float(np.sqrt(max(cov[i, i], 0.0))) for i, nm in enumerate(names)}
    dof = n - 3
    chi2 = res.rss
    return SurfaceModelFit(
        kind=kind,
        params=params,
        errors=errors,
        chi2=chi2,
        chi2_red=chi2 / dof,
        p_value=float(stats.chi2.sf(chi2, dof)),
    )


def fit_surface_models(curve) -> SurfaceFitParams:
    """Fit both surface-noise models S_E(T) and score each against chi^2."""
    pts = sorted((float(t), float(s), float(sg)) for t, s, sg in curve)
    if len(pts) < 5:
        raise DomainError(f"need at least 5 points, got {len(pts)}")
    temps = np.array([p[0] for p in pts])
    s_e = np.array([p[1] for p in pts])
    sigmas = np.array([p[2] for p in pts])
    if np.any(s_e <= 0.0) or np.any(sigmas <= 0.0):
        raise DomainError("S_E and sigma must be > 0")
    return SurfaceFitParams(
        power=_surface_fit("power", temps, s_e, sigmas),
        arrhenius=_surface_fit("arrhenius", temps, s_e, sigmas),
    )


# ---------------------------------------------------------------------------
# spline slope and TAF


@dataclass(frozen=True, eq=False)
class SlopeCurve:
    """d ln S_E / d ln T with a residual-bootstrap confidence band."""

    spline: SmoothingSpline
    boot_splines: tuple[SmoothingSpline, ...]

    def __call__(self, t):
        return self.spline.derivative(np.log(t))

    def band(self, t, lo_pct: float = 16.0, hi_pct: float = 84.0):
        if not self.boot_splines:
            val = self(t)
            return val, val
        samples = np.array(
            [sp.derivative(np.log(t)) for sp in self.boot_splines]
        )
        return (
            np.percentile(samples, lo_pct, axis=0),
            np.percentile(samples, hi_pct, axis=0),
        )


def loglog_spline_slope(
    curve, n_boot: int = 200, seed: int = 7041, lam: float | None = None
) -> SlopeCurve:
    """Smoothing-spline slope of ln S_E versus ln T.

    The smoothing parameter comes from GCV unless given; the band is a
    residual bootstrap refit at the selected smoothing.
    """
    pts = sorted((float(t), float(s), float(sg)) for t, s, sg in curve)
    if len(pts) < 4:
        raise DomainError(f"need at least 4 points, got {len(pts)}")
    t = np.array([p[0] for p in pts])
    s = np.array([p[1] for p in pts])
    sg = np.array([p[2] for p in pts])
    if np.any(t <= 0.0) or np.any(s <= 0.0):
        raise DomainError("T and S_E must be > 0 for log-log analysis")
    x = np.log(t)
    y = np.log(s)
    sig_y = sg / s

    spline = fit_smoothing_spline(x, y, sig_y, lam=lam)
    fitted = spline(x)
    resid = y - fitted

    rng = np.random.default_rng(seed)
    boots = []
    for _ in range(n_boot):
        y_star = fitted + rng.choice(resid, size=resid.size, replace=True)
        boots.append(fit_smoothing_spline(x, y_star, sig_y, lam=spline.lam))
    return SlopeCurve(spline=spline, boot_splines=tuple(boots))


def taf_alpha(slope: float, omega: float, tau0: float = 1e-13) -> float:
    """Frequency exponent predicted from the temperature slope.

    The thermally-activated-fluctuator relation gives the exponent in the
    S propto omega^(-alpha_DH) convention; the returned value is -alpha_DH
    so it compares directly with the measured alpha of the convention
    Gamma propto omega^(alpha-1), i.e. S_E propto omega^alpha, where
    roughly-1/f field noise appears as alpha near -1.
    """
    if omega <= 0.0 or tau0 <= 0.0:
        raise DomainError("omega and tau0 must be > 0")
    ln_wt = math.log(omega * tau0)
    if abs(ln_wt) < 1.0:
        warnings.warn(
            f"|ln(omega tau0)| = {abs(ln_wt):.3f} < 1: prediction is "
            "ill-conditioned near omega tau0 = 1",
            IllConditionedWarning,
            stacklevel=2,
        )
    alpha_dh = 1.0 - (slope - 1.0) / ln_wt
    return -alpha_dh


def taf_consistency_chi2(measured, predicted) -> tuple[float, float]:
    """chi^2 of measured exponents against a prediction callable(T)."""
    pts = list(measured)
    if len(pts) < 2:
        raise DomainError(f"need at least 2 points, got {len(pts)}")
    chi2 = 0.0
    for alpha, sigma_alpha, temp in pts:
        if sigma_alpha <= 0.0:
            raise DomainError("sigma_alpha must be > 0")
        chi2 += ((alpha - float(predicted(temp))) / sigma_alpha) ** 2
    p = float(stats.chi2.sf(chi2, len(pts)))
    return chi2, p


def jnn_corrected_alpha(fit: FreqPowerLawFit, jnn_level) -> FreqPowerLawFit:
    """Refit the frequency power law after subtracting a Johnson-noise floor.

    ``jnn_level`` is the JNN field-noise density: a callable of omega or a
    constant.  The subtraction happens in S_E units; sigma values carry over.
    """
    level = jnn_level if callable(jnn_level) else (lambda _w: float(jnn_level))
    corrected = []
    for omega, gamma, sigma in fit.points:
        s_tot = noise_from_heating_rate(gamma, omega)
        s_corr = s_tot - float(level(omega))
        if s_corr <= 0.0:
            raise DomainError(
                f"JNN level exceeds total noise at omega = {omega:.4g} rad/s"
            )
        corrected.append((omega, heating_rate_from_noise(s_corr, omega), sigma))
    return fit_freq_power_law(corrected, omega0=fit.omega0)


# ---------------------------------------------------------------------------
# synthetic data


def synth_dataset(
    model: str,
    params: TempFitParams,
    temps,
    freqs,
    noise_frac: float,
    seed: int,
) -> HeatingDataset:
    """Heating-rate records from a temperature model plus relative noise.

    ``model`` is "gamma1" or "gamma2"; sigma is noise_frac times the model
    value (floored at a tiny relative value so records stay valid when
    noise_frac = 0).  Deterministic for fixed seed.
    """
    if model not in ("gamma1", "gamma2"):
        raise DomainError(f"unknown model {model!r}")
    if model == "gamma2" and not params.piecewise:
        raise DomainError("gamma2 requires piecewise parameters")
    if noise_frac < 0.0:
        raise DomainError(f"noise_frac must be >= 0, got {noise_frac}")
    rng = np.random.default_rng(seed)
    records = []
    for f in freqs:
        g0 = params.gamma0[f]
        for t in temps:
            if model == "gamma1":
                value = float(model_gamma1(t, g0, params.t1, params.beta1))
            else:
                value = float(
                    model_gamma2(
                        t, g0, params.t1, params.beta1,
                        params.t2, params.beta2, params.t_star,
                    )
                )
            noisy = value * (1.0 + noise_frac * rng.standard_normal())
            records.append(
                HeatingRecord(
                    temperature=float(t),
                    f_secular=float(f),
                    gamma=max(noisy, 0.0),
                    sigma_gamma=max(noise_frac, 1e-12) * value,
                )
            )
    return HeatingDataset(tuple(records))


def synth_surface(
    kind: str, params: dict[str, float], temps, noise_frac: float, seed: int
):
    """(T, S_E, sigma) tuples from a surface-noise model plus relative noise."""
    if kind not in ("power", "arrhenius"):
        raise DomainError(f"unknown surface model {kind!r}")
    if noise_frac < 0.0:
        raise DomainError(f"noise_frac must be >= 0, got {noise_frac}")
    rng = np.random.default_rng(seed)
    out = []
    for t in temps:
        if kind == "power":
            value = params["s_e0"] * (1.0 + t / params["t0"]) ** params["beta"]
        else:
            value = params["s_e0"] + params["s_et"] * math.exp(-params["t0"] / t)
        noisy = value * (1.0 + noise_frac * rng.standard_normal())
        out.append((float(t), max(noisy, 1e-300), max(noise_frac, 1e-12) * value))
    return out
