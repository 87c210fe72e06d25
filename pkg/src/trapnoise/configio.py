"""Configuration files, dataset CSV I/O, and the run manifest.

Config files are INI-style (:mod:`configparser`), with one section per
object.  Section names are namespaced so several roles can share one file:

* ``[material:NAME]``  -- material models (see :func:`load_materials`)
* ``[stack]``          -- a layer stack, top to bottom (:func:`load_stack`)
* ``[filter:NAME]``, ``[lead:NAME]``, ``[electrode:NAME]`` -- a circuit
  inventory (:func:`load_circuit`)
* ``[scene]``, ``[region:NAME]`` -- a patch scene (:func:`load_scene`)
* ``[temp-model]``, ``[surface-model]`` -- synthetic-data parameters

Dimensioned keys carry their unit as a suffix (``_m``, ``_K``, ``_ohm``,
``_hz``); resistivity tables are multiline ``T_K  rho_ohm_m`` pairs.

Dataset CSVs use the fixed schema ``T_K,f_Hz,gamma_phps,sigma_phps`` with a
mandatory header row; lines starting with ``#`` are comments.  Every file
this package writes embeds a :class:`RunManifest` -- as a ``# manifest:``
comment line in CSVs and as a top-level ``"manifest"`` field in JSON
reports -- so outputs are traceable and reruns byte-identical.
"""

from __future__ import annotations

import configparser
import json
import math
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path

import numpy as np

from .constants import CONSTANTS, DomainError
from .inference import HeatingDataset, HeatingRecord, TempFitParams
from .layers import Layer, LayerStack
from .materials import (
    Conductor,
    LossyDielectric,
    MaterialModel,
    ResistivityTable,
    SCSheetSpec,
    TwoFluidSC,
    Vacuum,
    ybco_normal_default,
)
from .noise import (
    ElectrodeModel,
    FilterCapacitor,
    FilterNetwork,
    LeadModel,
    RectTrace,
    WireBond,
)
from .patches import PatchScene, PlaneRegion

__all__ = [
    "ConfigFileError",
    "DataFileError",
    "RunManifest",
    "make_manifest",
    "packaged_config",
    "config_roles",
    "load_materials",
    "load_stack",
    "load_circuit",
    "load_scene",
    "load_temp_params",
    "load_surface_params",
    "read_heating_csv",
    "write_heating_csv",
    "write_csv",
    "write_json_report",
    "read_csv_manifest",
    "format_value",
    "HEATING_COLUMNS",
]

HEATING_COLUMNS = ("T_K", "f_Hz", "gamma_phps", "sigma_phps")


class ConfigFileError(ValueError):
    """A configuration file is missing, malformed, or inconsistent."""


class DataFileError(ValueError):
    """A dataset file is malformed; the message carries the line number."""


# ---------------------------------------------------------------------------
# run manifest and serialization


@dataclass(frozen=True)
class RunManifest:
    """Provenance block embedded in every output file.

    Deliberately excludes timestamps and host details so that reruns with
    identical inputs produce byte-identical files.
    """

    command: str
    config_paths: tuple[str, ...] = ()
    overrides: tuple[tuple[str, str], ...] = ()
    seed: int | None = None
    tool_version: str = "unknown"
    constants_fingerprint: str = ""

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "config_paths": list(self.config_paths),
            "overrides": {k: v for k, v in self.overrides},
            "seed": self.seed,
            "tool_version": self.tool_version,
            "constants_fingerprint": self.constants_fingerprint,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, separators=(",", ":"))


def make_manifest(
    command: str,
    config_paths=(),
    overrides=(),
    seed: int | None = None,
) -> RunManifest:
    """Manifest stamped with the package version and constants fingerprint."""
    from . import __version__

    pairs = overrides.items() if isinstance(overrides, dict) else overrides
    return RunManifest(
        command=str(command),
        config_paths=tuple(str(p) for p in config_paths),
        overrides=tuple((str(k), str(v)) for k, v in pairs),
        seed=None if seed is None else int(seed),
        tool_version=__version__,
        constants_fingerprint=CONSTANTS.fingerprint(),
    )


def format_value(value) -> str:
    """Stable text form for CSV cells: shortest round-trip for floats."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, np.integer):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value) or math.isinf(value):
            raise DomainError(f"refusing to serialize non-finite value {value}")
        return repr(value)
    return str(value)


def write_csv(path, manifest: RunManifest, header, rows) -> None:
    """CSV with the manifest as a leading ``# manifest:`` comment line."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# manifest: {manifest.to_json()}\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(format_value(v) for v in row) + "\n")


def _json_default(value):
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    raise TypeError(f"{value!r} is not JSON serializable")


def write_json_report(path, manifest: RunManifest, payload: dict) -> None:
    """JSON report with a schema tag and the manifest as a top-level field."""
    doc = {"schema": "trapnoise-report/1", "manifest": manifest.as_dict()}
    doc.update(payload)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=2, default=_json_default)
        fh.write("\n")


def read_csv_manifest(path) -> dict:
    """Manifest dict parsed back from a CSV written by :func:`write_csv`."""
    with open(path, encoding="utf-8") as fh:
        first = fh.readline()
    prefix = "# manifest: "
    if not first.startswith(prefix):
        raise DataFileError(f"{path}:1: no manifest comment line")
    return json.loads(first[len(prefix):])


# ---------------------------------------------------------------------------
# config plumbing


def packaged_config(category: str, name: str) -> Path:
    """Path of a config shipped with the package, e.g. ('materials', 'default')."""
    base = resources.files("trapnoise").joinpath("data", category, f"{name}.cfg")
    path = Path(str(base))
    if not path.is_file():
        raise ConfigFileError(f"no packaged config data/{category}/{name}.cfg")
    return path


def _read_ini(path) -> configparser.ConfigParser:
    parser = configparser.ConfigParser(
        interpolation=None, inline_comment_prefixes=(";", "#")
    )
    parser.optionxform = str  # keep key case (unit suffixes like _K, _Hz)
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh, source=str(path))
    except OSError as exc:
        raise ConfigFileError(f"cannot read config {path}: {exc}") from exc
    except configparser.Error as exc:
        raise ConfigFileError(f"{path}: {exc}") from exc
    return parser


def config_roles(path) -> set[str]:
    """Which object kinds a config file provides, from its section names."""
    parser = _read_ini(path)
    roles: set[str] = set()
    for section in parser.sections():
        if section.startswith("material:"):
            roles.add("materials")
        elif section == "stack":
            roles.add("stack")
        elif section.startswith(("filter:", "lead:", "electrode:")):
            roles.add("circuit")
        elif section == "scene" or section.startswith("region:"):
            roles.add("scene")
        elif section in ("temp-model", "surface-model"):
            roles.add("params")
        else:
            raise ConfigFileError(f"{path}: unknown section [{section}]")
    return roles


class _Section:
    """One config section with typed getters and leftover-key detection."""

    def __init__(self, path, name: str, proxy):
        self.path = path
        self.name = name
        self._proxy = proxy
        self._seen: set[str] = set()

    def error(self, message: str) -> ConfigFileError:
        return ConfigFileError(f"{self.path}: [{self.name}] {message}")

    def has(self, key: str) -> bool:
        return key in self._proxy

    def raw(self, key: str, default=None, required: bool = False) -> str | None:
        if key not in self._proxy:
            if required:
                raise self.error(f"missing required key '{key}'")
            return default
        self._seen.add(key)
        return self._proxy[key].strip()

    def text(self, key: str, default=None, required: bool = False):
        return self.raw(key, default, required)

    def floatval(self, key: str, default=None, required: bool = False):
        raw = self.raw(key, None, required)
        if raw is None:
            return default
        try:
            return float(raw)
        except ValueError as exc:
            raise self.error(f"{key} = {raw!r} is not a number") from exc

    def intval(self, key: str, default=None, required: bool = False):
        raw = self.raw(key, None, required)
        if raw is None:
            return default
        try:
            return int(raw)
        except ValueError as exc:
            raise self.error(f"{key} = {raw!r} is not an integer") from exc

    def boolval(self, key: str, default: bool = False) -> bool:
        raw = self.raw(key)
        if raw is None:
            return default
        lowered = raw.lower()
        if lowered in ("true", "yes", "on", "1"):
            return True
        if lowered in ("false", "no", "off", "0"):
            return False
        raise self.error(f"{key} = {raw!r} is not a boolean")

    def pair_lines(self, key: str, required: bool = False):
        """Multiline value of whitespace-separated number pairs."""
        raw = self.raw(key, None, required)
        if raw is None:
            return None
        pairs = []
        for line in raw.splitlines():
            parts = line.split()
            if not parts:
                continue
            if len(parts) != 2:
                raise self.error(
                    f"{key}: expected two numbers per line, got {line.strip()!r}"
                )
            try:
                pairs.append((float(parts[0]), float(parts[1])))
            except ValueError as exc:
                raise self.error(f"{key}: bad number in {line.strip()!r}") from exc
        if not pairs:
            raise self.error(f"{key} must contain at least one pair")
        return pairs

    def finish(self) -> None:
        leftover = set(self._proxy.keys()) - self._seen
        if leftover:
            raise self.error(f"unknown keys: {', '.join(sorted(leftover))}")


def _sections(parser, path, prefix: str):
    for name in parser.sections():
        if name.startswith(prefix):
            yield name[len(prefix):], _Section(path, name, parser[name])


def _single_section(parser, path, name: str) -> _Section:
    if name not in parser:
        raise ConfigFileError(f"{path}: missing required section [{name}]")
    return _Section(path, name, parser[name])


# ---------------------------------------------------------------------------
# materials


def _build_material(name: str, sec: _Section) -> MaterialModel:
    kind = sec.text("kind", required=True)
    if kind == "vacuum":
        sec.finish()
        return Vacuum(name=name)
    if kind == "conductor":
        pairs = sec.pair_lines("rho_table", required=True)
        sec.finish()
        return Conductor(
            rho=ResistivityTable.from_pairs(pairs, label=name), name=name
        )
    if kind == "lossy_dielectric":
        eps_r = sec.floatval("eps_r", required=True)
        tan_delta = sec.floatval("tan_delta", 0.0)
        sec.finish()
        return LossyDielectric(eps_r=eps_r, tan_delta=tan_delta, name=name)
    if kind == "two_fluid_sc":
        lambda0 = sec.floatval("lambda0_m", required=True)
        tc = sec.floatval("tc_K", required=True)
        sigma_n = sec.floatval("sigma_n_S_per_m", required=True)
        sheet = SCSheetSpec(
            rs_ref=sec.floatval("sc_rs_ref_ohm", SCSheetSpec.rs_ref),
            omega_ref=2.0 * math.pi * sec.floatval(
                "sc_f_ref_hz", SCSheetSpec.omega_ref / (2.0 * math.pi)
            ),
            rs_residual=sec.floatval("sc_rs_residual_ohm", SCSheetSpec.rs_residual),
        )
        rho_raw = sec.raw("rho_normal", "auto")
        if rho_raw == "auto":
            t_max = sec.floatval("rho_normal_t_max_K", 320.0)
            rho_normal = ybco_normal_default(
                sigma_n=sigma_n, Tc=tc, t_max=t_max
            )
        else:
            pairs = sec.pair_lines("rho_normal")
            rho_normal = ResistivityTable.from_pairs(
                pairs, label=f"{name}-normal"
            )
        sec.finish()
        return TwoFluidSC(
            lambda0=lambda0,
            Tc=tc,
            sigma_n=sigma_n,
            rho_normal=rho_normal,
            sc_sheet=sheet,
            name=name,
        )
    raise sec.error(f"unknown material kind {kind!r}")


def load_materials(path) -> dict[str, MaterialModel]:
    """All ``[material:NAME]`` sections of a config file, keyed by name."""
    parser = _read_ini(path)
    materials: dict[str, MaterialModel] = {}
    for name, sec in _sections(parser, path, "material:"):
        if not name:
            raise sec.error("material name must be non-empty")
        try:
            materials[name] = _build_material(name, sec)
        except (DomainError, ValueError) as exc:
            if isinstance(exc, ConfigFileError):
                raise
            raise sec.error(str(exc)) from exc
    if not materials:
        raise ConfigFileError(f"{path}: no [material:NAME] sections found")
    return materials


def _resolve_material(sec: _Section, materials, name: str) -> MaterialModel:
    if name not in materials:
        known = ", ".join(sorted(materials)) or "none"
        raise sec.error(f"unknown material {name!r} (known: {known})")
    return materials[name]


def _resolve_conductor(sec: _Section, materials, name: str) -> Conductor:
    mat = _resolve_material(sec, materials, name)
    if not isinstance(mat, Conductor):
        raise sec.error(
            f"material {name!r} must be a conductor with a resistivity table"
        )
    return mat


# ---------------------------------------------------------------------------
# stacks


def load_stack(path, materials: dict[str, MaterialModel]) -> LayerStack:
    """The ``[stack]`` section: one ``material thickness_m|bulk`` line per layer."""
    parser = _read_ini(path)
    sec = _single_section(parser, path, "stack")
    name = sec.text("name", Path(path).stem)
    raw = sec.raw("layers", required=True)
    layers = []
    for line in raw.splitlines():
        parts = line.split()
        if not parts:
            continue
        if len(parts) != 2:
            raise sec.error(
                f"layers: expected 'material thickness_m|bulk', got {line.strip()!r}"
            )
        mat = _resolve_material(sec, materials, parts[0])
        if parts[1] == "bulk":
            thickness = None
        else:
            try:
                thickness = float(parts[1])
            except ValueError as exc:
                raise sec.error(f"layers: bad thickness {parts[1]!r}") from exc
        layers.append(Layer(material=mat, thickness=thickness))
    sec.finish()
    if not layers:
        raise sec.error("layers must list at least the bulk layer")
    try:
        return LayerStack(layers=tuple(layers), name=name)
    except DomainError as exc:
        raise sec.error(str(exc)) from exc


# ---------------------------------------------------------------------------
# circuits


def _build_filter(sec: _Section) -> FilterNetwork:
    series_r = sec.floatval("series_r_ohm", required=True)
    caps = []
    raw = sec.raw("capacitors")
    if raw is not None:
        for line in raw.splitlines():
            parts = line.split()
            if not parts:
                continue
            if len(parts) not in (1, 2):
                raise sec.error(
                    f"capacitors: expected 'C_F [esr_ohm]', got {line.strip()!r}"
                )
            try:
                cap = float(parts[0])
                esr = float(parts[1]) if len(parts) == 2 else 0.0
            except ValueError as exc:
                raise sec.error(f"capacitors: bad number in {line.strip()!r}") from exc
            caps.append(FilterCapacitor(capacitance=cap, esr=esr))
    sec.finish()
    return FilterNetwork(series_r=series_r, capacitors=tuple(caps))


def _build_lead(sec: _Section, materials) -> LeadModel:
    trace = None
    raw = sec.raw("trace")
    if raw is not None:
        parts = raw.split()
        if len(parts) != 4:
            raise sec.error(
                "trace: expected 'material width_m thickness_m length_m', "
                f"got {raw!r}"
            )
        trace = RectTrace(
            width=float(parts[1]),
            thickness=float(parts[2]),
            length=float(parts[3]),
            material=_resolve_conductor(sec, materials, parts[0]),
        )
    bond = None
    raw = sec.raw("bond")
    if raw is not None:
        parts = raw.split()
        if len(parts) != 3:
            raise sec.error(
                f"bond: expected 'material diameter_m length_m', got {raw!r}"
            )
        bond = WireBond(
            diameter=float(parts[1]),
            length=float(parts[2]),
            material=_resolve_conductor(sec, materials, parts[0]),
        )
    contact = sec.floatval("contact_r_ohm", 0.0)
    sec.finish()
    return LeadModel(pcb_trace=trace, wire_bond=bond, contact_r_per_bond=contact)


def _parse_films(sec: _Section, materials) -> tuple:
    from .materials import FilmSheet

    raw = sec.raw("films")
    if raw is None:
        return ()
    films = []
    for item in raw.split(","):
        parts = item.split()
        if not parts:
            continue
        if len(parts) != 2:
            raise sec.error(
                f"films: expected 'material thickness_m', got {item.strip()!r}"
            )
        mat = _resolve_material(sec, materials, parts[0])
        try:
            films.append(FilmSheet(material=mat, thickness=float(parts[1])))
        except ValueError as exc:
            raise sec.error(f"films: {exc}") from exc
    return tuple(films)


def load_circuit(path, materials: dict[str, MaterialModel]) -> list[ElectrodeModel]:
    """Electrode inventory from ``[filter:]``/``[lead:]``/``[electrode:]`` sections."""
    parser = _read_ini(path)
    filters = {}
    for name, sec in _sections(parser, path, "filter:"):
        try:
            filters[name] = _build_filter(sec)
        except DomainError as exc:
            raise sec.error(str(exc)) from exc
    leads = {}
    for name, sec in _sections(parser, path, "lead:"):
        try:
            leads[name] = _build_lead(sec, materials)
        except DomainError as exc:
            raise sec.error(str(exc)) from exc

    electrodes: list[ElectrodeModel] = []
    for name, sec in _sections(parser, path, "electrode:"):
        distance = sec.floatval("distance_m", required=True)
        strip_length = sec.floatval("strip_length_m", required=True)
        strip_width = sec.floatval("strip_width_m", required=True)
        films = _parse_films(sec, materials)
        lead_name = sec.text("lead")
        if lead_name is None:
            lead = LeadModel()
        elif lead_name in leads:
            lead = leads[lead_name]
        else:
            raise sec.error(f"unknown lead {lead_name!r}")
        filter_name = sec.text("filter")
        if filter_name is None:
            filt = None
        elif filter_name in filters:
            filt = filters[filter_name]
        else:
            raise sec.error(f"unknown filter {filter_name!r}")
        bonds = sec.intval("bonds", 1)
        if bonds < 1:
            raise sec.error(f"bonds must be >= 1, got {bonds}")
        if bonds > 1:
            if lead.wire_bond is None:
                raise sec.error("bonds > 1 requires a lead with a bond wire")
            lead = replace(
                lead, wire_bond=replace(lead.wire_bond, multiplicity=bonds)
            )
        approximate = sec.boolval("approximate", False)
        copies = sec.intval("copies", 1)
        if copies < 1:
            raise sec.error(f"copies must be >= 1, got {copies}")
        sec.finish()
        names = [name] if copies == 1 else [f"{name}{i}" for i in range(1, copies + 1)]
        for elec_name in names:
            try:
                electrodes.append(
                    ElectrodeModel(
                        name=elec_name,
                        characteristic_distance=distance,
                        strip_length=strip_length,
                        strip_width=strip_width,
                        films=films,
                        lead=lead,
                        filter=filt,
                        approximate=approximate,
                    )
                )
            except DomainError as exc:
                raise sec.error(str(exc)) from exc
    if not electrodes:
        raise ConfigFileError(f"{path}: no [electrode:NAME] sections found")
    return electrodes


# ---------------------------------------------------------------------------
# patch scenes


def load_scene(path) -> PatchScene:
    """Patch scene from a ``[scene]`` section plus ``[region:NAME]`` rectangles."""
    parser = _read_ini(path)
    sec = _single_section(parser, path, "scene")
    height = sec.floatval("ion_height_m", required=True)
    ion_xy = (sec.floatval("ion_x_m", 0.0), sec.floatval("ion_y_m", 0.0))
    ax = sec.floatval("axial_x", 1.0)
    ay = sec.floatval("axial_y", 0.0)
    norm = math.hypot(ax, ay)
    if norm == 0.0:
        raise sec.error("axial direction must be non-zero")
    sec.finish()

    regions = []
    for name, rsec in _sections(parser, path, "region:"):
        raw = rsec.raw("rect_m", required=True)
        parts = raw.split()
        if len(parts) != 4:
            raise rsec.error(f"rect_m: expected 'x0 x1 y0 y1', got {raw!r}")
        try:
            rect = tuple(float(p) for p in parts)
        except ValueError as exc:
            raise rsec.error(f"rect_m: bad number in {raw!r}") from exc
        weight = rsec.floatval("weight", 1.0)
        rsec.finish()
        try:
            regions.append(PlaneRegion(rect=rect, weight=weight, name=name))
        except DomainError as exc:
            raise rsec.error(str(exc)) from exc
    if not regions:
        raise ConfigFileError(f"{path}: no [region:NAME] sections found")
    try:
        return PatchScene(
            regions=tuple(regions),
            ion_height=height,
            ion_xy=ion_xy,
            axial_dir=(ax / norm, ay / norm),
        )
    except DomainError as exc:
        raise ConfigFileError(f"{path}: {exc}") from exc


# ---------------------------------------------------------------------------
# synthetic-model parameter files


def load_temp_params(path) -> TempFitParams:
    """Temperature-model parameters from a ``[temp-model]`` section.

    ``gamma0_phps`` lists one ``f_Hz gamma0`` pair per line; the piecewise
    keys (``t2_K``, ``beta2``, ``t_star_K``) are all-or-none.
    """
    parser = _read_ini(path)
    sec = _single_section(parser, path, "temp-model")
    t1 = sec.floatval("t1_K", required=True)
    beta1 = sec.floatval("beta1", required=True)
    piece = [sec.floatval("t2_K"), sec.floatval("beta2"), sec.floatval("t_star_K")]
    given = [p is not None for p in piece]
    if any(given) and not all(given):
        raise sec.error("t2_K, beta2, t_star_K must be given together")
    pairs = sec.pair_lines("gamma0_phps", required=True)
    sec.finish()
    gamma0 = {}
    for f_hz, g0 in pairs:
        if f_hz in gamma0:
            raise sec.error(f"gamma0_phps: duplicate frequency {f_hz} Hz")
        gamma0[f_hz] = g0
    try:
        return TempFitParams(
            gamma0=gamma0,
            t1=t1,
            beta1=beta1,
            t2=piece[0],
            beta2=piece[1],
            t_star=piece[2],
        )
    except DomainError as exc:
        raise sec.error(str(exc)) from exc


_SURFACE_KEYS = {
    "power": ("s_e0", "beta", "t0_K"),
    "arrhenius": ("s_e0", "s_et", "t0_K"),
}


def load_surface_params(path, kind: str) -> dict[str, float]:
    """Surface-noise model parameters from a ``[surface-model]`` section."""
    if kind not in _SURFACE_KEYS:
        raise ConfigFileError(f"unknown surface model kind {kind!r}")
    parser = _read_ini(path)
    sec = _single_section(parser, path, "surface-model")
    out = {}
    for key in _SURFACE_KEYS[kind]:
        out[key.removesuffix("_K")] = sec.floatval(key, required=True)
    sec.finish()
    return out


# ---------------------------------------------------------------------------
# heating-rate dataset CSV


def read_heating_csv(path) -> HeatingDataset:
    """Dataset from a ``T_K,f_Hz,gamma_phps,sigma_phps`` CSV.

    The header row is mandatory; ``#`` comment lines and blank lines are
    skipped.  Malformed content raises :class:`DataFileError` with the
    offending line number.
    """
    records = []
    header_seen = False
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise DataFileError(f"cannot read data file {path}: {exc}") from exc
    with fh:
        for lineno, line in enumerate(fh, 1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            fields = [f.strip() for f in text.split(",")]
            if not header_seen:
                if tuple(fields) != HEATING_COLUMNS:
                    raise DataFileError(
                        f"{path}:{lineno}: expected header "
                        f"'{','.join(HEATING_COLUMNS)}', got {text!r}"
                    )
                header_seen = True
                continue
            if len(fields) != len(HEATING_COLUMNS):
                raise DataFileError(
                    f"{path}:{lineno}: expected {len(HEATING_COLUMNS)} fields, "
                    f"got {len(fields)}"
                )
            try:
                values = [float(f) for f in fields]
            except ValueError as exc:
                raise DataFileError(f"{path}:{lineno}: {exc}") from exc
            try:
                records.append(
                    HeatingRecord(
                        temperature=values[0],
                        f_secular=values[1],
                        gamma=values[2],
                        sigma_gamma=values[3],
                    )
                )
            except DomainError as exc:
                raise DataFileError(f"{path}:{lineno}: {exc}") from exc
    if not header_seen:
        raise DataFileError(f"{path}: empty file (header row required)")
    if not records:
        raise DataFileError(f"{path}: no data rows")
    return HeatingDataset(tuple(records))


def write_heating_csv(path, dataset: HeatingDataset, manifest: RunManifest) -> None:
    """Dataset CSV in the canonical column order, manifest included."""
    rows = (
        (r.temperature, r.f_secular, r.gamma, r.sigma_gamma)
        for r in dataset.records
    )
    write_csv(path, manifest, HEATING_COLUMNS, rows)
