"""End-to-end command-line runs through main(argv), including exit codes."""

import json
import math

import pytest

from trapnoise.cli import (
    EXIT_CONFIG,
    EXIT_DATA,
    EXIT_NUMERIC,
    EXIT_OK,
    main,
    parse_grid,
    resolve_configs,
)
from trapnoise.configio import (
    ConfigFileError,
    packaged_config,
    read_csv_manifest,
    read_heating_csv,
)


def read_rows(path):
    """Parse a CLI CSV into a list of dicts keyed by header name."""
    lines = [
        line
        for line in path.read_text().splitlines()
        if line and not line.startswith("#")
    ]
    header = lines[0].split(",")
    return [dict(zip(header, line.split(","))) for line in lines[1:]]


# ---------------------------------------------------------------------------
# argument helpers


def test_parse_grid_forms():
    assert parse_grid("10:40:4") == pytest.approx([10.0, 20.0, 30.0, 40.0])
    assert parse_grid("15,40,60") == pytest.approx([15.0, 40.0, 60.0])
    assert parse_grid("77") == pytest.approx([77.0])
    with pytest.raises(ConfigFileError):
        parse_grid("10:40")  # colon form needs three fields
    with pytest.raises(ConfigFileError):
        parse_grid("10:40:0")
    with pytest.raises(ConfigFileError):
        parse_grid("ten,twenty")


def test_resolve_configs_duplicate_role(tmp_path):
    a = tmp_path / "a.cfg"
    b = tmp_path / "b.cfg"
    a.write_text("[stack]\nname = one\nlayers = vacuum bulk\n")
    b.write_text("[stack]\nname = two\nlayers = vacuum bulk\n")
    with pytest.raises(ConfigFileError):
        resolve_configs([str(a), str(b)], ("stack",))


# ---------------------------------------------------------------------------
# fdt


def test_fdt_vacuum_stack_gives_pure_blackbody(tmp_path):
    cfg = tmp_path / "vac.cfg"
    cfg.write_text(
        "[material:gas]\nkind = vacuum\n\n"
        "[stack]\nname = empty\nlayers = gas bulk\n"
    )
    out = tmp_path / "fdt.csv"
    rc = main(
        ["fdt", "--config", str(cfg), "--temps", "50,150", "--out", str(out)]
    )
    assert rc == EXIT_OK
    rows = read_rows(out)
    assert len(rows) == 2
    for row in rows:
        # an empty half space adds nothing to the blackbody field
        assert float(row["S_E_V2m2Hz"]) == float(row["S_BB_V2m2Hz"])
    assert float(rows[1]["S_BB_V2m2Hz"]) == pytest.approx(
        3.0 * float(rows[0]["S_BB_V2m2Hz"]), rel=1e-12
    )


def test_fdt_temperature_outside_tables_is_numeric_error(tmp_path):
    out = tmp_path / "fdt.csv"
    rc = main(["fdt", "--temps", "400", "--out", str(out)])
    assert rc == EXIT_NUMERIC


# ---------------------------------------------------------------------------
# jnn


def test_jnn_total_row_sums_electrodes(tmp_path):
    out = tmp_path / "jnn.csv"
    rc = main(
        [
            "jnn",
            "--config",
            str(packaged_config("circuits", "ybco-trap")),
            "--temps",
            "20,80",
            "--out",
            str(out),
        ]
    )
    assert rc == EXIT_OK
    rows = read_rows(out)
    for temp in ("20.0", "80.0"):
        at_t = [r for r in rows if r["T_K"] == temp]
        assert len(at_t) == 14  # 13 electrodes + TOTAL
        total = next(r for r in at_t if r["electrode"] == "TOTAL")
        parts = [r for r in at_t if r["electrode"] != "TOTAL"]
        assert float(total["S_E_V2m2Hz"]) == pytest.approx(
            sum(float(r["S_E_V2m2Hz"]) for r in parts), rel=1e-12
        )
        assert float(total["gamma_phps"]) == pytest.approx(
            sum(float(r["gamma_phps"]) for r in parts), rel=1e-12
        )
    # hotter electrodes make more noise
    t20 = next(r for r in rows if r["T_K"] == "20.0" and r["electrode"] == "TOTAL")
    t80 = next(r for r in rows if r["T_K"] == "80.0" and r["electrode"] == "TOTAL")
    assert float(t80["S_E_V2m2Hz"]) > float(t20["S_E_V2m2Hz"])


# ---------------------------------------------------------------------------
# synth and fit


def test_synth_rerun_is_byte_identical(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    for out in (a, b):
        rc = main(
            ["synth", "--model", "gamma2", "--seed", "42", "--out", str(out)]
        )
        assert rc == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    c = tmp_path / "c.csv"
    main(["synth", "--model", "gamma2", "--seed", "43", "--out", str(c)])
    assert a.read_bytes() != c.read_bytes()


def test_fit_temp_prefers_piecewise_on_piecewise_data(tmp_path):
    data = tmp_path / "g2.csv"
    main(["synth", "--model", "gamma2", "--seed", "42", "--out", str(data)])
    report_path = tmp_path / "fit.json"
    rc = main(
        [
            "fit",
            "--data",
            str(data),
            "--model",
            "temp",
            "--seed",
            "42",
            "--out",
            str(report_path),
        ]
    )
    assert rc == EXIT_OK
    report = json.loads(report_path.read_text())
    assert report["schema"] == "trapnoise-report/1"
    assert report["manifest"]["seed"] == 42
    assert report["aic_prefers_piecewise"] is True
    assert report["delta_aic"] < 0.0
    assert report["n_records"] == 54
    fitted = report["piecewise"]["params"]
    assert fitted["t_star_K"] == pytest.approx(92.5, abs=5.0)
    # plateau width computed from the fitted parameters at the requested tol
    assert report["plateau"]["tolerance_frac"] == pytest.approx(0.1)
    assert report["plateau"]["width_K"] == pytest.approx(59.0, abs=6.0)


def test_fit_freq_reports_per_temperature_exponents(tmp_path):
    data = tmp_path / "g2.csv"
    main(["synth", "--model", "gamma2", "--seed", "7", "--out", str(data)])
    report_path = tmp_path / "freq.json"
    rc = main(
        ["fit", "--data", str(data), "--model", "freq", "--out", str(report_path)]
    )
    assert rc == EXIT_OK
    report = json.loads(report_path.read_text())
    fits = report["fits"]
    assert len(fits) == 9  # one per synthesised temperature
    for entry in fits:
        # noise scales roughly like 1/f: alpha near -1, well constrained
        assert -2.0 < entry["alpha"] < 0.0
        assert entry["errors"]["alpha"] < 0.5
        assert entry["n_points"] == 6


def test_fit_surface_distinguishes_models(tmp_path):
    data = tmp_path / "pow.csv"
    main(
        [
            "synth",
            "--model",
            "power",
            "--seed",
            "5",
            "--noise-frac",
            "0.05",
            "--temps",
            "10:290:15",
            "--out",
            str(data),
        ]
    )
    report_path = tmp_path / "surf.json"
    rc = main(
        ["fit", "--data", str(data), "--model", "surface", "--out", str(report_path)]
    )
    assert rc == EXIT_OK
    report = json.loads(report_path.read_text())
    assert report["power"]["p_value"] > report["arrhenius"]["p_value"]
    assert report["power"]["params"]["beta"] == pytest.approx(1.9, abs=0.5)


# ---------------------------------------------------------------------------
# taf


def flat_rate_csv(path):
    rows = "\n".join(
        f"{t},1000000.0,2.0,0.1" for t in (20, 40, 60, 80, 100, 120, 140, 160)
    )
    path.write_text("T_K,f_Hz,gamma_phps,sigma_phps\n" + rows + "\n")


def test_taf_flat_data_predicts_slope_zero_alpha(tmp_path):
    data = tmp_path / "flat.csv"
    flat_rate_csv(data)
    out = tmp_path / "taf.csv"
    rc = main(["taf", "--data", str(data), "--n-boot", "10", "--out", str(out)])
    assert rc == EXIT_OK
    expected = -(1.0 + 1.0 / math.log(2 * math.pi * 1e6 * 1e-13))
    for row in read_rows(out):
        assert abs(float(row["dlnS_dlnT"])) < 1e-6
        assert float(row["alpha_pred"]) == pytest.approx(expected, abs=1e-9)


def test_taf_consistency_comment_line(tmp_path):
    data = tmp_path / "flat.csv"
    flat_rate_csv(data)
    alphas = tmp_path / "alphas.csv"
    alphas.write_text("T_K,alpha,sigma_alpha\n50.0,-1.0,0.1\n80.0,-1.1,0.1\n")
    out = tmp_path / "taf.csv"
    rc = main(
        [
            "taf",
            "--data",
            str(data),
            "--n-boot",
            "5",
            "--alphas",
            str(alphas),
            "--out",
            str(out),
        ]
    )
    assert rc == EXIT_OK
    comment = next(
        line
        for line in out.read_text().splitlines()
        if line.startswith("# taf-consistency:")
    )
    verdict = json.loads(comment.split(":", 1)[1])
    assert verdict["n_points"] == 2
    assert 0.0 <= verdict["p_value"] <= 1.0


# ---------------------------------------------------------------------------
# zeta


def test_zeta_sweep_is_monotone_from_zero(tmp_path):
    out = tmp_path / "zeta.csv"
    rc = main(
        [
            "zeta",
            "--config",
            str(packaged_config("scenes", "ybco-chip")),
            "--f-ratios",
            "0:1:3",
            "--out",
            str(out),
        ]
    )
    assert rc == EXIT_OK
    rows = read_rows(out)
    zetas = [float(r["zeta"]) for r in rows]
    assert zetas[0] == 0.0
    assert zetas == sorted(zetas)
    assert 0.9 < zetas[-1] < 1.0


def test_zeta_unknown_target_is_config_error(tmp_path):
    rc = main(
        [
            "zeta",
            "--config",
            str(packaged_config("scenes", "ybco-chip")),
            "--target",
            "gold",
            "--out",
            str(tmp_path / "z.csv"),
        ]
    )
    assert rc == EXIT_CONFIG


# ---------------------------------------------------------------------------
# failure exit codes and manifest plumbing


def test_missing_data_file_exits_data(tmp_path):
    rc = main(
        [
            "fit",
            "--data",
            str(tmp_path / "absent.csv"),
            "--model",
            "temp",
            "--out",
            str(tmp_path / "r.json"),
        ]
    )
    assert rc == EXIT_DATA


def test_unknown_config_section_exits_config(tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("[mystery]\nx = 1\n")
    rc = main(
        ["fdt", "--config", str(bad), "--temps", "50", "--out", str(tmp_path / "o.csv")]
    )
    assert rc == EXIT_CONFIG


def test_manifest_records_grid_overrides(tmp_path):
    out = tmp_path / "synth.csv"
    main(
        [
            "synth",
            "--model",
            "gamma1",
            "--seed",
            "3",
            "--temps",
            "20,60,100,140",
            "--out",
            str(out),
        ]
    )
    manifest = read_csv_manifest(out)
    assert manifest["seed"] == 3
    assert manifest["overrides"]["temps"] == "20,60,100,140"
    assert manifest["overrides"]["model"] == "gamma1"
    # and the dataset reflects the override
    dataset = read_heating_csv(out)
    assert sorted({r.temperature for r in dataset.records}) == [
        20.0,
        60.0,
        100.0,
        140.0,
    ]
