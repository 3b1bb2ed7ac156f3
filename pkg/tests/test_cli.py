"""Command-line interface: reports, determinism, exit codes."""

import csv
import json

import pytest

from macrocoh.cli import main

ZERO_SCENARIO = """\
label: zero decoherence
particle:
  radius_nm: 90.0
  density_kg_m3: 2201.0
  permittivity_trap: {real: 2.1, imag: 2.5e-10}
  permittivity_bb: {real: 2.1, imag: 0.57}
environment:
  temperature_K: 0.0
  pressure_Pa: 0.0
  gas_mass_amu: 2.0
trap:
  wavelength_nm: 1064.0
  power_W: 0.1
  waist_um: 10.0
  internal_temperature_K: 0.0
"""

BROKEN_SCENARIO = """\
label: broken
particle:
  radius_nm: 90.0
  density_kg_m3: 2201.0
  permittivity_trap: {real: 2.1, imag: 2.5e-10}
  permittivity_bb: {real: 2.1, imag: 0.57}
environment:
  pressure_Pa: 1.0e-12
  gas_mass_amu: 2.0
trap:
  wavelength_nm: 1064.0
  power_W: 0.1
  waist_um: 10.0
  internal_temperature_K: 98.0
"""


def read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def value_map(path):
    return {row["quantity"]: row for row in read_rows(path)}


# ------------------------------------------------------ decoherence-report

def test_decoherence_report_baseline(tmp_path, capsys):
    out = tmp_path / "deco.csv"
    assert main(["decoherence-report", "--out", str(out)]) == 0
    values = value_map(out)
    assert float(values["ced"]["value"]) < 175e-9
    emit = float(values["lambda_bb_emit"]["value"])
    total = float(values["lambda_total"]["value"])
    assert emit / total > 0.99
    assert values["cet"]["unit"] == "s"
    manifest = json.loads((tmp_path / "deco.csv.manifest.json").read_text())
    assert manifest["command"] == "decoherence-report"
    assert str(out) in manifest["outputs"]


def test_decoherence_report_infinite_marker(tmp_path):
    scenario = tmp_path / "zero.yaml"
    scenario.write_text(ZERO_SCENARIO)
    out = tmp_path / "zero.csv"
    assert main(["decoherence-report", "--scenario", str(scenario),
                 "--out", str(out)]) == 0
    values = value_map(out)
    assert values["cet"]["value"] == "inf"
    assert values["ced"]["value"] == "inf"


def test_decoherence_report_missing_field_exit_2(tmp_path, capsys):
    scenario = tmp_path / "broken.yaml"
    scenario.write_text(BROKEN_SCENARIO)
    out = tmp_path / "broken.csv"
    assert main(["decoherence-report", "--scenario", str(scenario),
                 "--out", str(out)]) == 2
    assert "temperature_K" in capsys.readouterr().err
    assert not out.exists()


def test_decoherence_report_unknown_preset_exit_2(tmp_path, capsys):
    assert main(["decoherence-report", "--preset", "nope",
                 "--out", str(tmp_path / "x.csv")]) == 2


def test_decoherence_report_deterministic_bytes(tmp_path):
    out_a = tmp_path / "a.csv"
    out_b = tmp_path / "b.csv"
    assert main(["decoherence-report", "--out", str(out_a)]) == 0
    assert main(["decoherence-report", "--out", str(out_b)]) == 0
    assert out_a.read_bytes() == out_b.read_bytes()


# ------------------------------------------------------------- testability

def test_testability_minimal_run(tmp_path):
    out = tmp_path / "sweep.csv"
    assert main(["testability", "--points", "2", "--models", "csl",
                 "--out", str(out)]) == 0
    rows = read_rows(out)
    assert len(rows) == 2
    assert "ced_csl_m" in rows[0] and "violated_csl" in rows[0]


def test_testability_baseline_intervals_nonempty_for_csl(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    intervals = tmp_path / "intervals.csv"
    assert main(["testability", "--preset", "fig2_baseline",
                 "--models", "csl,qg", "--points", "15",
                 "--out", str(out), "--intervals-out", str(intervals)]) == 0
    spans = read_rows(intervals)
    assert any(row["model"] == "csl" for row in spans)
    stdout = capsys.readouterr().out
    assert "ced_qg" in stdout  # highlight row echoes every model


def test_testability_deterministic_bytes(tmp_path):
    args = ["testability", "--points", "6", "--models", "csl,dp"]
    out_a = tmp_path / "a.csv"
    out_b = tmp_path / "b.csv"
    assert main(args + ["--out", str(out_a)]) == 0
    assert main(args + ["--out", str(out_b)]) == 0
    assert out_a.read_bytes() == out_b.read_bytes()


def test_testability_unknown_model_exit_2(tmp_path, capsys):
    assert main(["testability", "--models", "csl,unknown",
                 "--out", str(tmp_path / "x.csv")]) == 2
    assert "unknown" in capsys.readouterr().err


# ----------------------------------------------------------- vacuum-report

def test_vacuum_report_reproduces_collision_rates(tmp_path):
    out = tmp_path / "vac.csv"
    assert main(["vacuum-report", "--sphere-radius", "2e-7",
                 "--out", str(out)]) == 0
    rows = {row["material"]: row for row in read_rows(out)}
    expected = {"cfrp": 603.0, "kapton": 113.0, "adhesives": 3896.0}
    for name, rate in expected.items():
        assert float(rows[name]["collision_rate_per_s"]) == pytest.approx(
            rate, rel=0.01)


def test_vacuum_report_time_decays_outgassing(tmp_path):
    fresh = tmp_path / "t0.csv"
    aged = tmp_path / "t1.csv"
    assert main(["vacuum-report", "--out", str(fresh)]) == 0
    assert main(["vacuum-report", "--time", "7.2e6", "--out", str(aged)]) == 0
    fresh_rows = {r["material"]: r for r in read_rows(fresh)}
    aged_rows = {r["material"]: r for r in read_rows(aged)}
    for name in fresh_rows:
        assert (float(aged_rows[name]["mass_loss_rate_kg_s"])
                < float(fresh_rows[name]["mass_loss_rate_kg_s"]))


def test_vacuum_report_optional_columns(tmp_path):
    out = tmp_path / "vac.csv"
    assert main(["vacuum-report", "--patch-diameter", "1e-3",
                 "--distance", "0.1", "--cold-temperature", "30",
                 "--out", str(out)]) == 0
    rows = read_rows(out)
    assert float(rows[0]["dilution_factor"]) == pytest.approx(3.927e-5,
                                                              rel=1e-3)
    assert float(rows[0]["attenuation_at_10_Eroom"]) == pytest.approx(
        3.86e39, rel=1e-2)


def test_vacuum_report_unknown_material_exit_2(tmp_path, capsys):
    assert main(["vacuum-report", "--material", "wood",
                 "--out", str(tmp_path / "x.csv")]) == 2


# ---------------------------------------------------------- mission-report

def test_mission_report_defaults(tmp_path):
    out = tmp_path / "mission.csv"
    assert main(["mission-report", "--out", str(out)]) == 0
    values = value_map(out)
    assert float(values["orbital_period_days"]["computed"]) == pytest.approx(
        22.0, rel=0.05)
    assert float(values["perigee_gravity_g_fraction"]["computed"]) == \
        pytest.approx(0.4, rel=0.05)
    assert float(values["perigee_window_minutes"]["computed"]) == \
        pytest.approx(20.2, rel=0.10)
    assert float(values["budget_mission_dry_total"]["computed"]) == 544.0
    assert values["budget_mission_dry_total"]["target"] == "544.0"
    # thruster rows carry both the model result and the design claim
    spread = values["thruster_position_spread_10s"]
    assert float(spread["computed"]) > float(spread["target"])


def test_mission_report_flags_budget_mismatch(tmp_path, capsys):
    budgets = tmp_path / "budgets.yaml"
    budgets.write_text(
        "mass_budgets:\n"
        "  broken:\n"
        "    unit: kg\n"
        "    items: {a: 97.0, b: 237.0, c: 211.0}\n"
        "    declared_total: 544.0\n"
        "power_budgets: {}\n")
    out = tmp_path / "mission.csv"
    assert main(["mission-report", "--budgets", str(budgets),
                 "--out", str(out)]) == 1
    assert "delta" in capsys.readouterr().err
    values = value_map(out)
    assert float(values["budget_broken_total"]["computed"]) == 545.0


def test_mission_report_empty_ledger_exit_2(tmp_path, capsys):
    budgets = tmp_path / "budgets.yaml"
    budgets.write_text(
        "mass_budgets:\n"
        "  hollow:\n"
        "    unit: kg\n"
        "    items: {}\n"
        "    declared_total: 0.0\n"
        "power_budgets: {}\n")
    assert main(["mission-report", "--budgets", str(budgets),
                 "--out", str(tmp_path / "x.csv")]) == 2


def test_csv_headers_declare_units(tmp_path):
    deco = tmp_path / "deco.csv"
    vac = tmp_path / "vac.csv"
    mission = tmp_path / "mission.csv"
    assert main(["decoherence-report", "--out", str(deco)]) == 0
    assert main(["vacuum-report", "--out", str(vac)]) == 0
    assert main(["mission-report", "--out", str(mission)]) == 0
    assert deco.read_text().splitlines()[0] == "quantity,value,unit"
    assert mission.read_text().splitlines()[0] == "quantity,computed,target,unit"
    vac_header = vac.read_text().splitlines()[0]
    assert "gamma0_per_m2_s" in vac_header and "pressure_mbar" in vac_header
