"""End-to-end report assembly, artifact determinism, figures and the CLI."""

import json
import xml.etree.ElementTree as ET
from dataclasses import replace

import pytest

import renewcast as rc
from renewcast import corpus
from renewcast import report as report_mod
from renewcast.cli import main
from renewcast.errors import ConfigInvalid, MissingFit
from renewcast.resourcebudget import DiscrepancyRow


# -- report shape ----------------------------------------------------------------

def test_crossing_entries_for_all_four_thresholds(default_report):
    names = {c.threshold for c in default_report.crossings}
    assert names == {"electric_fig5", "electric_2030", "reduced_primary_2030",
                     "primary_fig5"}
    # pv alone + 2 combos x 3 wind treatments, per threshold
    for name in names:
        entries = [c for c in default_report.crossings if c.threshold == name]
        assert len(entries) == 7


def test_both_demand_variants_labelled(default_report):
    levels = {c.threshold: c.level_twh for c in default_report.crossings}
    assert levels["electric_fig5"] == 33000.0
    assert levels["electric_2030"] == 35000.0


def test_wind_treatment_ordering(default_report):
    # the rebound projection continues the steep early regime, so it crosses
    # first; the post-changepoint segment crosses last
    def year(treatment):
        return default_report.crossing_for("electric_fig5", "wind_pv",
                                           treatment).year
    assert year("rebound") < year("trend") < year("piecewise")


def test_report_json_schema(default_report):
    doc = json.loads(report_mod.report_json(default_report))
    assert doc["schema_version"] == 1
    for key in ("config", "fits", "crossings", "mixes", "learning", "budget",
                "discrepancies", "claims", "warnings"):
        assert key in doc
    assert doc["config"]["wind_treatment"] == "trend"
    assert doc["fits"]["wind_piecewise"]["regime_change"] is True
    assert set(doc["mixes"]) == {"2025", "2030"}


def test_report_claims_table(default_report):
    claims = {c.name: c for c in default_report.claims}
    assert claims["pv_overtakes_wind"].stated_year == 2024.0
    assert claims["offshore_reaches_1tw"].computed_year == pytest.approx(
        2032.5, abs=0.5)
    both = {claims["pv_alone_meets_electric_fig5"].computed_year,
            claims["pv_alone_meets_electric_fig5_alt"].computed_year}
    assert len(both) == 1  # same computed year confronted with both stated years


def test_rebound_far_extrapolations_flagged(default_report):
    # the rebound line's window ends in 2009, so crossings beyond 2024
    # extrapolate more than 15 years past it
    flagged = [c for c in default_report.crossings
               if c.wind_treatment == "rebound" and c.year is not None
               and c.year > 2024.0]
    assert flagged and all(c.horizon_warning for c in flagged)
    trend_near = [c for c in default_report.crossings
                  if c.wind_treatment == "trend" and c.year is not None
                  and c.year < 2034.0]
    assert trend_near and not any(c.horizon_warning for c in trend_near)
    assert any("past its window" in w for w in default_report.warnings)


def test_below_floor_cost_warning(tmp_path):
    # steeper fictional PV cost decline pushes the modelled cost at the
    # stated 2030 generation under the 1 USD/MWh floor and must be flagged
    data = tmp_path / "data"
    data.mkdir()
    for name, fname in corpus.BUNDLED_DATASETS.items():
        if name == "offshore_depth":
            continue
        src = corpus.bundled_path(name)
        (data / fname).write_text(src.read_text(encoding="utf-8"),
                                  encoding="utf-8")
    (data / "pv_lcoe_usd_mwh.csv").write_text(
        "# fictional steep decline\n"
        "# technology: pv\n# kind: unit_cost\n# unit: USD_per_MWh\n"
        "2009,359.0\n2011,120.0\n2013,40.0\n2015,14.0\n2017,7.0\n2019,4.0\n",
        encoding="utf-8",
    )
    rep = rc.run_scenario(replace(rc.ScenarioConfig(), data_dir=str(data)))
    assert rep.learning["pv_cost_at_stated_2030_generation_usd_per_mwh"] < 1.0
    assert any("below the stated" in w for w in rep.warnings)


def test_horizon_2024_not_reached():
    config = replace(rc.ScenarioConfig(), horizon=2024.0)
    rep = rc.run_scenario(config)
    entries = [c for c in rep.crossings if c.threshold == "primary_fig5"]
    assert entries and all(c.status == "not_reached" for c in entries)


def test_invalid_horizon_rejected():
    with pytest.raises(ConfigInvalid):
        rc.run_scenario(replace(rc.ScenarioConfig(), horizon=2015.0))


def test_unknown_threshold_rejected():
    with pytest.raises(ConfigInvalid):
        rc.ScenarioConfig(thresholds=("electric_fig5", "nope")).validate()


# -- determinism ------------------------------------------------------------------

def test_outputs_byte_identical_across_runs(tmp_path, default_report):
    first = tmp_path / "run1"
    second = tmp_path / "run2"
    rc.write_outputs(default_report, first)
    rc.write_outputs(rc.run_scenario(rc.ScenarioConfig()), second)
    names = sorted(p.name for p in first.iterdir())
    assert names == sorted(p.name for p in second.iterdir())
    for name in names:
        assert (first / name).read_bytes() == (second / name).read_bytes(), name


def test_every_csv_number_exists_in_json(tmp_path, default_report):
    out = tmp_path / "run"
    rc.write_outputs(default_report, out)
    doc = json.loads((out / "report.json").read_text(encoding="utf-8"))

    reprs = set()

    def walk(node):
        if isinstance(node, dict):
            for v in node.values():
                walk(v)
        elif isinstance(node, list):
            for v in node:
                walk(v)
        elif isinstance(node, float):
            reprs.add(repr(node))
        elif isinstance(node, (int, bool)):
            reprs.add(repr(float(node)))

    walk(doc)

    numeric_columns = {
        "crossings.csv": ("level_twh_per_year", "year"),
        "mixes.csv": ("generation_twh_per_year", "share_pct"),
        "discrepancies.csv": ("stated", "computed", "relative_deviation"),
        "claims.csv": ("stated_year", "computed_year", "delta_years"),
        "budget.csv": ("value",),
    }
    for fname, columns in numeric_columns.items():
        lines = (out / fname).read_text(encoding="utf-8").splitlines()
        header = lines[0].split(",")
        idx = [header.index(c) for c in columns]
        for line in lines[1:]:
            cells = line.split(",")
            for i in idx:
                cell = cells[i]
                if cell == "":
                    continue
                assert repr(float(cell)) in reprs, (fname, header[i], cell)


def test_discrepancy_text_table(default_report):
    text = rc.emit_discrepancies(default_report.discrepancies)
    lines = text.splitlines()
    assert lines[0].startswith("name")
    assert len(lines) == len(default_report.discrepancies) + 1
    # sorted by |relative deviation| descending
    devs = [abs(float(line.split()[3])) for line in lines[1:]]
    assert devs == sorted(devs, reverse=True)


def test_discrepancy_table_empty_is_header_only():
    assert rc.emit_discrepancies([]).splitlines() == [
        rc.emit_discrepancies([]).splitlines()[0]]


def test_discrepancy_rows_keep_full_precision(default_report):
    text = rc.emit_discrepancies(default_report.discrepancies)
    row = next(r for r in default_report.discrepancies
               if r.name == "pv_area_electric_2030_km2")
    assert repr(row.computed) in text


# -- figures ----------------------------------------------------------------------

def test_all_figures_well_formed(default_report):
    for fig_id in report_mod.FIGURE_IDS:
        svg = rc.emit_figure(default_report, fig_id)
        root = ET.fromstring(svg)
        assert root.tag.endswith("svg")


def test_fig5_log_ordinate_and_three_thresholds(default_report):
    svg = rc.emit_figure(default_report, "fig5")
    assert svg.count('stroke-dasharray="3 3"') == 3
    for label in ("electricity demand (33000 TWh/yr)",
                  "reduced primary demand (106950 TWh/yr)",
                  "primary demand (198000 TWh/yr)"):
        assert label in svg
    # decade ticks of a log ordinate
    for tick in (">10<", ">1000<", ">1e5<"):
        assert tick in svg


def test_fig8_bilog_with_crossing(default_report):
    svg = rc.emit_figure(default_report, "fig8")
    assert "crossing at" in svg
    assert svg.count("stroke-dasharray") >= 4  # two fitted lines + two vlines
    assert ">100<" in svg and ">10000<" in svg  # decade ticks on the abscissa


def test_unknown_figure_id(default_report):
    with pytest.raises(MissingFit) as err:
        rc.emit_figure(default_report, "fig99")
    assert "fig5" in str(err.value) and "appfig6" in str(err.value)


# -- config file -------------------------------------------------------------------

def test_parse_config_roundtrip(tmp_path):
    path = tmp_path / "scenario.conf"
    path.write_text(
        "# comment line\n"
        "horizon = 2045\n"
        "wind_treatment = piecewise\n"
        "pv_window = 2005:2019\n"
        "hydro_window = :\n"
        "mix_years = 2024, 2031\n"
        "cf_pv = 0.22\n"
        "thresholds = electric_fig5, primary_fig5\n",
        encoding="utf-8",
    )
    config = rc.parse_config(path)
    assert config.horizon == 2045.0
    assert config.wind_treatment == "piecewise"
    assert config.pv_window == (2005.0, 2019.0)
    assert config.hydro_window == (None, None)
    assert config.mix_years == (2024.0, 2031.0)
    assert config.cf_pv == 0.22
    assert config.thresholds == ("electric_fig5", "primary_fig5")


def test_parse_config_rejects_unknown_key(tmp_path):
    path = tmp_path / "bad.conf"
    path.write_text("fuzz = 1\n", encoding="utf-8")
    with pytest.raises(ConfigInvalid):
        rc.parse_config(path)


def test_parse_config_rejects_bad_value(tmp_path):
    path = tmp_path / "bad.conf"
    path.write_text("horizon = soon\n", encoding="utf-8")
    with pytest.raises(ConfigInvalid):
        rc.parse_config(path)


def test_missing_config_file():
    with pytest.raises(ConfigInvalid):
        rc.parse_config("/nonexistent/scenario.conf")


# -- CLI ----------------------------------------------------------------------------

def test_cli_report_writes_artifacts(tmp_path, capsys):
    code = main(["--out", str(tmp_path / "out"), "report"])
    assert code == 0
    out = tmp_path / "out"
    for name in ("report.json", "crossings.csv", "mixes.csv", "budget.csv",
                 "discrepancies.csv", "claims.csv", "fig5.svg", "appfig6.svg"):
        assert (out / name).is_file(), name
    assert "wrote" in capsys.readouterr().out


def test_cli_fit_prints_parameters(capsys):
    assert main(["fit", "pv"]) == 0
    captured = capsys.readouterr().out
    assert "ln_slope" in captured and "doubling_time_years" in captured


def test_cli_cross_lists_all_variants(capsys):
    assert main(["cross", "--threshold", "electric_fig5"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 7
    assert any(line.startswith("electric_fig5,wind_pv,trend,crossed,")
               for line in lines)


def test_cli_mix_shares(capsys):
    assert main(["mix", "--year", "2030"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 3
    shares = [float(line.split(",")[2]) for line in lines]
    assert sum(shares) == pytest.approx(100.0, abs=1e-9)


def test_cli_budget_prints_discrepancies(capsys):
    assert main(["budget"]) == 0
    captured = capsys.readouterr().out
    assert "relative_deviation" in captured
    assert "area_electric_2030_km2" in captured


def test_cli_figures_single(tmp_path, capsys):
    assert main(["--out", str(tmp_path), "figures", "--id", "fig8"]) == 0
    assert (tmp_path / "fig8.svg").is_file()


def test_cli_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.conf"
    bad.write_text("nope = 1\n", encoding="utf-8")
    assert main(["--config", str(bad), "report"]) == 2

    empty_dir = tmp_path / "empty"
    empty_dir.mkdir()
    conf = tmp_path / "data.conf"
    conf.write_text(f"data_dir = {empty_dir}\n", encoding="utf-8")
    assert main(["--config", str(conf), "report"]) == 3

    assert main(["project", "hydro", "--year", "1900"]) == 4
    assert main(["--out", str(tmp_path), "figures", "--id", "fig99"]) == 4
    capsys.readouterr()


def test_cli_horizon_override(capsys):
    assert main(["--horizon", "2024", "cross", "--threshold", "primary_fig5"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert all(",not_reached," in line for line in lines)


def test_crossing_for_missing_entry(default_report):
    with pytest.raises(MissingFit):
        default_report.crossing_for("electric_fig5", "wind_pv", "bogus")


def test_discrepancy_row_type():
    row = DiscrepancyRow("x", 1.0, 2.0, -0.5, "someone 2020")
    assert row.relative_deviation == -0.5
