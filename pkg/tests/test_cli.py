import csv
import io
import json

import pytest

from hulthen.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    body = "\n".join(l for l in text.splitlines() if not l.startswith("#"))
    return list(csv.DictReader(io.StringIO(body)))


def test_constants(capsys):
    code, out, _ = run(capsys, "constants")
    assert code == 0
    assert "0.082305816783797" in out and "0.4990429999" in out
    vals = {r["quantity"]: r["value"] for r in rows(out)}
    assert abs(float(vals["d0_consistency_residual"])) < 1e-9


def test_energy_schemes(capsys):
    _, out, _ = run(capsys, "energy", "2p", "0.025", "--scheme", "present")
    assert rows(out)[0]["binding"] == "0.1127611"
    _, out, _ = run(capsys, "energy", "2p", "0.025", "--scheme", "usual")
    assert rows(out)[0]["binding"] == "0.1128125"


def test_energy_json_and_units(capsys):
    _, out, _ = run(capsys, "energy", "2p", "0.05", "--Z", "2", "--format", "json")
    doc = json.loads(out)
    assert doc["eps"] == pytest.approx(2 / (0.05 * 2) - 1)


def test_energy_no_bound_state(capsys):
    code, out, err = run(capsys, "energy", "2p", "0.600")
    assert code == 4 and out == ""
    assert "delta <= 0.5" in err


@pytest.mark.parametrize(
    "argv,code",
    [
        (("energy", "2x", "0.1"), 2),
        (("energy", "2p", "0.1", "--precision", "30"), 6),
        (("wavefunction", "2p"), 2),
        (("wavefunction", "2p", "0.6"), 5),
        (("table", "1", "--steps", "10", "--with-oracle"), 6),
    ],
)
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_parse_errors_exit_2(capsys):
    for argv in (["bogus"], ["energy", "2p", "-0.1"]):
        with pytest.raises(SystemExit) as info:
            main(argv)
        assert info.value.code == 2
    capsys.readouterr()


def test_table_present_and_aim(capsys):
    code, out, _ = run(capsys, "table", "1", "--columns", "present,usual")
    assert code == 0
    recs = rows(out)
    assert len(recs) == 19
    assert "numerov" not in recs[0]
    assert max(abs(float(r["dev_present"])) for r in recs) <= 5e-8


def test_table_with_oracle_json(capsys):
    code, out, _ = run(capsys, "table", "2", "--with-oracle", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and len(doc["cells"]) == 22
    assert doc["summary"]["max_abs_dev_numerov"] <= 2e-5


def test_table_bad_column(capsys):
    code, _, err = run(capsys, "table", "1", "--columns", "present,foo")
    assert code == 2 and "foo" in err


def test_wavefunction_csv(capsys, tmp_path):
    out_path = tmp_path / "wf.csv"
    code, out, _ = run(capsys, "wavefunction", "2p", "0.1", "--out", str(out_path))
    assert code == 0 and out == ""
    text = out_path.read_text()
    assert "# node_count=0" in text
    assert len(rows(text)) == 2000


def test_wavefunction_nodes_json(capsys):
    _, out, _ = run(capsys, "wavefunction", "3p", "0.05", "--format", "json", "--points", "300")
    assert json.loads(out)["node_count"] == 1


def test_wavefunction_critical(capsys):
    code, out, _ = run(capsys, "wavefunction", "2p", "--critical", "--format", "json", "--points", "50")
    doc = json.loads(out)
    assert code == 0 and doc["delta"] == 0.5 and doc["normalizable"] is False


def test_figure1_default_and_split(capsys, tmp_path):
    _, out, _ = run(capsys, "figure1", "--points", "20")
    recs = rows(out)
    assert out.splitlines()[0] == "delta,delta_r,exact,approx"
    assert sorted({float(r["delta"]) for r in recs}) == [0.05, 0.1, 0.15, 0.2, 0.25]
    pattern = str(tmp_path / "fig_{delta}.csv")
    code, out, _ = run(capsys, "figure1", "--points", "20", "--out", pattern)
    assert code == 0 and out == ""
    assert len(list(tmp_path.glob("fig_*.csv"))) == 5


def test_compare_summary(capsys):
    code, out, _ = run(capsys, "compare", "--states", "1s,2p,3d", "--deltas", "0.025,0.15")
    assert code == 0
    assert "# summary: cells=6, l_positive_cells=4, present_closer=4, s_wave_ties=2, failed=0" in out


def test_compare_reports_failures_inline(capsys):
    code, out, _ = run(capsys, "compare", "--states", "2p,4f", "--deltas", "0.1", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["summary"]["failed"] == 1 and doc["errors"][0]["state"] == "4f"
    assert len(doc["rows"]) == 1


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# settings\nformat = json\nprecision = 5\nZ = 2\n")
    _, out, _ = run(capsys, "energy", "2p", "0.05", "--config", str(cfg))
    assert json.loads(out)["eps"] == pytest.approx(19.0)
    # flags override the file
    _, out, _ = run(capsys, "energy", "2p", "0.05", "--config", str(cfg), "--format", "csv")
    assert out.startswith("state,")
    cfg.write_text("colour = red\n")
    code, _, err = run(capsys, "energy", "2p", "0.05", "--config", str(cfg))
    assert code == 6 and "colour" in err


def test_io_error(capsys, tmp_path):
    code, _, err = run(capsys, "constants", "--out", str(tmp_path / "no" / "dir" / "x.csv"))
    assert code == 8


def test_deterministic_output(capsys):
    a = run(capsys, "table", "1", "--with-oracle")[1]
    b = run(capsys, "table", "1", "--with-oracle")[1]
    assert a == b


def test_precision_flag(capsys):
    _, out, _ = run(capsys, "energy", "2p", "0.025", "--precision", "3")
    assert rows(out)[0]["binding"] == "0.113"
