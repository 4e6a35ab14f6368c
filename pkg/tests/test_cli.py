import json

import numpy as np
import pytest

from dpmatch import cli
from dpmatch.harness import CSV_HEADER


def write_spec(tmp_path, obj, name="spec.json"):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def test_generate_then_match_round_trip(tmp_path, capsys):
    spec = write_spec(tmp_path, {"model": "er", "n": 120,
                                 "params": {"q": 0.3, "s": 1.0}, "seed": 4})
    out = str(tmp_path / "pair")
    assert cli.main(["generate", "--spec", spec, "--out", out]) == 0
    assert (tmp_path / "pair.g.edges").exists()
    assert (tmp_path / "pair.h.edges").exists()
    assert (tmp_path / "pair.truth.csv").exists()

    match_out = str(tmp_path / "match.csv")
    rc = cli.main(["match", "--g", out + ".g.edges", "--h", out + ".h.edges",
                   "--distance", "cyclic", "--truth", out + ".truth.csv",
                   "--out", match_out])
    assert rc == 0
    note = capsys.readouterr().out
    assert "accuracy=1.0" in note
    lines = (tmp_path / "match.csv").read_text().splitlines()
    assert lines[0] == "i,pi_hat_i,truth_i,correct,tied"
    assert len(lines) == 1 + 120


def test_match_strict_tie_exits_2(tmp_path, capsys):
    # the 3-path matched against itself has automorphic leaves
    from dpmatch import Graph, save_graph
    g = Graph(3, [(0, 1), (1, 2)])
    gp, hp = str(tmp_path / "g.edges"), str(tmp_path / "h.edges")
    save_graph(g, gp)
    save_graph(g, hp)
    rc = cli.main(["match", "--g", gp, "--h", hp, "--distance", "cyclic",
                   "--L", "5", "--mode", "strict",
                   "--out", str(tmp_path / "m.csv")])
    assert rc == 2
    err = capsys.readouterr().err
    assert "tie" in err and "witness" in err


def test_generate_gaussian_npy(tmp_path, capsys):
    spec = write_spec(tmp_path, {"model": "gaussian", "n": 30,
                                 "params": {"rho": 1.0}, "seed": 2})
    out = str(tmp_path / "gp")
    assert cli.main(["generate", "--spec", spec, "--out", out]) == 0
    g = np.load(out + ".g.npy")
    assert g.shape == (30, 30)
    rc = cli.main(["match", "--g", out + ".g.npy", "--h", out + ".h.npy",
                   "--distance", "gaussian", "--L", "1000",
                   "--truth", out + ".truth.csv",
                   "--out", str(tmp_path / "gm.csv")])
    assert rc == 0
    assert "accuracy=1.0" in capsys.readouterr().out


def test_experiment_writes_csv_and_svg(tmp_path, capsys):
    csv_path = str(tmp_path / "rows.csv")
    svg_path = str(tmp_path / "plot.svg")
    rc = cli.main(["experiment", "--preset", "fig1", "--n", "80",
                   "--runs", "2", "--grid", "0,0.1",
                   "--out-csv", csv_path, "--out-svg", svg_path])
    assert rc == 0
    lines = (tmp_path / "rows.csv").read_text().splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 1 + 2 * 2 * 6
    svg = (tmp_path / "plot.svg").read_text()
    assert svg.startswith("<?xml") and "<svg" in svg


def test_experiment_custom_variants(tmp_path):
    csv_path = str(tmp_path / "rows.csv")
    rc = cli.main(["experiment", "--preset", "fig1", "--n", "60",
                   "--runs", "1", "--grid", "0",
                   "--variants", "ref,bin(0.5)",
                   "--out-csv", csv_path])
    assert rc == 0
    body = (tmp_path / "rows.csv").read_text().splitlines()[1:]
    assert len(body) == 2
    assert {line.split(",")[1] for line in body} == {"ref", "bin"}


def test_generate_bad_spec_is_clean_error(tmp_path, capsys):
    spec = tmp_path / "bad.json"
    spec.write_text('{"model": "er", "n": 10, "params": {"s": 0.9}}')
    rc = cli.main(["generate", "--spec", str(spec),
                   "--out", str(tmp_path / "pair")])
    assert rc == 2
    err = capsys.readouterr().err
    assert "cannot load model spec" in err and "missing param" in err


def test_match_missing_input_is_clean_error(tmp_path, capsys):
    rc = cli.main(["match", "--g", str(tmp_path / "no.edges"),
                   "--h", str(tmp_path / "no.edges"),
                   "--distance", "cyclic",
                   "--out", str(tmp_path / "m.csv")])
    assert rc == 2
    assert "cannot load inputs" in capsys.readouterr().err


def test_experiment_realdata_needs_edges(tmp_path, capsys):
    rc = cli.main(["experiment", "--preset", "realdata",
                   "--out-csv", str(tmp_path / "x.csv")])
    assert rc == 2
    assert "--edges" in capsys.readouterr().err


def test_experiment_realdata_from_edges(tmp_path, capsys):
    rng = np.random.default_rng(1)
    lines = [f"{rng.integers(0, 30)} {rng.integers(0, 30)}" for _ in range(120)]
    edges = tmp_path / "net.txt"
    edges.write_text("# synthetic\n" + "\n".join(lines) + "\n")
    csv_path = str(tmp_path / "real.csv")
    rc = cli.main(["experiment", "--preset", "realdata",
                   "--edges", str(edges), "--max-id", "30",
                   "--runs", "1", "--grid", "1.0",
                   "--variants", "ref,disc(0.5)",
                   "--out-csv", csv_path])
    assert rc == 0
    out = capsys.readouterr().out
    assert "parent graph:" in out
    assert len((tmp_path / "real.csv").read_text().splitlines()) == 3


def test_verify_subcommand_passes(capsys):
    assert cli.main(["verify", "--cases", "60", "--seed", "1"]) == 0
    out = capsys.readouterr().out
    assert "verify: PASS" in out
    # one line per suite, all passing
    assert out.count("PASS") >= 7
    assert "FAIL" not in out
