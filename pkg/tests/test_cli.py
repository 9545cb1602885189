"""Command-line behavior: output formats, golden bytes, exit codes, and the
fan round-trip."""

import json
import os

import pytest
from click.testing import CliRunner

from cluster_forge.cli import main
from cluster_forge.corpus import (
    a2_principal_table_text,
    a2_table_text,
    dp5_table_text,
    gr25_table_text,
    read_golden,
)

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "src",
                        "cluster_forge", "fixtures")


def fixture(name):
    return os.path.join(FIXTURES, name)


def run(*args, **kw):
    return CliRunner().invoke(main, list(args), **kw)


# -- table ---------------------------------------------------------------------

def test_table_a2_matches_golden_bytes():
    res = run("table", "a2")
    assert res.exit_code == 0
    assert res.output == read_golden("a2.txt") == a2_table_text()


def test_table_a2_principal_matches_golden_bytes():
    res = run("table", "a2-principal")
    assert res.exit_code == 0
    assert res.output == a2_principal_table_text()


def test_table_gr25_and_dp5_text():
    assert run("table", "gr25").output == gr25_table_text()
    assert run("table", "dp5").output == dp5_table_text()


def test_table_csv_has_six_vertices():
    res = run("table", "a2-principal", "--format", "csv")
    assert res.exit_code == 0
    lines = res.output.strip().split("\n")
    assert lines[0].startswith("vertex,path,C,G")
    assert len(lines) == 7


def test_table_json_rows():
    res = run("table", "a2", "--format", "json")
    rows = json.loads(res.output)
    assert len(rows) == 6
    assert rows[0]["C"] == [[1, 0], [0, 1]]
    assert all(row["sign_coherent"] for row in rows)


def test_table_gr25_csv_is_input_error():
    res = run("table", "gr25", "--format", "csv")
    assert res.exit_code == 2


# -- mutate ---------------------------------------------------------------------

def test_mutate_empty_path_echoes_seed():
    res = run("mutate", "--seed", fixture("a2.json"), "--path", "")
    assert res.exit_code == 0
    assert "p1: p1" in res.output and "Y1: y1" in res.output
    assert "matrix: [[0, 1], [-1, 0]]" in res.output


def test_mutate_path_json():
    res = run("mutate", "--seed", fixture("a2.json"), "--path", "2,1",
              "--json")
    out = json.loads(res.output)
    assert out["B"] == [[0, 1], [-1, 0]]
    assert out["p"] == ["p1^-1", "p2^-1"]


def test_mutate_with_coeffs_none():
    res = run("mutate", "--seed", fixture("a2.json"), "--path", "1",
              "--with-coeffs", "none", "--json")
    out = json.loads(res.output)
    assert out["p"] == ["1", "1"]
    assert out["y"] == ["1 / y1", "y1*y2 / (y1 + 1)"]


def test_mutate_with_coeffs_trop_rank_mismatch():
    res = run("mutate", "--seed", fixture("a2.json"), "--path", "1",
              "--with-coeffs", "trop:3")
    assert res.exit_code == 2
    assert "rank" in res.stderr


def test_mutate_malformed_seed_exit_2():
    runner = CliRunner()
    with runner.isolated_filesystem():
        with open("bad.json", "w") as fh:
            fh.write("{not json")
        res = runner.invoke(main, ["mutate", "--seed", "bad.json",
                                   "--path", "1"])
        assert res.exit_code == 2
        assert "bad.json" in res.stderr


def test_mutate_frozen_direction_exit_3():
    res = run("mutate", "--seed", fixture("gr25.json"), "--path", "3")
    assert res.exit_code == 3
    assert "frozen" in res.stderr


def test_mutate_out_of_range_direction_exit_2():
    res = run("mutate", "--seed", fixture("a2.json"), "--path", "9")
    assert res.exit_code == 2
    assert "out of range" in res.stderr


# -- fan / star -------------------------------------------------------------------

def test_fan_round_trip_star():
    runner = CliRunner()
    with runner.isolated_filesystem():
        res = runner.invoke(main, ["fan", "--seed", fixture("a2.json"),
                                   "--out", "fan.json"])
        assert res.exit_code == 0
        with open("fan.json") as fh:
            obj = json.load(fh)
        assert len(obj["maximal_cones"]) == 5
        assert obj["complete"] is True
        res2 = runner.invoke(main, ["star", "--fan", "fan.json",
                                    "--tau", "ray:1", "--json"])
        assert res2.exit_code == 0
        st = json.loads(res2.output)
        assert len(st["projected_cones"]) == 2
        assert st["restricted_matrix"] == [[0]]


def test_fan_truncated_then_star_refuses():
    runner = CliRunner()
    with runner.isolated_filesystem():
        res = runner.invoke(main, ["fan", "--seed", fixture("a2.json"),
                                   "--depth", "0", "--out", "fan.json"])
        assert res.exit_code == 4
        assert "truncated" in res.stderr
        res2 = runner.invoke(main, ["star", "--fan", "fan.json",
                                    "--tau", "ray:1"])
        assert res2.exit_code == 4
        assert "incomplete" in res2.stderr


def test_fan_freeze_restricts_directions():
    res = run("fan", "--seed", fixture("a3_rev.json"), "--freeze", "1",
              "--json")
    obj = json.loads(res.output)
    assert obj["allowed"] == [2, 3]
    assert len(obj["maximal_cones"]) == 5


def test_fan_tampered_file_is_input_error():
    runner = CliRunner()
    with runner.isolated_filesystem():
        runner.invoke(main, ["fan", "--seed", fixture("a2.json"),
                             "--out", "fan.json"])
        with open("fan.json") as fh:
            obj = json.load(fh)
        obj["rays"][0] = [7, 7]
        with open("fan.json", "w") as fh:
            json.dump(obj, fh)
        res = runner.invoke(main, ["star", "--fan", "fan.json",
                                   "--tau", "ray:1"])
        assert res.exit_code == 2
        assert "fan.json" in res.stderr


# -- verify -----------------------------------------------------------------------

def test_verify_duality_a3_all_cones():
    res = run("verify", "duality", "--seed", fixture("a3.json"))
    assert res.exit_code == 0
    assert "14/14 ok" in res.output


def test_verify_separation_reproducible_with_rng_seed():
    args = ("verify", "separation", "--seed", fixture("a2.json"),
            "--paths", "random:6", "--rng-seed", "11")
    out1 = run(*args).output
    out2 = run(*args).output
    assert out1 == out2
    assert "6/6 ok" in out1


def test_verify_separation_explicit_paths():
    res = run("verify", "separation", "--seed", fixture("b2.json"),
              "--paths", "1,2,1;2", "--json")
    data = json.loads(res.output)
    assert data["ok"] is True
    assert len(data["results"]) == 2


def test_verify_glue_needs_mutable_seed():
    res = run("verify", "glue", "--seed", fixture("gr25.json"))
    assert res.exit_code == 2
    assert "frozen" in res.stderr


def test_verify_strata_b2():
    res = run("verify", "strata", "--seed", fixture("b2.json"))
    assert res.exit_code == 0


def test_verify_threaded_output_matches_serial():
    args = ["verify", "separation", "--seed", fixture("a2.json"),
            "--paths", "random:8", "--rng-seed", "3"]
    serial = CliRunner().invoke(main, args)
    threaded = CliRunner().invoke(
        main, args, env={"CLUSTER_FORGE_THREADS": "4"})
    assert serial.output == threaded.output


# -- degenerate ---------------------------------------------------------------------

def test_degenerate_central_fiber_is_monomial():
    res = run("degenerate", "--seed", fixture("a2.json"), "--at", "0,0",
              "--json")
    data = json.loads(res.output)
    assert data["at"] == ["0", "0"]
    first = data["walls"][0]
    assert first["images"][0] == "X1^-1"
    for wall in data["walls"]:
        for img in wall["images"]:
            assert "+" not in img


def test_degenerate_fiber_at_one():
    res = run("degenerate", "--seed", fixture("a2.json"), "--at", "1,1")
    assert res.exit_code == 0
    assert "X1*X2 / (X1 + 1)" in res.output


def test_degenerate_rational_point():
    res = run("degenerate", "--seed", fixture("a2.json"), "--at", "2/3,5")
    assert res.exit_code == 0


def test_degenerate_mixed_zero_is_input_error():
    res = run("degenerate", "--seed", fixture("a2.json"), "--at", "0,1")
    assert res.exit_code == 2
