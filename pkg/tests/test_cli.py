import json

import pytest

from srgcensus.census import available_workers
from srgcensus.cli import main, parse_args
from srgcensus.graph import emit_graph6
from srgcensus.srg import construct, random_graph


@pytest.fixture
def g6file(tmp_path):
    def write(*graphs, name="host.g6"):
        path = tmp_path / name
        path.write_text("".join(emit_graph6(g) + "\n" for g in graphs))
        return str(path)

    return write


def run_json(capsys, argv):
    code = main(argv)
    return code, json.loads(capsys.readouterr().out)


def test_parse_defaults(g6file):
    path = g6file(construct("rook3x3"))
    args = parse_args(["census", "--host", path])
    assert (args.command, args.engine, args.jobs, args.format) == (
        "census", "auto", available_workers(), "json"
    )
    args = parse_args(["params", "--max-k", "1000"])
    assert args.max_k == 1000


@pytest.mark.parametrize(
    "argv",
    [
        ["identities"],
        ["census", "--host", "/nonexistent/file.g6"],
        ["census", "--bogus"],
        ["params"],
        [],
        ["census", "--host", "x", "--jobs", "0"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        parse_args(argv)
    assert exc.value.code == 2


def test_identities_rook(capsys, g6file):
    code, out = run_json(capsys, ["identities", "--host", g6file(construct("rook3x3"))])
    assert code == 0
    assert out["matched"] is True
    assert out["fitted"] == {"n3": 0, "h11": 0}
    assert out["bounds_ok"] is True and out["integrality_violations"] == []
    assert out["params"] == {"n": 9, "k": 4, "lambda": 1, "mu": 2}
    assert sorted(v["predicted"] for v in out["per_index"].values()) == [0] * 17 + [18, 18]
    assert all(v["predicted"] == v["measured"] for v in out["per_index"].values())
    assert len(out["catalog_hash"]) == 64


def test_identities_non_family_host(capsys, g6file):
    assert main(["identities", "--host", g6file(construct("cycle5"))]) == 2
    assert "not srg" in capsys.readouterr().err


def test_census_small_host(capsys, g6file):
    code, out = run_json(capsys, ["census", "--host", g6file(construct("cycle5"))])
    assert code == 0
    assert [c["count"] for c in out["counts"]] == [0] * 19
    assert out["host"] == {"n": 5, "g6": "Dhc"}
    assert set(out) >= {"host", "catalog_hash", "counts", "elapsed_ms"}


def test_census_engines_agree(capsys, g6file):
    path = g6file(random_graph(11, "1/2", 3))
    results = []
    for engine in ("subset", "extend"):
        _, out = run_json(capsys, ["census", "--host", path, "--engine", engine, "--jobs", "2"])
        results.append([c["count"] for c in out["counts"]])
    assert results[0] == results[1]


def test_census_csv(capsys, g6file):
    assert main(["census", "--host", g6file(construct("rook3x3")), "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "id,g6,count"
    assert len(lines) == 20
    assert sorted(int(l.split(",")[2]) for l in lines[1:])[-2:] == [18, 18]


def test_verify_srg_exit_codes(capsys, g6file):
    code, out = run_json(capsys, ["verify-srg", "--host", g6file(construct("path4"))])
    assert code == 1 and out["is_srg"] is False and out["witness"]["reason"] == "not regular"
    code, out = run_json(capsys, ["verify-srg", "--host", g6file(construct("paley9"))])
    assert code == 0 and out["params"] == {"n": 9, "k": 4, "lambda": 1, "mu": 2}


def test_polygons(capsys, g6file):
    code, out = run_json(capsys, ["polygons", "--host", g6file(construct("rook3x3"))])
    assert code == 0
    assert out["measured"] == {"p3": 6, "p4": 9, "p5": 0, "p6": 6, "p7": 0}
    assert out["formulas"] == {"p3": 6, "p4": 9, "p5": 0, "p6_lower": 6, "p7_upper": 0}
    assert out["conjecture"]["p6"] == out["conjecture"]["p7"] == "conjecture holds on this host"
    code, out = run_json(capsys, ["polygons", "--host", g6file(construct("cycle7"))])
    assert code == 0 and out["formulas"] is None and out["measured"]["p7"] == 1


def test_batch_mode(capsys, g6file):
    path = g6file(construct("rook3x3"), construct("path4"), construct("cycle5"))
    code = main(["verify-srg", "--host", path, "--all"])
    lines = capsys.readouterr().out.splitlines()
    assert code == 1
    assert [json.loads(l)["is_srg"] for l in lines] == [True, False, True]
    main(["verify-srg", "--host", path])
    assert json.loads(capsys.readouterr().out)["is_srg"] is True


def test_catalog_command(capsys):
    code, out = run_json(capsys, ["catalog"])
    assert code == 0 and len(out) == 19
    assert out[0]["edges"] == 7 and out[0]["automorphisms"] == 14
    assert main(["catalog", "--format", "g6"]) == 0
    assert len(capsys.readouterr().out.split()) == 19
    _, out = run_json(capsys, ["catalog", "--order", "6", "--all-classes"])
    assert len(out) == 62


def test_params_command(capsys):
    code, out = run_json(capsys, ["params", "--max-k", "1000"])
    assert code == 0
    assert [(r["n"], r["k"]) for r in out] == [(9, 4), (99, 14), (243, 22), (6273, 112), (494019, 994)]
    assert out[0]["multiplicities"] == [4, 4]


def test_construct_command(tmp_path, capsys):
    out = tmp_path / "rook.g6"
    assert main(["construct", "--name", "rook3x3", "-o", str(out)]) == 0
    assert out.read_text() == "H{S{aSf\n"
    assert main(["construct", "--name", "nonsense"]) == 2


def test_malformed_host_file(tmp_path, capsys):
    bad = tmp_path / "bad.g6"
    bad.write_text("A`\n")
    assert main(["census", "--host", str(bad)]) == 2
    assert "padding" in capsys.readouterr().err


def test_output_file(tmp_path, g6file, capsys):
    target = tmp_path / "out.json"
    assert main(["census", "--host", g6file(construct("rook3x3")), "-o", str(target)]) == 0
    assert json.loads(target.read_text())["host"]["n"] == 9
