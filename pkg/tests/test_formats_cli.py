import json

import pytest

from deltamatroids import catalog, formats
from deltamatroids.cli import main
from deltamatroids.gf2 import SymmetricBinaryMatrix
from deltamatroids.graphs import LoopedSimpleGraph
from deltamatroids.setsystem import SetSystem


def test_set_system_round_trip():
    for name in ("S3", "D3", "B5", "T7"):
        s = catalog.get(name)
        assert formats.loads(formats.dumps(s)) == s


def test_documented_payloads():
    s = formats.loads('{"ground":["a","b","c"],"feasible":[[],["a","b","c"]]}')
    assert s == SetSystem.from_sets("abc", [(), "abc"])
    g = formats.loads('{"vertices":["a","b","c"],"edges":[["a","b"],["b","c"]],"loops":[]}')
    assert g == LoopedSimpleGraph.from_edges("abc", [("a", "b"), ("b", "c")])
    m = formats.loads('{"labels":["1","2"],"rows":["01","10"]}')
    assert m == SymmetricBinaryMatrix.from_entries(["1", "2"], [[0, 1], [1, 0]])


def test_matrix_and_graph_round_trip():
    m = SymmetricBinaryMatrix.from_entries("xyz", [[1, 1, 0], [1, 0, 1], [0, 1, 1]])
    assert formats.loads(formats.dumps(m)) == m
    g = LoopedSimpleGraph.from_edges("pqr", [("p", "q")], loops="r")
    assert formats.loads(formats.dumps(g)) == g


def test_edge_text_format():
    g = formats.loads("a-b, b-c, d, c-c")
    assert g.has_edge("a", "b") and g.has_edge("b", "c")
    assert g.labels == ("a", "b", "c", "d")
    assert g.loops == 1 << g.vertex_index("c")


def test_malformed_payloads():
    with pytest.raises(ValueError):
        formats.loads('{"nope": 1}')
    with pytest.raises(ValueError):
        formats.loads('{"ground":["a","a"],"feasible":[[]]}')


def test_cache_checksum_guard(tmp_path):
    g = LoopedSimpleGraph.from_edges("ab", [("a", "b")])
    path = tmp_path / "cache.json"
    formats.write_obstruction_cache(path, [g], 2)
    assert formats.load_obstruction_cache(path) == (g,)
    payload = json.loads(path.read_text())
    payload["graphs"][0]["edges"] = []
    path.write_text(json.dumps(payload))
    with pytest.raises(ValueError):
        formats.load_obstruction_cache(path)


# ----------------------------------------------------------------------
# command surface


def test_apply_catalog(capsys):
    assert main(["apply", "catalog:S3", "+e1"]) == 0
    out = capsys.readouterr().out
    assert json.loads(out) == {
        "ground": ["e1", "e2", "e3"],
        "feasible": [[], ["e1"], ["e1", "e2", "e3"]],
    }


def test_apply_sequence_tokens(capsys):
    assert main(["apply", "catalog:T5", "+d", "con:d"]) == 0
    assert json.loads(capsys.readouterr().out) == formats.set_system_to_dict(catalog.get("T1"))


def test_apply_file_and_graph_input(tmp_path, capsys):
    p = tmp_path / "sys.json"
    p.write_text(formats.dumps(catalog.get("S3")))
    assert main(["apply", str(p), "*e1"]) == 0
    assert "e1" in capsys.readouterr().out
    gp = tmp_path / "graph.json"
    gp.write_text('{"vertices":["a","b"],"edges":[["a","b"]],"loops":[]}')
    assert main(["check", str(gp)]) == 0
    out = capsys.readouterr().out
    assert "binary: yes" in out and "ribbon-graphic: yes" in out


def test_check_b1(capsys):
    assert main(["check", "catalog:B1"]) == 0
    out = capsys.readouterr().out
    assert "delta-matroid: yes" in out
    assert "binary: no" in out
    assert "vf-safe: yes" in out
    assert "ribbon-graphic: no" in out


def test_check_witness_line(capsys):
    assert main(["check", "catalog:S3"]) == 0
    out = capsys.readouterr().out
    assert "delta-matroid: no (X={} Y={e1,e2,e3} u=e1)" in out


def test_classify_element(capsys):
    assert main(["classify-element", "catalog:S3", "e1"]) == 0
    assert capsys.readouterr().out.strip() == "Ordinary"
    assert main(["classify-element", "catalog:S3", "zz"]) == 2


def test_orbit_command(capsys):
    assert main(["orbit", "catalog:S3"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("orbit size (up to isomorphism): 28")
    assert out.count('"ground"') == 28
    assert main(["orbit", "catalog:S2", "--labeled"]) == 0
    out2 = capsys.readouterr().out
    assert out2.startswith("orbit size (labeled):")


def test_usage_errors(capsys):
    assert main(["apply", "catalog:NOPE", "+a"]) == 2
    assert main(["apply", "catalog:S3", "frob:e1"]) == 2
    assert main(["apply", "/no/such/file.json", "+a"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "bogus-suite"])
    assert exc.value.code == 2


def test_verify_identities_cli(capsys):
    assert main(["verify", "identities"]) == 0
    out = capsys.readouterr().out
    assert "PASS identities: 18 instances, 0 failures" in out


def test_verify_deterministic_output(capsys):
    assert main(["verify", "interactions", "--trials", "40", "--seed", "3"]) == 0
    first = capsys.readouterr().out
    assert main(["verify", "interactions", "--trials", "40", "--seed", "3"]) == 0
    assert capsys.readouterr().out == first


def test_verify_jobs_matches_serial(capsys):
    assert main(["verify", "ppt", "--trials", "12", "--seed", "5"]) == 0
    serial = capsys.readouterr().out
    assert main(["verify", "ppt", "--trials", "12", "--seed", "5", "--jobs", "3"]) == 0
    assert capsys.readouterr().out == serial


def test_check_skips_over_guard_fields(tmp_path, capsys):
    labels = [f"x{i}" for i in range(13)]
    p = tmp_path / "big.json"
    p.write_text(json.dumps({"ground": labels, "feasible": [[]]}))
    assert main(["check", str(p)]) == 0
    out = capsys.readouterr().out
    assert "vf-safe: skipped (ground set over guard)" in out
    assert "ribbon-graphic: skipped (ground set over guard)" in out
    assert "basic-binary: yes" in out  # still under the 2^n guard


def test_orbit_guard_exit_code(tmp_path, capsys):
    labels = [f"x{i}" for i in range(9)]
    p = tmp_path / "big.json"
    p.write_text(json.dumps({"ground": labels, "feasible": [[]]}))
    assert main(["orbit", str(p)]) == 2


def test_obstructions_command(capsys):
    assert main(["obstructions", "circle"]) == 0
    lines = [l for l in capsys.readouterr().out.splitlines() if l.strip()]
    assert len(lines) == 3
    assert all('"vertices"' in l for l in lines)
    assert main(["obstructions", "nonsense"]) == 2
