import json
import subprocess
import sys

from colorcode3d.cli import main


def run_cli(args, tmp_path=None):
    import contextlib
    import io

    out = io.StringIO()
    err = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        rc = main(args)
    return rc, out.getvalue(), err.getvalue()


def test_build_minimal_model_census():
    rc, out, _ = run_cli(["build", "minimal-model"])
    assert rc == 0
    assert "census = n=192 X=45 Z=206 rel=62 k=3" in out
    assert "RESULT PASS" in out


def test_build_sublattice_targets():
    expected = {
        "green": "n=28 X=4 Z=32 rel=9 k=1",
        "yellow": "n=28 X=5 Z=32 rel=10 k=1",
        "purple": "n=96 X=28 Z=78 rel=11 k=1",
    }
    for name, census in expected.items():
        rc, out, _ = run_cli(["build", "sublattice:%s" % name])
        assert rc == 0
        assert "census = %s" % census in out


def test_build_unknown_target_exits_2():
    rc, _, err = run_cli(["build", "nonsense"])
    assert rc == 2
    assert "unknown build target" in err


def test_no_command_exits_2():
    rc, _, _ = run_cli([])
    assert rc == 2


def test_build_gauge_from_file(tmp_path):
    from colorcode3d.codes import cubic_torus, serialize_matter_graph

    path = tmp_path / "torus.graph"
    path.write_text(serialize_matter_graph(cubic_torus(2)))
    rc, out, _ = run_cli(["build", "gauge:%s" % path])
    assert rc == 0
    assert "k = 3" in out


def test_build_gauge_missing_file():
    rc, _, err = run_cli(["build", "gauge:/nonexistent/file"])
    assert rc == 2


def test_build_writes_code_file(tmp_path):
    out_file = tmp_path / "code.txt"
    rc, _, _ = run_cli(
        ["build", "sublattice:green", "--code-out", str(out_file)]
    )
    assert rc == 0
    from colorcode3d.codes import deserialize_code

    code = deserialize_code(out_file.read_text())
    assert code.n == 28


def test_classify_totals():
    rc, out, _ = run_cli(["classify"])
    assert rc == 0
    assert "totals.elementary = 30" in out
    assert "totals.nested = 70" in out
    assert "totals.magic = 1" in out
    assert "totals.total = 101" in out


def test_classify_raw_magic_option():
    rc, out, _ = run_cli(["classify", "--raw-magic"])
    assert rc == 0
    assert "raw_t_non_condensing = 8" in out
    rc, out_default, _ = run_cli(["classify"])
    assert "raw_t_non_condensing" not in out_default


def test_classify_quotient_colors_option():
    rc, out, _ = run_cli(["classify", "--quotient-colors"])
    assert rc == 0
    assert "color_quotient_classes" in out


def test_classify_json_schema():
    rc, out, _ = run_cli(["classify", "--format", "json"])
    assert rc == 0
    data = json.loads(out)
    assert data["schema_version"] == 1
    assert data["results"]["totals"] == {
        "elementary": 30, "nested": 70, "magic": 1, "total": 101
    }
    grid = data["results"]["condensation_grid"]
    assert len(grid["rows"]) == 8
    assert len(grid["rows"][0]["condenses"]) == 8


def test_reports_byte_identical():
    for args in (["classify"], ["build", "minimal-model"],
                 ["verify", "minimal-model", "--transversal", "T"]):
        _, a, _ = run_cli(args + ["--format", "json"])
        _, b, _ = run_cli(args + ["--format", "json"])
        assert a == b


def test_verify_minimal_none():
    rc, out, _ = run_cli(["verify", "minimal-model"])
    assert rc == 0
    assert "RESULT PASS" in out
    data_rc, out_json, _ = run_cli(
        ["verify", "minimal-model", "--format", "json"]
    )
    data = json.loads(out_json)
    verdicts = data["results"]["verdicts"]
    assert verdicts["pg_x@x+"]["condenses"] is True
    assert verdicts["y_z@z+"]["condenses"] is True
    assert verdicts["y_z@x+"]["condenses"] is False


def test_verify_minimal_T():
    rc, out, _ = run_cli(["verify", "minimal-model", "--transversal", "T",
                          "--format", "json"])
    assert rc == 0
    data = json.loads(out)
    verdicts = data["results"]["verdicts"]
    for op in ("pg_x", "py_x", "yg_x", "y_z", "g_z", "p_z"):
        for side in ("x+", "x-", "y+", "y-"):
            assert verdicts["%s@%s" % (op, side)]["condenses"] is False
    for op in ("y_z", "g_z", "p_z"):
        for side in ("z+", "z-"):
            assert verdicts["%s@%s" % (op, side)]["condenses"] is True
    assert data["results"]["bulk_symmetry"] is True
    assert data["results"]["z_sides_unchanged"] is True
    assert data["results"]["mismatches"] == []


def test_verify_transversal_S():
    for pair in ("pg", "py", "yg"):
        rc, out, _ = run_cli(
            ["verify", "minimal-model", "--transversal", "S:%s" % pair]
        )
        assert rc == 0, pair
        assert "RESULT PASS" in out


def test_verify_bad_transversal():
    rc, _, err = run_cli(["verify", "minimal-model", "--transversal", "S:rr"])
    assert rc == 2


def test_verify_sublattice():
    rc, out, _ = run_cli(["verify", "sublattice:green"])
    assert rc == 0
    assert "string_condenses_on_rough = True" in out
    assert "membrane_condenses_on_smooth = True" in out


def test_verify_gauge_target(tmp_path):
    from colorcode3d.codes import cubic_slab, serialize_matter_graph

    path = tmp_path / "slab.graph"
    path.write_text(serialize_matter_graph(cubic_slab(2, 2, 2)))
    rc, out, _ = run_cli(["verify", "gauge:%s" % path])
    assert rc == 0
    assert "k = 1" in out


def test_out_flag(tmp_path):
    out_path = tmp_path / "report.json"
    rc, stdout, _ = run_cli(
        ["--format", "json", "--out", str(out_path), "classify"]
    )
    assert rc == 0
    assert stdout == ""
    data = json.loads(out_path.read_text())
    assert data["results"]["totals"]["total"] == 101


def test_seed_flag_accepted():
    rc, _, _ = run_cli(["--seed", "7", "classify"])
    assert rc == 0


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "colorcode3d.cli", "build", "sublattice:green"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "census = n=28 X=4 Z=32 rel=9 k=1" in proc.stdout


def test_build_writes_complex_file(tmp_path):
    out_file = tmp_path / "complex.txt"
    rc, _, _ = run_cli(
        ["build", "minimal-model", "--complex-out", str(out_file)]
    )
    assert rc == 0
    text = out_file.read_text()
    assert text.startswith("# cell-complex v1")
    assert "qubits 192" in text
