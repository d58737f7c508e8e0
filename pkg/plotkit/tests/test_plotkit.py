import json
import math
from pathlib import Path

import pytest

from plotkit import FigureSpec, SchemaError, SpecError, render
from plotkit.cli import main
from plotkit.spec import load_table

DATA = Path(__file__).parent / "data"

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def spec_for(kind, out, **kw):
    src = {"ratio_curve": "s_transform.csv", "nodal_overlay": "nodal.csv"}.get(
        kind, "growth.csv")
    return FigureSpec(input_csv=str(DATA / src), kind=kind,
                      output_image=str(out), **kw)


# -- spec validation ----------------------------------------------------------

def test_unknown_kind_rejected(tmp_path):
    with pytest.raises(SpecError):
        FigureSpec(str(DATA / "growth.csv"), "pie_chart", str(tmp_path / "x.png"))


def test_from_dict_rejects_unknown_and_missing_fields():
    with pytest.raises(SpecError, match="unknown figure spec fields: frobnicate"):
        FigureSpec.from_dict({"input_csv": "a", "kind": "b0_heatmap",
                              "output_image": "b", "frobnicate": 1})
    with pytest.raises(SpecError, match="missing figure spec fields: output_image"):
        FigureSpec.from_dict({"input_csv": "a", "kind": "b0_heatmap"})


def test_missing_column_is_descriptive(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("# seed=0\nt,theta,normalized\n0.1,3.14,1.0\n")
    with pytest.raises(SchemaError, match="missing column\\(s\\) B0"):
        render(FigureSpec(str(bad), "b0_heatmap", str(tmp_path / "x.png")))


def test_comment_lines_skipped():
    rows = load_table(str(DATA / "nodal.csv"), "nodal_overlay")
    assert len(rows) == 3 and "w_re" in rows[0]


# -- rendering ----------------------------------------------------------------

@pytest.mark.parametrize("kind", ["ratio_curve", "growth_heatmap",
                                  "b0_heatmap", "nodal_overlay"])
def test_render_all_kinds(tmp_path, kind):
    out = tmp_path / f"{kind}.png"
    res = render(spec_for(kind, out))
    assert out.read_bytes().startswith(PNG_MAGIC)
    assert res.n_rows > 0


@pytest.mark.parametrize("kind", ["ratio_curve", "growth_heatmap",
                                  "b0_heatmap", "nodal_overlay"])
def test_render_deterministic_bytes(tmp_path, kind):
    a, b = tmp_path / "a.png", tmp_path / "b.png"
    render(spec_for(kind, a))
    render(spec_for(kind, b))
    assert a.read_bytes() == b.read_bytes()


def test_ratio_curve_data_is_monotone_toward_one(tmp_path):
    res = render(spec_for("ratio_curve", tmp_path / "r.png"))
    assert res.n_elements >= 6  # >= 2 routes x 3 etas survive nan filtering
    rows = load_table(str(DATA / "s_transform.csv"), "ratio_curve")
    by_eta = {}
    for r in rows:
        if r["route"] == "quadrature2d":
            by_eta.setdefault(r["eta"], []).append(
                (float(r["tau"]), float(r["ratio_to_laplace"])))
    for pts in by_eta.values():
        pts.sort()
        devs = [abs(v - 1.0) for _, v in pts]
        assert devs == sorted(devs, reverse=True)  # monotone trend toward 1


def test_b0_field_max_zero_on_theta_pi_line(tmp_path):
    render(spec_for("b0_heatmap", tmp_path / "b.png"))
    rows = load_table(str(DATA / "growth.csv"), "b0_heatmap")
    overall_max = max(float(r["B0"]) for r in rows)
    assert abs(overall_max) < 1e-12
    for r in rows:
        at_pi = abs(float(r["theta"]) - math.pi) < 1e-9
        assert (abs(float(r["B0"])) < 1e-12) == at_pi


def test_nodal_overlay_three_markers(tmp_path):
    res = render(spec_for("nodal_overlay", tmp_path / "n.png"))
    assert res.n_elements == 3  # one marker per zero of w^3 - w


def test_log_color_heatmap(tmp_path):
    out = tmp_path / "g.png"
    render(spec_for("growth_heatmap", out, log_color=True))
    assert out.read_bytes().startswith(PNG_MAGIC)


# -- CLI ----------------------------------------------------------------------

def test_cli_batch_and_exit_codes(tmp_path):
    specs = [
        {"input_csv": str(DATA / "s_transform.csv"), "kind": "ratio_curve",
         "output_image": str(tmp_path / "r.png")},
        {"input_csv": str(DATA / "nodal.csv"), "kind": "nodal_overlay",
         "output_image": str(tmp_path / "n.png")},
    ]
    sp = tmp_path / "specs.json"
    sp.write_text(json.dumps(specs))
    assert main(["--spec", str(sp)]) == 0
    assert (tmp_path / "r.png").exists() and (tmp_path / "n.png").exists()


def test_cli_schema_mismatch_exit_2(tmp_path, capsys):
    sp = tmp_path / "spec.json"
    sp.write_text(json.dumps({
        "input_csv": str(DATA / "nodal.csv"), "kind": "growth_heatmap",
        "output_image": str(tmp_path / "x.png")}))
    assert main(["--spec", str(sp)]) == 2
    assert "missing column" in capsys.readouterr().err


def test_cli_malformed_spec_exit_2(tmp_path):
    sp = tmp_path / "spec.json"
    sp.write_text("{broken")
    assert main(["--spec", str(sp)]) == 2
    assert main(["--spec", str(tmp_path / "absent.json")]) == 2
