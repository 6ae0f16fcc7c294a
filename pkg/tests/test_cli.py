import json
import math

import numpy as np
import pytest

from HyperQ import build_parser, dispatch
from lib.codec import decode_complex, decode_matrix, decode_quat, dumps, encode_quat, parse_json
from lib.errors import SchemaError
from lib.numeric import INF, Quat

S2 = math.sqrt(2) / 2


def run(args, no_config, environ=None):
    status, text = dispatch(args, environ=environ or {}, config_path=no_config)
    return status, (json.loads(text) if text.lstrip().startswith(("{", "[")) else text)


class TestCommands:
    def test_classify_quadric(self, no_config):
        status, out = run(["classify-quadric", "--a", "2", "--r", "1"], no_config)
        assert status == 0
        assert out["position"] == "tangent"
        assert out["I"] == pytest.approx(1.0)
        assert out["circle"]["center"] == pytest.approx([2 / 3, 0.0])
        assert out["circle"]["radius"] == pytest.approx(1 / 3)
        assert out["branch_points"] == [[1.0, 0.0]]

    def test_classify_quadric_line(self, no_config):
        status, out = run(["classify-quadric", "--a", "1", "--r", "1"], no_config)
        assert status == 0
        assert out["circle"] == {"kind": "line", "re_equals": 0.5}
        assert len(out["branch_points"]) == 2

    def test_classify_hyperplane(self, no_config):
        status, out = run(["classify-hyperplane", "--v", "[[1,0],[0,0],[-1,0],[0,0]]"], no_config)
        assert status == 0
        assert out["class"] == "tangent"
        assert out["section"] == "tangent_leviflat"
        assert np.allclose(out["singular_point"], [[S2, 0], [0, 0], [S2, 0], [0, 0]])
        assert all(value < 1e-8 for value in out["witness"]["residuals"].values())

    def test_plain_numbers_are_complex(self, no_config):
        status, out = run(["classify-hyperplane", "--v", "[1, 0, 0, 0]"], no_config)
        assert status == 0
        assert out["class"] == "positive"
        assert "singular_point" not in out

    def test_tangency_opposite(self, no_config):
        a = json.dumps([[[S2, S2], [0, 0]], [[0, 0], [S2, S2]]])
        b = json.dumps([[[-S2, S2], [0, 0]], [[0, 0], [S2, -S2]]])
        status, out = run(["tangency", "--A", a, "--B", b], no_config)
        assert status == 0
        assert out == {"relation": "opposite"}

    def test_line_sphere(self, no_config):
        status, out = run(["line-sphere", "--matrix", "[[[0,1],[0,0]],[[0,0],[0,1]]]"], no_config)
        assert status == 0
        assert out["fibre"] is False
        assert out["theta"] == pytest.approx(math.pi / 2)
        assert out["sphere"]["radius"] == pytest.approx(math.pi / 2)

    def test_line_sphere_fibre(self, no_config):
        status, out = run(["line-sphere", "--matrix", "[[1,0],[0,1]]"], no_config)
        assert status == 0
        assert out["fibre"] is True
        assert out["sphere"]["radius"] is None
        assert out["base_point"] == {"p0": [1.0, 0.0], "p1": [0.0, 0.0]}

    def test_levi(self, no_config):
        status, out = run(["levi", "--point", "[1,1,-1,1]"], no_config)
        assert status == 0
        assert out["frame"] == "Z12"
        assert out["det"] == pytest.approx(-0.25)
        assert out["expected_det"] == pytest.approx(-0.25)
        assert out["signature"] == [1, 1]

    def test_levi_other_chart(self, no_config):
        status, out = run(["levi", "--point", "[1,1,-1,1]", "--chart", "U3"], no_config)
        assert status == 0
        assert out["frame"] == "Y01"

    def test_section_levi(self, no_config):
        status, out = run(["section-levi", "--a", "0", "--r", "0.5", "--point", "[1,0,1,0]"], no_config)
        assert status == 0
        assert out["nondegenerate"] is True
        assert out["value"] == pytest.approx(-15 / 34)

    def test_sections(self, no_config):
        status, out = run(["--seed", "4", "sections", "--a", "0", "--r", "0.5", "--grid", "200",
                           "--loops", "4"], no_config)
        assert status == 0
        assert out["grid_size"] == 200
        assert out["monodromy_failures"] == 0
        assert out["max_jswap_residual"] < 1e-8

    def test_project(self, no_config):
        status, out = run(["project", "--point", "[0,0,1,0]"], no_config)
        assert status == 0
        assert out["quat"] == "inf"
        assert out["on_sigma"] is False

    def test_recover_line(self, no_config):
        points = json.dumps([[1, 0, 1, 0], [0, 1, 0, 1], [1, 1, 1, 1]])
        status, out = run(["recover-line", "--points", points], no_config)
        assert status == 0
        assert np.allclose(decode_matrix(out["A"], 2), np.eye(2))

    @pytest.mark.parametrize("r", ["1.00001", "0.99999", "1e-5"])
    def test_centered_family_is_disjoint(self, r, no_config):
        status, out = run(["classify-quadric", "--a", "0", "--r", r], no_config)
        assert status == 0
        assert out["position"] == "disjoint"
        assert out["circle"]["center"] == [0.0, 0.0]
        assert out["circle"]["radius"] == pytest.approx(1 / float(r))
        assert out["branch_points"] == []
        status, text = run(["figure", "--a", "0", "--r", r], no_config)
        assert status == 0
        assert text.startswith("curve_id,x,y\n")

    def test_figure_csv(self, no_config):
        status, text = run(["figure", "--a", "2", "--r", "1"], no_config)
        assert status == 0
        assert text.startswith("curve_id,x,y\n")

    def test_figure_out(self, no_config, tmp_path):
        out = tmp_path / "fig.svg"
        status, text = run(["--out", str(out), "figure", "--a", "0", "--r", "0.5", "--format", "svg"], no_config)
        assert status == 0
        assert text == ""
        assert "<svg" in out.read_text(encoding="utf-8")

    def test_json_out(self, no_config, tmp_path):
        out = tmp_path / "result.json"
        status, text = run(["--out", str(out), "classify-quadric", "--a", "0", "--r", "0.5"], no_config)
        assert status == 0
        assert text == ""
        assert json.loads(out.read_text())["position"] == "disjoint"


class TestErrors:
    def test_invalid_radius(self, no_config):
        status, out = run(["classify-quadric", "--a", "0", "--r", "0"], no_config)
        assert status == 2
        assert out["error"] == "InvalidRadius"

    def test_precondition(self, no_config):
        status, out = run(["levi", "--point", "[1,0,1,0]"], no_config)
        assert status == 3
        assert out["error"] == "FrameUndefined"

    def test_not_on_hypersurface(self, no_config):
        status, out = run(["levi", "--point", "[1,0,0,0]"], no_config)
        assert status == 3
        assert out["error"] == "NotOnHypersurface"

    def test_fibre_input(self, no_config):
        status, out = run(["tangency", "--A", "[[1,0],[0,1]]", "--B", "[[0,1],[1,0]]"], no_config)
        assert status == 3
        assert out["error"] == "FibreInput"

    def test_not_disjoint(self, no_config):
        status, out = run(["sections", "--a", "2", "--r", "1", "--grid", "10"], no_config)
        assert status == 3
        assert out["error"] == "NotDisjoint"

    @pytest.mark.parametrize("args", [
        ["classify-hyperplane", "--v", "[1, 0, 0"],
        ["classify-hyperplane", "--v", "[1, 0, 0]"],
        ["classify-hyperplane", "--v", "[0, 0, 0, 0]"],
        ["classify-quadric", "--a", "x", "--r", "1"],
        ["classify-quadric", "--a", "1"],
        ["no-such-command"],
        [],
        ["sections", "--a", "0", "--r", "0.5", "--grid", "0"],
        ["line-sphere", "--matrix", "[[2,0],[0,1]]"],
        ["levi", "--point", "[1,1,-1,1]", "--chart", "U1"],
    ])
    def test_validation_errors_exit_2(self, args, no_config):
        status, out = run(args, no_config)
        assert status == 2
        assert set(out) == {"error", "message"}

    def test_unwritable_output(self, no_config, tmp_path):
        status, out = run(["--out", str(tmp_path / "no" / "x.json"), "classify-quadric", "--a", "1", "--r", "1"],
                          no_config)
        assert status == 1
        assert out["error"] == "IOFailure"


class TestTolerances:
    def test_env_override(self, no_config):
        status, out = run(["classify-quadric", "--a", "2", "--r", "1"], no_config, environ={"Q22_TOL": "1e-6"})
        assert status == 0

    def test_env_invalid(self, no_config):
        status, out = run(["classify-quadric", "--a", "2", "--r", "1"], no_config, environ={"Q22_TOL": "tiny"})
        assert status == 2
        assert out["error"] == "InvalidTolerance"

    def test_flag_invalid(self, no_config):
        status, out = run(["--eq-abs", "-1", "classify-quadric", "--a", "2", "--r", "1"], no_config)
        assert status == 2
        assert out["error"] == "InvalidTolerance"

    def test_containment_decides_tangency(self, no_config):
        args = ["classify-quadric", "--a", "2", "--r", "1.001"]
        assert run(args, no_config)[1]["position"] != "tangent"
        assert run(["--containment", "0.01"] + args, no_config)[1]["position"] == "tangent"


class TestDeterminism:
    def test_byte_identical(self, no_config):
        args = ["--seed", "9", "sections", "--a", "0", "--r", "0.5", "--grid", "100", "--loops", "3"]
        first = dispatch(args, environ={}, config_path=no_config)
        second = dispatch(args, environ={}, config_path=no_config)
        assert first == second

    def test_parser_lists_commands(self):
        text = build_parser().format_help()
        for name in ("classify-hyperplane", "classify-quadric", "line-sphere", "tangency", "levi",
                     "sections", "section-levi", "figure"):
            assert name in text


class TestCodec:
    def test_complex(self):
        assert decode_complex(2) == 2 + 0j
        assert decode_complex([1, -2]) == 1 - 2j
        for bad in (True, "1", [1], [1, 2, 3], None):
            with pytest.raises(SchemaError):
                decode_complex(bad)

    def test_quaternion(self):
        assert decode_quat("inf") is INF
        assert encode_quat(INF) == "inf"
        assert decode_quat({"p0": [1, 0], "p1": 2}) == Quat(1, 2)
        with pytest.raises(SchemaError):
            decode_quat({"p0": 1})

    def test_dumps_is_stable(self):
        assert dumps({"z": 1j, "q": Quat(1, 0)}) == dumps({"z": 1j, "q": Quat(1, 0)})
        assert dumps({"z": 1j}).endswith("}\n")

    def test_parse_json(self):
        with pytest.raises(SchemaError):
            parse_json("{", "--v")
