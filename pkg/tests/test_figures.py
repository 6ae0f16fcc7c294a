import numpy as np
import pytest

from lib.errors import IOFailure, SchemaError
from lib.figures import (CSV_HEADER, emit_figure, figure_geometry, fit_discriminant, read_figure_csv,
                         render_csv, render_svg)
from lib.quadrics import CircleKind, FamilyParams, classify_family

CASES = [(0, 1), (1, 1), (2, 1), (0, 0.5), (0.5, 1.2), (-1.5, 0.7)]


class TestCsv:
    def test_header_and_curves(self):
        text = render_csv(FamilyParams(2, 1))
        assert text.splitlines()[0] == ",".join(CSV_HEADER)
        curves = read_figure_csv(text)
        assert set(curves) == {"unit_circle", "discriminant", "branch_points"}
        assert np.allclose(curves["branch_points"], [1 + 0j])

    @pytest.mark.parametrize("a, r", CASES)
    def test_circle_round_trips_through_csv(self, a, r):
        fp = FamilyParams(a, r)
        circle, _ = classify_family(fp)
        fitted = fit_discriminant(read_figure_csv(render_csv(fp))["discriminant"])
        if circle.kind is CircleKind.LINE:
            assert fitted.kind is CircleKind.LINE
            assert abs(fitted.re_equals - circle.re_equals) < 1e-9
        else:
            assert abs(fitted.center - circle.center) < 1e-9
            assert abs(fitted.radius - circle.radius) < 1e-9

    def test_coincident_circles(self):
        curves = read_figure_csv(render_csv(FamilyParams(0, 1)))
        assert np.allclose(np.abs(curves["discriminant"]), 1.0)
        assert curves.get("branch_points", np.array([])).size == 0

    def test_concentric_circles(self):
        curves = read_figure_csv(render_csv(FamilyParams(0, 0.5)))
        assert np.allclose(np.abs(curves["unit_circle"]), 1.0)
        assert np.allclose(np.abs(curves["discriminant"]), 2.0)

    def test_decimal_point(self):
        text = render_csv(FamilyParams(0.5, 1.2))
        for line in text.splitlines()[1:]:
            assert line.count(",") == 2

    def test_bad_header(self):
        with pytest.raises(SchemaError):
            read_figure_csv("id,x,y\n")

    def test_geometry_matches_classification(self):
        curves, circle, rel = figure_geometry(FamilyParams(1, 1))
        assert circle.kind is CircleKind.LINE
        assert len(curves["branch_points"]) == len(rel.branch_points) == 2


class TestSvg:
    def test_structure(self):
        svg = render_svg(FamilyParams(0, 0.5))
        assert svg.lstrip().startswith("<?xml")
        assert "<svg" in svg
        assert 'width="600pt"' in svg and 'height="600pt"' in svg
        assert "stroke-dasharray" in svg
        assert "I = 1.25" in svg

    def test_branch_markers(self):
        assert "branch points" in render_svg(FamilyParams(2, 1))
        assert "branch points" not in render_svg(FamilyParams(0, 0.5))

    def test_deterministic(self):
        fp = FamilyParams(1, 1)
        assert render_svg(fp) == render_svg(fp)


class TestEmit:
    def test_writes_file(self, tmp_path):
        out = tmp_path / "fig.csv"
        text = emit_figure(FamilyParams(2, 1), "csv", str(out))
        assert out.read_text(encoding="utf-8") == text

    def test_unwritable(self, tmp_path):
        with pytest.raises(IOFailure):
            emit_figure(FamilyParams(2, 1), "csv", str(tmp_path / "missing" / "fig.csv"))

    def test_unknown_format(self):
        with pytest.raises(SchemaError):
            emit_figure(FamilyParams(2, 1), "png")
