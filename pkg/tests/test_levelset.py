import math
import xml.etree.ElementTree as ET

import pytest

from smalemv.levelset import (
    containment_check,
    default_window,
    extract_contour,
    max_critical_value,
    sample_grid,
    write_grid_csv,
    write_svg,
)
from smalemv.poly import ComplexPolynomial, p0, pstar
from smalemv.roots import critical_points

IDENT = ComplexPolynomial((0j, 1 + 0j))  # P(z) = z


class TestSampleGrid:
    def test_unit_disk_classification(self):
        grid = sample_grid(IDENT, (-2, 2, -2, 2), 41, 41, 1.0)
        for iy, y in enumerate(grid.ys):
            for ix, x in enumerate(grid.xs):
                below = grid.values[iy, ix] < 1.0
                assert below == (math.hypot(x, y) < 1.0)

    def test_origin_below_threshold_for_normal_form(self):
        P = ComplexPolynomial((0.0, -2.0, 1.0))
        crit = critical_points(P)
        threshold = max_critical_value(P, crit)
        grid = sample_grid(P, (-2, 2, -2, 2), 81, 81, threshold)
        iy = list(grid.ys).index(0.0)
        ix = list(grid.xs).index(0.0)
        assert grid.values[iy, ix] == 0.0 <= threshold

    def test_node_nearest_critical_point_within_slack(self):
        P = pstar(3)
        crit = critical_points(P)
        threshold = max_critical_value(P, crit)  # |P(-1)| = 1 exactly
        grid = sample_grid(P, (-2, 0, -1, 1), 101, 101, threshold)
        zeta = crit.locations[0]
        ix = min(range(grid.nx), key=lambda i: abs(grid.xs[i] - zeta.real))
        iy = min(range(grid.ny), key=lambda i: abs(grid.ys[i] - zeta.imag))
        cell = grid.spacing
        # |P| varies by at most ~max|P'| * spacing within one cell here
        assert grid.values[iy, ix] <= threshold + 3 * cell

    def test_invalid_bounds(self):
        with pytest.raises(ValueError):
            sample_grid(IDENT, (1, -1, 0, 1), 8, 8, 1.0)
        with pytest.raises(ValueError):
            sample_grid(IDENT, (0, 1, 0, 1), 1, 8, 1.0)
        with pytest.raises(ValueError):
            sample_grid(IDENT, (0, math.inf, 0, 1), 8, 8, 1.0)

    def test_values_shape_and_sign(self):
        grid = sample_grid(p0(4), (-2, 2, -2, 2), 16, 12, 2.0)
        assert grid.values.shape == (12, 16)
        assert (grid.values >= 0).all()


class TestExtractContour:
    def test_unit_circle(self):
        grid = sample_grid(IDENT, (-2, 2, -2, 2), 129, 129, 1.0)
        contours = extract_contour(grid)
        assert len(contours.polylines) == 1
        assert contours.closed == (True,)
        deviations = [
            abs(math.hypot(x, y) - 1.0) for x, y in contours.polylines[0]
        ]
        assert max(deviations) <= 2 * grid.spacing

    def test_constant_below_threshold_gives_empty_set(self):
        grid = sample_grid(IDENT, (-0.4, 0.4, -0.4, 0.4), 16, 16, 10.0)
        contours = extract_contour(grid)
        assert contours.polylines == ()

    def test_degenerate_lemniscate_is_circle(self):
        P = ComplexPolynomial((0j, 0j, 1 + 0j))  # |z^2| = 1 is |z| = 1
        grid = sample_grid(P, (-2, 2, -2, 2), 129, 129, 1.0)
        contours = extract_contour(grid)
        assert len(contours.polylines) == 1
        deviations = [
            abs(math.hypot(x, y) - 1.0) for x, y in contours.polylines[0]
        ]
        assert max(deviations) <= 2 * grid.spacing

    def test_open_chain_at_window_edge(self):
        grid = sample_grid(IDENT, (0.0, 2.0, -2.0, 2.0), 65, 65, 1.0)
        contours = extract_contour(grid)
        assert len(contours.polylines) == 1
        assert contours.closed == (False,)

    def test_vertices_sit_near_threshold(self):
        P = p0(3)
        crit = critical_points(P)
        threshold = max_critical_value(P, crit)
        grid = sample_grid(P, default_window(crit), 101, 101, threshold)
        contours = extract_contour(grid)
        assert contours.polylines
        # one cell's worth of field variation as slack
        dP = P.derivative()
        for polyline in contours.polylines:
            for x, y in polyline:
                slack = abs(dP.evaluate(complex(x, y))) * grid.spacing + 1e-9
                assert abs(abs(P.evaluate(complex(x, y))) - threshold) <= slack

    def test_refinement_convergence_on_circle(self):
        coarse = extract_contour(sample_grid(IDENT, (-2, 2, -2, 2), 65, 65, 1.0))
        fine = extract_contour(sample_grid(IDENT, (-2, 2, -2, 2), 129, 129, 1.0))
        coarse_spacing = 4.0 / 64
        dev_coarse = max(
            abs(math.hypot(x, y) - 1.0) for x, y in coarse.polylines[0]
        )
        dev_fine = max(abs(math.hypot(x, y) - 1.0) for x, y in fine.polylines[0])
        assert dev_coarse <= coarse_spacing
        assert dev_fine <= coarse_spacing / 2
        # doubling the resolution moves vertices by at most the coarse spacing
        assert abs(dev_coarse - dev_fine) <= coarse_spacing


class TestContainment:
    def test_normal_form_always_contains_origin(self):
        P = p0(5)
        crit = critical_points(P)
        report = containment_check(P, crit, max_critical_value(P, crit))
        assert report.all_ok
        assert report.verdicts[0].value == 0.0

    def test_pstar_equality_case(self):
        P = pstar(5)
        crit = critical_points(P)
        threshold = max_critical_value(P, crit)
        report = containment_check(P, crit, threshold)
        assert report.all_ok
        critical_verdicts = [v for v in report.verdicts if v.label != "origin"]
        assert len(critical_verdicts) == 1
        assert critical_verdicts[0].value == pytest.approx(threshold, rel=1e-12)

    def test_symmetric_cubic_values(self):
        P = ComplexPolynomial((0.0, -3.0, 0.0, 1.0))
        crit = critical_points(P)
        threshold = max_critical_value(P, crit)
        assert threshold == pytest.approx(2.0, rel=1e-12)
        report = containment_check(P, crit, threshold)
        assert report.all_ok
        for verdict in report.verdicts[1:]:
            assert verdict.value == pytest.approx(2.0, rel=1e-10)


class TestOutputs:
    def test_svg_is_well_formed(self, tmp_path):
        P = p0(5)
        crit = critical_points(P)
        threshold = max_critical_value(P, crit)
        grid = sample_grid(P, default_window(crit), 65, 65, threshold)
        contours = extract_contour(grid)
        path = tmp_path / "out.svg"
        write_svg(str(path), grid, contours, crit)
        root = ET.parse(path).getroot()
        assert root.tag.endswith("svg")
        assert root.attrib["version"] == "1.1"
        markers = [el for el in root.iter() if el.tag.endswith("circle")]
        assert len(markers) == len(crit.roots)

    def test_grid_csv_layout(self, tmp_path):
        grid = sample_grid(IDENT, (-1, 1, -1, 1), 5, 4, 1.0)
        path = tmp_path / "grid.csv"
        write_grid_csv(str(path), grid)
        raw = path.read_bytes()
        assert b"\r" not in raw
        lines = raw.decode("utf-8").splitlines()
        assert lines[0] == "x,y,abs_p"
        assert len(lines) == 1 + 5 * 4
        x, y, v = lines[1].split(",")
        assert float(x) == -1.0 and float(y) == -1.0 and float(v) == math.hypot(1, 1)

    def test_default_window_covers_critical_points(self):
        P = p0(6)
        crit = critical_points(P)
        x_min, x_max, y_min, y_max = default_window(crit)
        assert x_max - x_min == pytest.approx(5.0, rel=1e-9)
        for zeta in crit.locations:
            assert x_min < zeta.real < x_max
            assert y_min < zeta.imag < y_max
