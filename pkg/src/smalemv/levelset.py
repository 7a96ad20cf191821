"""Sublevel sets of |P| and their boundary contours.

The filled set {z : |P(z)| <= R^d} with R^d the largest critical-value
modulus is a connected region containing the origin and every critical point
(for polynomials in normal form). This module samples |P| on a rectangular
grid, extracts the boundary isoline with marching squares, checks the
containment statements pointwise, and writes SVG and CSV artifacts.

Marching squares walks every grid cell, classifies its four corners against
the threshold, and emits line segments whose endpoints are linearly
interpolated along the crossing edges. The two ambiguous saddle
configurations are resolved by comparing the cell-center mean against the
threshold, a deterministic rule. Segment endpoints live on named grid edges,
so chains stitch exactly and close into loops without coordinate fuzz.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .poly import ComplexPolynomial
from .roots import RootSet


@dataclass(frozen=True)
class LevelSetGrid:
    """|P| sampled on an nx-by-ny node grid, plus the threshold.

    ``values[iy, ix]`` is |P| at (x_ix, y_iy); the row-major flattening runs
    along x first. All values are nonnegative and finite.
    """

    x_min: float
    x_max: float
    y_min: float
    y_max: float
    nx: int
    ny: int
    values: np.ndarray
    threshold: float

    @property
    def xs(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.nx)

    @property
    def ys(self) -> np.ndarray:
        return np.linspace(self.y_min, self.y_max, self.ny)

    @property
    def spacing(self) -> float:
        return max(
            (self.x_max - self.x_min) / (self.nx - 1),
            (self.y_max - self.y_min) / (self.ny - 1),
        )


@dataclass(frozen=True)
class ContourSet:
    """Boundary polylines of the sublevel set, with closed-loop flags."""

    polylines: tuple[tuple[tuple[float, float], ...], ...]
    closed: tuple[bool, ...]


@dataclass(frozen=True)
class ContainmentVerdict:
    point: complex
    value: float
    ok: bool
    label: str


@dataclass(frozen=True)
class ContainmentReport:
    verdicts: tuple[ContainmentVerdict, ...]
    all_ok: bool


def sample_grid(
    P: ComplexPolynomial,
    bounds: tuple[float, float, float, float],
    nx: int,
    ny: int,
    threshold: float,
) -> LevelSetGrid:
    """Evaluate |P| at all grid nodes of the window (x_min, x_max, y_min, y_max)."""
    x_min, x_max, y_min, y_max = (float(b) for b in bounds)
    if not all(math.isfinite(b) for b in (x_min, x_max, y_min, y_max)):
        raise ValueError("window bounds must be finite")
    if x_max <= x_min or y_max <= y_min:
        raise ValueError("window must have positive extent")
    if nx < 2 or ny < 2:
        raise ValueError("grid needs at least 2 nodes per axis")
    xs = np.linspace(x_min, x_max, nx)
    ys = np.linspace(y_min, y_max, ny)
    Z = xs[np.newaxis, :] + 1j * ys[:, np.newaxis]
    acc = np.full_like(Z, P.coeffs[-1])
    for c in reversed(P.coeffs[:-1]):
        acc = acc * Z + c
    values = np.abs(acc)
    return LevelSetGrid(x_min, x_max, y_min, y_max, nx, ny, values, float(threshold))


# Corner order within a cell: 0=(ix,iy) 1=(ix+1,iy) 2=(ix+1,iy+1) 3=(ix,iy+1).
# Edges between corners, keyed by (ix, iy, axis): axis 0 is the horizontal
# edge from (ix,iy) to (ix+1,iy), axis 1 the vertical edge to (ix,iy+1).
_CORNER_OFFSETS = ((0, 0), (1, 0), (1, 1), (0, 1))
_EDGE_CORNERS = ((0, 1), (1, 2), (3, 2), (0, 3))  # bottom, right, top, left


def _edge_key(ix: int, iy: int, edge: int) -> tuple[int, int, int]:
    if edge == 0:
        return (ix, iy, 0)
    if edge == 1:
        return (ix + 1, iy, 1)
    if edge == 2:
        return (ix, iy + 1, 0)
    return (ix, iy, 1)


# Segment table indexed by the 4-bit corner mask (bit k set = corner k below
# threshold); entries are (edge, edge) pairs. Cases 5 and 10 are saddles.
_SEGMENTS: dict[int, tuple[tuple[int, int], ...]] = {
    0: (),
    1: ((3, 0),),
    2: ((0, 1),),
    3: ((3, 1),),
    4: ((1, 2),),
    6: ((0, 2),),
    7: ((3, 2),),
    8: ((2, 3),),
    9: ((2, 0),),
    11: ((2, 1),),
    12: ((1, 3),),
    13: ((1, 0),),
    14: ((0, 3),),
    15: (),
}


def extract_contour(grid: LevelSetGrid) -> ContourSet:
    """Marching-squares isolines at the grid threshold.

    Returns an empty set when the threshold is never crossed. Vertices are
    linearly interpolated along cell edges, so they sit on the threshold up
    to one cell's worth of value variation.
    """
    v = grid.values
    t = grid.threshold
    xs = grid.xs
    ys = grid.ys
    below = v < t

    points: dict[tuple[int, int, int], tuple[float, float]] = {}
    adjacency: dict[tuple[int, int, int], list[tuple[int, int, int]]] = {}

    def interpolate(key: tuple[int, int, int]) -> tuple[float, float]:
        found = points.get(key)
        if found is not None:
            return found
        ix, iy, axis = key
        va = v[iy, ix]
        if axis == 0:
            vb = v[iy, ix + 1]
        else:
            vb = v[iy + 1, ix]
        denom = vb - va
        frac = 0.5 if denom == 0 else min(1.0, max(0.0, (t - va) / denom))
        if axis == 0:
            pt = (xs[ix] + frac * (xs[ix + 1] - xs[ix]), ys[iy])
        else:
            pt = (xs[ix], ys[iy] + frac * (ys[iy + 1] - ys[iy]))
        points[key] = pt
        return pt

    for iy in range(grid.ny - 1):
        for ix in range(grid.nx - 1):
            mask = 0
            for bit, (dx, dy) in enumerate(_CORNER_OFFSETS):
                if below[iy + dy, ix + dx]:
                    mask |= 1 << bit
            if mask in (0, 15):
                continue
            if mask in (5, 10):
                center = 0.25 * (
                    v[iy, ix] + v[iy, ix + 1] + v[iy + 1, ix + 1] + v[iy + 1, ix]
                )
                center_below = center < t
                if mask == 5:
                    segs = ((3, 0), (1, 2)) if not center_below else ((3, 2), (1, 0))
                else:
                    segs = ((0, 1), (2, 3)) if not center_below else ((0, 3), (2, 1))
            else:
                segs = _SEGMENTS[mask]
            for ea, eb in segs:
                ka = _edge_key(ix, iy, ea)
                kb = _edge_key(ix, iy, eb)
                interpolate(ka)
                interpolate(kb)
                adjacency.setdefault(ka, []).append(kb)
                adjacency.setdefault(kb, []).append(ka)

    polylines: list[tuple[tuple[float, float], ...]] = []
    closed_flags: list[bool] = []
    visited: set[frozenset] = set()

    def walk(start: tuple[int, int, int]) -> tuple[list[tuple[int, int, int]], bool]:
        chain = [start]
        current = start
        while True:
            nxt = None
            for cand in adjacency[current]:
                if frozenset((current, cand)) not in visited:
                    nxt = cand
                    break
            if nxt is None:
                return chain, False
            visited.add(frozenset((current, nxt)))
            if nxt == start:
                return chain, True
            chain.append(nxt)
            current = nxt

    # Open chains start at odd-degree keys; the rest are loops. Sorted start
    # order keeps output deterministic.
    keys_sorted = sorted(adjacency)
    for key in keys_sorted:
        if len(adjacency[key]) % 2 == 1:
            while any(
                frozenset((key, cand)) not in visited for cand in adjacency[key]
            ):
                chain, is_closed = walk(key)
                polylines.append(tuple(points[k] for k in chain))
                closed_flags.append(is_closed)
    for key in keys_sorted:
        while any(frozenset((key, cand)) not in visited for cand in adjacency[key]):
            chain, is_closed = walk(key)
            polylines.append(tuple(points[k] for k in chain))
            closed_flags.append(is_closed)

    return ContourSet(tuple(polylines), tuple(closed_flags))


def containment_check(
    P: ComplexPolynomial, crit: RootSet, threshold: float
) -> ContainmentReport:
    """Verify that 0 and every critical point lie in {|P| <= threshold}.

    The critical-point half is definitional when the threshold is the largest
    critical-value modulus, so it is allowed only a 1e-9 relative slack; the
    origin check gets an absolute-plus-relative slack.
    """
    verdicts = []
    origin_value = abs(P.evaluate(0j))
    slack = 1e-9 * (1.0 + threshold)
    verdicts.append(
        ContainmentVerdict(0j, origin_value, origin_value <= threshold + slack, "origin")
    )
    for i, zeta in enumerate(crit.locations):
        value = abs(P.evaluate(zeta))
        ok = value <= threshold * (1.0 + 1e-9) + 1e-300
        verdicts.append(ContainmentVerdict(zeta, value, ok, f"critical-{i}"))
    return ContainmentReport(tuple(verdicts), all(v.ok for v in verdicts))


def max_critical_value(P: ComplexPolynomial, crit: RootSet) -> float:
    """R^d: the largest |P(zeta)| over the critical points."""
    return max(abs(P.evaluate(zeta)) for zeta in crit.locations)


def default_window(crit: RootSet) -> tuple[float, float, float, float]:
    """Square window around the critical-point centroid, half-width 2.5*max(1, max|zeta|)."""
    locations = crit.locations
    centroid = sum(locations) / len(locations)
    half = 2.5 * max(1.0, max(abs(z) for z in locations))
    return (
        centroid.real - half,
        centroid.real + half,
        centroid.imag - half,
        centroid.imag + half,
    )


def write_grid_csv(path: str, grid: LevelSetGrid) -> None:
    """Dump the sampled field as x,y,abs_p rows (row-major, LF endings)."""
    xs = grid.xs
    ys = grid.ys
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("x,y,abs_p\n")
        for iy in range(grid.ny):
            for ix in range(grid.nx):
                fh.write(f"{xs[ix]!r},{ys[iy]!r},{grid.values[iy, ix]!r}\n")


def write_svg(
    path: str,
    grid: LevelSetGrid,
    contours: ContourSet,
    crit: RootSet,
    size: int = 640,
    margin: int = 20,
) -> None:
    """Render contours plus markers at the origin and critical points (SVG 1.1)."""
    span_x = grid.x_max - grid.x_min
    span_y = grid.y_max - grid.y_min
    inner = size - 2 * margin
    scale = inner / max(span_x, span_y)

    def to_px(x: float, y: float) -> tuple[float, float]:
        return (
            margin + (x - grid.x_min) * scale,
            size - margin - (y - grid.y_min) * scale,
        )

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>',
    ]
    for polyline, closed in zip(contours.polylines, contours.closed):
        coords = " ".join(
            "{:.3f},{:.3f}".format(*to_px(px, py)) for px, py in polyline
        )
        if closed:
            parts.append(
                f'<polygon points="{coords}" fill="none" stroke="#1f77b4" stroke-width="1.5"/>'
            )
        else:
            parts.append(
                f'<polyline points="{coords}" fill="none" stroke="#1f77b4" stroke-width="1.5"/>'
            )
    ox, oy = to_px(0.0, 0.0)
    parts.append(
        f'<line x1="{ox - 6:.3f}" y1="{oy:.3f}" x2="{ox + 6:.3f}" y2="{oy:.3f}" '
        'stroke="#2ca02c" stroke-width="1.5"/>'
    )
    parts.append(
        f'<line x1="{ox:.3f}" y1="{oy - 6:.3f}" x2="{ox:.3f}" y2="{oy + 6:.3f}" '
        'stroke="#2ca02c" stroke-width="1.5"/>'
    )
    for zeta in crit.locations:
        cx, cy = to_px(zeta.real, zeta.imag)
        parts.append(
            f'<circle cx="{cx:.3f}" cy="{cy:.3f}" r="3.5" fill="none" '
            'stroke="#d62728" stroke-width="1.5"/>'
        )
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(parts) + "\n")
