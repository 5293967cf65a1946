"""Hexagonal network geometry, test-point grids, and channel coupling statistics.

The layout is a 19-cell cluster on a triangular lattice with wrap-around:
every cell sees the same interference environment because out-of-cluster
interferers are replaced by translated images of in-cluster cells.  Each
cell carries a deterministic low-discrepancy grid of user test points over
the hexagon minus an inner exclusion disc; spatial averages over that grid
produce the serving-gain statistic ``lambda_serving`` and the normalized
cross-gain matrix ``lambda_cross`` consumed by the rate model.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import qmc

from .errors import ConfigError

# Lattice generators of the 19-cell wrap-around tiling, in axial hex
# coordinates: the six 60-degree rotations of (3, 2).  Norm^2 = 19 in
# lattice units, so the translated clusters tile the plane exactly.
_WRAP_AXIAL = [(3, 2), (-2, 5), (-5, 3), (-3, -2), (2, -5), (5, -3)]


@dataclass(frozen=True)
class GeometryConfig:
    """Cell geometry and path-loss parameters.

    ``cell_radius_m`` is the hexagon circumradius (largest center-to-user
    distance); ``min_distance_m`` is the inner exclusion radius around the
    base station.  Path gain at distance d is
    ``pathloss_coeff / d**pathloss_exponent``.
    """

    cell_radius_m: float = 500.0
    min_distance_m: float = 35.0
    num_cells: int = 19
    grid_points_per_cell: int = 15000
    pathloss_coeff: float = 10.0 ** -3.53
    pathloss_exponent: float = 3.76

    def validate(self) -> None:
        if not 0.0 < self.min_distance_m < self.cell_radius_m:
            raise ConfigError(
                "min_distance_m: need 0 < min_distance_m < cell_radius_m, got "
                f"min_distance_m={self.min_distance_m}, cell_radius_m={self.cell_radius_m}"
            )
        if self.num_cells not in (1, 19):
            raise ConfigError(
                f"num_cells: wrap-around tiling is defined for 19 cells "
                f"(1 allowed as degenerate case), got {self.num_cells}"
            )
        if self.grid_points_per_cell < 1:
            raise ConfigError(
                f"grid_points_per_cell: need >= 1, got {self.grid_points_per_cell}"
            )
        if self.pathloss_exponent <= 2.0:
            raise ConfigError(
                f"pathloss_exponent: need > 2, got {self.pathloss_exponent}"
            )
        if self.pathloss_coeff <= 0.0:
            raise ConfigError(
                f"pathloss_coeff: need > 0, got {self.pathloss_coeff}"
            )


@dataclass
class NetworkLayout:
    """Cell centers, per-cell test points (absolute coords), wrap translations."""

    cell_centers: np.ndarray  # (C, 2)
    test_points: np.ndarray   # (C, G, 2)
    wrap_offsets: np.ndarray  # (W, 2); W = 6 for the 19-cell cluster, 0 for C = 1

    @property
    def num_cells(self) -> int:
        return self.cell_centers.shape[0]


@dataclass
class CouplingMatrix:
    """Channel coupling statistics of a layout.

    ``lambda_serving[c]`` is the mean inverse serving path gain over cell c's
    test points.  ``lambda_cross[c, d]`` is the mean ratio of interfering
    (cell d, wrap-aware) to serving (cell c) path gain over the same points;
    the diagonal is unused and stored as 0.
    """

    lambda_serving: np.ndarray  # (C,)
    lambda_cross: np.ndarray    # (C, C), zero diagonal

    @property
    def num_cells(self) -> int:
        return self.lambda_serving.shape[0]


def path_loss(distance_m, cfg: GeometryConfig):
    """Path gain coeff / d**exponent.  Accepts scalars or arrays; d must be > 0."""
    d = np.asarray(distance_m, dtype=float)
    if np.any(d <= 0.0):
        raise ValueError(f"distance_m must be > 0, got {distance_m}")
    out = cfg.pathloss_coeff / d ** cfg.pathloss_exponent
    return float(out) if np.isscalar(distance_m) else out


def _lattice_basis(cfg: GeometryConfig) -> tuple[np.ndarray, np.ndarray]:
    # Neighbor spacing of hexagons with circumradius R is sqrt(3) * R.
    pitch = math.sqrt(3.0) * cfg.cell_radius_m
    a1 = pitch * np.array([1.0, 0.0])
    a2 = pitch * np.array([0.5, math.sqrt(3.0) / 2.0])
    return a1, a2


def _hex_contains(xy: np.ndarray, radius: float) -> np.ndarray:
    """Membership test for a pointy-top hexagon with given circumradius."""
    x = np.abs(xy[:, 0])
    y = np.abs(xy[:, 1])
    return (x <= math.sqrt(3.0) * radius / 2.0) & (y <= radius - x / math.sqrt(3.0))


def _cell_grid(cfg: GeometryConfig) -> np.ndarray:
    """Deterministic Halton grid over the hexagonal annulus, center-relative.

    Points are uniform by area over {inside hexagon} minus the min-distance
    disc; the same relative grid is reused for every cell, which keeps the
    layout exactly cell-symmetric.
    """
    radius = cfg.cell_radius_m
    sampler = qmc.Halton(d=2, scramble=False)
    kept = []
    total = 0
    while total < cfg.grid_points_per_cell:
        raw = sampler.random(4 * cfg.grid_points_per_cell)
        xy = np.column_stack([
            (raw[:, 0] - 0.5) * math.sqrt(3.0) * radius,
            (raw[:, 1] - 0.5) * 2.0 * radius,
        ])
        ok = _hex_contains(xy, radius) & (
            np.linalg.norm(xy, axis=1) >= cfg.min_distance_m
        )
        kept.append(xy[ok])
        total += int(ok.sum())
    return np.concatenate(kept)[: cfg.grid_points_per_cell]


def build_layout(cfg: GeometryConfig) -> NetworkLayout:
    """Build cell centers, wrap translations, and per-cell test-point grids."""
    cfg.validate()
    a1, a2 = _lattice_basis(cfg)
    if cfg.num_cells == 1:
        centers = np.zeros((1, 2))
        wraps = np.zeros((0, 2))
    else:
        centers = np.array([
            q * a1 + r * a2
            for q in range(-2, 3)
            for r in range(-2, 3)
            if max(abs(q), abs(r), abs(q + r)) <= 2
        ])
        wraps = np.array([i * a1 + j * a2 for i, j in _WRAP_AXIAL])
    grid = _cell_grid(cfg)
    points = centers[:, None, :] + grid[None, :, :]
    return NetworkLayout(cell_centers=centers, test_points=points, wrap_offsets=wraps)


def _images(layout: NetworkLayout, cell: int) -> np.ndarray:
    """(W+1, 2) positions of a cell center and its wrap images."""
    base = layout.cell_centers[cell]
    return np.vstack([base[None, :], base[None, :] + layout.wrap_offsets])


def wrapped_distance(layout: NetworkLayout, cell: int, point) -> float:
    """Smallest distance from any image of ``cell``'s center to ``point``."""
    if not 0 <= cell < layout.num_cells:
        raise IndexError(f"cell index {cell} out of range [0, {layout.num_cells})")
    p = np.asarray(point, dtype=float)
    return float(np.linalg.norm(_images(layout, cell) - p[None, :], axis=1).min())


def _wrapped_distances(layout: NetworkLayout, cell: int, points: np.ndarray) -> np.ndarray:
    """Vectorized wrapped distance from ``cell`` to an (N, 2) point array."""
    img = _images(layout, cell)
    diff = points[:, None, :] - img[None, :, :]
    return np.sqrt((diff ** 2).sum(axis=2)).min(axis=1)


def compute_coupling(layout: NetworkLayout, cfg: GeometryConfig) -> CouplingMatrix:
    """Average the serving and cross path-gain statistics over the grids.

    For each cell c the serving statistic is E{1/g_c} and the cross entry for
    interferer d is E{g_d / g_c}, where g are path gains at the test points
    and interferer distances take the nearest wrap image.
    """
    cfg.validate()
    n_cells = layout.num_cells
    lam_serving = np.zeros(n_cells)
    lam_cross = np.zeros((n_cells, n_cells))
    for c in range(n_cells):
        pts = layout.test_points[c]
        gain_serving = path_loss(
            np.linalg.norm(pts - layout.cell_centers[c][None, :], axis=1), cfg
        )
        lam_serving[c] = np.mean(1.0 / gain_serving)
        for d in range(n_cells):
            if d == c:
                continue
            gain_cross = path_loss(_wrapped_distances(layout, d, pts), cfg)
            lam_cross[c, d] = np.mean(gain_cross / gain_serving)
    return CouplingMatrix(lambda_serving=lam_serving, lambda_cross=lam_cross)


def export_coupling_csv(coupling: CouplingMatrix, path) -> None:
    """Write coupling entries as rows (c, d, lambda); d == c rows carry lambda_serving."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["c", "d", "lambda"])
        for c in range(coupling.num_cells):
            writer.writerow([c, c, repr(float(coupling.lambda_serving[c]))])
            for d in range(coupling.num_cells):
                if d != c:
                    writer.writerow([c, d, repr(float(coupling.lambda_cross[c, d]))])
