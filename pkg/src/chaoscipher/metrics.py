"""Differential, correlation and histogram-uniformity metrics."""

from dataclasses import dataclass, field

import numpy as np

from .errors import ContractViolation
from .grid import Histogram, PixelGrid

HORIZONTAL = "horizontal"
VERTICAL = "vertical"
DIAGONAL = "diagonal"
DIRECTIONS = (HORIZONTAL, VERTICAL, DIAGONAL)


@dataclass(frozen=True)
class AnalysisReport:
    """Results of one experiment; pairwise fields are None for single-image runs."""

    npcr: float | None = None
    uaci: float | None = None
    correlations: dict[str, float] = field(default_factory=dict)
    chi_square: float | None = None
    timings: dict[str, float] = field(default_factory=dict)

    def kv_lines(self) -> list[str]:
        lines = []
        if self.npcr is not None:
            lines.append(f"npcr={self.npcr:.6f}")
        if self.uaci is not None:
            lines.append(f"uaci={self.uaci:.6f}")
        for name in DIRECTIONS:
            if name in self.correlations:
                lines.append(f"corr_{name}={self.correlations[name]:.6f}")
        if self.chi_square is not None:
            lines.append(f"chi_square={self.chi_square:.3f}")
        for name, seconds in self.timings.items():
            lines.append(f"time_{name}_ms={seconds * 1e3:.3f}")
        return lines

    @staticmethod
    def csv_header() -> str:
        return "npcr,uaci,corr_horizontal,corr_vertical,corr_diagonal,chi_square"

    def csv_row(self) -> str:
        def cell(v):
            return "" if v is None else f"{v:.6f}"

        return ",".join(
            [
                cell(self.npcr),
                cell(self.uaci),
                cell(self.correlations.get(HORIZONTAL)),
                cell(self.correlations.get(VERTICAL)),
                cell(self.correlations.get(DIAGONAL)),
                cell(self.chi_square),
            ]
        )


def _check_pair(a: PixelGrid, b: PixelGrid, same_depth: bool = False):
    if a.size != b.size:
        raise ContractViolation(f"grid sizes differ: {a.size} vs {b.size}")
    if same_depth and a.bit_depth != b.bit_depth:
        raise ContractViolation(f"bit depths differ: {a.bit_depth} vs {b.bit_depth}")


def npcr(a: PixelGrid, b: PixelGrid) -> float:
    """Fraction of positions at which the two grids differ."""
    _check_pair(a, b)
    return float(np.count_nonzero(a.pixels != b.pixels)) / a.pixels.size


def uaci(a: PixelGrid, b: PixelGrid) -> float:
    """Mean absolute difference normalized by the maximum gray level."""
    _check_pair(a, b, same_depth=True)
    diff = np.abs(a.pixels - b.pixels)
    return float(diff.sum()) / (a.pixels.size * (a.levels - 1))


def _pairs(grid: PixelGrid, direction: str) -> tuple[np.ndarray, np.ndarray]:
    img = grid.as_array()
    if direction == HORIZONTAL:
        return img[:, :-1].ravel(), img[:, 1:].ravel()
    if direction == VERTICAL:
        return img[:-1, :].ravel(), img[1:, :].ravel()
    if direction == DIAGONAL:  # down-right neighbor
        return img[:-1, :-1].ravel(), img[1:, 1:].ravel()
    raise ContractViolation(f"direction must be one of {DIRECTIONS}, got {direction!r}")


def correlation(
    grid: PixelGrid,
    direction: str,
    sample_count: int | None = None,
    seed: int | None = None,
) -> float:
    """Pearson correlation over adjacent-pixel pairs in the given direction.

    All pairs are used by default; pass ``sample_count`` to sample uniformly
    without replacement (``seed`` makes the sampling reproducible).
    """
    xs, ys = _pairs(grid, direction)
    if sample_count is not None:
        if sample_count < 1:
            raise ContractViolation("sample count must be positive")
        if sample_count < xs.size:
            picks = np.random.default_rng(seed).choice(xs.size, size=sample_count, replace=False)
            xs, ys = xs[picks], ys[picks]
    xs = xs.astype(np.float64)
    ys = ys.astype(np.float64)
    dx = xs - xs.mean()
    dy = ys - ys.mean()
    sx = float(np.dot(dx, dx))
    sy = float(np.dot(dy, dy))
    if sx == 0.0 or sy == 0.0:
        raise ContractViolation(
            f"zero variance along {direction} pairs (constant image?); correlation undefined"
        )
    return float(np.dot(dx, dy)) / (sx * sy) ** 0.5


def chi_square_uniformity(hist: Histogram) -> float:
    """Chi-square statistic of the histogram against the uniform distribution."""
    total = hist.total
    if total <= 0:
        raise ContractViolation("histogram is empty")
    expected = total / hist.counts.size
    dev = hist.counts.astype(np.float64) - expected
    return float((dev * dev).sum() / expected)
