"""Square gray-scale image values, scan-order addressing and histograms.

A grid is an immutable value: every transformation builds a new one. Pixels
are kept in row-major scan order starting from the upper-left corner; that
convention is shared by every stage of the cipher and is part of the wire
contract (two implementations must agree on it to exchange ciphertexts).
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ContractViolation

MIN_BIT_DEPTH = 1
MAX_BIT_DEPTH = 16


@dataclass(frozen=True)
class PixelGrid:
    """N x N image of ``bit_depth``-bit gray values in row-major order."""

    size: int
    bit_depth: int
    pixels: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.size < 2:
            raise ContractViolation(f"grid size must be >= 2, got {self.size}")
        if not MIN_BIT_DEPTH <= self.bit_depth <= MAX_BIT_DEPTH:
            raise ContractViolation(
                f"bit depth must be in [{MIN_BIT_DEPTH}, {MAX_BIT_DEPTH}], got {self.bit_depth}"
            )
        px = np.ascontiguousarray(self.pixels, dtype=np.int64)
        if px.ndim == 2:
            px = px.reshape(-1)
        if px.shape != (self.size * self.size,):
            raise ContractViolation(
                f"expected {self.size * self.size} pixels, got {px.size} (square images only)"
            )
        if px.size and (int(px.min()) < 0 or int(px.max()) > self.levels - 1):
            raise ContractViolation(
                f"pixel values must lie in [0, {self.levels - 1}]"
            )
        px.flags.writeable = False
        object.__setattr__(self, "pixels", px)

    @property
    def levels(self) -> int:
        """Number of gray levels (2 ** bit_depth)."""
        return 1 << self.bit_depth

    def with_pixels(self, pixels: np.ndarray) -> "PixelGrid":
        """New grid of the same geometry holding ``pixels``."""
        return PixelGrid(self.size, self.bit_depth, pixels)

    def as_array(self) -> np.ndarray:
        """Read-only (size, size) view of the pixels."""
        return self.pixels.reshape(self.size, self.size)


@dataclass(frozen=True)
class Histogram:
    """Per-gray-level pixel counts."""

    counts: np.ndarray = field(repr=False)

    @property
    def total(self) -> int:
        return int(self.counts.sum())


def scan_index(x: int, y: int, size: int) -> int:
    """Linear index of column ``x``, row ``y`` in row-major scan order."""
    if not (0 <= x < size and 0 <= y < size):
        raise ContractViolation(f"coordinate ({x}, {y}) outside [0, {size})^2")
    return y * size + x


def histogram(grid: PixelGrid) -> Histogram:
    """Count pixels per gray level; counts sum to size**2."""
    counts = np.bincount(grid.pixels, minlength=grid.levels)
    return Histogram(counts.astype(np.int64))
