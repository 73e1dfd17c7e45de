"""Synthetic test images: white, gradient, uniform noise and smooth value noise.

The value-noise generator produces natural-image statistics (strong adjacent
-pixel correlation) without shipping any photographs; all generators are
deterministic in their seed.
"""

import numpy as np

from .errors import ContractViolation
from .grid import PixelGrid


def white(size: int, bit_depth: int = 8) -> PixelGrid:
    """Constant image at full intensity."""
    levels = 1 << bit_depth
    return PixelGrid(size, bit_depth, np.full(size * size, levels - 1, dtype=np.int64))


def gradient(size: int, bit_depth: int = 8) -> PixelGrid:
    """Each pixel equals its column index mod the number of gray levels."""
    levels = 1 << bit_depth
    col = np.arange(size, dtype=np.int64) % levels
    return PixelGrid(size, bit_depth, np.tile(col, size))


def uniform_random(size: int, bit_depth: int = 8, seed: int = 0) -> PixelGrid:
    """Independent uniform gray values."""
    rng = np.random.default_rng(seed)
    return PixelGrid(size, bit_depth, rng.integers(0, 1 << bit_depth, size * size))


def value_noise(size: int, bit_depth: int = 8, seed: int = 0, cell: int = 32, octaves: int = 3) -> PixelGrid:
    """Smooth multi-octave value noise quantized to gray levels.

    Adjacent pixels are highly correlated (horizontal Pearson r well above
    0.9 at the default cell size), mimicking plain natural images.
    """
    if cell < 2 or cell > size:
        raise ContractViolation(f"cell must be in [2, size], got {cell}")
    rng = np.random.default_rng(seed)
    acc = np.zeros((size, size))
    amplitude = 1.0
    step = cell
    for _ in range(octaves):
        cells = max(2, size // step)
        lattice = rng.random((cells + 1, cells + 1))
        pos = np.linspace(0.0, cells, size, endpoint=False)
        base = pos.astype(np.int64)
        frac = pos - base
        frac = frac * frac * (3.0 - 2.0 * frac)  # smoothstep
        a00 = lattice[np.ix_(base, base)]
        a01 = lattice[np.ix_(base, base + 1)]
        a10 = lattice[np.ix_(base + 1, base)]
        a11 = lattice[np.ix_(base + 1, base + 1)]
        top = a00 + (a01 - a00) * frac[None, :]
        bottom = a10 + (a11 - a10) * frac[None, :]
        acc += amplitude * (top + (bottom - top) * frac[:, None])
        amplitude *= 0.5
        step = max(2, step // 2)
    lo, hi = acc.min(), acc.max()
    levels = 1 << bit_depth
    quantized = np.floor((acc - lo) / (hi - lo) * levels).clip(0, levels - 1)
    return PixelGrid(size, bit_depth, quantized.astype(np.int64).ravel())


def flip_low_bit_last(grid: PixelGrid) -> PixelGrid:
    """Flip the lowest bit of the bottom-right pixel (the canonical differential)."""
    pixels = grid.pixels.copy()
    pixels[-1] ^= 1
    return grid.with_pixels(pixels)
