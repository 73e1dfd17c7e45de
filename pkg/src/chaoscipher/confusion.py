"""Confusion stage: standard-map pixel relocation plus add-and-shift mixing.

One confusion round first relocates every pixel with the discretized
standard map and then, in the "proposed" variant, sweeps the relocated grid
once in scan order replacing each value with

    ror((value + prev) mod G, low-3-bits(prev))

where ``prev`` is the value already written at the previous scan position
(the chain is seeded with a per-stage key value). Running the value chain
over the relocated grid is what lets a corner differential spread in the
very first round. The chain is inherently sequential - the whole round is
exposed as a single operation so callers cannot parallelize it by mistake.

The "baseline" variant relocates only, leaving values untouched.
"""

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import _backend
from .errors import ContractViolation
from .grid import PixelGrid
from .keyschedule import PermKey

PROPOSED = "proposed"
BASELINE = "baseline"
VARIANTS = (PROPOSED, BASELINE)

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Permutation:
    """Explicit bijection on the size**2 cell indices."""

    forward: np.ndarray = field(repr=False)
    size: int

    def inverted(self) -> np.ndarray:
        inv = np.empty_like(self.forward)
        inv[self.forward] = np.arange(self.forward.size, dtype=np.int64)
        return inv


def _round_half_away(value: float) -> int:
    return math.floor(value + 0.5) if value >= 0.0 else math.ceil(value - 0.5)


@lru_cache(maxsize=256)
def _sine_kicks(size: int, kick: int) -> tuple[int, ...]:
    """round(kick * sin(2*pi*k/size)) for every column k, as exact integers.

    Shared by the forward and inverse maps so both use bit-identical values.
    """
    return tuple(_round_half_away(kick * math.sin(TWO_PI * k / size)) for k in range(size))


def std_map_point(x: int, y: int, key: PermKey) -> tuple[int, int]:
    """Forward discretized standard map applied to one cell."""
    n = key.size
    if not (0 <= x < n and 0 <= y < n):
        raise ContractViolation(f"cell ({x}, {y}) outside [0, {n})^2")
    xn = (x + y + key.offset_x + key.offset_y) % n
    yn = (y + key.offset_y + _sine_kicks(n, key.kick)[xn]) % n
    return xn, yn


def std_map_inverse_point(x: int, y: int, key: PermKey) -> tuple[int, int]:
    """Inverse of std_map_point (recovers the original cell)."""
    n = key.size
    if not (0 <= x < n and 0 <= y < n):
        raise ContractViolation(f"cell ({x}, {y}) outside [0, {n})^2")
    yo = (y - key.offset_y - _sine_kicks(n, key.kick)[x]) % n
    xo = (x - yo - key.offset_x - key.offset_y) % n
    return xo, yo


@lru_cache(maxsize=32)
def _build_permutation_cached(key: PermKey) -> Permutation:
    n = key.size
    kicks = np.asarray(_sine_kicks(n, key.kick), dtype=np.int64)
    idx = np.arange(n * n, dtype=np.int64)
    y, x = np.divmod(idx, n)
    xn = (x + y + key.offset_x + key.offset_y) % n
    yn = (y + key.offset_y + kicks[xn]) % n
    forward = yn * n + xn
    # Algebraically invertible, so any failure here is a rounding bug.
    seen = np.zeros(n * n, dtype=bool)
    seen[forward] = True
    if not seen.all():
        raise AssertionError("standard map produced a non-bijective table")
    forward.flags.writeable = False
    return Permutation(forward, n)


def build_permutation(key: PermKey) -> Permutation:
    """Apply the standard map to every cell; the sine term is evaluated once per column.

    Tables are cached per key: one encryption reuses each round key twice
    (encrypt and decrypt) and benchmarks reuse them across trials.
    """
    return _build_permutation_cached(key)


def mix_value(p: int, v_prev: int, levels: int) -> int:
    """Add the previous mixed value, then rotate right by its low 3 bits."""
    if levels < 2 or levels & (levels - 1):
        raise ContractViolation(f"levels must be a power of two >= 2, got {levels}")
    if not (0 <= p < levels and 0 <= v_prev < levels):
        raise ContractViolation("pixel values must lie in [0, levels)")
    bits = levels.bit_length() - 1
    s = (p + v_prev) % levels
    q = (v_prev & 7) % bits
    if q == 0:
        return s
    return ((s >> q) | (s << (bits - q))) & (levels - 1)


def unmix_value(v: int, v_prev: int, levels: int) -> int:
    """Inverse of mix_value: rotate left by low3(v_prev), subtract v_prev mod G."""
    if levels < 2 or levels & (levels - 1):
        raise ContractViolation(f"levels must be a power of two >= 2, got {levels}")
    if not (0 <= v < levels and 0 <= v_prev < levels):
        raise ContractViolation("pixel values must lie in [0, levels)")
    bits = levels.bit_length() - 1
    q = (v_prev & 7) % bits
    if q:
        s = ((v << q) | (v >> (bits - q))) & (levels - 1)
    else:
        s = v
    return (s - v_prev) % levels


def confuse_round(grid: PixelGrid, key: PermKey, mix_seed: int, variant: str = PROPOSED) -> PixelGrid:
    """One confusion round: relocate, then (proposed variant) mix values in scan order."""
    _check_round_args(grid, key, mix_seed, variant)
    relocated = np.empty_like(grid.pixels)
    relocated[build_permutation(key).forward] = grid.pixels
    if variant == BASELINE:
        return grid.with_pixels(relocated)
    return grid.with_pixels(_backend.mix_seq(relocated, mix_seed, grid.bit_depth))


def inverse_confuse_round(grid: PixelGrid, key: PermKey, mix_seed: int, variant: str = PROPOSED) -> PixelGrid:
    """Exact inverse of confuse_round with the same key."""
    _check_round_args(grid, key, mix_seed, variant)
    if variant == BASELINE:
        relocated = grid.pixels
    else:
        relocated = _backend.unmix_seq(grid.pixels, mix_seed, grid.bit_depth)
    return grid.with_pixels(relocated[build_permutation(key).forward])


def _check_round_args(grid: PixelGrid, key: PermKey, mix_seed: int, variant: str):
    if key.size != grid.size:
        raise ContractViolation(f"key is for size {key.size}, grid has size {grid.size}")
    if not 0 <= mix_seed < grid.levels:
        raise ContractViolation(f"mix seed must lie in [0, {grid.levels})")
    if variant not in VARIANTS:
        raise ContractViolation(f"variant must be one of {VARIANTS}, got {variant!r}")
