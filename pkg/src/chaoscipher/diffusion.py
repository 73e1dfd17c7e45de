"""Diffusion stage: sequential XOR with a logistic-map keystream.

Each keystream byte is one logistic iteration of the previous *cipher*
value, so decryption can regenerate the stream from the ciphertext alone.
All real arithmetic is 64-bit IEEE-754 round-to-nearest; backends must not
reassociate or fuse the product 4*x*(1-x), otherwise ciphertexts stop being
portable between them.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import ContractViolation


@dataclass(frozen=True)
class DiffusionKey:
    """Keystream seed in (0,1); production seeds come pre-clamped from the key schedule."""

    seed: float

    def __post_init__(self):
        if not 0.0 < self.seed < 1.0:
            raise ContractViolation(f"diffusion seed must be in (0,1), got {self.seed}")


def logistic(x: float) -> float:
    """4x(1-x) on [0,1]."""
    if not 0.0 <= x <= 1.0:
        raise ContractViolation(f"logistic input must be in [0,1], got {x}")
    return 4.0 * x * (1.0 - x)


def quantize(x: float, bit_depth: int) -> int:
    """First ``bit_depth`` fractional bits of x (so 1.0 quantizes to 0)."""
    if not 0.0 <= x <= 1.0:
        raise ContractViolation(f"quantize input must be in [0,1], got {x}")
    if not 1 <= bit_depth <= 52:
        raise ContractViolation(f"bit depth must be in [1,52], got {bit_depth}")
    return math.floor(x * (1 << bit_depth)) % (1 << bit_depth)


def normalize_pixel(c: int, levels: int) -> float:
    """Map a gray value to (0,1) strictly avoiding 0, 0.5 and 1.

    (c + 0.5)/levels never hits the logistic fixed points or the peak
    pre-image, so the keystream cannot collapse onto a degenerate orbit.
    """
    if levels < 2:
        raise ContractViolation(f"levels must be >= 2, got {levels}")
    if not 0 <= c < levels:
        raise ContractViolation(f"pixel value must lie in [0, {levels})")
    return (c + 0.5) / levels


def _check_sequence(values: np.ndarray, bit_depth: int) -> np.ndarray:
    values = np.ascontiguousarray(values, dtype=np.int64)
    if values.ndim != 1 or values.size == 0:
        raise ContractViolation("expected a non-empty 1-D sequence of pixel values")
    if int(values.min()) < 0 or int(values.max()) >> bit_depth:
        raise ContractViolation(f"values must lie in [0, 2**{bit_depth})")
    return values


def diffuse(values: np.ndarray, key: DiffusionKey, bit_depth: int) -> np.ndarray:
    """XOR-mask ``values`` in scan order with the chained logistic keystream."""
    return _backend.diffuse_seq(_check_sequence(values, bit_depth), key.seed, bit_depth)


def undiffuse(values: np.ndarray, key: DiffusionKey, bit_depth: int) -> np.ndarray:
    """Exact inverse of diffuse under the same key."""
    return _backend.undiffuse_seq(_check_sequence(values, bit_depth), key.seed, bit_depth)


def keystream(values: np.ndarray, key: DiffusionKey, bit_depth: int) -> np.ndarray:
    """The pad bytes diffuse() would XOR against ``values`` (for analysis)."""
    values = _check_sequence(values, bit_depth)
    return diffuse(values, key, bit_depth) ^ values
