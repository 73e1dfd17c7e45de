"""Selects the compiled kernels when available, pure Python otherwise.

The choice is made at import time and can be forced with the environment
variable ``CHAOSCIPHER_BACKEND=cython|python`` or at runtime with
:func:`set_backend` (used by the benchmark to compare both).
"""

import os

import numpy as np

from . import _kernels_py
from .errors import ContractViolation

try:
    from . import _kernels_cy
except ImportError:
    _kernels_cy = None

_MODULES = {"python": _kernels_py}
if _kernels_cy is not None:
    _MODULES["cython"] = _kernels_cy

_active = _kernels_py
_requested = os.environ.get("CHAOSCIPHER_BACKEND", "").strip().lower()
if _requested in ("", "auto"):
    _active = _kernels_cy if _kernels_cy is not None else _kernels_py
elif _requested in _MODULES:
    _active = _MODULES[_requested]
else:
    raise ImportError(
        f"CHAOSCIPHER_BACKEND={_requested!r} not recognized; "
        f"available: {', '.join(sorted(_MODULES))}, auto"
    )


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_MODULES))


def backend_name() -> str:
    return _active.BACKEND_NAME


def set_backend(name: str) -> str:
    """Switch kernel implementations; returns the previously active name."""
    global _active
    if name in ("", "auto"):
        name = "cython" if "cython" in _MODULES else "python"
    if name not in _MODULES:
        raise ContractViolation(
            f"unknown backend {name!r}; available: {', '.join(sorted(_MODULES))}"
        )
    previous = _active.BACKEND_NAME
    _active = _MODULES[name]
    return previous


def _run(kernel_name: str, values: np.ndarray, seed, bit_depth: int) -> np.ndarray:
    values = np.ascontiguousarray(values, dtype=np.int64)
    out = np.empty_like(values)
    getattr(_active, kernel_name)(values, out, seed, bit_depth)
    return out


def mix_seq(values: np.ndarray, mix_seed: int, bit_depth: int) -> np.ndarray:
    return _run("mix_seq", values, mix_seed, bit_depth)


def unmix_seq(values: np.ndarray, mix_seed: int, bit_depth: int) -> np.ndarray:
    return _run("unmix_seq", values, mix_seed, bit_depth)


def diffuse_seq(values: np.ndarray, diffusion_seed: float, bit_depth: int) -> np.ndarray:
    return _run("diffuse_seq", values, diffusion_seed, bit_depth)


def undiffuse_seq(values: np.ndarray, diffusion_seed: float, bit_depth: int) -> np.ndarray:
    return _run("undiffuse_seq", values, diffusion_seed, bit_depth)
