"""Stage-timing harness: per-stage medians, round sweeps, backend comparison.

All timings use a monotonic clock and report the median of the trial runs
after two untimed warm-ups. Ratios between stages are meaningful on one
machine; absolute milliseconds are not portable.
"""

import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import _backend
from .cipher import CipherParams, decrypt, encrypt
from .confusion import BASELINE, PROPOSED, confuse_round
from .diffusion import DiffusionKey, diffuse, keystream, undiffuse
from .errors import ContractViolation
from .grid import PixelGrid
from .keyschedule import SeedKey, derive_round_keys
from .metrics import npcr, uaci
from .synth import flip_low_bit_last, uniform_random

WARMUP_RUNS = 2

STAGES = (
    "key_generation",
    "permutation_round",
    "confusion_round",
    "diffusion_round",
    "full_encrypt",
    "full_decrypt",
)


@dataclass(frozen=True)
class BenchResult:
    grid_size: int
    trials: int
    stage_ms: dict[str, float]

    def __post_init__(self):
        if self.trials < 3:
            raise ContractViolation(f"need at least 3 trials, got {self.trials}")
        if any(v <= 0.0 for v in self.stage_ms.values()):
            raise ContractViolation("stage durations must be positive")

    def lines(self) -> list[str]:
        width = max(len(s) for s in self.stage_ms)
        out = [f"size={self.grid_size} trials={self.trials} backend={_backend.backend_name()}"]
        out += [f"{name.ljust(width)}  {ms:10.3f} ms" for name, ms in self.stage_ms.items()]
        return out


def _median_time(fn, trials: int) -> float:
    for _ in range(WARMUP_RUNS):
        fn()
    samples = []
    for _ in range(trials):
        start = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - start)
    return statistics.median(samples)


def _stage_callable(stage: str, grid: PixelGrid, seed: SeedKey, params: CipherParams):
    keys = derive_round_keys(
        seed, params.overall_rounds, params.confusion_rounds, grid.size, grid.levels
    )
    first = keys.stages[0]
    perm_key = first.perm_keys[0]
    diff_key = DiffusionKey(first.diffusion_seed)
    cipher_grid = encrypt(grid, seed, params)
    return {
        "key_generation": lambda: derive_round_keys(
            seed, params.overall_rounds, params.confusion_rounds, grid.size, grid.levels
        ),
        "permutation_round": lambda: confuse_round(grid, perm_key, first.mix_seed, BASELINE),
        "confusion_round": lambda: confuse_round(grid, perm_key, first.mix_seed, PROPOSED),
        "diffusion_round": lambda: diffuse(grid.pixels, diff_key, grid.bit_depth),
        "full_encrypt": lambda: encrypt(grid, seed, params),
        "full_decrypt": lambda: decrypt(cipher_grid, seed, params),
    }[stage]


def _parallel_trial(payload) -> float:
    stage, size, m, n, variant, key_hex, image_seed = payload
    grid = uniform_random(size, 8, image_seed)
    fn = _stage_callable(stage, grid, SeedKey.from_hex(key_hex), CipherParams(m, n, variant))
    fn()  # warm caches in this worker
    start = time.perf_counter()
    fn()
    return time.perf_counter() - start


def time_stages(
    size: int,
    m: int,
    n: int,
    variant: str,
    trials: int,
    seed_key: SeedKey,
    image_seed: int = 0,
    parallel: bool = False,
) -> BenchResult:
    """Median per-stage durations for one configuration."""
    if trials < 3:
        raise ContractViolation(f"need at least 3 trials, got {trials}")
    grid = uniform_random(size, 8, image_seed)
    params = CipherParams(m, n, variant)
    stage_ms = {}
    if parallel:
        with ProcessPoolExecutor() as pool:
            for stage in STAGES:
                payloads = [(stage, size, m, n, variant, seed_key.hex(), image_seed)] * trials
                samples = list(pool.map(_parallel_trial, payloads))
                stage_ms[stage] = statistics.median(samples) * 1e3
    else:
        for stage in STAGES:
            stage_ms[stage] = _median_time(_stage_callable(stage, grid, seed_key, params), trials) * 1e3
    return BenchResult(size, trials, stage_ms)


def sweep(
    size: int,
    n_values: list[int],
    max_m: int,
    trials: int,
    seed_key: SeedKey,
    image_seed: int = 0,
) -> list[dict]:
    """Encrypt/decrypt time plus one-bit-differential NPCR/UACI over the
    (m, n) grid m = 1..max_m x n_values, for both variants."""
    grid = uniform_random(size, 8, image_seed)
    flipped = flip_low_bit_last(grid)
    rows = []
    for variant in (PROPOSED, BASELINE):
        for n in n_values:
            for m in range(1, max_m + 1):
                params = CipherParams(m, n, variant)
                enc_ms = _median_time(lambda: encrypt(grid, seed_key, params), trials) * 1e3
                cipher_grid = encrypt(grid, seed_key, params)
                dec_ms = _median_time(lambda: decrypt(cipher_grid, seed_key, params), trials) * 1e3
                other = encrypt(flipped, seed_key, params)
                rows.append(
                    {
                        "variant": variant,
                        "m": m,
                        "n": n,
                        "encrypt_ms": enc_ms,
                        "decrypt_ms": dec_ms,
                        "npcr": npcr(cipher_grid, other),
                        "uaci": uaci(cipher_grid, other),
                    }
                )
    return rows


SWEEP_COLUMNS = ("variant", "m", "n", "encrypt_ms", "decrypt_ms", "npcr", "uaci")


def sweep_csv_lines(rows: list[dict]) -> list[str]:
    lines = [",".join(SWEEP_COLUMNS)]
    for row in rows:
        cells = []
        for col in SWEEP_COLUMNS:
            v = row[col]
            cells.append(f"{v:.6f}" if isinstance(v, float) else str(v))
        lines.append(",".join(cells))
    return lines


def compare_backends(size: int, trials: int, seed_key: SeedKey, image_seed: int = 0) -> dict[str, dict[str, float]]:
    """Median kernel and full-encrypt times per available backend, in ms."""
    grid = uniform_random(size, 8, image_seed)
    values = grid.pixels
    diff_key = DiffusionKey(0.4375)
    params = CipherParams(2, 2, PROPOSED)
    mixed = _backend.mix_seq(values, 7, grid.bit_depth)
    masked = diffuse(values, diff_key, grid.bit_depth)
    results = {}
    previous = _backend.backend_name()
    try:
        for name in _backend.available_backends():
            _backend.set_backend(name)
            results[name] = {
                "mix": _median_time(lambda: _backend.mix_seq(values, 7, grid.bit_depth), trials) * 1e3,
                "unmix": _median_time(lambda: _backend.unmix_seq(mixed, 7, grid.bit_depth), trials) * 1e3,
                "diffuse": _median_time(lambda: diffuse(values, diff_key, grid.bit_depth), trials) * 1e3,
                "undiffuse": _median_time(lambda: undiffuse(masked, diff_key, grid.bit_depth), trials) * 1e3,
                "keystream": _median_time(lambda: keystream(values, diff_key, grid.bit_depth), trials) * 1e3,
                "full_encrypt": _median_time(lambda: encrypt(grid, seed_key, params), trials) * 1e3,
            }
    finally:
        _backend.set_backend(previous)
    return results


def compare_lines(results: dict[str, dict[str, float]]) -> list[str]:
    names = list(results)
    kernels = list(next(iter(results.values())))
    width = max(len(k) for k in kernels)
    header = "kernel".ljust(width) + "".join(f"  {n:>12}" for n in names)
    if len(names) == 2:
        header += f"  {'speedup':>9}"
    lines = [header]
    for kernel in kernels:
        row = kernel.ljust(width) + "".join(f"  {results[n][kernel]:9.3f} ms" for n in names)
        if len(names) == 2:
            a, b = (results[n][kernel] for n in names)
            hi, lo = max(a, b), min(a, b)
            row += f"  {hi / lo:8.1f}x"
        lines.append(row)
    return lines
