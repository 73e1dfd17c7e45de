"""Full cipher: m overall rounds, each n confusion rounds plus one diffusion pass.

Within one overall round every confusion round gets fresh permutation keys
while the value-mixing chain restarts from the round's single mixing seed;
the diffusion pass uses that round's diffusion seed. Decryption inverts the
rounds one by one in reverse order.
"""

from dataclasses import dataclass

from .confusion import PROPOSED, VARIANTS, confuse_round, inverse_confuse_round
from .diffusion import DiffusionKey, diffuse, undiffuse
from .errors import ContractViolation
from .grid import PixelGrid
from .keyschedule import RoundKeys, SeedKey, derive_round_keys


@dataclass(frozen=True)
class CipherParams:
    overall_rounds: int
    confusion_rounds: int
    variant: str = PROPOSED

    def __post_init__(self):
        if self.overall_rounds < 1 or self.confusion_rounds < 1:
            raise ContractViolation(
                f"round counts must be >= 1, got ({self.overall_rounds}, {self.confusion_rounds})"
            )
        if self.variant not in VARIANTS:
            raise ContractViolation(f"variant must be one of {VARIANTS}, got {self.variant!r}")


def _keys_for(grid: PixelGrid, seed: SeedKey, params: CipherParams) -> RoundKeys:
    return derive_round_keys(
        seed, params.overall_rounds, params.confusion_rounds, grid.size, grid.levels
    )


def encrypt(grid: PixelGrid, seed: SeedKey, params: CipherParams) -> PixelGrid:
    return encrypt_with_keys(grid, _keys_for(grid, seed, params), params.variant)


def decrypt(grid: PixelGrid, seed: SeedKey, params: CipherParams) -> PixelGrid:
    return decrypt_with_keys(grid, _keys_for(grid, seed, params), params.variant)


def encrypt_with_keys(grid: PixelGrid, keys: RoundKeys, variant: str = PROPOSED) -> PixelGrid:
    for stage in keys.stages:
        for perm_key in stage.perm_keys:
            grid = confuse_round(grid, perm_key, stage.mix_seed, variant)
        masked = diffuse(grid.pixels, DiffusionKey(stage.diffusion_seed), grid.bit_depth)
        grid = grid.with_pixels(masked)
    return grid


def decrypt_with_keys(grid: PixelGrid, keys: RoundKeys, variant: str = PROPOSED) -> PixelGrid:
    for stage in reversed(keys.stages):
        unmasked = undiffuse(grid.pixels, DiffusionKey(stage.diffusion_seed), grid.bit_depth)
        grid = grid.with_pixels(unmasked)
        for perm_key in reversed(stage.perm_keys):
            grid = inverse_confuse_round(grid, perm_key, stage.mix_seed, variant)
    return grid
