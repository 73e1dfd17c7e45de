"""Confusion stage: standard-map permutation and add-and-shift value mixing."""

import numpy as np
import pytest

from chaoscipher.confusion import (
    BASELINE,
    PROPOSED,
    build_permutation,
    confuse_round,
    inverse_confuse_round,
    mix_value,
    std_map_inverse_point,
    std_map_point,
    unmix_value,
)
from chaoscipher.errors import ContractViolation
from chaoscipher.grid import PixelGrid, histogram
from chaoscipher.keyschedule import PermKey, SeedKey, derive_round_keys
from chaoscipher.synth import flip_low_bit_last, value_noise


def _random_key(rng, size):
    return PermKey(
        kick=int(rng.integers(1, 2**18 + 1)),
        offset_x=int(rng.integers(0, size)),
        offset_y=int(rng.integers(0, size)),
        size=size,
    )


# --- point map -------------------------------------------------------------

def test_std_map_origin_fixed_point():
    key = PermKey(kick=5, offset_x=0, offset_y=0, size=8)
    assert std_map_point(0, 0, key) == (0, 0)
    assert std_map_inverse_point(0, 0, key) == (0, 0)


def test_std_map_worked_examples():
    # x' = (1+2+1+1) mod 8 = 5; 2*sin(2*pi*5/8) = -1.41421 rounds away from zero to -1;
    # y' = (2+1-1) mod 8 = 2.
    key = PermKey(kick=2, offset_x=1, offset_y=1, size=8)
    assert std_map_point(1, 2, key) == (5, 2)
    assert std_map_inverse_point(5, 2, key) == (1, 2)

    # x' = 7; sin(2*pi*7/8) = -0.70711 rounds to -1; y' = (4-1) mod 8 = 3.
    key = PermKey(kick=1, offset_x=0, offset_y=0, size=8)
    assert std_map_point(3, 4, key) == (7, 3)


def test_std_map_rejects_out_of_range():
    key = PermKey(kick=1, offset_x=0, offset_y=0, size=8)
    with pytest.raises(ContractViolation):
        std_map_point(8, 0, key)
    with pytest.raises(ContractViolation):
        std_map_inverse_point(0, -1, key)


def test_std_map_inverse_recovers_all_cells_8x8():
    rng = np.random.default_rng(0)
    for _ in range(20):
        key = _random_key(rng, 8)
        for y in range(8):
            for x in range(8):
                assert std_map_inverse_point(*std_map_point(x, y, key), key) == (x, y)


# --- whole-grid permutation -------------------------------------------------

def _oracle_forward(key):
    """Brute-force table from the scalar map; asserts bijectivity."""
    n = key.size
    table = [None] * (n * n)
    for y in range(n):
        for x in range(n):
            xn, yn = std_map_point(x, y, key)
            table[y * n + x] = yn * n + xn
    assert sorted(table) == list(range(n * n)), "scalar map not bijective"
    return table


def test_build_permutation_smallest_grid_against_oracle():
    key = PermKey(kick=1, offset_x=0, offset_y=0, size=2)
    perm = build_permutation(key)
    assert list(perm.forward) == _oracle_forward(key)


@pytest.mark.parametrize("size", [2, 4, 8, 16])
def test_build_permutation_matches_oracle(size):
    rng = np.random.default_rng(size)
    for _ in range(10):
        key = _random_key(rng, size)
        assert list(build_permutation(key).forward) == _oracle_forward(key)


@pytest.mark.parametrize("size", [2, 4, 8, 16, 64])
def test_permutation_bijective_and_invertible(size):
    rng = np.random.default_rng(100 + size)
    idx = np.arange(size * size)
    for _ in range(25):
        key = _random_key(rng, size)
        perm = build_permutation(key)
        assert np.array_equal(np.sort(perm.forward), idx)
        assert np.array_equal(perm.inverted()[perm.forward], idx)


# --- value mixing ------------------------------------------------------------

def _ror_oracle(value, shift, bits):
    s = format(value, f"0{bits}b")
    shift %= bits
    return int(s[-shift:] + s[:-shift], 2) if shift else value


def _mix_oracle(p, v_prev, levels):
    bits = levels.bit_length() - 1
    return _ror_oracle((p + v_prev) % levels, (v_prev & 7) % bits, bits)


def test_mix_value_worked_examples():
    assert mix_value(0, 0, 256) == 0
    # (10+7) = 17 = 0b00010001, rotate right 7 -> 0b00100010 = 34
    assert mix_value(10, 7, 256) == 34
    # (255+255) mod 256 = 254 = 0b11111110, rotate right 7 -> 0b11111101 = 253
    assert mix_value(255, 255, 256) == 253
    assert unmix_value(0, 0, 256) == 0
    assert unmix_value(34, 7, 256) == 10


def test_mix_value_matches_bit_oracle_exhaustively():
    for v_prev in range(256):
        for p in range(256):
            assert mix_value(p, v_prev, 256) == _mix_oracle(p, v_prev, 256)


def test_mix_unmix_roundtrip_exhaustive_8bit():
    for v_prev in range(256):
        for p in range(256):
            assert unmix_value(mix_value(p, v_prev, 256), v_prev, 256) == p


@pytest.mark.parametrize("bit_depth", [1, 2, 3, 5, 12, 16])
def test_mix_unmix_roundtrip_other_depths(bit_depth):
    levels = 1 << bit_depth
    rng = np.random.default_rng(bit_depth)
    for _ in range(500):
        p = int(rng.integers(0, levels))
        v_prev = int(rng.integers(0, levels))
        mixed = mix_value(p, v_prev, levels)
        assert mixed == _mix_oracle(p, v_prev, levels)
        assert unmix_value(mixed, v_prev, levels) == p


def test_mix_value_contracts():
    with pytest.raises(ContractViolation):
        mix_value(0, 0, 100)  # not a power of two
    with pytest.raises(ContractViolation):
        mix_value(256, 0, 256)
    with pytest.raises(ContractViolation):
        unmix_value(0, 256, 256)


# --- whole rounds ------------------------------------------------------------

def test_baseline_round_preserves_histogram_exactly():
    grid = value_noise(32, seed=3)
    key = PermKey(kick=77, offset_x=5, offset_y=9, size=32)
    out = confuse_round(grid, key, mix_seed=13, variant=BASELINE)
    assert np.array_equal(histogram(out).counts, histogram(grid).counts)
    assert not np.array_equal(out.pixels, grid.pixels)


def test_proposed_round_changes_histogram():
    grid = value_noise(32, seed=4)
    key = PermKey(kick=123, offset_x=1, offset_y=2, size=32)
    out = confuse_round(grid, key, mix_seed=200, variant=PROPOSED)
    assert not np.array_equal(histogram(out).counts, histogram(grid).counts)


@pytest.mark.parametrize("variant", [PROPOSED, BASELINE])
def test_round_trips_exactly(variant):
    rng = np.random.default_rng(8)
    for _ in range(20):
        grid = PixelGrid(16, 8, rng.integers(0, 256, 256))
        key = _random_key(rng, 16)
        seed = int(rng.integers(0, 256))
        out = confuse_round(grid, key, seed, variant)
        back = inverse_confuse_round(out, key, seed, variant)
        assert np.array_equal(back.pixels, grid.pixels)


def test_multi_round_composition_inverts_in_reverse_order():
    rng = np.random.default_rng(9)
    grid = PixelGrid(16, 8, rng.integers(0, 256, 256))
    keys = [_random_key(rng, 16) for _ in range(4)]
    seed = 99
    out = grid
    for key in keys:
        out = confuse_round(out, key, seed, PROPOSED)
    for key in reversed(keys):
        out = inverse_confuse_round(out, key, seed, PROPOSED)
    assert np.array_equal(out.pixels, grid.pixels)


def test_one_bit_sensitivity_after_three_rounds():
    # Two 256x256 images differing in the lowest bit of the bottom-right pixel
    # must differ almost everywhere after three mixing rounds with equal keys.
    ratios = []
    for i in range(3):
        seed_key = SeedKey(np.random.default_rng(50 + i).bytes(16))
        stage = derive_round_keys(seed_key, 1, 3, 256, 256).stages[0]
        a = value_noise(256, seed=40 + i)
        b = flip_low_bit_last(a)
        for pk in stage.perm_keys:
            a = confuse_round(a, pk, stage.mix_seed, PROPOSED)
            b = confuse_round(b, pk, stage.mix_seed, PROPOSED)
        ratios.append(float(np.mean(a.pixels != b.pixels)))
    assert sum(ratios) / len(ratios) >= 0.98, f"diffusion ratios {ratios}"


def test_round_argument_checks():
    grid = PixelGrid(16, 8, np.zeros(256, dtype=np.int64))
    key = PermKey(kick=1, offset_x=0, offset_y=0, size=8)  # wrong size
    with pytest.raises(ContractViolation):
        confuse_round(grid, key, 0, PROPOSED)
    key = PermKey(kick=1, offset_x=0, offset_y=0, size=16)
    with pytest.raises(ContractViolation):
        confuse_round(grid, key, 256, PROPOSED)  # mix seed out of range
    with pytest.raises(ContractViolation):
        confuse_round(grid, key, 0, "xor")
