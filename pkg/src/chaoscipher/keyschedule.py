"""Round-key expansion from a 128-bit seed via iterated skew tent maps.

Two independent tent states are seeded from the four 32-bit words of the
seed key. State 1 supplies every integer sub-key (permutation kick and scan
offsets, mixing seeds); state 2 supplies the real-valued diffusion seeds.
The draw order is fixed and documented so that two runs of the generator,
on any IEEE-754 platform, produce identical keys.
"""

import math
from dataclasses import dataclass

from .errors import ContractViolation

KICK_BITS = 18
KICK_MAX = 1 << KICK_BITS
WARMUP_STEPS = 64

_WORD_SCALE = 2**32 + 2
_ONE_BELOW_ONE = 1.0 - 2.0**-52
_KD_MARGIN = 2.0**-20


@dataclass(frozen=True)
class SeedKey:
    """128-bit secret seed. The all-zero value is rejected."""

    raw: bytes

    def __post_init__(self):
        if len(self.raw) != 16:
            raise ContractViolation(f"seed key must be 16 bytes, got {len(self.raw)}")
        if self.raw == b"\x00" * 16:
            raise ContractViolation("all-zero seed key is not allowed")

    @classmethod
    def from_hex(cls, text: str) -> "SeedKey":
        """Parse 32 hex digits (case-insensitive, no separators)."""
        t = text.strip()
        if len(t) != 32:
            raise ContractViolation(f"key must be exactly 32 hex digits, got {len(t)}")
        try:
            return cls(bytes.fromhex(t))
        except ValueError:
            raise ContractViolation("key contains non-hex characters") from None

    def hex(self) -> str:
        return self.raw.hex()

    def words(self) -> tuple[int, int, int, int]:
        """The four big-endian 32-bit words of the seed."""
        return tuple(int.from_bytes(self.raw[i : i + 4], "big") for i in (0, 4, 8, 12))


@dataclass(frozen=True)
class PermKey:
    """One permutation round key: sine-kick amplitude plus scan offsets."""

    kick: int
    offset_x: int
    offset_y: int
    size: int

    def __post_init__(self):
        if self.kick < 1:
            raise ContractViolation("kick must be a positive integer")
        if not (0 <= self.offset_x < self.size and 0 <= self.offset_y < self.size):
            raise ContractViolation("scan offsets must lie in [0, size)")


@dataclass(frozen=True)
class StageKeys:
    """Keys for one overall round: n permutation keys, one mixing seed, one diffusion seed."""

    perm_keys: tuple[PermKey, ...]
    mix_seed: int
    diffusion_seed: float


@dataclass(frozen=True)
class RoundKeys:
    stages: tuple[StageKeys, ...]


def skew_tent_step(x: float, break_point: float) -> float:
    """One iteration of the skew tent map; maps (0,1) into (0,1]."""
    if not 0.0 < x < 1.0:
        raise ContractViolation(f"tent state must be in (0,1), got {x}")
    if not 0.0 < break_point < 1.0:
        raise ContractViolation(f"tent break point must be in (0,1), got {break_point}")
    if x <= break_point:
        return x / break_point
    return (1.0 - x) / (1.0 - break_point)


class _TentStream:
    """Skew tent orbit that never leaves the open interval (0,1)."""

    def __init__(self, x: float, break_point: float):
        self.x = x
        self.p = break_point

    def next(self) -> float:
        x = skew_tent_step(self.x, self.p)
        if x == 1.0:  # only reachable at the peak; keep the orbit open
            x = _ONE_BELOW_ONE
        self.x = x
        return x


def _clamp_diffusion_seed(x: float) -> float:
    """Keep the diffusion seed away from the logistic fixed points 0, 1 and the peak pre-image 0.5."""
    if x < _KD_MARGIN:
        return _KD_MARGIN
    if x > 1.0 - _KD_MARGIN:
        return 1.0 - _KD_MARGIN
    if 0.5 - _KD_MARGIN < x < 0.5 + _KD_MARGIN:
        return 0.5 - _KD_MARGIN if x < 0.5 else 0.5 + _KD_MARGIN
    return x


def derive_round_keys(seed: SeedKey, m: int, n: int, size: int, levels: int) -> RoundKeys:
    """Expand ``seed`` into keys for m overall rounds of n confusion rounds each.

    Deterministic: the same arguments always yield bit-identical keys. Per
    confusion round, state 1 is drawn three times (kick, offset_x, offset_y);
    per overall round it is drawn once more for the mixing seed and state 2
    once for the diffusion seed.
    """
    if m < 1 or n < 1:
        raise ContractViolation(f"round counts must be >= 1, got m={m}, n={n}")
    if size < 2:
        raise ContractViolation(f"grid size must be >= 2, got {size}")
    if levels < 2:
        raise ContractViolation(f"gray levels must be >= 2, got {levels}")

    w0, w1, w2, w3 = seed.words()
    ints = _TentStream((w0 + 1) / _WORD_SCALE, (w1 + 1) / _WORD_SCALE)
    reals = _TentStream((w2 + 1) / _WORD_SCALE, (w3 + 1) / _WORD_SCALE)
    for _ in range(WARMUP_STEPS):
        ints.next()
        reals.next()

    stages = []
    for _ in range(m):
        perm_keys = []
        for _ in range(n):
            kick = min(1 + math.floor(ints.next() * KICK_MAX), KICK_MAX)
            offset_x = math.floor(ints.next() * size)
            offset_y = math.floor(ints.next() * size)
            perm_keys.append(PermKey(kick, offset_x, offset_y, size))
        mix_seed = math.floor(ints.next() * levels)
        diffusion_seed = _clamp_diffusion_seed(reals.next())
        stages.append(StageKeys(tuple(perm_keys), mix_seed, diffusion_seed))
    return RoundKeys(tuple(stages))
