"""Binary PGM (netpbm P5) reader and writer.

Only square images whose maxval is 2**B - 1 are accepted, because the cipher
is defined on square grids. Writing is canonical ("P5\\n<N> <N>\\n<maxval>\\n"
plus big-endian samples), so identical grids serialize to identical bytes.
"""

import numpy as np

from .errors import PgmFormatError
from .grid import PixelGrid


def _tokens(data: bytes):
    """Yield (token, end_offset) for whitespace-separated header tokens, skipping '#' comments."""
    i = 0
    n = len(data)
    while True:
        while i < n and data[i : i + 1].isspace():
            i += 1
        if i < n and data[i] == ord("#"):
            while i < n and data[i] != ord("\n"):
                i += 1
            continue
        if i >= n:
            raise PgmFormatError("truncated", "unexpected end of header")
        start = i
        while i < n and not data[i : i + 1].isspace() and data[i] != ord("#"):
            i += 1
        yield data[start:i], i


def read_pgm(data: bytes) -> PixelGrid:
    """Parse binary P5 bytes into a PixelGrid."""
    toks = _tokens(data)
    magic, _ = next(toks)
    if magic != b"P5":
        raise PgmFormatError("bad-magic", f"expected P5 magic, got {magic[:8]!r}")
    fields = []
    end = 0
    for _ in range(3):
        tok, end = next(toks)
        if not tok.isdigit():
            raise PgmFormatError("bad-header", f"non-numeric header token {tok[:8]!r}")
        fields.append(int(tok))
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise PgmFormatError("bad-header", "width and height must be positive")
    if width != height:
        raise PgmFormatError("not-square", f"only square images supported, got {width}x{height}")
    if not 1 <= maxval <= 65535 or (maxval + 1) & maxval:
        raise PgmFormatError("bad-maxval", f"maxval must be 2**B - 1 for B in [1,16], got {maxval}")
    bit_depth = maxval.bit_length()
    # Exactly one whitespace byte separates maxval from the payload.
    payload = data[end + 1 :]
    sample_bytes = 1 if maxval < 256 else 2
    expected = width * height * sample_bytes
    if len(payload) < expected:
        raise PgmFormatError("truncated", f"payload has {len(payload)} bytes, expected {expected}")
    if len(payload) > expected:
        raise PgmFormatError("trailing-data", f"{len(payload) - expected} bytes after payload")
    dtype = ">u1" if sample_bytes == 1 else ">u2"
    pixels = np.frombuffer(payload, dtype=dtype).astype(np.int64)
    if int(pixels.max(initial=0)) > maxval:
        raise PgmFormatError("bad-sample", f"sample exceeds maxval {maxval}")
    return PixelGrid(width, bit_depth, pixels)


def write_pgm(grid: PixelGrid) -> bytes:
    """Serialize to canonical binary P5; read_pgm(write_pgm(g)) == g bit-exactly."""
    maxval = grid.levels - 1
    header = f"P5\n{grid.size} {grid.size}\n{maxval}\n".encode("ascii")
    dtype = ">u1" if maxval < 256 else ">u2"
    return header + grid.pixels.astype(dtype).tobytes()
