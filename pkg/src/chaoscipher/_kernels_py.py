"""Pure-Python implementations of the sequential per-pixel chains.

These are the hot inner loops of the cipher: each output element depends on
the previous one, so none of them can be vectorized. The compiled backend in
``_kernels_cy`` implements the same four functions; arithmetic is kept
expression-for-expression identical so both backends produce bit-identical
results (the floating-point products must not be reassociated or fused).
"""

import math

BACKEND_NAME = "python"


def mix_seq(values, out, mix_seed, bit_depth):
    """Add-and-rotate chain: out[i] = ror((values[i] + prev) mod G, low3(prev))."""
    mask = (1 << bit_depth) - 1
    v = mix_seed
    vals = values.tolist()
    res = out.tolist()
    for i, p in enumerate(vals):
        s = (p + v) & mask
        q = (v & 7) % bit_depth
        if q:
            v = ((s >> q) | (s << (bit_depth - q))) & mask
        else:
            v = s
        res[i] = v
    out[:] = res


def unmix_seq(values, out, mix_seed, bit_depth):
    """Inverse of mix_seq: rotate left by low3(prev), subtract prev mod G."""
    mask = (1 << bit_depth) - 1
    v = mix_seed
    vals = values.tolist()
    res = out.tolist()
    for i, c in enumerate(vals):
        q = (v & 7) % bit_depth
        if q:
            s = ((c << q) | (c >> (bit_depth - q))) & mask
        else:
            s = c
        res[i] = (s - v) & mask
        v = c
    out[:] = res


def diffuse_seq(values, out, diffusion_seed, bit_depth):
    """XOR each value with a quantized-logistic byte chained through prior outputs."""
    mask = (1 << bit_depth) - 1
    g = float(1 << bit_depth)
    x = diffusion_seed
    vals = values.tolist()
    res = out.tolist()
    for i, p in enumerate(vals):
        ks = math.floor(4.0 * x * (1.0 - x) * g) & mask
        c = p ^ ks
        res[i] = c
        x = (c + 0.5) / g
    out[:] = res


def undiffuse_seq(values, out, diffusion_seed, bit_depth):
    """Inverse of diffuse_seq; the keystream chains through the given cipher values."""
    mask = (1 << bit_depth) - 1
    g = float(1 << bit_depth)
    x = diffusion_seed
    vals = values.tolist()
    res = out.tolist()
    for i, c in enumerate(vals):
        ks = math.floor(4.0 * x * (1.0 - x) * g) & mask
        res[i] = c ^ ks
        x = (c + 0.5) / g
    out[:] = res
