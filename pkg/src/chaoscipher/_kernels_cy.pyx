# cython: language_level=3
"""Compiled twins of the chains in ``_kernels_py``.

Arithmetic must stay expression-for-expression identical to the Python
backend: the extension is built with -ffp-contract=off so the logistic
product is evaluated exactly as CPython evaluates it.
"""

from libc.math cimport floor

BACKEND_NAME = "cython"


def mix_seq(const long long[::1] values, long long[::1] out,
            long long mix_seed, int bit_depth):
    cdef Py_ssize_t i, n = values.shape[0]
    cdef long long mask = (<long long>1 << bit_depth) - 1
    cdef long long v = mix_seed, s
    cdef int q
    for i in range(n):
        s = (values[i] + v) & mask
        q = <int>(v & 7) % bit_depth
        if q:
            v = ((s >> q) | (s << (bit_depth - q))) & mask
        else:
            v = s
        out[i] = v


def unmix_seq(const long long[::1] values, long long[::1] out,
              long long mix_seed, int bit_depth):
    cdef Py_ssize_t i, n = values.shape[0]
    cdef long long mask = (<long long>1 << bit_depth) - 1
    cdef long long v = mix_seed, s, c
    cdef int q
    for i in range(n):
        c = values[i]
        q = <int>(v & 7) % bit_depth
        if q:
            s = ((c << q) | (c >> (bit_depth - q))) & mask
        else:
            s = c
        out[i] = (s - v) & mask
        v = c


def diffuse_seq(const long long[::1] values, long long[::1] out,
                double diffusion_seed, int bit_depth):
    cdef Py_ssize_t i, n = values.shape[0]
    cdef long long mask = (<long long>1 << bit_depth) - 1
    cdef double g = <double>(<long long>1 << bit_depth)
    cdef double x = diffusion_seed
    cdef long long ks, c
    for i in range(n):
        ks = (<long long>floor(4.0 * x * (1.0 - x) * g)) & mask
        c = values[i] ^ ks
        out[i] = c
        x = (c + 0.5) / g


def undiffuse_seq(const long long[::1] values, long long[::1] out,
                  double diffusion_seed, int bit_depth):
    cdef Py_ssize_t i, n = values.shape[0]
    cdef long long mask = (<long long>1 << bit_depth) - 1
    cdef double g = <double>(<long long>1 << bit_depth)
    cdef double x = diffusion_seed
    cdef long long ks, c
    for i in range(n):
        c = values[i]
        ks = (<long long>floor(4.0 * x * (1.0 - x) * g)) & mask
        out[i] = c ^ ks
        x = (c + 0.5) / g
