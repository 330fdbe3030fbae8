"""Independent brute-force oracles the tests check the library against.

Everything here is deliberately scalar and index-by-index so it shares no
code path with the vectorized kernels it is used to verify.
"""

import math
from fractions import Fraction

import numpy as np

import dickelab as dl


def random_state(n, rng, *, normalize=True):
    vec = rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n)
    if normalize:
        vec /= np.linalg.norm(vec)
    return dl.StateVector(n, vec)


def random_product_state(n, rng):
    amps = np.ones(1, dtype=complex)
    for _ in range(n):
        qubit = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        qubit /= np.linalg.norm(qubit)
        amps = np.kron(amps, qubit)
    return dl.StateVector(n, amps)


def permute_qubits(s, perm):
    """Relabel qubit positions by the 1-based permutation ``perm``."""
    psi = s.amplitudes.reshape([2] * s.n)
    axes = [p - 1 for p in perm]
    return dl.StateVector(s.n, np.ascontiguousarray(psi.transpose(axes).reshape(-1)))


def tau_scalar(s):
    """Residual entanglement from the defining pairing sums, scalar loops."""
    n, a = s.n, s.amplitudes
    top = (1 << n) - 1
    if n % 2 == 0:
        total = sum(
            dl.sgn_star(n, i) * (a[2 * i] * a[top - 2 * i] - a[2 * i + 1] * a[top - 1 - 2 * i])
            for i in range(1 << (n - 2))
        )
        return 2 * abs(total)
    half = 1 << (n - 1)
    bar = sum(
        (-1) ** dl.popcount(i)
        * (
            (a[2 * i] * a[top - 2 * i] - a[2 * i + 1] * a[top - 1 - 2 * i])
            - (
                a[(half - 2) - 2 * i] * a[(half + 1) + 2 * i]
                - a[(half - 1) - 2 * i] * a[half + 2 * i]
            )
        )
        for i in range(1 << (n - 3))
    )

    def half_block(offset):
        m = n - 1
        return sum(
            dl.sgn_star(m, i)
            * (
                a[offset + 2 * i] * a[offset + (1 << m) - 1 - 2 * i]
                - a[offset + 2 * i + 1] * a[offset + (1 << m) - 2 - 2 * i]
            )
            for i in range(1 << (m - 2))
        )

    return 4 * abs(bar**2 - 4 * half_block(0) * half_block(half))


def d_window_scalar(s, l):
    """Discriminant from its 16-index window, scalar arithmetic."""
    base = 0 if l == 2 else sum(1 << j for j in range(4, l + 2))
    b = [s.amplitudes[base + j] for j in range(16)]
    return (b[1] * b[4] - b[0] * b[5]) * (b[11] * b[14] - b[10] * b[15]) - (
        b[3] * b[6] - b[2] * b[7]
    ) * (b[9] * b[12] - b[8] * b[13])


def d_dicke_exact_oracle(n, l, k):
    """Exact discriminant of the (n, l) Dicke state at window k, derived
    from the popcount rule alone (no library state construction)."""
    base = 0 if k == 2 else sum(1 << j for j in range(4, k + 2))
    b = [1 if dl.popcount(base + j) == l else 0 for j in range(16)]
    numerator = (b[1] * b[4] - b[0] * b[5]) * (b[11] * b[14] - b[10] * b[15]) - (
        b[3] * b[6] - b[2] * b[7]
    ) * (b[9] * b[12] - b[8] * b[13])
    return Fraction(numerator, math.comb(n, l) ** 2)


def partial_trace_scalar(s, keep):
    """Reduced density matrix via explicit double index loops."""
    n = s.n
    keep = list(keep)
    traced = [q for q in range(1, n + 1) if q not in keep]
    k = len(keep)
    rho = np.zeros((1 << k, 1 << k), dtype=complex)
    a = s.amplitudes

    def sub_index(i):
        return sum((((i >> (n - q)) & 1) << (k - 1 - pos)) for pos, q in enumerate(keep))

    for i in range(1 << n):
        for j in range(1 << n):
            if all(((i >> (n - q)) & 1) == ((j >> (n - q)) & 1) for q in traced):
                rho[sub_index(i), sub_index(j)] += a[i] * np.conj(a[j])
    return rho / s.norm_squared
