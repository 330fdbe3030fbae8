"""SLOCC invariants of n-qubit states.

Two families are computed from the bit-indexed amplitude vector:

* ``tau`` -- the residual-entanglement scalar.  For even n it is twice the
  modulus of a signed sum pairing each index with its bitwise complement;
  for odd n it combines three quadratic sub-sums (``i_bar`` and the two
  half-block ``i_star`` terms) into a degree-4 expression.  Under a tensor
  product of invertible single-qubit operators it rescales by the product
  of |det| factors (even n) or their squares (odd n).
* ``d_l`` -- a degree-4 discriminant read from a 16-index window anchored
  at ``delta_offset(l)``.  It vanishes identically on the GHZ and W orbits
  but not on the Dicke state with ``l`` excitations.

Reference states built with ``exact=True`` carry integer amplitudes with a
symbolic normalizer, and the ``*_exact`` variants return exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .serialize import complex_pair
from .statekit import ExactAmplitudes, StateVector, popcount

#: Relative tolerance below which a floating invariant is flagged as zero.
EPS_ZERO = 1e-10


def _parity_signs(count: int) -> np.ndarray:
    """(-1)**popcount(i) for i in 0..count-1, as an int64 vector."""
    idx = np.arange(count, dtype=np.uint32)
    return 1 - 2 * (np.bitwise_count(idx).astype(np.int64) & 1)


def _sgn_star_signs(m: int, count: int) -> np.ndarray:
    signs = _parity_signs(count)
    if m % 2 == 1:
        # Odd m flips the upper half of the index range by the extra (-1)**m.
        signs[1 << (m - 3) :] *= -1
    return signs


def sgn_star(n: int, i: int) -> int:
    """Sign factor of the pairing sum, defined for 0 <= i < 2**(n-2).

    Equals ``(-1)**popcount(i)`` on the lower half of the index range and
    picks up an extra ``(-1)**n`` on the upper half, so for even ``n`` both
    branches coincide with the plain parity sign.
    """
    if n < 2:
        raise ValueError("sgn_star needs at least 2 qubits")
    if not 0 <= i < 1 << (n - 2):
        raise ValueError(f"index must lie in 0..{(1 << (n - 2)) - 1} for n={n}, got {i}")
    if n % 2 == 0 or i < 1 << (n - 3):
        return 1 if popcount(i) % 2 == 0 else -1
    return 1 if (n + popcount(i)) % 2 == 0 else -1


def _check_i_star_args(n: int, m: int, offset: int) -> None:
    if m == n:
        if offset != 0:
            raise ValueError("the full-width pairing sum only supports offset 0")
    elif m == n - 1:
        if offset not in (0, 1 << (n - 1)):
            raise ValueError(
                f"half-block pairing sums need offset 0 or {1 << (n - 1)}, got {offset}"
            )
    else:
        raise ValueError(f"m must be n or n-1 (n={n}), got {m}")
    if m < 2:
        raise ValueError("pairing sums need a block of at least 4 amplitudes")


def i_star(s: StateVector, m: int, offset: int = 0) -> complex:
    """Signed pairing sum over the length ``2**m`` block starting at ``offset``.

    Within the block, index ``2i`` pairs with its block-local complement
    ``2**m - 1 - 2i`` and ``2i + 1`` with ``2**m - 2 - 2i``, weighted by
    ``sgn_star(m, i)``.  ``m = n`` gives the even-n invariant core;
    ``m = n - 1`` with offsets 0 and ``2**(n-1)`` gives the two half-block
    terms of the odd-n invariant.
    """
    _check_i_star_args(s.n, m, offset)
    block = s.amplitudes[offset : offset + (1 << m)]
    quarter = 1 << (m - 2)
    even_idx = np.arange(quarter, dtype=np.int64) * 2
    top = (1 << m) - 1
    signs = _sgn_star_signs(m, quarter)
    total = np.sum(
        signs
        * (block[even_idx] * block[top - even_idx] - block[even_idx + 1] * block[top - 1 - even_idx])
    )
    return complex(total)


def i_bar(s: StateVector) -> complex:
    """Mixed pairing sum entering the odd-n invariant.

    Sums, with parity signs over ``i < 2**(n-3)``, the complement pairing of
    the outer indices minus the matching pairing pulled to the two middle
    quarters of the vector.  Only defined for odd n >= 3.
    """
    n = s.n
    if n % 2 == 0 or n < 3:
        raise ValueError(f"i_bar is defined for odd n >= 3, got n={n}")
    a = s.amplitudes
    idx = np.arange(1 << (n - 3), dtype=np.int64) * 2
    half = 1 << (n - 1)
    top = (1 << n) - 1
    outer = a[idx] * a[top - idx] - a[idx + 1] * a[top - 1 - idx]
    middle = a[(half - 2) - idx] * a[(half + 1) + idx] - a[(half - 1) - idx] * a[half + idx]
    total = np.sum(_parity_signs(1 << (n - 3)) * (outer - middle))
    return complex(total)


def tau(s: StateVector) -> float:
    """Residual entanglement of ``s``.

    Even n: ``2 * |sum_k (-1)**popcount(k) * a_k * a_{~k}|`` over the lower
    half of the index range (``~k`` is the bitwise complement).  Odd n:
    ``4 * |i_bar**2 - 4 * i_star(low half) * i_star(high half)|``.  Equals 1
    on the GHZ state and on the half-filled Dicke state, and 0 on every
    other Dicke state.
    """
    n = s.n
    a = s.amplitudes
    if n % 2 == 0:
        half = 1 << (n - 1)
        paired = np.sum(_parity_signs(half) * a[:half] * a[half:][::-1])
        return float(2.0 * abs(paired))
    bar = i_bar(s)
    low = i_star(s, n - 1, 0)
    high = i_star(s, n - 1, 1 << (n - 1))
    return float(4.0 * abs(bar * bar - 4.0 * low * high))


def _require_exact(s: StateVector) -> ExactAmplitudes:
    if s.exact is None:
        raise ValueError(
            "state carries no exact amplitude table; construct it with exact=True"
        )
    return s.exact


def _i_star_int(values: np.ndarray, m: int, offset: int) -> int:
    block = values[offset : offset + (1 << m)]
    quarter = 1 << (m - 2)
    even_idx = np.arange(quarter, dtype=np.int64) * 2
    top = (1 << m) - 1
    signs = _sgn_star_signs(m, quarter)
    return int(
        np.sum(
            signs
            * (
                block[even_idx] * block[top - even_idx]
                - block[even_idx + 1] * block[top - 1 - even_idx]
            )
        )
    )


def _i_bar_int(values: np.ndarray, n: int) -> int:
    idx = np.arange(1 << (n - 3), dtype=np.int64) * 2
    half = 1 << (n - 1)
    top = (1 << n) - 1
    outer = values[idx] * values[top - idx] - values[idx + 1] * values[top - 1 - idx]
    middle = (
        values[(half - 2) - idx] * values[(half + 1) + idx]
        - values[(half - 1) - idx] * values[half + idx]
    )
    return int(np.sum(_parity_signs(1 << (n - 3)) * (outer - middle)))


def tau_exact(s: StateVector) -> Fraction:
    """Residual entanglement as an exact rational (exact-mode states only)."""
    ex = _require_exact(s)
    v = ex.values
    n = s.n
    if n % 2 == 0:
        half = 1 << (n - 1)
        paired = int(np.sum(_parity_signs(half) * v[:half] * v[half:][::-1]))
        return Fraction(2 * abs(paired), ex.norm_sq)
    bar = _i_bar_int(v, n)
    low = _i_star_int(v, n - 1, 0)
    high = _i_star_int(v, n - 1, 1 << (n - 1))
    return Fraction(4 * abs(bar * bar - 4 * low * high), ex.norm_sq**2)


def delta_offset(l: int) -> int:
    """Base index of the 16-amplitude window read by ``d_l``.

    Zero for ``l = 2``; for larger ``l`` the window shifts by the sum of the
    powers of two from ``2**4`` through ``2**(l+1)``, i.e. ``2**(l+2) - 16``.
    """
    if l < 2:
        raise ValueError(f"the discriminant window starts at l=2, got l={l}")
    return 0 if l == 2 else (1 << (l + 2)) - 16


def _check_d_range(n: int, l: int) -> None:
    if not 2 <= l <= n - 2:
        raise ValueError(
            f"need 2 <= l <= n-2 so the 16-index window fits in 2**n amplitudes; "
            f"got l={l} for n={n}"
        )


def d_l(s: StateVector, l: int) -> complex:
    """Degree-4 discriminant over the 16-index window selected by ``l``.

    Vanishes on every state reachable from GHZ or W by invertible local
    operators; on the Dicke state with ``l`` excitations it equals
    ``-1/C(n, l)**2``.
    """
    _check_d_range(s.n, l)
    b = s.amplitudes[delta_offset(l) :]
    return complex(
        (b[1] * b[4] - b[0] * b[5]) * (b[11] * b[14] - b[10] * b[15])
        - (b[3] * b[6] - b[2] * b[7]) * (b[9] * b[12] - b[8] * b[13])
    )


def d_l_exact(s: StateVector, l: int) -> Fraction:
    """Discriminant as an exact rational (exact-mode states only)."""
    _check_d_range(s.n, l)
    ex = _require_exact(s)
    b = [int(v) for v in ex.values[delta_offset(l) : delta_offset(l) + 16]]
    numerator = (b[1] * b[4] - b[0] * b[5]) * (b[11] * b[14] - b[10] * b[15]) - (
        b[3] * b[6] - b[2] * b[7]
    ) * (b[9] * b[12] - b[8] * b[13])
    return Fraction(numerator, ex.norm_sq**2)


@dataclass(frozen=True)
class InvariantReport:
    """All SLOCC invariants of one state, with zero flags.

    ``zero_flags`` maps ``"tau"`` and ``"d_<l>"`` to booleans; in floating
    mode a value is flagged zero when its modulus is below ``eps_zero``
    times ``scale`` (``max(1, squared norm)``), in exact mode the flag is
    the exact comparison against zero.
    """

    n: int
    tau: float
    tau_parity: str
    d_values: dict[int, complex]
    zero_flags: dict[str, bool]
    exact_mode: bool
    scale: float
    eps_zero: float
    tau_exact: Fraction | None = None
    d_exact: dict[int, Fraction] | None = None

    def to_jsonable(self) -> dict:
        doc = {
            "n": self.n,
            "tau": self.tau,
            "tau_parity": self.tau_parity,
            "d": {str(l): complex_pair(v) for l, v in sorted(self.d_values.items())},
            "zero_flags": dict(sorted(self.zero_flags.items())),
            "exact_mode": self.exact_mode,
        }
        if self.exact_mode:
            doc["tau_exact"] = str(self.tau_exact)
            doc["d_exact"] = {str(l): str(v) for l, v in sorted(self.d_exact.items())}
        return doc


def invariant_report(s: StateVector, *, eps_zero: float = EPS_ZERO) -> InvariantReport:
    """Compute ``tau`` and every valid ``d_l`` of ``s`` with zero flags.

    ``d_values`` covers ``l`` from 2 through ``n - 2`` and is empty below
    n = 4.  States carrying an exact amplitude table get exact rationals
    and exact zero flags alongside the floating values.
    """
    n = s.n
    scale = max(1.0, s.norm_squared)
    exact_mode = s.exact is not None

    tau_float = tau(s)
    parity = "even" if n % 2 == 0 else "odd"
    d_values = {l: d_l(s, l) for l in range(2, n - 1)}

    tau_fraction = None
    d_fractions = None
    if exact_mode:
        tau_fraction = tau_exact(s)
        d_fractions = {l: d_l_exact(s, l) for l in range(2, n - 1)}
        zero_flags = {"tau": tau_fraction == 0}
        zero_flags.update({f"d_{l}": d_fractions[l] == 0 for l in d_fractions})
    else:
        cutoff = eps_zero * scale
        zero_flags = {"tau": abs(tau_float) <= cutoff}
        zero_flags.update({f"d_{l}": abs(v) <= cutoff for l, v in d_values.items()})

    return InvariantReport(
        n=n,
        tau=tau_float,
        tau_parity=parity,
        d_values=d_values,
        zero_flags=zero_flags,
        exact_mode=exact_mode,
        scale=scale,
        eps_zero=eps_zero,
        tau_exact=tau_fraction,
        d_exact=d_fractions,
    )
