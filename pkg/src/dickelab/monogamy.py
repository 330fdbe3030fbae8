"""Pairwise and one-vs-rest concurrences of Dicke states and the monogamy gap.

For the Dicke state with ``l`` excitations on ``n`` qubits, the two-qubit
reduced state is the same for every qubit pair, and its concurrence has the
closed form ``2*sqrt(A)*(sqrt(A) - sqrt(B)) / (n*(n-1))`` with
``A = l*(n-l)`` and ``B = (l-1)*(n-l-1)``.  The squared concurrence between
one qubit and the rest is ``4*l*(n-l)/n**2``.  Their monogamy gap

    chi = C(one vs rest)**2 - (n-1) * C(pair)**2

is computed both from that definition and from its closed form
``8*A*sqrt(B)*(sqrt(A) - sqrt(B)) / (n**2 * (n-1))``; the two routes must
agree to 1e-12 or the computation is rejected as inconsistent.  ``B`` is
used in the factored form so the square root is exactly zero at ``l = 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .serialize import format_float
from .statekit import DEFAULT_MAX_QUBITS, DensityMatrix, DickeSpec, dicke_state, partial_trace

#: Eigenvalues of the spin-flipped product more negative than this reject the input.
EIG_NEG_TOL = 1e-10
#: Maximum allowed disagreement between the two chi routes.
CHI_CROSS_CHECK_TOL = 1e-12

_SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_SPIN_FLIP = np.kron(_SIGMA_Y, _SIGMA_Y)


class NumericalConsistencyError(RuntimeError):
    """Two independent routes to the same quantity disagreed beyond tolerance."""


def wootters_concurrence(rho: DensityMatrix | np.ndarray) -> float:
    """Concurrence of a two-qubit density matrix.

    The input is conjugated in the computational basis, sandwiched between
    the two-qubit spin-flip operator, and multiplied back onto the original;
    the concurrence is ``max(0, sqrt(e1) - sqrt(e2) - sqrt(e3) - sqrt(e4))``
    over the decreasing eigenvalues of that product.  Eigenvalues are real
    and nonnegative for a valid input; anything below ``-EIG_NEG_TOL`` is
    rejected, small negatives are clipped to zero.
    """
    if not isinstance(rho, DensityMatrix):
        rho = DensityMatrix(2, np.asarray(rho))
    if rho.k != 2:
        raise ValueError(f"concurrence is defined for two-qubit states, got k={rho.k}")
    mat = rho.entries
    flipped = _SPIN_FLIP @ mat.conj() @ _SPIN_FLIP
    eigenvalues = np.real(np.linalg.eigvals(mat @ flipped))
    if float(eigenvalues.min()) < -EIG_NEG_TOL:
        raise ValueError(
            f"spin-flipped product has eigenvalue {eigenvalues.min():.3e} below tolerance"
        )
    roots = np.sqrt(np.sort(np.clip(eigenvalues, 0.0, None))[::-1])
    return float(max(0.0, roots[0] - roots[1] - roots[2] - roots[3]))


def _dicke_range(n: int, l: int) -> DickeSpec:
    return DickeSpec(n, l)


def c12_closed_form(n: int, l: int) -> float:
    """Closed-form pairwise concurrence of the (n, l) Dicke state.

    Maximal (2/n) at a single excitation, minimal at the half-filled state:
    1/(n-1) for even n.
    """
    _dicke_range(n, l)
    a = l * (n - l)
    b = (l - 1) * (n - l - 1)
    return 2.0 * math.sqrt(a) * (math.sqrt(a) - math.sqrt(b)) / (n * (n - 1))


def c1_rest_squared(n: int, l: int) -> float:
    """Squared concurrence between qubit 1 and the remaining n-1 qubits.

    Four times the determinant of the single-qubit reduced state, which for
    the (n, l) Dicke state is ``4*l*(n-l)/n**2``.
    """
    _dicke_range(n, l)
    return 4.0 * l * (n - l) / n**2


def chi(n: int, l: int) -> float:
    """Monogamy gap of the (n, l) Dicke state, cross-checked two ways.

    Computed both as ``c1_rest_squared - (n-1) * c12**2`` and from the
    closed form; a disagreement beyond ``CHI_CROSS_CHECK_TOL`` raises
    :class:`NumericalConsistencyError`.  Zero at a single excitation and
    strictly inside (0, 1) for 2 <= l <= n-2.
    """
    _dicke_range(n, l)
    pairwise = c12_closed_form(n, l)
    from_definition = c1_rest_squared(n, l) - (n - 1) * pairwise**2
    a = l * (n - l)
    b = (l - 1) * (n - l - 1)
    closed_form = 8.0 * a * math.sqrt(b) * (math.sqrt(a) - math.sqrt(b)) / (n**2 * (n - 1))
    if abs(from_definition - closed_form) > CHI_CROSS_CHECK_TOL:
        raise NumericalConsistencyError(
            f"chi({n}, {l}) routes disagree: definition gives {from_definition!r}, "
            f"closed form gives {closed_form!r}"
        )
    return closed_form


def chi_even_maximum(n: int) -> float:
    """Largest monogamy gap over even-n Dicke states: (n-2)/(n-1) at l = n/2."""
    if n % 2 != 0 or n < 4:
        raise ValueError(f"the even-n maximum needs even n >= 4, got {n}")
    return (n - 2) / (n - 1)


def chi_odd_maximum(n: int) -> float:
    """Largest monogamy gap over odd-n Dicke states, attained at l = (n-1)/2."""
    if n % 2 != 1 or n < 5:
        raise ValueError(f"the odd-n maximum needs odd n >= 5, got {n}")
    return (
        (n + 1)
        * (n - 1)
        * math.sqrt(n - 3)
        * (math.sqrt(n + 1) - math.sqrt(n - 3))
        / (2.0 * n**2)
    )


@dataclass(frozen=True)
class MonogamyReport:
    """Concurrence and monogamy quantities of one (n, l) Dicke state.

    ``c12`` is the closed form, ``c12_numeric`` the value recovered through
    the partial-trace / spin-flip / eigenvalue pipeline.  ``is_chi_max``
    marks rows achieving the largest gap for their n (both tied excitation
    counts for odd n).
    """

    n: int
    l: int
    c12: float
    c12_numeric: float
    c1_rest_sq: float
    chi: float
    is_even_max: bool
    is_chi_max: bool
    notes: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not 0.0 <= self.c12 <= 1.0 or not 0.0 <= self.c1_rest_sq <= 1.0:
            raise ValueError("concurrences must lie in [0, 1]")
        if not 0.0 <= self.chi < 1.0:
            raise ValueError(f"chi must lie in [0, 1), got {self.chi!r}")
        gap = self.c1_rest_sq - (self.n - 1) * self.c12**2
        if abs(self.chi - gap) > CHI_CROSS_CHECK_TOL:
            raise NumericalConsistencyError(
                f"report chi {self.chi!r} breaks the defining identity ({gap!r})"
            )

    def to_jsonable(self) -> dict:
        return {
            "n": self.n,
            "l": self.l,
            "c12": self.c12,
            "c12_numeric": self.c12_numeric,
            "c1_rest_sq": self.c1_rest_sq,
            "chi": self.chi,
            "is_even_max": self.is_even_max,
            "is_chi_max": self.is_chi_max,
            "notes": list(self.notes),
        }


def _annotations(n: int, l: int) -> tuple[str, ...]:
    notes = []
    if l == 1:
        notes.append("pairwise concurrence maximal (2/n); chi vanishes")
    if n % 2 == 0 and l == n // 2:
        notes.append("pairwise concurrence minimal (1/(n-1))")
        notes.append("one-vs-rest concurrence maximal (1); chi maximal ((n-2)/(n-1))")
    if n % 2 == 1 and l in ((n - 1) // 2, (n + 1) // 2):
        notes.append("pairwise concurrence minimal; one-vs-rest and chi maximal")
    return tuple(notes)


def monogamy_report(
    n: int, l: int, *, is_chi_max: bool | None = None, max_n: int = DEFAULT_MAX_QUBITS
) -> MonogamyReport:
    """Full monogamy record for one (n, l) Dicke state.

    Runs the numeric concurrence pipeline alongside the closed forms; when
    ``is_chi_max`` is not supplied it is derived from the extremal
    excitation counts (n/2 for even n, the two middle values for odd n).
    """
    spec = DickeSpec(n, l)
    pair_density = partial_trace(dicke_state(spec, max_n=max_n), (1, 2))
    numeric = wootters_concurrence(pair_density)
    if is_chi_max is None:
        is_chi_max = l in {n // 2, (n + 1) // 2} if n % 2 else l == n // 2
    return MonogamyReport(
        n=spec.n,
        l=spec.l,
        c12=c12_closed_form(n, l),
        c12_numeric=numeric,
        c1_rest_sq=c1_rest_squared(n, l),
        chi=chi(n, l),
        is_even_max=(n % 2 == 0 and l == n // 2),
        is_chi_max=is_chi_max,
        notes=_annotations(n, l),
    )


def monogamy_sweep(
    n_min: int, n_max: int, *, max_n: int = DEFAULT_MAX_QUBITS
) -> list[MonogamyReport]:
    """Monogamy reports for every (n, l) with n_min <= n <= n_max.

    The gap rises with l up to the middle excitation count and falls beyond
    it, mirrored under l <-> n-l; ``is_chi_max`` is assigned from the
    computed row maxima of each n.
    """
    if not 2 <= n_min <= n_max <= max_n:
        raise ValueError(f"need 2 <= n_min <= n_max <= {max_n}, got {n_min}..{n_max}")
    reports: list[MonogamyReport] = []
    for n in range(n_min, n_max + 1):
        gaps = {l: chi(n, l) for l in range(1, n)}
        peak = max(gaps.values())
        for l in range(1, n):
            reports.append(
                monogamy_report(n, l, is_chi_max=(gaps[l] >= peak - 1e-12), max_n=max_n)
            )
    return reports


SWEEP_CSV_HEADER = "n,l,c12,c12_numeric,c1_rest_sq,chi,is_max"


def sweep_csv(reports: Sequence[MonogamyReport]) -> str:
    """Render sweep rows as CSV (floats with 17 significant digits)."""
    lines = [SWEEP_CSV_HEADER]
    for r in reports:
        lines.append(
            ",".join(
                [
                    str(r.n),
                    str(r.l),
                    format_float(r.c12),
                    format_float(r.c12_numeric),
                    format_float(r.c1_rest_sq),
                    format_float(r.chi),
                    "true" if r.is_chi_max else "false",
                ]
            )
        )
    return "\n".join(lines) + "\n"
