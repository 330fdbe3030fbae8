"""Construction and interrogation of n-qubit pure states.

States are dense length-``2**n`` complex vectors indexed by the basis
integer: the n-bit binary expansion of index ``i`` labels the computational
basis ket, with qubit 1 as the most significant bit.  ``|0011>`` on four
qubits therefore sits at index 3, and the excitation count of a basis ket
is the popcount of its index.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Sequence

import numpy as np

from .serialize import dumps

#: Largest qubit count accepted by default (a dense vector at n=24 is 256 MiB).
DEFAULT_MAX_QUBITS = 24
#: Largest n for which exhaustive bipartition enumeration is permitted.
EXHAUSTIVE_CUT_CAP = 16
#: Squared-norm tolerance for "this state is normalized".
NORM_TOL = 1e-12
#: Relative singular-value cutoff for the rank-1 product test.
RANK_TOL = 1e-10
#: Density-matrix validation tolerances.
HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_EIG_TOL = 1e-10


def popcount(i: int) -> int:
    """Number of 1-bits of a basis index, i.e. its excitation count."""
    if i < 0:
        raise ValueError("basis index must be nonnegative")
    return int(i).bit_count()


def _popcounts(indices: np.ndarray) -> np.ndarray:
    return np.bitwise_count(indices)


def _check_qubit_count(n: int, max_n: int) -> int:
    n = int(n)
    if max_n < 2:
        raise ValueError("the qubit-count cap cannot be below 2")
    if not 2 <= n <= max_n:
        raise ValueError(f"qubit count must lie in 2..{max_n}, got {n}")
    return n


def _frozen_complex(values: np.ndarray, length: int) -> np.ndarray:
    arr = np.ascontiguousarray(values, dtype=np.complex128)
    if arr.shape != (length,):
        raise ValueError(f"expected a flat vector of {length} amplitudes, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class ExactAmplitudes:
    """Unnormalized integer amplitudes with a symbolic squared normalizer.

    The physical amplitude at index ``i`` is ``values[i] / sqrt(norm_sq)``.
    Reference-state constructors emit 0/1 entries, so any polynomial in the
    amplitudes evaluates to an exact rational over a power of ``norm_sq``.
    """

    values: np.ndarray
    norm_sq: int

    def __post_init__(self) -> None:
        values = np.ascontiguousarray(self.values, dtype=np.int64)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        if self.norm_sq <= 0:
            raise ValueError("norm_sq must be a positive integer")
        if int(np.sum(values * values)) != self.norm_sq:
            raise ValueError("norm_sq must equal the sum of squared integer amplitudes")


@dataclass(frozen=True)
class StateVector:
    """Immutable dense pure state of ``n`` qubits.

    ``amplitudes`` has length ``2**n`` and is frozen after construction;
    every operation in this package is a pure function over such values.
    ``exact``, when present, holds the integer amplitude table used by the
    exact-rational invariant mode.
    """

    n: int
    amplitudes: np.ndarray
    exact: ExactAmplitudes | None = None

    def __post_init__(self) -> None:
        if int(self.n) < 2:
            raise ValueError("a StateVector needs at least 2 qubits")
        object.__setattr__(self, "n", int(self.n))
        amps = _frozen_complex(self.amplitudes, 1 << self.n)
        object.__setattr__(self, "amplitudes", amps)
        if self.exact is not None and self.exact.values.shape != amps.shape:
            raise ValueError("exact amplitude table does not match the state dimension")

    @property
    def dim(self) -> int:
        return 1 << self.n

    @property
    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    @property
    def is_normalized(self) -> bool:
        return abs(self.norm_squared - 1.0) <= NORM_TOL


@dataclass(frozen=True)
class DickeSpec:
    """Qubit count ``n`` and excitation count ``l`` of a symmetric Dicke state.

    ``l`` must satisfy ``1 <= l <= n-1``; the excitation-free and fully
    excited product kets are rejected rather than special-cased.
    """

    n: int
    l: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "l", int(self.l))
        if self.n < 2:
            raise ValueError(f"a Dicke state needs at least 2 qubits, got n={self.n}")
        if not 1 <= self.l <= self.n - 1:
            raise ValueError(f"excitation count must lie in 1..{self.n - 1}, got l={self.l}")

    @property
    def degeneracy(self) -> int:
        """Number of basis kets in the superposition, C(n, l)."""
        return math.comb(self.n, self.l)


def dicke_state(
    spec_or_n: DickeSpec | int,
    l: int | None = None,
    *,
    exact: bool = False,
    max_n: int = DEFAULT_MAX_QUBITS,
) -> StateVector:
    """Symmetric Dicke state with ``l`` excitations on ``n`` qubits.

    Every basis ket whose index has popcount ``l`` carries amplitude
    ``1/sqrt(C(n, l))``; all other amplitudes are zero.  With ``exact=True``
    the state additionally stores 0/1 integer amplitudes with the binomial
    normalizer kept symbolic, making downstream invariants exact rationals.
    """
    if isinstance(spec_or_n, DickeSpec):
        if l is not None:
            raise TypeError("pass either a DickeSpec or the pair (n, l), not both")
        spec = spec_or_n
    else:
        if l is None:
            raise TypeError("dicke_state needs the pair (n, l) or a DickeSpec")
        spec = DickeSpec(spec_or_n, l)
    _check_qubit_count(spec.n, max_n)

    indices = np.arange(1 << spec.n, dtype=np.uint32)
    mask = _popcounts(indices) == spec.l
    amps = np.zeros(1 << spec.n, dtype=np.complex128)
    amps[mask] = 1.0 / math.sqrt(spec.degeneracy)
    exact_table = None
    if exact:
        exact_table = ExactAmplitudes(mask.astype(np.int64), spec.degeneracy)
    return StateVector(spec.n, amps, exact=exact_table)


def ghz_state(n: int, *, exact: bool = False, max_n: int = DEFAULT_MAX_QUBITS) -> StateVector:
    """Equal superposition of the all-zero and all-one kets."""
    n = _check_qubit_count(n, max_n)
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[0] = amps[-1] = 1.0 / math.sqrt(2.0)
    exact_table = None
    if exact:
        values = np.zeros(1 << n, dtype=np.int64)
        values[0] = values[-1] = 1
        exact_table = ExactAmplitudes(values, 2)
    return StateVector(n, amps, exact=exact_table)


def w_state(n: int, *, exact: bool = False, max_n: int = DEFAULT_MAX_QUBITS) -> StateVector:
    """Single-excitation Dicke state (the W state for n >= 3)."""
    return dicke_state(n, 1, exact=exact, max_n=max_n)


def complement(s: StateVector) -> StateVector:
    """Move each amplitude to the bitwise-complement index.

    Equivalent to applying the bit-flip operator on every qubit; maps the
    Dicke state with ``l`` excitations exactly onto the one with ``n - l``.
    """
    amps = np.ascontiguousarray(s.amplitudes[::-1])
    exact_table = None
    if s.exact is not None:
        exact_table = ExactAmplitudes(np.ascontiguousarray(s.exact.values[::-1]), s.exact.norm_sq)
    return StateVector(s.n, amps, exact=exact_table)


@dataclass(frozen=True)
class DensityMatrix:
    """Reduced density matrix over ``k`` kept qubits.

    Validated on construction: Hermitian and unit-trace within 1e-12,
    positive semidefinite within an eigenvalue tolerance of -1e-10.
    """

    k: int
    entries: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "k", int(self.k))
        if self.k < 1:
            raise ValueError("a DensityMatrix keeps at least one qubit")
        dim = 1 << self.k
        entries = np.ascontiguousarray(self.entries, dtype=np.complex128)
        if entries.shape != (dim, dim):
            raise ValueError(f"expected a {dim}x{dim} matrix for k={self.k}, got {entries.shape}")
        if np.max(np.abs(entries - entries.conj().T)) > HERMITICITY_TOL:
            raise ValueError("density matrix is not Hermitian within tolerance")
        if abs(np.trace(entries).real - 1.0) > TRACE_TOL or abs(np.trace(entries).imag) > TRACE_TOL:
            raise ValueError("density matrix trace differs from 1 beyond tolerance")
        if float(np.min(np.linalg.eigvalsh(entries))) < -PSD_EIG_TOL:
            raise ValueError("density matrix has a negative eigenvalue beyond tolerance")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def dim(self) -> int:
        return 1 << self.k


def _qubit_axes(n: int, qubits: Sequence[int], *, allow_all: bool) -> list[int]:
    positions = [int(q) for q in qubits]
    if not positions:
        raise ValueError("at least one qubit position is required")
    if len(set(positions)) != len(positions):
        raise ValueError(f"qubit positions must be distinct, got {positions}")
    for q in positions:
        if not 1 <= q <= n:
            raise ValueError(f"qubit positions must lie in 1..{n}, got {q}")
    if not allow_all and len(positions) == n:
        raise ValueError("a proper subset of the qubits is required")
    # Qubit q is the axis q-1 of the [2]*n reshaped vector (MSB first).
    return [q - 1 for q in positions]


def partial_trace(s: StateVector, keep: Sequence[int]) -> DensityMatrix:
    """Reduced density matrix of ``s`` over the kept qubit positions.

    ``keep`` lists 1-based positions; the first listed qubit becomes the
    most significant bit of the reduced index.  The input is projected and
    divided by its squared norm, so the result always has unit trace.
    """
    kept_axes = _qubit_axes(s.n, keep, allow_all=True)
    k = len(kept_axes)
    traced = [ax for ax in range(s.n) if ax not in kept_axes]
    psi = s.amplitudes.reshape([2] * s.n)
    rho = np.tensordot(psi, psi.conj(), axes=(traced, traced))
    # tensordot leaves the kept axes in ascending order; restore caller order.
    ascending = sorted(kept_axes)
    perm = [ascending.index(ax) for ax in kept_axes]
    rho = rho.transpose([*perm, *[p + k for p in perm]]).reshape(1 << k, 1 << k)
    norm_sq = s.norm_squared
    if norm_sq <= 0.0:
        raise ValueError("cannot form a density matrix from the zero vector")
    return DensityMatrix(k, rho / norm_sq)


def is_product_across(s: StateVector, part: Iterable[int]) -> bool:
    """True iff ``s`` factorizes across the bipartition ``part`` vs. the rest.

    The amplitude vector is reshaped to a matrix with the ``part`` qubits as
    rows; the state is a product exactly when that matrix has numerical rank
    one (second singular value below ``RANK_TOL`` of the first).
    """
    part_axes = _qubit_axes(s.n, list(part), allow_all=False)
    rest = [ax for ax in range(s.n) if ax not in part_axes]
    matrix = (
        s.amplitudes.reshape([2] * s.n)
        .transpose([*part_axes, *rest])
        .reshape(1 << len(part_axes), 1 << len(rest))
    )
    singular = np.linalg.svd(matrix, compute_uv=False)
    return bool(singular[1] <= RANK_TOL * singular[0])


def bipartitions(n: int) -> Iterable[tuple[int, ...]]:
    """All 2**(n-1) - 1 bipartitions, each as the side containing qubit 1."""
    for mask in range((1 << (n - 1)) - 1):
        yield (1, *(q for q in range(2, n + 1) if (mask >> (q - 2)) & 1))


def is_genuinely_entangled(s: StateVector) -> bool:
    """True iff ``s`` is not a product state across any bipartition.

    Enumerates every cut, so it is capped at ``EXHAUSTIVE_CUT_CAP`` qubits;
    above the cap only per-cut queries via :func:`is_product_across` are
    available.
    """
    if s.n > EXHAUSTIVE_CUT_CAP:
        raise ValueError(
            f"exhaustive bipartition enumeration is capped at n={EXHAUSTIVE_CUT_CAP}; "
            "query individual cuts with is_product_across instead"
        )
    for part in bipartitions(s.n):
        if is_product_across(s, part):
            return False
    return True


def _as_finite_float(value, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError(f"{what} must be a JSON number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{what} must be finite, got {value!r}")
    return value


def store_state(s: StateVector, dest: str | Path | IO[str], *, fmt: str = "dense") -> None:
    """Write ``s`` as a JSON state file (dense by default, or sparse)."""
    if fmt == "dense":
        doc = {
            "n": s.n,
            "format": "dense",
            "amplitudes": [[a.real, a.imag] for a in s.amplitudes],
        }
    elif fmt == "sparse":
        nonzero = np.nonzero(s.amplitudes)[0]
        doc = {
            "n": s.n,
            "format": "sparse",
            "entries": [
                {"i": int(i), "re": s.amplitudes[i].real, "im": s.amplitudes[i].imag}
                for i in nonzero
            ],
        }
    else:
        raise ValueError(f"unknown state file format {fmt!r}")
    text = dumps(doc)
    if hasattr(dest, "write"):
        dest.write(text)
    else:
        Path(dest).write_text(text, encoding="utf-8")


def load_state(src: str | Path | IO[str], *, max_n: int = DEFAULT_MAX_QUBITS) -> StateVector:
    """Read a dense or sparse JSON state file.

    Round-trips :func:`store_state` output bit-exactly.  Loaded states may
    be unnormalized; check ``StateVector.is_normalized``.
    """
    if hasattr(src, "read"):
        doc = json.load(src)
    else:
        doc = json.loads(Path(src).read_text(encoding="utf-8"))
    if not isinstance(doc, dict):
        raise ValueError("state file must hold a JSON object")
    n = doc.get("n")
    if isinstance(n, bool) or not isinstance(n, int):
        raise ValueError(f"state file field 'n' must be an integer, got {n!r}")
    n = _check_qubit_count(n, max_n)
    fmt = doc.get("format")
    dim = 1 << n

    if fmt == "dense":
        raw = doc.get("amplitudes")
        if not isinstance(raw, list):
            raise ValueError("dense state file needs an 'amplitudes' list")
        if len(raw) != dim:
            raise ValueError(f"expected {dim} amplitudes for n={n}, file holds {len(raw)}")
        amps = np.empty(dim, dtype=np.complex128)
        for i, entry in enumerate(raw):
            if not isinstance(entry, (list, tuple)) or len(entry) != 2:
                raise ValueError(f"amplitude {i} must be a [re, im] pair, got {entry!r}")
            amps[i] = complex(
                _as_finite_float(entry[0], f"amplitude {i} real part"),
                _as_finite_float(entry[1], f"amplitude {i} imaginary part"),
            )
    elif fmt == "sparse":
        raw = doc.get("entries")
        if not isinstance(raw, list):
            raise ValueError("sparse state file needs an 'entries' list")
        amps = np.zeros(dim, dtype=np.complex128)
        seen: set[int] = set()
        for entry in raw:
            if not isinstance(entry, dict) or not {"i", "re", "im"} <= entry.keys():
                raise ValueError(f"sparse entry must carry keys i/re/im, got {entry!r}")
            i = entry["i"]
            if isinstance(i, bool) or not isinstance(i, int) or not 0 <= i < dim:
                raise ValueError(f"sparse index must lie in 0..{dim - 1}, got {i!r}")
            if i in seen:
                raise ValueError(f"sparse index {i} appears more than once")
            seen.add(i)
            amps[i] = complex(
                _as_finite_float(entry["re"], f"entry {i} real part"),
                _as_finite_float(entry["im"], f"entry {i} imaginary part"),
            )
    else:
        raise ValueError(f"state file format must be 'dense' or 'sparse', got {fmt!r}")
    return StateVector(n, amps)
