"""Invertible local operators, orbit sampling, and classification verdicts.

A SLOCC transformation is one invertible 2x2 operator per qubit.  This
module applies such chains to states, checks the covariance law obeyed by
the residual entanglement (rescaling by |det| factors for even n and their
squares for odd n), builds GHZ- and W-orbit members directly from the chain
entries as an independent cross-check path, and turns invariant values into
one-sided inequivalence verdicts: a mismatch proves two states inequivalent,
a match proves nothing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .invariants import EPS_ZERO, invariant_report, tau
from .statekit import StateVector

#: Chains whose matrices fall below this |det| floor are rejected.
INVERTIBILITY_FLOOR = 0.05
#: Residual budget (relative to the expected value) for covariance checks.
COVARIANCE_TOL = 1e-8
#: Floating invariants within (eps_zero, eps_zero * band) of scale are
#: treated as indeterminate by the classifier: close enough to zero that
#: neither the zero nor the nonzero decision rule may fire.
DECISION_BAND = 1e3

REFERENCE_GHZ = "GHZ"
REFERENCE_W = "W"
REFERENCE_DICKE_HALF = "Dicke(n/2)"

#: Decision rules cited in verdicts.
RULE_TAU_MISMATCH = "tau-mismatch"
RULE_GHZ_DISCRIMINANT = "ghz-orbit-discriminant"
RULE_W_DISCRIMINANT = "w-orbit-discriminant"
RULE_DICKE_DISCRIMINANT = "dicke-diagonal-discriminant"

STATUS_DISTINCT = "distinct"
STATUS_UNKNOWN = "unknown"


@dataclass(frozen=True)
class LocalOperatorChain:
    """One invertible 2x2 complex operator per qubit; ``ops[0]`` acts on
    qubit 1 (the most significant bit).  Determinants are cached."""

    ops: tuple[np.ndarray, ...]
    dets: tuple[complex, ...]
    draws: int | None = None

    def __post_init__(self) -> None:
        if len(self.ops) < 2:
            raise ValueError("a chain needs one operator per qubit, at least 2")
        if len(self.dets) != len(self.ops):
            raise ValueError("determinant cache does not match the operator count")
        frozen = []
        for mat in self.ops:
            arr = np.ascontiguousarray(mat, dtype=np.complex128)
            if arr.shape != (2, 2):
                raise ValueError(f"chain operators must be 2x2, got shape {arr.shape}")
            arr.setflags(write=False)
            frozen.append(arr)
        object.__setattr__(self, "ops", tuple(frozen))
        object.__setattr__(self, "dets", tuple(complex(d) for d in self.dets))

    @classmethod
    def from_matrices(
        cls,
        matrices: Iterable[np.ndarray],
        *,
        floor: float | None = INVERTIBILITY_FLOOR,
        draws: int | None = None,
    ) -> "LocalOperatorChain":
        mats = [np.ascontiguousarray(m, dtype=np.complex128) for m in matrices]
        dets = [complex(np.linalg.det(m)) for m in mats]
        threshold = 0.0 if floor is None else floor
        for k, det in enumerate(dets):
            if abs(det) < threshold or det == 0:
                raise ValueError(
                    f"operator {k + 1} has |det| = {abs(det):.3g}, below the "
                    f"invertibility floor {threshold:g}"
                )
        return cls(tuple(mats), tuple(dets), draws)

    @property
    def n(self) -> int:
        return len(self.ops)

    def abs_det_product(self, power: int = 1) -> float:
        return float(np.prod([abs(d) ** power for d in self.dets]))


def identity_chain(n: int) -> LocalOperatorChain:
    return LocalOperatorChain.from_matrices([np.eye(2)] * n)


def sigma_x_chain(n: int) -> LocalOperatorChain:
    """Bit flip on every qubit; maps each state onto its complement."""
    flip = np.array([[0.0, 1.0], [1.0, 0.0]])
    return LocalOperatorChain.from_matrices([flip] * n)


def compose_chains(
    outer: LocalOperatorChain, inner: LocalOperatorChain, *, floor: float | None = None
) -> LocalOperatorChain:
    """Chain equivalent to applying ``inner`` first, then ``outer``.

    Composition can push determinants below the sampling floor, so no floor
    is enforced unless one is passed explicitly.
    """
    if outer.n != inner.n:
        raise ValueError(f"cannot compose chains over {outer.n} and {inner.n} qubits")
    return LocalOperatorChain.from_matrices(
        [a @ b for a, b in zip(outer.ops, inner.ops)], floor=floor
    )


def apply_local(s: StateVector, chain: LocalOperatorChain) -> StateVector:
    """Apply the chain qubit-by-qubit in O(n * 2**n).

    The output is NOT renormalized: invertible local operators do not
    preserve the norm, and the covariance law is stated for the raw result.
    """
    if chain.n != s.n:
        raise ValueError(f"chain acts on {chain.n} qubits but the state has {s.n}")
    psi = s.amplitudes.reshape([2] * s.n)
    for axis, op in enumerate(chain.ops):
        psi = np.moveaxis(np.tensordot(op, psi, axes=([1], [axis])), 0, axis)
    return StateVector(s.n, np.ascontiguousarray(psi.reshape(-1)))


def random_ilo(
    n: int,
    seed: int | None = None,
    *,
    rng: np.random.Generator | None = None,
    floor: float = INVERTIBILITY_FLOOR,
) -> LocalOperatorChain:
    """Seeded random invertible chain.

    Real and imaginary parts of every entry are uniform on [-1, 1];
    matrices with |det| below ``floor`` are rejected and redrawn.  The
    total number of draws (including rejections) is recorded on the chain.
    """
    if n < 2:
        raise ValueError("chains need at least 2 qubits")
    if rng is None:
        rng = np.random.default_rng(seed)
    mats: list[np.ndarray] = []
    draws = 0
    while len(mats) < n:
        sample = rng.uniform(-1.0, 1.0, size=(2, 2, 2))
        mat = sample[0] + 1j * sample[1]
        draws += 1
        if abs(np.linalg.det(mat)) >= floor:
            mats.append(mat)
    return LocalOperatorChain.from_matrices(mats, floor=floor, draws=draws)


def _covariance(s: StateVector, chain: LocalOperatorChain) -> tuple[float, float]:
    power = 1 if s.n % 2 == 0 else 2
    expected = tau(s) * chain.abs_det_product(power)
    residual = abs(tau(apply_local(s, chain)) - expected)
    return residual, expected


def check_tau_covariance(s: StateVector, chain: LocalOperatorChain) -> float:
    """Absolute residual of the rescaling law for ``tau`` under ``chain``.

    The transformed state must carry ``tau(s)`` times the product of the
    |det| factors, to the first power for even n and squared for odd n.
    """
    residual, _ = _covariance(s, chain)
    return residual


def ghz_orbit_state(chain: LocalOperatorChain) -> StateVector:
    """GHZ-orbit member built directly from the chain entries.

    Amplitude at index ``i``: sum over the two GHZ branches of the product,
    over qubits, of the operator column selected by the branch evaluated at
    that qubit's bit of ``i``, divided by sqrt(2).  Deliberately independent
    of :func:`apply_local` so the two paths can cross-check each other.
    """
    n = chain.n
    idx = np.arange(1 << n, dtype=np.int64)
    branch0 = np.ones(1 << n, dtype=np.complex128)
    branch1 = np.ones(1 << n, dtype=np.complex128)
    for j, op in enumerate(chain.ops):
        bits = (idx >> (n - 1 - j)) & 1
        branch0 *= op[bits, 0]
        branch1 *= op[bits, 1]
    return StateVector(n, (branch0 + branch1) / math.sqrt(2.0))


def w_orbit_state(chain: LocalOperatorChain) -> StateVector:
    """W-orbit member built directly from the chain entries.

    One term per excitation position: the excited qubit contributes its
    operator's second column, all others the first, divided by sqrt(n).
    Independent of :func:`apply_local` for cross-checking.
    """
    n = chain.n
    idx = np.arange(1 << n, dtype=np.int64)
    col0 = np.empty((n, 1 << n), dtype=np.complex128)
    col1 = np.empty((n, 1 << n), dtype=np.complex128)
    for j, op in enumerate(chain.ops):
        bits = (idx >> (n - 1 - j)) & 1
        col0[j] = op[bits, 0]
        col1[j] = op[bits, 1]
    # Prefix/suffix products of the ground columns avoid dividing by zeros.
    prefix = np.ones((n + 1, 1 << n), dtype=np.complex128)
    for j in range(n):
        prefix[j + 1] = prefix[j] * col0[j]
    suffix = np.ones((n + 1, 1 << n), dtype=np.complex128)
    for j in range(n - 1, -1, -1):
        suffix[j] = suffix[j + 1] * col0[j]
    total = np.zeros(1 << n, dtype=np.complex128)
    for j in range(n):
        total += prefix[j] * col1[j] * suffix[j + 1]
    return StateVector(n, total / math.sqrt(n))


@dataclass(frozen=True)
class Verdict:
    """One-sided classification outcome.

    ``status`` maps each reference class to ``"distinct"`` or ``"unknown"``.
    A reference is marked distinct only when a decision rule fires outside
    tolerance; the invariants are necessary conditions only, so a verdict
    never claims equivalence.
    """

    subject: str
    n: int
    status: dict[str, str]
    rules: dict[str, tuple[str, ...]]
    notes: tuple[str, ...] = ()

    @property
    def classes_excluded(self) -> tuple[str, ...]:
        return tuple(ref for ref, st in self.status.items() if st == STATUS_DISTINCT)

    def excludes(self, reference: str) -> bool:
        return self.status.get(reference) == STATUS_DISTINCT

    def to_jsonable(self) -> dict:
        return {
            "subject": self.subject,
            "n": self.n,
            "classes_excluded": list(self.classes_excluded),
            "classes_confirmed_distinct_from": [
                {"reference": ref, "rules": list(self.rules[ref])}
                for ref in self.classes_excluded
            ],
            "status": dict(self.status),
            "notes": list(self.notes),
        }


def _zeroness(value_abs: float, exact_zero: bool | None, scale: float, eps_zero: float) -> str:
    """Trit decision: 'zero', 'nonzero', or 'indeterminate' near the cut."""
    if exact_zero is not None:
        return "zero" if exact_zero else "nonzero"
    if value_abs <= eps_zero * scale:
        return "zero"
    if value_abs >= eps_zero * DECISION_BAND * scale:
        return "nonzero"
    return "indeterminate"


def classify(
    s: StateVector,
    *,
    subject: str = "state",
    eps_zero: float = EPS_ZERO,
    dicke_l: int | None = None,
) -> Verdict:
    """Classification verdict for ``s`` against the GHZ, W and half-filled
    Dicke reference classes.

    Decision rules, each a necessary condition for SLOCC equivalence:

    * ``tau-mismatch``: the subject's ``tau`` is zero while the reference's
      is not, or vice versa (the references have tau = 1 except the W state
      for n >= 3, whose tau is 0).
    * ``ghz-orbit-discriminant`` / ``w-orbit-discriminant``: some ``d_l`` of
      the subject is nonzero although every ``d_l`` vanishes on the entire
      GHZ / W orbit.
    * ``dicke-diagonal-discriminant``: cited additionally when the subject
      is declared (via ``dicke_l``) to be a Dicke state whose own-``l``
      discriminant fired, which is exactly the nonvanishing that separates
      it from both orbits.

    Floating values inside the indeterminate band around the zero cutoff
    fire no rule, so near-threshold comparisons stay ``unknown``.
    """
    report = invariant_report(s, eps_zero=eps_zero)
    n = s.n
    scale = report.scale

    if report.exact_mode:
        tau_state = _zeroness(0.0, report.tau_exact == 0, scale, eps_zero)
        d_states = {
            l: _zeroness(0.0, report.d_exact[l] == 0, scale, eps_zero)
            for l in report.d_values
        }
    else:
        tau_state = _zeroness(abs(report.tau), None, scale, eps_zero)
        d_states = {
            l: _zeroness(abs(v), None, scale, eps_zero) for l, v in report.d_values.items()
        }
    d_nonzero = sorted(l for l, st in d_states.items() if st == "nonzero")

    # Reference tau values: GHZ and the half-filled Dicke state sit at 1;
    # the W state vanishes for n >= 3 but reduces to the Bell pair at n = 2.
    references = {REFERENCE_GHZ: "nonzero", REFERENCE_W: "nonzero" if n == 2 else "zero"}
    if n % 2 == 0:
        references[REFERENCE_DICKE_HALF] = "nonzero"

    status = {ref: STATUS_UNKNOWN for ref in references}
    rules: dict[str, list[str]] = {ref: [] for ref in references}
    notes: list[str] = []

    for ref, ref_state in references.items():
        if tau_state != "indeterminate" and tau_state != ref_state:
            status[ref] = STATUS_DISTINCT
            rules[ref].append(RULE_TAU_MISMATCH)

    if d_nonzero:
        for ref, rule in ((REFERENCE_GHZ, RULE_GHZ_DISCRIMINANT),
                          (REFERENCE_W, RULE_W_DISCRIMINANT)):
            status[ref] = STATUS_DISTINCT
            rules[ref].append(rule)
            if dicke_l is not None and dicke_l in d_nonzero:
                rules[ref].append(RULE_DICKE_DISCRIMINANT)
        notes.append("nonzero discriminants: " + ", ".join(f"d_{l}" for l in d_nonzero))

    if tau_state == "indeterminate":
        notes.append("tau lies inside the indeterminate band; tau rules withheld")
    indeterminate_d = sorted(l for l, st in d_states.items() if st == "indeterminate")
    if indeterminate_d:
        notes.append(
            "indeterminate discriminants: " + ", ".join(f"d_{l}" for l in indeterminate_d)
        )

    return Verdict(
        subject=subject,
        n=n,
        status=status,
        rules={ref: tuple(fired) for ref, fired in rules.items()},
        notes=tuple(notes),
    )


@dataclass(frozen=True)
class OrbitCampaign:
    """Covariance-law sampling campaign over seeded random chains."""

    state: str
    n: int
    trials: int
    seed: int
    parity: str
    max_residual: float
    mean_residual: float
    max_relative_residual: float
    ilo_draws: int
    ilo_acceptance_rate: float
    verdict: Verdict

    def to_jsonable(self) -> dict:
        return {
            "state": self.state,
            "n": self.n,
            "trials": self.trials,
            "seed": self.seed,
            "parity": self.parity,
            "max_residual": self.max_residual,
            "mean_residual": self.mean_residual,
            "max_relative_residual": self.max_relative_residual,
            "ilo_draws": self.ilo_draws,
            "ilo_acceptance_rate": self.ilo_acceptance_rate,
            "verdict": self.verdict.to_jsonable(),
        }


def run_orbit_campaign(
    s: StateVector,
    *,
    trials: int = 100,
    seed: int = 0,
    subject: str = "state",
    dicke_l: int | None = None,
) -> OrbitCampaign:
    """Check the covariance law on ``trials`` random chains applied to ``s``.

    Residuals are aggregated order-independently (max and mean); each
    relative residual divides by ``max(1, expected value)``.  The report
    records the seed and the chain-sampling acceptance rate.
    """
    if trials < 1:
        raise ValueError("a campaign needs at least one trial")
    rng = np.random.default_rng(seed)
    residuals = np.empty(trials)
    relative = np.empty(trials)
    draws = 0
    for t in range(trials):
        chain = random_ilo(s.n, rng=rng)
        draws += chain.draws or s.n
        residual, expected = _covariance(s, chain)
        residuals[t] = residual
        relative[t] = residual / max(1.0, expected)
    return OrbitCampaign(
        state=subject,
        n=s.n,
        trials=trials,
        seed=seed,
        parity="even" if s.n % 2 == 0 else "odd",
        max_residual=float(residuals.max()),
        mean_residual=float(residuals.mean()),
        max_relative_residual=float(relative.max()),
        ilo_draws=draws,
        ilo_acceptance_rate=float(trials * s.n / draws),
        verdict=classify(s, subject=subject, dicke_l=dicke_l),
    )
