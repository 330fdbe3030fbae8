import math

import numpy as np
import pytest

import dickelab as dl

# Frozen by the dual-route cross check: definition and closed form agree.
CHI_5_2 = 0.7027687752661221


def test_wootters_on_maximally_entangled_pair():
    psi_plus = np.zeros(4, dtype=complex)
    psi_plus[[1, 2]] = 1 / math.sqrt(2)
    rho = dl.DensityMatrix(2, np.outer(psi_plus, psi_plus.conj()))
    assert dl.wootters_concurrence(rho) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_wootters_ghz_reduction_is_unentangled(n):
    rho = dl.partial_trace(dl.ghz_state(n), (1, 2))
    assert dl.wootters_concurrence(rho) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("n,l", [(4, 2), (5, 2), (6, 3), (7, 2), (8, 3)])
def test_spin_flip_spectrum_of_dicke_pair(n, l):
    # The flipped product's spectrum: one eigenvalue 4*l^2*(n-l)^2 / (n(n-1))^2,
    # a double root A*B / (n(n-1))^2 with A = l(n-l), B = (l-1)(n-l-1), and zero.
    rho = dl.partial_trace(dl.dicke_state(n, l), (1, 2)).entries
    flip = np.kron([[0, -1j], [1j, 0]], [[0, -1j], [1j, 0]])
    eig = np.sort(np.real(np.linalg.eigvals(rho @ (flip @ rho.conj() @ flip))))[::-1]
    denom = (n * (n - 1)) ** 2
    largest = 4 * l**2 * (n - l) ** 2 / denom
    double = (l**4 - 2 * l**3 * n + l**2 * n**2 + l**2 * n - l**2 - l * n**2 + l * n) / denom
    assert eig[0] == pytest.approx(largest, abs=1e-12)
    assert eig[1] == pytest.approx(double, abs=1e-12)
    assert eig[2] == pytest.approx(double, abs=1e-12)
    assert eig[3] == pytest.approx(0.0, abs=1e-12)


def test_wootters_rejects_bad_input():
    with pytest.raises(ValueError):
        dl.wootters_concurrence(np.eye(4))  # trace 4
    with pytest.raises(ValueError):
        dl.wootters_concurrence(dl.partial_trace(dl.ghz_state(3), (1,)))  # one qubit


@pytest.mark.parametrize("n", range(2, 13))
def test_c12_single_excitation_is_2_over_n(n):
    assert dl.c12_closed_form(n, 1) == pytest.approx(2 / n, abs=1e-15)


@pytest.mark.parametrize("n", [4, 6, 8, 10, 12])
def test_c12_half_filled_is_minimal(n):
    half = dl.c12_closed_form(n, n // 2)
    assert half == pytest.approx(1 / (n - 1), abs=1e-14)
    assert all(dl.c12_closed_form(n, l) >= half - 1e-14 for l in range(1, n))


@pytest.mark.parametrize("n", [5, 7, 9, 11])
def test_c12_odd_minimum_formula(n):
    l = (n - 1) // 2
    expected = ((n + 1) - math.sqrt((n + 1) * (n - 3))) / (2 * n)
    assert dl.c12_closed_form(n, l) == pytest.approx(expected, abs=1e-14)


def test_c1_rest_squared_values():
    for n in range(2, 13):
        assert dl.c1_rest_squared(n, 1) == pytest.approx(4 * (n - 1) / n**2, abs=1e-15)
    for n in (4, 6, 8):
        assert dl.c1_rest_squared(n, n // 2) == pytest.approx(1.0, abs=1e-15)
    for n in (5, 7, 9):
        assert dl.c1_rest_squared(n, (n - 1) // 2) == pytest.approx((n**2 - 1) / n**2, abs=1e-15)


def test_chi_anchors():
    assert dl.chi(5, 2) == pytest.approx(0.70277, abs=1e-5)
    assert dl.chi(5, 2) == pytest.approx(CHI_5_2, abs=1e-12)
    assert dl.chi(6, 2) == pytest.approx(0.67519, abs=1e-5)
    assert dl.chi(4, 2) == pytest.approx(2 / 3, abs=1e-12)
    assert dl.chi(6, 3) == pytest.approx(4 / 5, abs=1e-12)
    for n in range(2, 13):
        assert dl.chi(n, 1) == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("n", range(2, 16))
def test_chi_defining_identity(n):
    for l in range(1, n):
        gap = dl.c1_rest_squared(n, l) - (n - 1) * dl.c12_closed_form(n, l) ** 2
        assert dl.chi(n, l) == pytest.approx(gap, abs=1e-12)


@pytest.mark.parametrize("n", range(2, 9))
def test_concurrence_oracle_equivalence(n):
    for l in range(1, n):
        numeric = dl.wootters_concurrence(dl.partial_trace(dl.dicke_state(n, l), (1, 2)))
        assert abs(numeric - dl.c12_closed_form(n, l)) <= 1e-10


@pytest.mark.parametrize("n,l", [(5, 2), (6, 3)])
def test_pair_choice_does_not_matter(n, l):
    s = dl.dicke_state(n, l)
    values = [
        dl.wootters_concurrence(dl.partial_trace(s, (i, j)))
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        if i != j
    ]
    assert max(values) - min(values) <= 1e-12


@pytest.mark.parametrize("n", range(2, 13))
def test_single_qubit_determinant_pipeline(n):
    for l in range(1, n):
        rho = dl.partial_trace(dl.dicke_state(n, l), (1,))
        det4 = 4 * np.linalg.det(rho.entries).real
        assert det4 == pytest.approx(4 * l * (n - l) / n**2, abs=1e-12)


@pytest.mark.parametrize("n", range(3, 21))
def test_monotonicity_in_the_excitation_count(n):
    # Strict decrease/increase up to the middle; for odd n the two middle
    # excitation counts are exactly tied by the l <-> n-l symmetry.
    for l in range(1, math.ceil(n / 2)):
        pair_step = dl.c12_closed_form(n, l) - dl.c12_closed_form(n, l + 1)
        rest_step = dl.c1_rest_squared(n, l + 1) - dl.c1_rest_squared(n, l)
        if n % 2 == 1 and l == (n - 1) // 2:
            assert pair_step == 0.0 and rest_step == 0.0
        else:
            assert pair_step > 1e-15 and rest_step > 1e-15


@pytest.mark.parametrize("n", range(4, 21))
def test_chi_symmetry_under_complementation(n):
    for l in range(1, n):
        assert dl.chi(n, l) == dl.chi(n, n - l)  # identical expressions, exact


def test_chi_extrema():
    for n in (4, 6, 8, 12, 20):
        assert dl.chi(n, n // 2) == pytest.approx((n - 2) / (n - 1), abs=1e-12)
        assert dl.chi_even_maximum(n) == pytest.approx((n - 2) / (n - 1), abs=1e-15)
    for n in (5, 7, 9, 13, 19):
        l = (n - 1) // 2
        assert dl.chi(n, l) == pytest.approx(dl.chi_odd_maximum(n), abs=1e-12)
        assert all(dl.chi(n, j) <= dl.chi(n, l) + 1e-12 for j in range(1, n))


def test_monogamy_report_5_2():
    report = dl.monogamy_report(5, 2)
    assert report.chi == pytest.approx(CHI_5_2, abs=1e-12)
    assert report.c12_numeric == pytest.approx(report.c12, abs=1e-10)
    assert not report.is_even_max
    assert report.is_chi_max
    doc = report.to_jsonable()
    assert {"n", "l", "c12", "c12_numeric", "c1_rest_sq", "chi",
            "is_even_max", "is_chi_max", "notes"} == set(doc)


def test_report_rejects_inconsistent_chi():
    with pytest.raises(dl.NumericalConsistencyError):
        dl.MonogamyReport(
            n=4, l=2, c12=1 / 3, c12_numeric=1 / 3, c1_rest_sq=1.0,
            chi=0.5, is_even_max=True, is_chi_max=True,
        )


def test_sweep_table():
    reports = dl.monogamy_sweep(2, 6)
    assert len(reports) == sum(n - 1 for n in range(2, 7))
    by_key = {(r.n, r.l): r for r in reports}
    assert by_key[(6, 3)].chi == pytest.approx(4 / 5, abs=1e-12)
    assert by_key[(6, 3)].is_chi_max and by_key[(6, 3)].is_even_max
    assert not by_key[(6, 2)].is_chi_max
    assert by_key[(5, 2)].is_chi_max and by_key[(5, 3)].is_chi_max  # odd-n tie
    for r in reports:
        if 2 <= r.l <= r.n - 2:
            assert 0.0 < r.chi < 1.0
        assert 0.0 <= r.c12 <= 1.0 and 0.0 <= r.c1_rest_sq <= 1.0


def test_sweep_validation():
    with pytest.raises(ValueError):
        dl.monogamy_sweep(5, 4)
    with pytest.raises(ValueError):
        dl.monogamy_sweep(1, 4)


def test_sweep_csv_format():
    text = dl.sweep_csv(dl.monogamy_sweep(4, 5))
    lines = text.strip().split("\n")
    assert lines[0] == "n,l,c12,c12_numeric,c1_rest_sq,chi,is_max"
    assert len(lines) == 1 + 3 + 4
    first = lines[1].split(",")
    assert first[0] == "4" and first[1] == "1"
    assert first[6] in ("true", "false")
    float(first[2])  # parses
