import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import dickelab as dl
from oracles import d_window_scalar, random_product_state, random_state, tau_scalar


def test_sgn_star_examples():
    assert dl.sgn_star(4, 3) == 1
    assert dl.sgn_star(5, 4) == 1  # upper branch: (-1)**(5 + 1)
    assert dl.sgn_star(2, 0) == 1
    assert dl.sgn_star(3, 0) == 1 and dl.sgn_star(3, 1) == 1


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_sgn_star_even_n_is_plain_parity(n):
    for i in range(1 << (n - 2)):
        assert dl.sgn_star(n, i) == (-1) ** dl.popcount(i)


def test_sgn_star_range_errors():
    with pytest.raises(ValueError):
        dl.sgn_star(4, 4)
    with pytest.raises(ValueError):
        dl.sgn_star(4, -1)


def test_i_star_w3_frozen_values():
    w3 = dl.w_state(3)
    assert dl.i_star(w3, 2, 0) == pytest.approx(-1 / 3, abs=1e-15)
    assert dl.i_star(w3, 2, 4) == 0  # pairs weight-1 with weight-0/weight-3
    assert dl.i_bar(w3) == 0


def test_i_star_ghz4_modulus_half():
    assert abs(dl.i_star(dl.ghz_state(4), 4, 0)) == pytest.approx(0.5, abs=1e-15)


def test_i_star_argument_validation():
    s = dl.ghz_state(4)
    with pytest.raises(ValueError):
        dl.i_star(s, 4, 8)  # full width only at offset 0
    with pytest.raises(ValueError):
        dl.i_star(s, 3, 4)  # half blocks start at 0 or 2**(n-1)
    with pytest.raises(ValueError):
        dl.i_star(s, 2, 0)  # m must be n or n-1


def test_i_bar_frozen_values():
    assert dl.i_bar(dl.ghz_state(5)) == pytest.approx(0.5, abs=1e-15)
    assert dl.i_bar(dl.w_state(5)) == 0
    assert dl.i_bar(dl.dicke_state(5, 2)) == 0
    with pytest.raises(ValueError):
        dl.i_bar(dl.ghz_state(4))


@pytest.mark.parametrize("n", range(2, 13))
def test_tau_ghz_is_one(n):
    assert dl.tau(dl.ghz_state(n)) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("n", range(3, 13))
def test_tau_w_vanishes(n):
    assert abs(dl.tau(dl.w_state(n))) <= 1e-12


def test_tau_w2_is_the_bell_boundary_case():
    # On two qubits the single excitation is the half-filled state, so its
    # residual entanglement is maximal rather than zero.
    assert dl.tau(dl.w_state(2)) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("n", [4, 6, 8, 10])
def test_tau_half_filled_dicke_is_one(n):
    assert dl.tau(dl.dicke_state(n, n // 2)) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("n,l", [(4, 1), (5, 2), (6, 2), (7, 3), (8, 3), (9, 4)])
def test_tau_other_dicke_states_vanish(n, l):
    assert abs(dl.tau(dl.dicke_state(n, l))) <= 1e-12


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 7))
def test_tau_matches_scalar_oracle(seed, n):
    s = random_state(n, np.random.default_rng(seed))
    assert dl.tau(s) == pytest.approx(tau_scalar(s), abs=1e-12)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.sampled_from([2, 4, 6, 8]))
def test_even_restricted_sum_equals_generic_pairing(seed, n):
    # The quarter-range signed sum and the half-range complement pairing are
    # two renderings of the same even-n invariant.
    s = random_state(n, np.random.default_rng(seed))
    assert 2 * abs(dl.i_star(s, n, 0)) == pytest.approx(dl.tau(s), abs=1e-12)


@settings(max_examples=30, deadline=None)
@given(
    seed=st.integers(0, 2**32 - 1),
    n=st.integers(2, 6),
    scale_re=st.floats(-2, 2),
    scale_im=st.floats(-2, 2),
)
def test_tau_homogeneity(seed, n, scale_re, scale_im):
    c = complex(scale_re, scale_im)
    s = random_state(n, np.random.default_rng(seed))
    scaled = dl.StateVector(n, c * s.amplitudes)
    power = 2 if n % 2 == 0 else 4
    assert dl.tau(scaled) == pytest.approx(abs(c) ** power * dl.tau(s), abs=1e-10)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 6), phase=st.floats(0, 2 * math.pi))
def test_tau_global_phase_invariance(seed, n, phase):
    s = random_state(n, np.random.default_rng(seed))
    rotated = dl.StateVector(n, np.exp(1j * phase) * s.amplitudes)
    assert dl.tau(rotated) == pytest.approx(dl.tau(s), abs=1e-12)


def test_delta_offset():
    assert dl.delta_offset(2) == 0
    assert dl.delta_offset(3) == 16
    assert dl.delta_offset(5) == 16 + 32 + 64
    with pytest.raises(ValueError):
        dl.delta_offset(1)


def test_d_l_dicke_4_2_frozen_value():
    s = dl.dicke_state(4, 2, exact=True)
    assert dl.d_l(s, 2) == pytest.approx(-1 / 36, abs=1e-15)
    assert dl.d_l_exact(s, 2) == Fraction(-1, 36)
    assert d_window_scalar(s, 2) == pytest.approx(-1 / 36, abs=1e-15)


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
def test_d_l_vanishes_on_ghz_and_w(n):
    ghz, w = dl.ghz_state(n), dl.w_state(n)
    for l in range(2, n - 1):
        assert abs(dl.d_l(ghz, l)) <= 1e-15
        assert abs(dl.d_l(w, l)) <= 1e-15


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(4, 7))
def test_d_l_matches_window_oracle(seed, n):
    s = random_state(n, np.random.default_rng(seed))
    for l in range(2, n - 1):
        assert dl.d_l(s, l) == pytest.approx(complex(d_window_scalar(s, l)), abs=1e-12)


@pytest.mark.parametrize("n", range(4, 11))
def test_complementary_dicke_discriminants_fire_jointly(n):
    # The complement maps the l-excitation state onto the (n-l) one, so the
    # own-window discriminant must be nonzero on both ends of the pair.
    for l in range(2, n - 1):
        if not 2 <= n - l <= n - 2:
            continue
        s = dl.dicke_state(n, l, exact=True)
        assert dl.d_l_exact(s, l) != 0
        assert dl.d_l_exact(dl.complement(s), n - l) != 0


@pytest.mark.parametrize("n", range(4, 21))
def test_exact_dicke_diagonal_value(n):
    for l in range(2, n - 1):
        s = dl.dicke_state(n, l, exact=True)
        assert dl.d_l_exact(s, l) == Fraction(-1, math.comb(n, l) ** 2)


def test_d_l_range_validation():
    s = dl.ghz_state(4)
    with pytest.raises(ValueError):
        dl.d_l(s, 1)
    with pytest.raises(ValueError):
        dl.d_l(s, 3)  # window would spill past 2**4 amplitudes


def test_invariant_report_dicke_6_3():
    report = dl.invariant_report(dl.dicke_state(6, 3, exact=True))
    assert report.tau == pytest.approx(1.0, abs=1e-12)
    assert report.tau_exact == 1
    assert report.d_exact[3] == Fraction(-1, 400)
    assert report.zero_flags["tau"] is False
    assert report.zero_flags["d_3"] is False
    assert report.zero_flags["d_2"] is True and report.zero_flags["d_4"] is True
    assert report.exact_mode


def test_invariant_report_w6():
    report = dl.invariant_report(dl.w_state(6, exact=True))
    assert report.tau_exact == 0
    assert all(report.zero_flags.values())


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_tau_vanishes_on_product_states(n):
    rng = np.random.default_rng(123 + n)
    for _ in range(20):
        s = random_product_state(n, rng)
        assert abs(dl.tau(s)) <= 1e-12 * max(1.0, s.norm_squared)


def test_exact_mode_requires_table():
    s = dl.ghz_state(4)  # no exact table
    with pytest.raises(ValueError):
        dl.tau_exact(s)
    with pytest.raises(ValueError):
        dl.d_l_exact(s, 2)


def test_exact_tau_values():
    assert dl.tau_exact(dl.ghz_state(7, exact=True)) == 1
    assert dl.tau_exact(dl.dicke_state(8, 4, exact=True)) == 1
    assert dl.tau_exact(dl.dicke_state(9, 3, exact=True)) == 0
    assert dl.tau_exact(dl.w_state(6, exact=True)) == 0


def test_report_serialization_shape():
    doc = dl.invariant_report(dl.dicke_state(6, 2, exact=True)).to_jsonable()
    assert set(doc) == {"n", "tau", "tau_parity", "d", "zero_flags", "exact_mode",
                        "tau_exact", "d_exact"}
    assert doc["tau_parity"] == "even"
    assert set(doc["d"]) == {"2", "3", "4"}
    assert doc["d_exact"]["2"] == "-1/225"
    assert doc["zero_flags"]["d_2"] is False


def test_report_small_n_has_no_d_values():
    report = dl.invariant_report(dl.ghz_state(3))
    assert report.d_values == {}
    assert set(report.zero_flags) == {"tau"}
