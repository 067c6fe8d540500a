"""tau, poles, Laurent data and the torus-knot expansions."""

import cmath
import math
import warnings
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from jonesasym.jones import EvalPoint, jones_torus_sum
from jonesasym.knots import Torus, alexander_eval
from jonesasym.quadrature import Circle, cauchy_coefficient, cauchy_coefficients
from jonesasym.torus import (PoleHit, RationalParam, WrongCaseError, amplitude_R, chern_simons_CS,
                             eta_coeffs, eta_from_pi_i, even_part, expansion, expansion_in_P,
                             expansion_not_in_P, is_pole_index, kashaev_tirkkonen_r1, laurent_coeffs,
                             laurent_radius, poles, residue_closed_form, tau_array, tau_eval, tau_knot)

from .conftest import rel

PAIRS = [(2, 3), (3, 4), (3, 5), (2, 5)]


def J(a, b, r, N):
    return jones_torus_sum(EvalPoint(2j * math.pi * float(r), N), a, b).value


# -- tau ---------------------------------------------------------------------

def test_tau_zero_at_origin():
    assert tau_eval(2, 3, 0) == 0


def test_tau_two_routes_agree():
    z = 1j * math.pi * 0.07
    via_alexander = 2 * cmath.sinh(z) / alexander_eval(Torus(2, 3), z)
    assert abs(tau_eval(2, 3, z) - via_alexander) <= 1e-12
    assert abs(tau_knot(Torus(2, 3), z) - via_alexander) <= 1e-12


def test_tau_pole_hit_reports_pole():
    with pytest.raises(PoleHit) as info:
        tau_eval(2, 3, 1j * math.pi / 6)
    assert info.value.pole == pytest.approx(1j * math.pi / 6)


def test_tau_removable_point_is_finite():
    # sinh(6z) = 0 at z = pi i/3 but so does sinh(3z): removable
    z = 1j * math.pi / 3
    near = (tau_eval(2, 3, z + 1e-5) + tau_eval(2, 3, z - 1e-5)) / 2
    assert abs(tau_eval(2, 3, z) - near) <= 1e-8


@given(st.complex_numbers(max_magnitude=3.0, allow_nan=False, allow_infinity=False))
def test_tau_array_matches_scalar(z):
    if min(abs(z - p) for p in poles(2, 3, -12, 12)) < 1e-3:
        return
    assert abs(complex(tau_array(2, 3, z)) - tau_eval(2, 3, z)) <= 1e-10 * max(1, abs(tau_eval(2, 3, z)))


@pytest.mark.parametrize("z", [0, 1j * math.pi / 3, 1j * math.pi / 2, 2j * math.pi / 3])
def test_tau_array_removable_points(z):
    assert complex(tau_array(2, 3, z)) == pytest.approx(tau_eval(2, 3, z), abs=1e-12)
    assert complex(tau_array(2, 3, np.array([z]))[0]) == pytest.approx(tau_eval(2, 3, z), abs=1e-12)


def test_tau_array_no_overflow_far_out():
    v = tau_array(2, 3, np.array([400.0, -400.0 + 1j]))
    assert np.all(np.isfinite(v))


def test_poles_index_set():
    assert [round((p / (1j * math.pi / 6)).real) for p in poles(2, 3, -7, 7)] == [-7, -5, -1, 1, 5, 7]
    assert is_pole_index(3, 4, 5) and not is_pole_index(3, 4, 6)


# -- residues ----------------------------------------------------------------

def test_residue_example():
    assert residue_closed_form(2, 3, 1) == pytest.approx(math.sqrt(3) / 6)


@pytest.mark.parametrize("a, b", PAIRS)
def test_residues_match_circle_integrals(a, b):
    ab = a * b
    for j in range(1, 2 * ab + 1):
        if not is_pole_index(a, b, j):
            continue
        pole = 1j * math.pi * j / ab
        numeric = cauchy_coefficient(lambda w: tau_array(a, b, pole + w), Circle(0j, 0.4 * math.pi / ab), -1)
        assert abs(numeric - residue_closed_form(a, b, j)) <= 1e-10


def test_R_and_CS_examples():
    assert amplitude_R(2, 3, 1) == pytest.approx(math.sqrt(3) / 3)
    assert chern_simons_CS(2, 3, 1) == pytest.approx(cmath.exp(1j * math.pi / 12))


# -- RationalParam -----------------------------------------------------------

def test_rational_param_promotion_warns_only_when_inexact():
    with pytest.warns(UserWarning):
        r = RationalParam.coerce(1 / 6 + 1e-14, 6)
    assert r.exact and r.value == Fraction(1, 6)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert RationalParam.coerce(0.25, 6).value == Fraction(1, 4)
    assert not RationalParam.coerce(0.07 + 1e-9, 6).exact


def test_rational_param_flags():
    r = RationalParam.coerce("5/6", 6)
    assert r.is_pole(2, 3) and r.pole_index(2, 3) == 5 and r.floor_abr(2, 3) == 5
    assert not RationalParam.coerce(Fraction(1, 3), 6).is_pole(2, 3)
    assert RationalParam.coerce(2, 6).is_integer
    assert (-r).value == Fraction(-5, 6)


# -- Laurent data ------------------------------------------------------------

@pytest.mark.parametrize("r", [Fraction(7, 100), Fraction(1, 4), Fraction(2, 7), Fraction(13, 10)])
def test_gamma0_is_tau_at_center(r):
    ld = laurent_coeffs(2, 3, r, 4)
    assert abs(ld.gammas[0] - tau_eval(2, 3, 1j * math.pi * float(r))) <= 1e-12
    assert ld.odd_leakage <= 1e-10
    assert ld.residue is None


@pytest.mark.parametrize("a, b, r", [(2, 3, Fraction(1, 6)), (2, 3, Fraction(5, 6)), (3, 4, Fraction(1, 12))])
def test_pole_case_residue(a, b, r):
    ld = laurent_coeffs(a, b, r, 3)
    j = int(r * a * b)
    assert abs(ld.residue - residue_closed_form(a, b, j)) <= 1e-10
    assert ld.odd_leakage <= 1e-10


@pytest.mark.parametrize("r", [Fraction(7, 100), Fraction(1, 6), Fraction(1, 4)])
def test_gammas_radius_independent(r):
    rp = RationalParam(r)
    rho = laurent_radius(2, 3, rp)
    B = even_part(2, 3, 1j * math.pi * float(r))
    # halving the radius multiplies rounding noise by 2**degree, so stop at degree 4
    big = cauchy_coefficients(B, Circle(0j, rho), range(0, 6, 2))
    small = cauchy_coefficients(B, Circle(0j, rho / 2), range(0, 6, 2))
    assert np.max(np.abs(big - small) / np.abs(big)) <= 1e-10


def test_laurent_rejects_negative_kmax():
    with pytest.raises(ValueError):
        laurent_coeffs(2, 3, Fraction(1, 4), -1)


# -- expansions --------------------------------------------------------------

def test_in_P_no_oscillatory_term_small_r():
    r = Fraction(7, 100)
    res = expansion_in_P(2, 3, r, 500, 8)
    assert res.oscillatory_terms == ()
    assert rel(res.total, J(2, 3, r, 500)) <= 1e-6


def test_in_P_one_oscillatory_term():
    r = Fraction(1, 4)
    res = expansion_in_P(2, 3, r, 500, 8)
    assert [t.j for t in res.oscillatory_terms] == [1]
    assert rel(res.total, J(2, 3, r, 500)) <= 1e-4


def test_total_is_sum_of_parts():
    res = expansion(2, 3, Fraction(5, 6), 300, 6)
    parts = res.series_part + res.constant_growth_part + sum(t.value for t in res.oscillatory_terms)
    assert res.total == parts


def test_not_in_P_examples():
    r = Fraction(1, 6)
    assert rel(expansion_not_in_P(2, 3, r, 200, 8).total, J(2, 3, r, 200)) <= 1e-3
    big = expansion_not_in_P(2, 3, r, 10_000, 8)
    assert big.oscillatory_terms == ()
    C = cmath.exp(-1j * math.pi / 4) * math.sin(math.pi / 2) * math.sin(math.pi / 3) / (
        math.sqrt(2) * math.sin(math.pi / 6))
    assert rel(big.total / math.sqrt(10_000), C) <= 0.02
    five = expansion_not_in_P(2, 3, Fraction(5, 6), 500, 8)
    assert len(five.oscillatory_terms) == 4
    assert rel(five.total, J(2, 3, Fraction(5, 6), 500)) <= 1e-2


@pytest.mark.parametrize("a, b, r", [(3, 4, Fraction(1, 5)), (2, 5, Fraction(3, 4)), (3, 5, Fraction(1, 15)),
                                     (3, 4, Fraction(7, 12))])
def test_expansion_matches_sum_other_knots(a, b, r):
    assert rel(expansion(a, b, r, 400, 8).total, J(a, b, r, 400)) <= 1e-6


def test_negative_r_is_conjugate():
    r = Fraction(1, 4)
    assert expansion(2, 3, -r, 300, 6).total == expansion(2, 3, r, 300, 6).total.conjugate()
    assert rel(expansion(2, 3, -r, 300, 6).total, J(2, 3, -r, 300)) <= 1e-6


def test_wrong_case_rejected():
    with pytest.raises(WrongCaseError):
        expansion_in_P(2, 3, Fraction(1, 6), 100, 4)
    with pytest.raises(WrongCaseError):
        expansion_not_in_P(2, 3, Fraction(1, 4), 100, 4)
    with pytest.raises(WrongCaseError):
        expansion_in_P(2, 3, 1, 100, 4)
    with pytest.raises(WrongCaseError):
        expansion(2, 3, 2, 100, 4)


def test_error_estimate_tracks_actual_error():
    r = Fraction(1, 4)
    res = expansion(2, 3, r, 100, 8)
    err = abs(res.total - J(2, 3, r, 100))
    assert 0.1 * res.error_estimate <= err <= 10 * res.error_estimate


# -- r = 1 -------------------------------------------------------------------

def test_eta_identity_at_pi_i():
    # d^{2k}/dz^{2k} (z tau) at 0 equals 2k times tau^{(2k-1)}(0), and the odd
    # derivatives of (-1)^(ab+a+b) tau agree at 0 and at pi i
    for a, b in [(2, 3), (3, 4), (2, 5)]:
        eta = eta_coeffs(a, b, 5)
        at_pi = eta_from_pi_i(a, b, 5)
        for k in range(1, 6):
            assert abs(eta[k - 1] - 2 * k * at_pi[k - 1]) <= 1e-8 * max(1, abs(eta[k - 1]))


def test_eta_first_value():
    # eta(1) = (z tau)''(0) = 2 tau'(0)
    tau1 = cauchy_coefficient(lambda w: tau_array(2, 3, w), Circle(0j, 0.2), 1)
    assert eta_coeffs(2, 3, 1)[0] == pytest.approx(2 * tau1)


def test_kashaev_tirkkonen_matches_sum():
    assert rel(kashaev_tirkkonen_r1(2, 3, 50, 8).total, J(2, 3, 1, 50)) <= 1e-3
    assert rel(expansion(2, 3, 1, 200, 8).total, J(2, 3, 1, 200)) <= 1e-6


def test_kashaev_tirkkonen_slope():
    ns = np.unique(np.round(np.geomspace(500, 5000, 20)).astype(int))
    vals = [abs(kashaev_tirkkonen_r1(2, 3, int(n), 6).total) for n in ns]
    slope = np.polyfit(np.log(ns), np.log(vals), 1)[0]
    assert slope == pytest.approx(1.5, abs=0.05)


def test_small_r_convergence():
    r = 0.3 / 6
    target = 1 / alexander_eval(Torus(2, 3), 1j * math.pi * r)
    errs = [abs(J(2, 3, r, n) - target) for n in (100, 1000, 10_000)]
    assert errs[0] > errs[1] > errs[2]


def test_oscillation_witness():
    vals = np.array([J(2, 3, Fraction(1, 3), n) / math.sqrt(n) for n in range(1000, 1041)])
    assert np.max(np.abs(vals[:, None] - vals[None, :])) > 0.1
    assert np.max(np.abs(vals)) < 10


def test_error_slope_at_high_precision():
    from jonesasym.highprec import expansion_in_P_mp, torus_sum_mp
    ns = [100, 200, 400, 800]
    r = Fraction(1, 4)
    errs = []
    for n in ns:
        ref = torus_sum_mp(2, 3, r, n)
        errs.append(float(abs(expansion_in_P_mp(2, 3, r, n, 8) - ref) / abs(ref)))
    slope = np.polyfit(np.log(ns), np.log(errs), 1)[0]
    assert slope <= -8
