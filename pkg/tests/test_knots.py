"""Knot expressions, Alexander polynomials and logarithmic zeros."""

import cmath
import math
import random

import pytest
from hypothesis import given, strategies as st

from jonesasym.knots import (ConnectedSum, FigureEight, KnotError, KnotParseError, Mirror, Torus, XI,
                             alexander_at, alexander_eval, format_knot, log_zeros, min_log_zero,
                             parse_knot)

from .conftest import random_knot

E = FigureEight()
T23 = Torus(2, 3)


@pytest.mark.parametrize("a, b", [(1, 3), (2, 4), (6, 9), (0, 5)])
def test_torus_rejects_bad_parameters(a, b):
    with pytest.raises(KnotError):
        Torus(a, b)


def test_empty_connected_sum_rejected():
    with pytest.raises(KnotError):
        ConnectedSum(())


def test_xi_value():
    assert XI == pytest.approx(0.96242365, abs=1e-8)


@pytest.mark.parametrize("knot, z, expected", [
    (E, 0, 1),
    (E, XI / 2, 0),
    (T23, 1j * math.pi / 2, -3),          # t = -1: t - 1 + 1/t
    (ConnectedSum((T23, E)), 0, 1),
])
def test_alexander_examples(knot, z, expected):
    assert abs(alexander_eval(knot, z) - expected) <= 1e-12


@pytest.mark.parametrize("z", [0.3, 0.2 + 0.7j, -1.1j, 0.05 - 0.4j])
def test_trefoil_alexander_matches_laurent_polynomial(z):
    t = cmath.exp(2 * z)
    assert abs(alexander_eval(T23, z) - (t - 1 + 1 / t)) <= 1e-12


@pytest.mark.parametrize("a, b, m", [(2, 3, 1), (3, 4, 2), (3, 5, 5), (2, 5, 3)])
def test_removable_points_match_limit(a, b, m):
    # sinh(a z) vanishes at z = m pi i / a; compare with a nearby regular point
    z0 = 1j * math.pi * m / a
    h = 1e-4
    near = (alexander_eval(Torus(a, b), z0 + h) + alexander_eval(Torus(a, b), z0 - h)) / 2
    assert abs(alexander_eval(Torus(a, b), z0) - near) <= 1e-6


def test_alexander_at_is_half_argument():
    assert alexander_at(E, XI) == pytest.approx(0, abs=1e-12)
    assert alexander_at(T23, 0.4 + 0.1j) == alexander_eval(T23, 0.2 + 0.05j)


def test_unit_at_one_random_knots():
    rng = random.Random(1)
    for _ in range(100):
        assert abs(alexander_eval(random_knot(rng), 0) - 1) <= 1e-12


@given(st.complex_numbers(max_magnitude=2.0, allow_nan=False, allow_infinity=False))
def test_even_and_mirror_invariant(z):
    rng = random.Random(hash(z) & 0xFFFF)
    k = random_knot(rng)
    v = alexander_eval(k, z)
    assert alexander_eval(Mirror(k), z) == v
    assert abs(alexander_eval(k, -z) - v) <= 1e-12 * max(1.0, abs(v))


def test_connected_sum_multiplicative():
    rng = random.Random(2)
    for _ in range(50):
        k1, k2 = random_knot(rng, 1), random_knot(rng, 1)
        z = complex(rng.uniform(-1, 1), rng.uniform(-2, 2))
        prod = alexander_eval(k1, z) * alexander_eval(k2, z)
        assert abs(alexander_eval(ConnectedSum((k1, k2)), z) - prod) <= 1e-12 * max(1.0, abs(prod))


def test_connected_sum_order_insensitive():
    rng = random.Random(3)
    parts = [random_knot(rng, 1) for _ in range(4)]
    z = 0.3 + 0.8j
    ref = alexander_eval(ConnectedSum(tuple(parts)), z)
    for _ in range(5):
        rng.shuffle(parts)
        assert alexander_eval(ConnectedSum(tuple(parts)), z) == ref


def test_log_zeros_examples():
    zs = log_zeros(E, 1.0)
    assert [z.z for z in zs] == [pytest.approx(XI), pytest.approx(-XI)]
    zs = log_zeros(T23, 1.1)
    assert [z.z for z in zs] == [pytest.approx(1j * math.pi / 3), pytest.approx(-1j * math.pi / 3)]
    assert all(z.modulus == pytest.approx(math.pi / 3) for z in zs)
    assert [z.z for z in log_zeros(ConnectedSum((T23, E)), 1.0)] == [pytest.approx(XI), pytest.approx(-XI)]
    assert log_zeros(T23, 0.5) == []


def test_log_zeros_are_zeros_and_sorted():
    rng = random.Random(4)
    for _ in range(20):
        k = random_knot(rng)
        zs = log_zeros(k, 8.0)
        assert zs
        for z in zs:
            assert abs(alexander_at(k, z.z)) <= 1e-10
        keys = [(round(z.modulus, 12), z.argument) for z in zs]
        assert keys == sorted(keys)


def test_log_zeros_window_must_be_positive():
    with pytest.raises(ValueError):
        log_zeros(E, 0)


@pytest.mark.parametrize("text, modulus", [
    ("fig8", XI),
    ("t(3,4)", 2 * math.pi / 12),
    ("t(2,3)#t(2,3)#fig8", XI),
    ("t(2,3)#t(3,4)", 2 * math.pi / 12),
    ("mirror(t(2,5))", 2 * math.pi / 10),
])
def test_min_log_zero(text, modulus):
    z = min_log_zero(parse_knot(text))
    assert z.modulus == pytest.approx(modulus, abs=1e-12)


def test_min_log_zero_tie_breaks_to_upper_half_plane():
    assert min_log_zero(T23).z.imag > 0
    assert min_log_zero(E).z.real > 0


# -- parser ------------------------------------------------------------------

CORPUS = [
    "fig8", "t(2,3)", "t(3,2)", "t(2,5)", "t(3,4)", "t(3,5)", "t(4,5)", "t(5,7)", "t(2,9)", "t(7,11)",
    "mirror(fig8)", "mirror(t(2,3))", "mirror(mirror(fig8))", "mirror(mirror(mirror(t(3,4))))",
    "fig8#fig8", "fig8#t(2,3)", "t(2,3)#fig8", "t(2,3)#t(3,4)", "t(2,3)#t(2,3)#fig8",
    "fig8#fig8#fig8#fig8", "t(2,3)#t(3,4)#t(3,5)#t(2,5)", "mirror(fig8)#t(2,3)",
    "mirror(t(2,3))#mirror(t(2,3))", "mirror(t(2,3)#fig8)", "mirror(t(2,3)#t(3,4)#fig8)",
    "mirror(mirror(t(2,3))#fig8)", "t(2,3)#mirror(t(3,4))#fig8#mirror(fig8)",
    "mirror(fig8#fig8)#t(2,5)", "mirror(mirror(t(2,3)#t(2,5)))", "t(11,13)",
    "mirror(t(3,5))#mirror(t(2,5))#mirror(t(3,4))#mirror(t(2,3))", "fig8#mirror(fig8)",
    "mirror(mirror(mirror(fig8)))#t(2,7)", "t(2,7)#t(2,7)", "mirror(t(4,7))", "t(3,7)#t(5,6)",
    "mirror(t(5,6)#t(3,7))", "t(2,3)#t(2,3)#t(2,3)#t(2,3)", "mirror(fig8)#mirror(fig8)",
    "mirror(mirror(fig8#t(2,3))#t(3,4))", "t(2,11)", "t(9,10)", "mirror(t(9,10))#fig8",
    "fig8#t(2,3)#mirror(t(2,3))", "mirror(t(2,5)#mirror(t(2,5)))", "t(13,2)", "mirror(t(13,2))",
    "t(3,8)#fig8", "mirror(mirror(mirror(mirror(t(2,3)))))", "t(4,9)#t(5,9)#fig8#t(2,3)",
]


def test_corpus_size():
    assert len(CORPUS) == 50


@pytest.mark.parametrize("text", CORPUS)
def test_print_parse_round_trip(text):
    knot = parse_knot(text)
    assert format_knot(knot) == text
    assert parse_knot(format_knot(knot)) == knot


def test_whitespace_and_grouping():
    assert parse_knot(" t( 2 , 3 ) #\tfig8 ") == parse_knot("t(2,3)#fig8")
    assert parse_knot("(fig8#t(2,3))#t(3,4)") == parse_knot("fig8#t(2,3)#t(3,4)")


@pytest.mark.parametrize("text, offset", [
    ("", 0),
    ("fig9", 0),
    ("t(2,3", 5),
    ("t(2,3)#", 7),
    ("t(2,4)", 0),
    ("mirror fig8", 7),
    ("fig8 fig8", 5),
    ("t(2,x)", 4),
    ("é#fig8", 0),
    ("fig8#é", 5),
])
def test_parse_error_offsets(text, offset):
    with pytest.raises(KnotParseError) as info:
        parse_knot(text)
    assert info.value.offset == offset
