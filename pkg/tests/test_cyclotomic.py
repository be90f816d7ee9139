from fractions import Fraction
from math import gcd

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from exzero._arith import euler_phi
from exzero.characters import DirichletChar
from exzero.cyclotomic import (
    CycloElt,
    GaloisElement,
    cyclotomic_polynomial,
    embed_unramified,
    galois_apply,
    gauss_sum,
    partial_trace_p,
    root_of_unity,
)
from exzero.errors import InvalidAutomorphismError, LevelError

Z = root_of_unity


def test_cyclotomic_polynomial_examples():
    # coefficients low degree first
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_root_of_unity_examples():
    assert Z(5, 0) == CycloElt.rational(1)
    assert Z(3, 1) + Z(3, 2) == CycloElt.rational(-1)
    assert Z(12, 6) == CycloElt.rational(-1)


def test_galois_examples():
    x = Z(12, 1) * Z(5, 2) + Fraction(1, 3)
    assert galois_apply(GaloisElement(60, 1), x) == x
    assert galois_apply(GaloisElement(12, 11), Z(12, 1)) == Z(12, -1)
    assert galois_apply(GaloisElement(12, 5), Z(12, 4)) == Z(12, 8)


def test_galois_rejects_nonunit():
    with pytest.raises(InvalidAutomorphismError):
        GaloisElement(12, 4)


def test_partial_trace_examples():
    assert partial_trace_p(Z(3, 1), 3, 7, 1) == 6 * Z(3, 1)
    assert partial_trace_p(Z(7, 1), 1, 7, 1) == CycloElt.rational(-1)
    assert partial_trace_p(Z(49, 1), 1, 7, 2).is_zero()
    assert partial_trace_p(Z(21, 1), 3, 7, 1) == -Z(3, 1)


def test_partial_trace_level_check():
    with pytest.raises(LevelError):
        partial_trace_p(Z(11, 1), 3, 7, 1)


def test_gauss_sum_examples():
    q3 = DirichletChar.from_label("3:[1]")
    q4 = DirichletChar.from_label("4:[1]")
    assert gauss_sum(q3) == Z(3, 1) - Z(3, 2)
    assert gauss_sum(q4) == Z(4, 1) - Z(4, 3)
    assert gauss_sum(q3) * gauss_sum(q3.inverse()) == CycloElt.rational(-3)


def test_embed_examples():
    assert embed_unramified(CycloElt.rational(1), 7, 3).coefficients()[0].value == 1
    z3 = embed_unramified(Z(3, 1), 7, 1).coefficients()[0].value
    assert z3 in (2, 4)
    t = embed_unramified(gauss_sum(DirichletChar.from_label("3:[1]")), 7, 2)
    assert (t * t).coefficients()[0].value == (-3) % 49


def test_restrict_level_roundtrip():
    x = Z(3, 1) - Z(3, 2)
    big = x.to_level(2058)
    assert big.restrict_level(6) == x
    with pytest.raises(LevelError):
        Z(7, 1).to_level(21).restrict_level(3)


levels = st.sampled_from([1, 2, 3, 4, 5, 6, 8, 9, 12, 15])


@st.composite
def elements(draw, M=None):
    M = M or draw(levels)
    n = euler_phi(M)
    coeffs = draw(st.lists(st.fractions(max_denominator=6).map(lambda q: q.limit_denominator(6)), min_size=n, max_size=n))
    coeffs = [max(min(c, 20), -20) for c in coeffs]
    return CycloElt.from_fractions(M, coeffs)


@given(elements(), elements(), elements())
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == CycloElt.rational(0)


@given(elements())
def test_inverse(a):
    assume(not a.is_zero())
    assert a * a.inverse() == CycloElt.rational(1)


@given(levels, st.data())
def test_galois_is_ring_homomorphism(M, data):
    a = data.draw(elements(M))
    b = data.draw(elements(M))
    j = data.draw(st.integers(1, 10 * M).filter(lambda j: gcd(j, M) == 1))
    s = GaloisElement(M, j)
    assert galois_apply(s, a * b) == galois_apply(s, a) * galois_apply(s, b)
    assert galois_apply(s, a + b) == galois_apply(s, a) + galois_apply(s, b)


@given(st.sampled_from([(3, 7), (4, 5), (6, 7), (12, 13), (5, 11)]), st.data())
def test_embedding_is_ring_homomorphism(mp, data):
    M, p = mp
    a = data.draw(elements(M))
    b = data.draw(elements(M))
    assume(all(c.denominator % p for c in a.coeffs() + b.coeffs()))
    ea = embed_unramified(a, p, 5)
    eb = embed_unramified(b, p, 5)
    assert embed_unramified(a * b, p, 5).agrees(ea * eb, 5)
    assert embed_unramified(a + b, p, 5).agrees(ea + eb, 5)
