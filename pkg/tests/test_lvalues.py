import json
import os
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import FIXTURES
from exzero.characters import DirichletChar, enumerate_characters, teichmuller_char, theta_from_chi
from exzero.cyclotomic import CycloElt
from exzero.errors import DomainError, HypothesisError, ParityError, PoleError
from exzero.lvalues import (
    bernoulli_generalized,
    dirichlet_L_at_0,
    embed_cyclo,
    geometric_identity_check,
    kubota_leopoldt,
    l_invariant,
    lp_derivative_at_0,
    lp_interpolation_value,
    pair_ring,
    partial_zeta_0,
    partial_zeta_negative,
    primitive_root_sum,
    scaling_identity_check,
)

Q3 = DirichletChar.from_label("3:[1]")
Q4 = DirichletChar.from_label("4:[1]")
Q7 = DirichletChar.from_label("7:[3]")
DESK = [(Q3, 7), (Q4, 5), (Q7, 11)]

with open(os.path.join(FIXTURES, "oracle_values.json")) as fh:
    ORACLE = json.load(fh)["pairs"]


def test_partial_zeta_examples():
    assert partial_zeta_0(1, 2) == 0
    for M in (1, 2, 5, 12):
        assert partial_zeta_0(M, M) == Fraction(-1, 2)
    assert partial_zeta_0(7, 21) == partial_zeta_0(1, 3)


def test_partial_zeta_sums_to_riemann():
    # sum over classes gives zeta(-n) = -B_{n+1}/(n+1)
    assert sum(partial_zeta_negative(a, 6, 1) for a in range(1, 7)) == Fraction(-1, 12)


def test_geometric_examples():
    assert geometric_identity_check(2, 1)
    assert geometric_identity_check(3, 1)
    assert geometric_identity_check(12, 5)


def test_primitive_root_sums():
    for p in (5, 7, 11):
        assert primitive_root_sum(p, 1) == -1
        assert primitive_root_sum(p, 2) == 0
        assert primitive_root_sum(p, 3) == 0


def test_bernoulli_examples():
    assert bernoulli_generalized(1, Q3) == CycloElt.rational(Fraction(-1, 3))
    even = DirichletChar.from_label("5:[2]")
    assert bernoulli_generalized(1, even).is_zero()
    assert bernoulli_generalized(2, DirichletChar.trivial(1)) == CycloElt.rational(Fraction(1, 6))


def test_L0_examples():
    assert dirichlet_L_at_0(Q3) == CycloElt.rational(Fraction(1, 3))
    assert dirichlet_L_at_0(Q4) == CycloElt.rational(Fraction(1, 2))
    assert dirichlet_L_at_0(Q7) == CycloElt.rational(1)
    assert dirichlet_L_at_0(DirichletChar.from_label("5:[2]")).is_zero()
    with pytest.raises(PoleError):
        dirichlet_L_at_0(DirichletChar.trivial(5))


def test_L_minus_one_quadratic_mod_3():
    # L(-1, chi) = -B_{2,chi}/2 and B_{2,chi} = 0 for odd chi
    assert bernoulli_generalized(2, Q3).is_zero()


@pytest.mark.parametrize("chi,p", DESK[:2])
def test_kl_trivial_zero(chi, p):
    theta = theta_from_chi(chi, p)
    assert kubota_leopoldt(0, theta, p, 8).valuation >= 6


@pytest.mark.parametrize("chi,p", DESK)
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_kl_interpolation(chi, p, n):
    ring = pair_ring(chi, p)
    theta = theta_from_chi(chi, p)
    for psi in (theta, theta * teichmuller_char(p) ** 2):
        a = kubota_leopoldt(1 - n, psi, p, 8, ring)
        b = lp_interpolation_value(n, psi, p, 8, ring)
        assert (a - b).valuation >= 6


def test_kl_rejects():
    theta = theta_from_chi(Q3, 7)
    with pytest.raises(ParityError):
        kubota_leopoldt(0, Q3, 7, 5)
    with pytest.raises(PoleError):
        kubota_leopoldt(0, DirichletChar.trivial(7), 7, 5)
    with pytest.raises(DomainError):
        kubota_leopoldt(1, theta, 7, 5)


@pytest.mark.parametrize("chi,p", DESK)
def test_derivative_against_oracle(chi, p):
    key = f"{chi.modulus},{p}"
    d = lp_derivative_at_0(chi, p, 6)
    assert d.valuation == ORACLE[key]["derivative_valuation"]
    assert d.coefficients()[0].value == ORACLE[key]["derivative_mod_p6"] % p**d.k
    assert all(c.value == 0 for c in d.coefficients()[1:])


@pytest.mark.parametrize("chi,p", DESK)
def test_l_invariant_against_oracle(chi, p):
    key = f"{chi.modulus},{p}"
    res = l_invariant(chi, p, 6)
    assert res.certified_nonzero
    assert res.value.valuation == ORACLE[key]["l_invariant_valuation"]
    assert res.value.coefficients()[0].value == ORACLE[key]["l_invariant_mod_p6"] % p**res.value.k
    ring = pair_ring(chi, p)
    assert (res.value * embed_cyclo(res.l0, ring, 6)).agrees(res.derivative, res.precision)


def test_derivative_step_sizes_agree():
    a = lp_derivative_at_0(Q3, 7, 8, m=4)
    b = lp_derivative_at_0(Q3, 7, 8, m=5)
    assert a.agrees(b, 3)


def test_derivative_needs_exceptional():
    with pytest.raises(HypothesisError):
        lp_derivative_at_0(Q3, 5, 6)


@given(st.integers(2, 12), st.sampled_from([2, 3, 5, 7]), st.integers(1, 2), st.integers(0, 3), st.data())
def test_scaling_identity(N, p, r, n, data):
    if N % p == 0:
        N += 1
    a = data.draw(st.integers(1, N - 1))
    assert scaling_identity_check(a, N, p, r, n)


@given(st.integers(2, 20), st.data())
def test_geometric_identity(M, data):
    j = data.draw(st.integers(1, M - 1))
    assert geometric_identity_check(M, j)


@given(st.sampled_from([3, 4, 5, 7, 8, 11, 12, 15]), st.data())
def test_L0_two_paths_and_parity(M, data):
    chi = data.draw(st.sampled_from([c for c in enumerate_characters(M) if not c.is_trivial()]))
    val = dirichlet_L_at_0(chi)
    if chi.is_even():
        assert val.is_zero()
