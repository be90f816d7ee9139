import json
import os
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import FIXTURES
from exzero._arith import euler_phi
from exzero.characters import DirichletChar, teichmuller_char, theta_from_chi
from exzero.cyclotomic import CycloElt, gauss_sum, root_of_unity
from exzero.errors import DomainError, HypothesisError, UndeterminedError
from exzero.lvalues import dirichlet_L_at_0, pair_ring
from exzero.padic import teichmuller
from exzero.reciprocity import (
    adjustment_factor,
    adjustment_x,
    coleman_delta,
    coleman_delta_symbolic,
    cup_ell,
    cup_p,
    cup_value,
    embedding_consistency,
    nontriviality_threshold,
    ratio_law_check,
    trace_chain,
    trace_sum_closed_form,
    trace_sum_exact,
    vanishing_branches,
)

Q3 = DirichletChar.from_label("3:[1]")
Q4 = DirichletChar.from_label("4:[1]")
Q7 = DirichletChar.from_label("7:[3]")
DESK = [(Q3, 7), (Q4, 5), (Q7, 11)]
Z = root_of_unity

with open(os.path.join(FIXTURES, "cup_oracle_values.json")) as fh:
    CUP_ORACLE = json.load(fh)["pairs"]


def brute_trace_sum(chi, p, r):
    """sum_{G_N} chi(G_N^-1) sum_{G in (Z/p^r)^x} t/(t-1), t = zeta_N^{G_N} zeta_{p^r}^G."""
    N = chi.modulus
    pr = p**r
    total = CycloElt.rational(0)
    for G_N in range(1, N):
        if gcd(G_N, N) != 1:
            continue
        inner = CycloElt.rational(0)
        for G in range(1, pr):
            if G % p:
                t = Z(N, G_N) * Z(pr, G)
                inner = inner + t * (t - 1).inverse()
        total = total + chi.inverse().value(G_N) * inner
    return total


# ---------------------------------------------------------------- Coleman


def test_coleman_routes_agree():
    assert coleman_delta(1, 1, 3, 7, 1) == coleman_delta_symbolic(1, 1, 3, 7, 1)
    for g in range(1, 7):
        assert coleman_delta(2, g, 3, 7, 1) == coleman_delta_symbolic(2, g, 3, 7, 1)


def test_coleman_sign_at_minus_one():
    t = Z(3, 1) * Z(7, 6)
    assert coleman_delta(1, 6, 3, 7, 1) == -(t * (t - 1).inverse())


def test_coleman_prefactor_multiplicative():
    w = teichmuller_char(7)
    assert w.value(2) * w.value(3) == w.value(6)
    t2 = Z(3, 1) * Z(7, teichmuller(2, 7, 1).value)
    assert coleman_delta(1, 2, 3, 7, 1) == w.value(2) * t2 * (t2 - 1).inverse()


# -------------------------------------------------------------- trace sums


def test_trace_sum_examples():
    tau3 = Z(3, 1) - Z(3, 2)
    # the brute-force sum carries the minus sign of the geometric expansion
    assert trace_sum_exact(Q3, 7, 1) == -2 * tau3
    assert trace_sum_exact(Q4, 5, 1) == -4 * Z(4, 1)
    assert trace_sum_exact(Q3, 7, 2) == -14 * tau3


@pytest.mark.parametrize("chi,p", DESK[:2])
def test_trace_sum_matches_brute_force(chi, p):
    assert trace_sum_exact(chi, p, 1) == brute_trace_sum(chi, p, 1)


@pytest.mark.parametrize("chi,p", DESK)
@pytest.mark.parametrize("r", [1, 2])
def test_trace_sum_signed_identity(chi, p, r):
    S = trace_sum_exact(chi, p, r)
    expected = -euler_phi(p**r) * gauss_sum(chi.inverse()) * dirichlet_L_at_0(chi)
    assert S == expected
    assert S == trace_sum_closed_form(chi, p, r, signed=True)
    assert S != trace_sum_closed_form(chi, p, r)


def test_chain_steps():
    flags = trace_chain(Q3, 7, 1)
    assert flags["coleman_routes_agree"]
    assert flags["trace_expansion"]
    assert flags["reindexing"]
    assert flags["double_sum_matches_brute_force"]
    assert flags["expansion_signed_equal"]
    assert not flags["expansion_unsigned_equal"]


def test_vanishing_branches():
    parts = vanishing_branches(Q3, 7, 2)
    assert parts["N_divides_a"].is_zero()
    low = parts["p_power_0"] + parts["p_power_1"]
    assert low.is_zero()
    assert parts["p_power_r"] == parts["p_power_r_expected"]
    assert -parts["total"] == trace_sum_exact(Q3, 7, 2)
    # termwise, the p^(r-1) | a terms give -p^(r-1); only the sum over a vanishes
    assert parts["root_sums"][0].is_zero()
    assert parts["root_sums"][1] == CycloElt.rational(-7)


# ------------------------------------------------------------- cup values


@pytest.mark.parametrize("r", [1, 2, 3, 4])
@pytest.mark.parametrize("N,p", [(3, 7), (4, 5), (7, 11)])
def test_adjustment_x(N, p, r):
    x = adjustment_x(N, p, r)
    assert x % N == 1
    assert x % p == N % p


def test_adjustment_literal_factor():
    theta = theta_from_chi(Q3, 7)
    assert adjustment_x(3, 7, 1) == 10
    w = teichmuller_char(7)
    assert adjustment_factor(3, 7, 1, theta) == w.value(3).inverse()
    assert adjustment_factor(3, 7, 1, theta) != w.value(3)
    # omega(4)^2 = 1 mod 5, so both readings coincide for the (4, 5) pair
    th4 = theta_from_chi(Q4, 5)
    assert adjustment_factor(4, 5, 1, th4) == teichmuller_char(5).value(4)


@pytest.mark.parametrize("key", ["3,7", "4,5"])
@pytest.mark.parametrize("r", [1, 2, 3])
def test_cup_values_against_oracle(key, r):
    N, p = map(int, key.split(","))
    chi = Q3 if N == 3 else Q4
    ell = 3 if N == 3 else 2
    want = CUP_ORACLE[key][str(r)]
    ce = cup_ell(ell, chi, p, r)
    cp = cup_p(chi, p, r)
    assert ce.value.coefficients()[0].value == want["cup_ell"]
    assert cp.value.coefficients()[0].value == want["cup_p"]


def test_cup_ell_r1_is_a_unit():
    # v_7(log_7 3) = 1 exactly, so the prefactor is a unit and r0 = 1
    val = cup_ell(3, Q3, 7, 1)
    assert val.value.coefficients()[0].value == 4
    assert val.r0 == 1


@pytest.mark.parametrize("chi,p", DESK)
def test_integral_and_r_independent(chi, p):
    for q in sorted({chi.modulus if chi.modulus != 4 else 2, p}):
        vals = [cup_value(q, chi, p, r) for r in (1, 2, 3)]
        assert all(v.valuation >= 0 for v in vals)
        assert vals[2].value.agrees(vals[1].value, 2)
        assert vals[1].value.agrees(vals[0].value, 1)


def test_values_in_base_field_for_quadratic_chi():
    v = cup_p(Q7, 11, 2)
    assert v.value.f == 3
    assert all(c.value == 0 for c in v.value.coefficients()[1:])


def test_unadjusted_normalization():
    v = cup_ell(3, Q3, 7, 3)
    lit = v.normalizations["adjusted_literal"]
    un = v.normalizations["unadjusted"]
    assert (un * v.adjustment["literal"]).agrees(lit, 3)
    assert not v.adjustment["literal_equals_omega_N"]


@pytest.mark.parametrize("chi,p", DESK)
def test_ratio_law(chi, p):
    ell = {3: 3, 4: 2, 7: 7}[chi.modulus]
    _, _, ok = ratio_law_check(chi, p, 2, ell)
    assert ok


def test_embedding_consistency_signed():
    lhs, rhs, unsigned, signed = embedding_consistency(Q3, 7, 3, 3)
    assert signed
    assert not unsigned


def test_threshold():
    R = pair_ring(Q3, 7)
    assert nontriviality_threshold(R.from_int(3, 4)) == 1
    assert nontriviality_threshold(R.from_int(14, 4)) == 2
    with pytest.raises(UndeterminedError):
        nontriviality_threshold(R.from_int(0, 4))


def test_cup_errors():
    with pytest.raises(DomainError):
        cup_value(5, Q3, 7, 2)
    with pytest.raises(HypothesisError):
        cup_value(3, Q3, 11, 2)
    with pytest.raises(DomainError):
        cup_ell(2, Q3, 7, 2)


@given(st.integers(1, 5), st.sampled_from([(3, 7), (4, 5), (7, 11), (5, 11), (8, 17)]))
def test_adjustment_x_property(r, Np):
    N, p = Np
    x = adjustment_x(N, p, r)
    assert x % N == 1 % N and x % p == N % p
