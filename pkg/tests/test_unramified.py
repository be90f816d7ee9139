import pytest
from hypothesis import given
from hypothesis import strategies as st

from exzero._arith import multiplicative_order
from exzero.errors import LevelError
from exzero.padic import teichmuller
from exzero.unramified import unramified_ring


@pytest.mark.parametrize("p,m", [(7, 6), (5, 4), (11, 70), (7, 3), (5, 12), (13, 5)])
def test_degree_and_poly(p, m):
    R = unramified_ring(p, m)
    assert R.f == multiplicative_order(p, m)
    assert len(R.poly) == R.f + 1 and R.poly[-1] == 1


def test_desk_ring_conventions():
    assert unramified_ring(7, 6).poly == (4, 1)
    assert unramified_ring(11, 70).f == 3
    assert unramified_ring(11, 70).poly == (5, 3, 7, 1)


def test_level_prime_to_p():
    with pytest.raises(LevelError):
        unramified_ring(7, 14)


@pytest.mark.parametrize("p,m", [(7, 6), (5, 4), (11, 70), (13, 12)])
def test_root_has_exact_order(p, m):
    R = unramified_ring(p, m)
    rho = R.root(6)
    assert rho ** m == R.one(6)
    for q in {q for q in range(2, m + 1) if m % q == 0 and all(q % t for t in range(2, q))}:
        assert rho ** (m // q) != R.one(6)


@pytest.mark.parametrize("p,m", [(7, 6), (5, 4), (11, 70), (13, 12)])
def test_teichmuller_compatibility(p, m):
    # rho^(m/d) is the Teichmuller lift of g0^((p-1)/d), d = gcd(m, p-1)
    from math import gcd

    R = unramified_ring(p, m)
    d = gcd(m, p - 1)
    lhs = R.root(6) ** (m // d)
    rhs = teichmuller(pow(R.g0, (p - 1) // d, p), p, 6)
    assert lhs.agrees(R.from_padic(rhs), 6)


@st.composite
def ring_elements(draw):
    p, m = draw(st.sampled_from([(7, 6), (11, 70), (5, 12)]))
    R = unramified_ring(p, m)
    cs = [draw(st.integers(0, p**5 - 1)) for _ in range(R.f)]
    return R, R.element(cs, 5)


@given(ring_elements(), st.data())
def test_field_axioms(Ra, data):
    R, a = Ra
    b = R.element([data.draw(st.integers(0, R.p**5 - 1)) for _ in range(R.f)], 5)
    c = R.element([data.draw(st.integers(0, R.p**5 - 1)) for _ in range(R.f)], 5)
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    if a.is_unit():
        assert a * a.inverse() == R.one(5)


@given(ring_elements())
def test_digits_reconstruct(Ra):
    R, a = Ra
    ds = a.digits()
    assert [sum(d * R.p**i for i, d in enumerate(row)) for row in ds] == [c.value for c in a.coefficients()]


def test_ring_cache_is_thread_safe():
    from concurrent.futures import ThreadPoolExecutor

    from exzero import unramified

    with unramified._RINGS_LOCK:
        unramified._RINGS.pop((19, 9), None)
    with ThreadPoolExecutor(8) as ex:
        rings = list(ex.map(lambda _: unramified_ring(19, 9), range(32)))
    assert all(r is rings[0] for r in rings)
