"""Small integer helpers; the heavy lifting is delegated to sympy.ntheory."""
from fractions import Fraction
from functools import lru_cache
from math import gcd

from sympy import bernoulli as _sympy_bernoulli
from sympy.ntheory import factorint as _factorint
from sympy.ntheory import isprime as _isprime
from sympy.ntheory import n_order as _n_order
from sympy.ntheory import primitive_root as _primitive_root


def lcm(*xs):
    out = 1
    for x in xs:
        out = out * x // gcd(out, x)
    return out


@lru_cache(maxsize=None)
def euler_phi(n):
    out = 1
    for q, e in factorize(n):
        out *= (q - 1) * q ** (e - 1)
    return out


@lru_cache(maxsize=None)
def factorize(n):
    """Prime factorization as a sorted tuple of (prime, exponent)."""
    return tuple(sorted((int(q), int(e)) for q, e in _factorint(n).items()))


@lru_cache(maxsize=None)
def divisors(n):
    out = [1]
    for q, e in factorize(n):
        out = [d * q**i for d in out for i in range(e + 1)]
    return tuple(sorted(out))


def is_prime(n):
    return n >= 2 and bool(_isprime(n))


def multiplicative_order(a, m):
    if m == 1:
        return 1
    return int(_n_order(a, m))


@lru_cache(maxsize=None)
def smallest_primitive_root(n):
    g = _primitive_root(n)
    if g is None:
        raise ValueError(f"(Z/{n}Z)^x is not cyclic")
    return int(g)


def vp(n, p):
    """p-adic valuation of a nonzero integer or Fraction."""
    if isinstance(n, Fraction):
        return vp(n.numerator, p) - vp(n.denominator, p)
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@lru_cache(maxsize=None)
def bernoulli_number(n):
    """B_n as a Fraction, with the B_1 = -1/2 convention."""
    if n == 1:
        return Fraction(-1, 2)
    b = _sympy_bernoulli(n)
    return Fraction(int(b.p), int(b.q))


def bernoulli_poly(k, x):
    """B_k(x) for a rational x."""
    x = Fraction(x)
    total = Fraction(0)
    binom = 1
    for j in range(k + 1):
        total += binom * bernoulli_number(j) * x ** (k - j)
        binom = binom * (k - j) // (j + 1)
    return total
