"""Dirichlet characters as exact exponent tables.

A character mod M is fixed by its values on the canonical generators of
(Z/MZ)^x: the least primitive root of each odd prime-power factor, -1 for
a factor 4, and -1, 5 for a factor 2^e with e >= 3, each lifted by CRT to be
1 modulo the other factors.  A value is stored as an angle t in Q/Z meaning
exp(2 pi i t); labels ``M:[e1,...]`` give e_i = t_i * ord(g_i).
"""
import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from ._arith import divisors, euler_phi, factorize, is_prime, lcm, smallest_primitive_root
from .errors import ParityError

__all__ = [
    "DirichletChar",
    "canonical_generators",
    "enumerate_characters",
    "teichmuller_char",
    "check_exceptional",
    "is_exceptional",
    "theta_from_chi",
]


def _crt_one_elsewhere(g, q, M):
    """The residue mod M that is g mod q and 1 mod M/q."""
    rest = M // q
    if rest == 1:
        return g % M
    return (g * rest * pow(rest, -1, q) + q * pow(q, -1, rest)) % M


@lru_cache(maxsize=None)
def canonical_generators(M):
    """Tuple of (generator, order) pairs for (Z/MZ)^x."""
    gens = []
    for q, e in factorize(M):
        qe = q**e
        if q == 2:
            if e == 2:
                gens.append((_crt_one_elsewhere(-1, qe, M), 2))
            elif e >= 3:
                gens.append((_crt_one_elsewhere(-1, qe, M), 2))
                gens.append((_crt_one_elsewhere(5, qe, M), 2 ** (e - 2)))
        else:
            g = smallest_primitive_root(qe)
            gens.append((_crt_one_elsewhere(g, qe, M), euler_phi(qe)))
    return tuple(gens)


@lru_cache(maxsize=None)
def _dlog_table(M):
    """Map unit a mod M -> exponent vector on the canonical generators."""
    gens = canonical_generators(M)
    table = {}
    for ks in itertools.product(*(range(o) for _, o in gens)):
        a = 1 % M
        for (g, _), kk in zip(gens, ks):
            a = a * pow(g, kk, M) % M
        table[a] = ks
    if len(table) != euler_phi(M):
        raise ArithmeticError(f"generator set for {M} is not a basis")
    return table


_LABEL = re.compile(r"^\s*(\d+)\s*:\s*\[\s*([-\d\s,]*)\]\s*$")


@dataclass(frozen=True)
class DirichletChar:
    modulus: int
    angles: tuple

    def __post_init__(self):
        gens = canonical_generators(self.modulus)
        if len(self.angles) != len(gens):
            raise ValueError(f"modulus {self.modulus} needs {len(gens)} generator values")
        norm = []
        for t, (_, o) in zip(self.angles, gens):
            t = Fraction(t) % 1
            if (t * o).denominator != 1:
                raise ValueError(f"angle {t} incompatible with generator order {o}")
            norm.append(t)
        object.__setattr__(self, "angles", tuple(norm))

    # ---------------------------------------------------------- constructors

    @classmethod
    def from_exponents(cls, M, exps):
        gens = canonical_generators(M)
        if len(exps) != len(gens):
            raise ValueError(f"modulus {M} needs {len(gens)} exponents")
        return cls(M, tuple(Fraction(e, o) for e, (_, o) in zip(exps, gens)))

    @classmethod
    def from_label(cls, label):
        m = _LABEL.match(label)
        if not m:
            raise ValueError(f"bad character label {label!r}")
        M = int(m.group(1))
        body = m.group(2).strip()
        exps = [int(x) for x in body.split(",")] if body else []
        return cls.from_exponents(M, exps)

    @classmethod
    def from_angle_function(cls, M, fn):
        return cls(M, tuple(Fraction(fn(g)) for g, _ in canonical_generators(M)))

    @classmethod
    def trivial(cls, M):
        return cls(M, tuple(Fraction(0) for _ in canonical_generators(M)))

    # ---------------------------------------------------------------- values

    @property
    def order(self):
        return lcm(*(t.denominator for t in self.angles))

    def exponents(self):
        """Exponents on the canonical generators, as in the label."""
        return tuple(int(t * o) for t, (_, o) in zip(self.angles, canonical_generators(self.modulus)))

    @property
    def label(self):
        return f"{self.modulus}:[{','.join(str(e) for e in self.exponents())}]"

    def angle(self, a):
        """chi(a) = exp(2 pi i * angle), or None when gcd(a, M) > 1."""
        a %= self.modulus
        ks = _dlog_table(self.modulus).get(a)
        if ks is None:
            return None
        return sum((kk * t for kk, t in zip(ks, self.angles)), Fraction(0)) % 1

    def exponent(self, a):
        """chi(a) = zeta_n^e with n = order; None off the units."""
        t = self.angle(a)
        return None if t is None else int(t * self.order)

    def value(self, a, level=None):
        """chi(a) as an exact cyclotomic number."""
        from .cyclotomic import CycloElt, root_of_unity

        n = self.order if level is None else level
        if n % self.order:
            raise ValueError(f"level {n} does not contain the values of order {self.order}")
        e = self.exponent(a)
        if e is None:
            return CycloElt.rational(0, n)
        return root_of_unity(n, e * (n // self.order))

    def embed(self, a, ring, k):
        """chi(a) inside an unramified ring."""
        e = self.exponent(a)
        if e is None:
            return ring.zero(k)
        return ring.root_power(e, self.order, k)

    # ------------------------------------------------------------ predicates

    def is_trivial(self):
        return not any(self.angles)

    def is_odd(self):
        return self.modulus > 2 and self.angle(-1) == Fraction(1, 2)

    def is_even(self):
        return not self.is_odd()

    @property
    def conductor(self):
        return _conductor(self)

    def is_primitive(self):
        return self.conductor == self.modulus

    # ------------------------------------------------------------ operations

    def lift(self, M2):
        """The character mod M2 (M | M2) induced by composing with reduction."""
        if M2 % self.modulus:
            raise ValueError(f"{self.modulus} does not divide {M2}")
        if M2 == self.modulus:
            return self
        return DirichletChar.from_angle_function(M2, lambda g: self.angle(g % self.modulus))

    def primitive(self):
        c = self.conductor
        if c == self.modulus:
            return self

        def at(g):
            # a unit mod M reducing to g mod c
            a = g
            while gcd(a, self.modulus) != 1:
                a += c
            return self.angle(a)

        return DirichletChar.from_angle_function(c, at)

    def __mul__(self, other):
        if not isinstance(other, DirichletChar):
            return NotImplemented
        M = lcm(self.modulus, other.modulus)
        a, b = self.lift(M), other.lift(M)
        return DirichletChar(M, tuple(x + y for x, y in zip(a.angles, b.angles)))

    def inverse(self):
        return DirichletChar(self.modulus, tuple(-t for t in self.angles))

    def __pow__(self, n):
        return DirichletChar(self.modulus, tuple(n * t for t in self.angles))

    def __repr__(self):
        return f"DirichletChar({self.label})"


def _conductor(chi):
    M = chi.modulus
    units = _dlog_table(M)
    for d in divisors(M):
        if all(chi.angle(a) == 0 for a in units if a % d == 1 % d):
            return d
    return M


def enumerate_characters(M):
    gens = canonical_generators(M)
    return [DirichletChar.from_exponents(M, es) for es in itertools.product(*(range(o) for _, o in gens))]


@lru_cache(maxsize=None)
def teichmuller_char(p):
    """omega mod p: the least primitive root goes to exp(2 pi i/(p-1))."""
    if not is_prime(p) or p < 3:
        raise ValueError(f"{p} is not an odd prime")
    return DirichletChar.from_exponents(p, [1])


def check_exceptional(chi, p):
    """(ok, reason): the exceptional-zero hypotheses for (chi, p)."""
    N = chi.modulus
    if not is_prime(p):
        return False, "p-not-prime"
    if p < 5:
        return False, "p-less-than-5"
    if N % p == 0:
        return False, "p-divides-N"
    if euler_phi(N) % p == 0:
        return False, "p-divides-phi-N"
    if not chi.is_primitive():
        return False, "chi-not-primitive"
    if not chi.is_odd():
        return False, "chi-not-odd"
    if chi.angle(p) != 0:
        return False, "chi-p-not-1"
    return True, "ok"


def is_exceptional(chi, p):
    return check_exceptional(chi, p)[0]


def theta_from_chi(chi, p):
    """theta = chi * omega, an even character mod Np."""
    if not chi.is_odd():
        raise ParityError(f"{chi.label} is not odd, so chi*omega is not even")
    M = chi.modulus * p
    return chi.lift(M) * teichmuller_char(p).lift(M)
