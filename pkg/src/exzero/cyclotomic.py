"""Exact arithmetic in Q(zeta_M).

A :class:`CycloElt` stores an integer numerator vector over the power basis
1, zeta, ..., zeta^(phi(M)-1) and one positive common denominator.  All
multiplication goes through the group ring Z[x]/(x^M - 1) and a single
reduction modulo Phi_M (see ``_kernels``).
"""
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import _kernels as kern
from ._arith import euler_phi, lcm
from ._poly import cyclotomic_polynomial as _cyclo_poly
from .errors import (
    InvalidAutomorphismError,
    LevelError,
    NonIntegralError,
    PoleError,
    PrimitivityError,
)
from .unramified import unramified_ring

__all__ = [
    "CycloElt",
    "GaloisElement",
    "cyclotomic_polynomial",
    "root_of_unity",
    "galois_apply",
    "partial_trace_p",
    "gauss_sum",
    "embed_unramified",
    "root_over_root_minus_one",
]


def cyclotomic_polynomial(M):
    """Phi_M as an ascending tuple of integer coefficients."""
    return _cyclo_poly(M)


def _normalize(num, den):
    if den < 0:
        num, den = [-c for c in num], -den
    g = den
    for c in num:
        if g == 1:
            break
        g = gcd(g, c)
    if g > 1:
        num = [c // g for c in num]
        den //= g
    return tuple(num), den


@dataclass(frozen=True, eq=False)
class CycloElt:
    M: int
    num: tuple
    den: int = 1

    def __post_init__(self):
        phi = euler_phi(self.M)
        if len(self.num) != phi:
            raise ValueError(f"expected {phi} coefficients, got {len(self.num)}")
        if self.den == 0:
            raise ZeroDivisionError("zero denominator")
        num, den = _normalize(list(self.num), self.den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    # ---------------------------------------------------------- constructors

    @classmethod
    def from_group_ring(cls, M, vec, den=1):
        """Element sum_i vec[i] zeta_M^i / den for any integer vector, len <= M."""
        vec = list(vec)
        if len(vec) > M:
            folded = [0] * M
            for i, c in enumerate(vec):
                folded[i % M] += c
            vec = folded
        return cls(M, tuple(kern.reduce_mod_cyclotomic(vec, M)), den)

    @classmethod
    def from_fractions(cls, M, coeffs):
        """Element sum_i coeffs[i] zeta_M^i with rational coefficients."""
        coeffs = [Fraction(c) for c in coeffs]
        den = lcm(*(c.denominator for c in coeffs)) if coeffs else 1
        vec = [int(c * den) for c in coeffs]
        return cls.from_group_ring(M, vec, den)

    @classmethod
    def rational(cls, q, M=1):
        q = Fraction(q)
        num = [q.numerator] + [0] * (euler_phi(M) - 1)
        return cls(M, tuple(num), q.denominator)

    # ------------------------------------------------------------- accessors

    def coeffs(self):
        return [Fraction(c, self.den) for c in self.num]

    def group_ring_vector(self):
        """Numerator as a length-M vector (zero padded); divide by ``den``."""
        return list(self.num) + [0] * (self.M - len(self.num))

    def is_zero(self):
        return not any(self.num)

    def is_rational(self):
        return not any(self.num[1:])

    def as_rational(self):
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self.num[0], self.den)

    def to_level(self, L):
        """Same element viewed in Q(zeta_L), M | L."""
        if L % self.M:
            raise LevelError(f"level {self.M} does not divide {L}")
        if L == self.M:
            return self
        stride = L // self.M
        vec = [0] * L
        for i, c in enumerate(self.num):
            vec[i * stride] = c
        return CycloElt.from_group_ring(L, vec, self.den)

    def restrict_level(self, d):
        """The same element written at level d | M; LevelError if it is not in Q(zeta_d)."""
        if self.M % d:
            raise LevelError(f"level {d} does not divide {self.M}")
        if d == self.M:
            return self
        phi_d = euler_phi(d)
        cols = [root_of_unity(d, i).to_level(self.M).num for i in range(phi_d)]
        sol = _solve_columns(cols, self.num)
        if sol is None:
            raise LevelError(f"element does not lie in Q(zeta_{d})")
        out = CycloElt.from_fractions(d, sol) * Fraction(1, self.den)
        if out.to_level(self.M) != self:
            raise LevelError(f"element does not lie in Q(zeta_{d})")
        return out

    def minimal_level(self):
        from ._arith import divisors

        for d in divisors(self.M):
            try:
                return self.restrict_level(d)
            except LevelError:
                continue
        return self

    def _common(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloElt.rational(other, self.M)
        if not isinstance(other, CycloElt):
            return None, None
        if other.M == self.M:
            return self, other
        L = lcm(self.M, other.M)
        return self.to_level(L), other.to_level(L)

    # ------------------------------------------------------------ arithmetic

    def __add__(self, other):
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        num = [x * b.den + y * a.den for x, y in zip(a.num, b.num)]
        return CycloElt(a.M, tuple(num), a.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return CycloElt(self.M, tuple(-c for c in self.num), self.den)

    def __sub__(self, other):
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CycloElt(self.M, tuple(c * q.numerator for c in self.num), self.den * q.denominator)
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        prod = kern.cyclic_convolve(list(a.num), list(b.num), a.M)
        return CycloElt.from_group_ring(a.M, prod, a.den * b.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        return a * b.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        acc, base = CycloElt.rational(1, self.M), self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def inverse(self):
        """Inverse by the extended Euclidean algorithm over Q."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        s = _poly_inverse_mod([Fraction(c, self.den) for c in self.num], _cyclo_poly(self.M))
        return CycloElt.from_fractions(self.M, s)

    def galois(self, j):
        return galois_apply(GaloisElement(self.M, j), self)

    def __eq__(self, other):
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        return a.num == b.num and a.den == b.den

    __hash__ = None

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs()):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*z^{i}")
        body = " + ".join(terms) or "0"
        return f"CycloElt[M={self.M}]({body})"


# --------------------------------------------------- polynomials over Q


def _solve_columns(cols, rhs):
    """Exact solution c of sum_i c_i cols[i] = rhs, or None if inconsistent."""
    n = len(cols)
    rows = [[Fraction(col[r]) for col in cols] + [Fraction(rhs[r])] for r in range(len(rhs))]
    pivots = []
    row_i = 0
    for c in range(n):
        piv = next((r for r in range(row_i, len(rows)) if rows[r][c] != 0), None)
        if piv is None:
            continue
        rows[row_i], rows[piv] = rows[piv], rows[row_i]
        lead = rows[row_i][c]
        rows[row_i] = [v / lead for v in rows[row_i]]
        for r in range(len(rows)):
            if r != row_i and rows[r][c] != 0:
                f = rows[r][c]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[row_i])]
        pivots.append(c)
        row_i += 1
    if any(row[-1] != 0 for row in rows[row_i:]):
        return None
    sol = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        sol[c] = rows[i][-1]
    return sol



def _ptrim(a):
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _pdivmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / lead
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    return _ptrim(q), _ptrim(a[: len(b) - 1] or [Fraction(0)])


def _pmul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _psub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _ptrim([x - y for x, y in zip(a, b)])


def _poly_inverse_mod(a, modulus):
    r0, r1 = [Fraction(c) for c in modulus], _ptrim(list(a))
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while any(r1) and len(r1) > 1:
        q, r = _pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(q, s1))
    if not any(r1):
        raise ZeroDivisionError("element is not invertible")
    c = r1[0]
    _, s = _pdivmod([x / c for x in s1], [Fraction(x) for x in modulus])
    return s


# ------------------------------------------------------------ operations


def root_of_unity(M, j=1):
    """zeta_M^j in canonical form."""
    vec = [0] * M
    vec[j % M] = 1
    return CycloElt.from_group_ring(M, vec)


@dataclass(frozen=True)
class GaloisElement:
    """sigma_j: zeta_M -> zeta_M^j."""

    M: int
    j: int

    def __post_init__(self):
        if gcd(self.j, self.M) != 1:
            raise InvalidAutomorphismError(f"gcd({self.j}, {self.M}) != 1")
        object.__setattr__(self, "j", self.j % self.M)

    def __matmul__(self, other):
        if other.M != self.M:
            raise LevelError("composition across levels")
        return GaloisElement(self.M, self.j * other.j)


def galois_apply(sigma: GaloisElement, x: CycloElt) -> CycloElt:
    if sigma.M != x.M:
        if sigma.M % x.M:
            raise LevelError(f"automorphism of level {sigma.M} on element of level {x.M}")
        x = x.to_level(sigma.M)
    vec = kern.galois_permute(x.group_ring_vector(), sigma.j, x.M)
    return CycloElt.from_group_ring(x.M, vec, x.den)


def _crt(a, m, b, n):
    """Unique c mod mn with c = a mod m, c = b mod n (gcd(m, n) = 1)."""
    return (a + m * ((b - a) * pow(m, -1, n) % n)) % (m * n)


def partial_trace_p(x: CycloElt, N, p, r) -> CycloElt:
    """Sum of sigma_g(x) over g in (Z/p^r)^x acting on zeta_{p^r}, fixing zeta_N.

    ``N`` is the prime-to-p part of the ambient level Np^r; x must live at a
    level dividing Np^r.
    """
    if gcd(N, p) != 1 or r < 1:
        raise LevelError(f"level must be N*p^r with p not dividing N (N={N}, p={p}, r={r})")
    L = N * p**r
    if L % x.M:
        raise LevelError(f"element level {x.M} does not divide {L}")
    x = x.to_level(L)
    pr = p**r
    mults = [_crt(1, N, g, pr) for g in range(1, pr) if g % p]
    vec = kern.twisted_accumulate(
        x.group_ring_vector(), mults, [0] * len(mults), [1] * len(mults), L, L
    )
    return CycloElt.from_group_ring(L, vec, x.den)


def gauss_sum(chi) -> CycloElt:
    """tau(chi) = sum_a chi(a) zeta_N^a at level lcm(N, ord chi)."""
    if not chi.is_primitive():
        raise PrimitivityError(f"character {chi.label} is not primitive")
    N, n = chi.modulus, chi.order
    L = lcm(N, n)
    vec = [0] * L
    for a in range(N):
        e = chi.exponent(a)
        if e is not None:
            vec[(e * (L // n) + a * (L // N)) % L] += 1
    return CycloElt.from_group_ring(L, vec)


def root_over_root_minus_one(M) -> CycloElt:
    """zeta_M / (zeta_M - 1), by synthetic division of Phi_M by x - 1.

    Phi_M(x) = (x - 1) Q(x) + Phi_M(1), so 1/(zeta - 1) = -Q(zeta)/Phi_M(1).
    """
    if M < 2:
        raise PoleError("zeta_1 = 1")
    phi = _cyclo_poly(M)
    # synthetic division by (x - 1), descending
    q, acc = [], 0
    for c in reversed(phi):
        acc = acc + c
        q.append(acc)
    value_at_one = q.pop()
    q.reverse()
    # zeta/(zeta-1) = 1 + 1/(zeta-1)
    vec = [-c for c in q] + [0] * (M - len(q))
    vec[0] += value_at_one
    return CycloElt.from_group_ring(M, vec, value_at_one)


def embed_unramified(x: CycloElt, p=None, k=None, *, ring=None):
    """Image of x in Z_{p^f}/p^k under the fixed embedding convention.

    Without an explicit ``ring`` the level lcm(M, p - 1) ring is used, so that
    (p-1)-st roots of unity land on their Teichmueller lifts.
    """
    if ring is None:
        if p is None:
            raise TypeError("give p or ring")
        ring = unramified_ring(p, lcm(x.M, p - 1))
    p = ring.p
    if k is None:
        raise TypeError("precision k is required")
    if ring.m % x.M:
        raise LevelError(f"level {x.M} does not divide ring level {ring.m}")
    if x.den % p == 0:
        raise NonIntegralError(f"denominator {x.den} divisible by {p}")
    powers = ring.powers(k)
    stride = ring.m // x.M
    acc = ring.zero(k)
    for i, c in enumerate(x.num):
        if c:
            acc = acc + powers[(i * stride) % ring.m] * c
    return acc * pow(x.den, -1, p**k)
