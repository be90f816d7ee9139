"""The unramified extension Z_{p^f}/p^k and embeddings of roots of unity.

A ring is attached to a level m prime to p.  It is presented as
(Z/p^k)[x]/(h) where h is the integer lift (coefficients in [0, p)) of one
irreducible factor of Phi_m mod p, so f = deg h = ord_m(p).  The image of
zeta_m is the Hensel lift rho of x as a root of Phi_m.

Choice of factor: among the factors whose root satisfies
rho^(m/d) = g0^((p-1)/d) mod p  (d = gcd(m, p-1), g0 the least primitive
root mod p), take the one with the smallest root (f = 1) or the
lexicographically smallest coefficient tuple (f > 1).  The compatibility
condition makes zeta_{p-1}^j land on teichmuller(g0)^j, so the embedded
character omega is the Teichmueller lift whatever m is.
"""
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor_sqf

from ._arith import multiplicative_order, smallest_primitive_root, vp
from ._poly import cyclotomic_polynomial
from .errors import LevelError, NonIntegralError, PrecisionError, UnitRequiredError
from .padic import PadicInt


def _mulmod(a, b, h, q):
    """Product of ascending coefficient lists modulo monic h and q."""
    f = len(h) - 1
    prod = [0] * (2 * f - 1) if f else [0]
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    for i in range(len(prod) - 1, f - 1, -1):
        c = prod[i] % q
        if c:
            for j in range(f):
                prod[i - f + j] -= c * h[j]
    return tuple(c % q for c in prod[:f])


class UnramifiedRing:
    """Z_{p^f} presented through the level-m embedding convention."""

    def __init__(self, p, m):
        if m < 1 or gcd(m, p) != 1:
            raise LevelError(f"level {m} must be prime to {p}")
        self.p = p
        self.m = m
        self.f = multiplicative_order(p, m)
        self.g0 = smallest_primitive_root(p)
        self.poly = self._choose_factor()
        self._lock = threading.Lock()
        self._powers = {}

    def __eq__(self, other):
        if not isinstance(other, UnramifiedRing):
            return NotImplemented
        return (self.p, self.m, self.poly) == (other.p, other.m, other.poly)

    def __hash__(self):
        return hash((self.p, self.m, self.poly))

    def _choose_factor(self):
        p, m = self.p, self.m
        phi_desc = [c % p for c in reversed(cyclotomic_polynomial(m))]
        _, factors = gf_factor_sqf(phi_desc, p, ZZ)
        d = gcd(m, p - 1)
        target = pow(self.g0, (p - 1) // d, p)
        candidates = []
        for fac in factors:
            asc = tuple(int(c) % p for c in reversed(fac))
            if len(asc) - 1 != self.f:
                raise ArithmeticError("unexpected factor degree")
            # x^(m/d) mod (fac, p) must be the constant target
            xpow = self._pow_mod_p((0, 1) if self.f > 1 else ((-asc[0]) % p,), m // d, asc)
            if xpow[0] == target and not any(xpow[1:]):
                candidates.append(asc)
        if not candidates:
            raise ArithmeticError("no Teichmueller-compatible factor")
        if self.f == 1:
            return min(candidates, key=lambda h: (-h[0]) % p)
        return min(candidates)

    def _pow_mod_p(self, base, e, h):
        f = len(h) - 1
        base = tuple(base) + (0,) * (f - len(base))
        acc = (1,) + (0,) * (f - 1)
        while e:
            if e & 1:
                acc = _mulmod(acc, base, h, self.p)
            base = _mulmod(base, base, h, self.p)
            e >>= 1
        return acc

    def __repr__(self):
        return f"UnramifiedRing(p={self.p}, m={self.m}, f={self.f}, poly={list(self.poly)})"

    def convention(self):
        """Serializable description of the embedding."""
        return {
            "rule": "teichmuller-compatible factor, least root / least coefficients",
            "p": self.p,
            "m": self.m,
            "f": self.f,
            "poly": list(self.poly),
        }

    # -------------------------------------------------------------- elements

    def element(self, coeffs, k):
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) < self.f:
            coeffs = coeffs + (0,) * (self.f - len(coeffs))
        return UnramifiedElt(self, k, coeffs)

    def from_int(self, n, k):
        return self.element((n,), k)

    def from_padic(self, x: PadicInt):
        if x.p != self.p:
            raise ValueError("prime mismatch")
        return self.element((x.value,), x.k)

    def from_rational(self, x, k):
        x = Fraction(x)
        if x == 0:
            return self.zero(k)
        v = vp(x, self.p)
        if v < 0:
            raise NonIntegralError(f"{x} is not {self.p}-integral")
        q = self.p**k
        return self.from_int(x.numerator * pow(x.denominator, -1, q), k)

    def zero(self, k):
        return self.from_int(0, k)

    def one(self, k):
        return self.from_int(1, k)

    def gen(self, k):
        if self.f == 1:
            return self.from_int(-self.poly[0], k)
        return self.element((0, 1), k)

    def root(self, k):
        """rho: the root of Phi_m lifting the class of x, to precision k."""
        return self.powers(k)[1 % self.m]

    def powers(self, k):
        """[rho^0, ..., rho^(m-1)] at precision k (cached)."""
        with self._lock:
            cached = self._powers.get(k)
        if cached is not None:
            return cached
        rho = self._newton_root(k)
        out = [self.one(k)]
        for _ in range(self.m - 1):
            out.append(out[-1] * rho)
        with self._lock:
            self._powers.setdefault(k, out)
            return self._powers[k]

    def _newton_root(self, k):
        phi = cyclotomic_polynomial(self.m)
        dphi = [i * c for i, c in enumerate(phi)][1:]
        rho = self.gen(k)
        prec = 1
        while True:
            val = _horner(phi, rho)
            if val.is_zero():
                return rho
            if prec >= k:
                raise ArithmeticError("Newton iteration failed to converge")
            rho = rho - val * _horner(dphi, rho).inverse()
            prec *= 2

    def root_power(self, e, n, k):
        """Image of zeta_n^e, n | m."""
        if self.m % n:
            raise LevelError(f"zeta_{n} is not available at level {self.m}")
        return self.powers(k)[(self.m // n) * e % self.m]


def _horner(coeffs, x):
    acc = x.ring.zero(x.k)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


_RINGS = {}
_RINGS_LOCK = threading.Lock()


def unramified_ring(p, m):
    """The shared ring for (p, m); one instance per key even under threads."""
    with _RINGS_LOCK:
        ring = _RINGS.get((p, m))
        if ring is None:
            ring = _RINGS[(p, m)] = UnramifiedRing(p, m)
        return ring


@dataclass(frozen=True, eq=False)
class UnramifiedElt:
    ring: UnramifiedRing
    k: int
    coeffs: tuple

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("precision must be >= 0")
        q = self.ring.p**self.k
        object.__setattr__(self, "coeffs", tuple(c % q for c in self.coeffs))

    @property
    def p(self):
        return self.ring.p

    @property
    def f(self):
        return self.ring.f

    @property
    def modulus(self):
        return self.ring.p**self.k

    @property
    def valuation(self):
        nz = [vp(c, self.p) for c in self.coeffs if c]
        return min(min(nz), self.k) if nz else self.k

    def is_zero(self):
        return not any(self.coeffs)

    def is_unit(self):
        return self.k > 0 and any(c % self.p for c in self.coeffs)

    def coefficients(self):
        return [PadicInt(self.p, self.k, c) for c in self.coeffs]

    def digits(self):
        """Little-endian base-p digits of each basis coefficient."""
        return [c.digits() for c in self.coefficients()]

    def as_padic(self):
        if any(self.coeffs[1:]):
            raise ValueError("element does not lie in Z_p")
        return PadicInt(self.p, self.k, self.coeffs[0])

    def reduce(self, k):
        if k > self.k:
            raise PrecisionError(f"cannot raise precision {self.k} -> {k}", achievable=self.k)
        return UnramifiedElt(self.ring, k, self.coeffs)

    def agrees(self, other, k=None):
        other = self._coerce(other)
        top = min(self.k, other.k)
        k = top if k is None else k
        if k > top:
            return False
        q = self.p**k
        return all((a - b) % q == 0 for a, b in zip(self.coeffs, other.coeffs))

    def __eq__(self, other):
        if not isinstance(other, UnramifiedElt):
            return NotImplemented
        return self.ring == other.ring and self.k == other.k and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring.p, self.ring.m, self.k, self.coeffs))

    def _coerce(self, other):
        if isinstance(other, UnramifiedElt):
            if other.ring is not self.ring and other.ring != self.ring:
                raise LevelError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, PadicInt):
            return self.ring.from_padic(other)
        if isinstance(other, (int, Fraction)):
            return self.ring.from_rational(other, self.k)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        k = min(self.k, other.k)
        return UnramifiedElt(self.ring, k, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return UnramifiedElt(self.ring, self.k, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return UnramifiedElt(self.ring, self.k, tuple(c * other for c in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        k = min(self.k + other.valuation, other.k + self.valuation)
        q = self.p**k
        return UnramifiedElt(self.ring, k, _mulmod(self.coeffs, other.coeffs, self.ring.poly, q))

    __rmul__ = __mul__

    def scale(self, x):
        """Multiply by an exact rational, dividing out powers of p honestly."""
        x = Fraction(x)
        if x == 0:
            return self.ring.zero(self.k)
        v = vp(x, self.p)
        pv = self.p ** abs(v)
        num, den = x.numerator, x.denominator
        if v > 0:
            num //= pv
        elif v < 0:
            den //= pv
        q = self.p**self.k
        unit = num * pow(den, -1, q)
        out = UnramifiedElt(self.ring, self.k, tuple(c * unit for c in self.coeffs))
        if v > 0:
            return UnramifiedElt(self.ring, self.k + v, tuple(c * pv for c in out.coeffs))
        if v < 0:
            return out.divide_by_p(-v)
        return out

    def inverse(self):
        if not self.is_unit():
            raise UnitRequiredError("element is not a unit")
        p, h = self.p, self.ring.poly
        # Fermat in GF(p^f), then Newton y <- y (2 - a y)
        y = self.ring._pow_mod_p(tuple(c % p for c in self.coeffs), p**self.f - 2, h)
        y = UnramifiedElt(self.ring, self.k, y)
        prec = 1
        while prec < self.k:
            y = y * (2 - self * y)
            prec *= 2
        return y

    def divide_by_p(self, v=1):
        if v > self.k:
            raise PrecisionError("not enough digits to divide", achievable=0)
        pv = self.p**v
        if any(c % pv for c in self.coeffs):
            raise NonIntegralError(f"element not divisible by {self.p}^{v}")
        return UnramifiedElt(self.ring, self.k - v, tuple(c // pv for c in self.coeffs))

    def __truediv__(self, other):
        if isinstance(other, Fraction) or (isinstance(other, int) and not isinstance(other, bool)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self.scale(1 / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("division by an element indistinguishable from 0")
        v = other.valuation
        unit = UnramifiedElt(self.ring, other.k - v, tuple(c // self.p**v for c in other.coeffs))
        return (self * unit.inverse()).divide_by_p(v)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        acc, base = self.ring.one(self.k), self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def __repr__(self):
        if self.f == 1:
            return f"UnramifiedElt({self.coeffs[0]} mod {self.p}^{self.k})"
        return f"UnramifiedElt({list(self.coeffs)} mod ({self.p}^{self.k}, {list(self.ring.poly)}))"
