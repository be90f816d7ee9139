"""Precision-tracked arithmetic in Z/p^k.

A :class:`PadicInt` is a residue modulo p^k together with the statement
that only those k digits are known.  Operations never report digits they
cannot justify: sums and products keep the smaller precision, division by
p drops one digit per factor removed.
"""
from dataclasses import dataclass
from fractions import Fraction

from ._arith import vp
from .errors import NonIntegralError, PrecisionError, UnitRequiredError


@dataclass(frozen=True)
class PadicInt:
    p: int
    k: int
    value: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("precision must be >= 0")
        object.__setattr__(self, "value", self.value % self.p**self.k)

    @classmethod
    def from_rational(cls, x, p, k):
        x = Fraction(x)
        num, den = x.numerator, x.denominator
        if den % p == 0:
            raise NonIntegralError(f"{x} is not {p}-integral")
        q = p**k
        return cls(p, k, num * pow(den, -1, q))

    @property
    def modulus(self):
        return self.p**self.k

    @property
    def valuation(self):
        """v_p of the value; equals k when all known digits are zero."""
        if self.value == 0:
            return self.k
        return min(vp(self.value, self.p), self.k)

    def is_zero(self):
        return self.value == 0

    def is_unit(self):
        return self.k > 0 and self.value % self.p != 0

    def digits(self):
        """Base-p digits, little-endian, exactly k of them."""
        out, v = [], self.value
        for _ in range(self.k):
            v, d = divmod(v, self.p)
            out.append(d)
        return out

    def reduce(self, k):
        if k > self.k:
            raise PrecisionError(f"cannot raise precision {self.k} -> {k}", achievable=self.k)
        return PadicInt(self.p, k, self.value)

    def agrees(self, other, k=None):
        other = self._coerce(other)
        k = min(self.k, other.k) if k is None else k
        if k > min(self.k, other.k):
            return False
        return (self.value - other.value) % self.p**k == 0

    def _coerce(self, other):
        if isinstance(other, PadicInt):
            if other.p != self.p:
                raise ValueError(f"prime mismatch {self.p} vs {other.p}")
            return other
        if isinstance(other, (int, Fraction)):
            return PadicInt.from_rational(other, self.p, self.k)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        k = min(self.k, other.k)
        return PadicInt(self.p, k, self.value + other.value)

    __radd__ = __add__

    def __neg__(self):
        return PadicInt(self.p, self.k, -self.value)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        k = min(self.k + other.valuation, other.k + self.valuation)
        return PadicInt(self.p, k, self.value * other.value)

    __rmul__ = __mul__

    def inverse(self):
        if not self.is_unit():
            raise UnitRequiredError(f"{self.value} is not a unit mod {self.p}")
        return PadicInt(self.p, self.k, pow(self.value, -1, self.modulus))

    def divide_by_p(self, v=1):
        if v > self.k:
            raise PrecisionError("not enough digits to divide", achievable=0)
        if self.value % self.p**v:
            raise NonIntegralError(f"{self.value} not divisible by {self.p}^{v}")
        return PadicInt(self.p, self.k - v, self.value // self.p**v)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("division by an element indistinguishable from 0")
        v = other.valuation
        unit = PadicInt(self.p, other.k - v, other.value // self.p**v)
        return (self * unit.inverse()).divide_by_p(v)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return PadicInt(self.p, self.k, pow(self.value, n, self.modulus))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"PadicInt({self.value} mod {self.p}^{self.k})"


def _as_padic(a, p, k):
    if isinstance(a, PadicInt):
        if a.p != p:
            raise ValueError("prime mismatch")
        return a
    return PadicInt(p, k, a)


# --------------------------------------------------------------- operations


def teichmuller(a, p, k):
    """omega(a): the (p-1)-st root of unity congruent to a mod p."""
    if k < 1:
        raise ValueError("k must be >= 1")
    a = int(a)
    if a % p == 0:
        raise UnitRequiredError(f"{a} is divisible by {p}")
    q = p**k
    return PadicInt(p, k, pow(a, p ** (k - 1), q))


def angle_part(a, p, k):
    """<a> = a / omega(a), the principal-unit part of a."""
    if isinstance(a, PadicInt):
        k = min(k, a.k)
        a = a.value
    return PadicInt(p, k, a) * teichmuller(a, p, k).inverse()


def padic_log(u, k=None, *, p=None):
    """Iwasawa logarithm of a unit: log_p of its principal-unit part.

    ``u`` is a PadicInt, or an exact integer when ``p`` is given.  Since log
    is an isometry on 1 + pZ_p (p odd), the achievable precision is that of
    the input.
    """
    if isinstance(u, PadicInt):
        p = u.p
        if k is None:
            k = u.k
        if k > u.k:
            raise PrecisionError(
                f"log to {k} digits needs input precision {k}, have {u.k}", achievable=u.k
            )
        rep = u.value
    else:
        if p is None or k is None:
            raise TypeError("integer input needs p and k")
        rep = int(u)
    if rep % p == 0:
        raise UnitRequiredError(f"{rep} is not a {p}-adic unit")
    if k == 0:
        return PadicInt(p, 0, 0)
    x = (angle_part(rep, p, k).value - 1) % p**k
    total = 0
    if x:
        vx = vp(x, p)
        n = 1
        # n*vx - floor(log_p n) is nondecreasing and bounds every later term
        while n * vx - _ilog(n, p) < k:
            e = _vp_int(n, p)
            term = pow(x, n, p ** (k + e)) // p**e
            inv = pow(n // p**e, -1, p**k)
            total += (-1) ** (n + 1) * term * inv
            n += 1
    return PadicInt(p, k, total)


def _ilog(n, p):
    e = 0
    while n >= p:
        n //= p
        e += 1
    return e


def _vp_int(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class KappaChoice:
    """The value kappa(gamma) of the cyclotomic character on the generator."""

    p: int
    kappa: int

    def __post_init__(self):
        p = self.p
        if self.kappa % p != 1 % p or self.kappa % (p * p) == 1:
            raise ValueError(f"kappa={self.kappa} is not a topological generator of 1+{p}Z_{p}")

    @classmethod
    def default(cls, p):
        return cls(p, 1 + p)


def s_exponent(d, kappa, k):
    """s(d) = log_p(d) / log_p(kappa), an element of Z_p."""
    if isinstance(kappa, int):
        raise TypeError("pass a KappaChoice")
    p = kappa.p
    if d % p == 0:
        raise UnitRequiredError(f"{d} is divisible by {p}")
    num = padic_log(d, k + 1, p=p)
    den = padic_log(kappa.kappa, k + 1, p=p)
    return num.divide_by_p(1) * den.divide_by_p(1).inverse()


def binomial_power(base, exponent, k):
    """base^exponent for base = 1 mod p and exponent in Z_p.

    Evaluated as sum_j C(e, j) (base - 1)^j with the integer representative
    e of the exponent; an exponent known to m digits pins the result to
    m + v_p(base - 1) digits.
    """
    if not isinstance(base, PadicInt):
        raise TypeError("base must be a PadicInt")
    p = base.p
    if base.value % p != 1 % p:
        raise UnitRequiredError("base must be congruent to 1 mod p")
    k = min(k, base.k)
    if isinstance(exponent, PadicInt):
        if exponent.p != p:
            raise ValueError("prime mismatch")
        e = exponent.value
        x = (base.value - 1) % p**k
        w = vp(x, p) if x else k
        k = min(k, exponent.k + w)
    else:
        e = int(exponent)
        x = (base.value - 1) % p**k
        w = vp(x, p) if x else k
    q = p**k
    total, term_binom, j = 0, 1, 0
    xj = 1
    while j * w < k:
        total += term_binom * xj
        # C(e, j+1) = C(e, j) * (e - j) / (j + 1), exact over Z
        term_binom = term_binom * (e - j) // (j + 1)
        j += 1
        xj = xj * x % q
    return PadicInt(p, k, total)

