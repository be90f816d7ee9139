"""Truncated power series over Z_{p^f}: G_theta, xi_theta, Eisenstein coefficients.

Every series records how its coefficients were obtained, since that decides
how many digits an evaluation can certify:

* ``truncation``: the exact series cut at degree D; at v(T) >= 1 the tail
  is below p^((D+1) v(T)).
* ``interpolant``: a Newton interpolant of an integral series at nodes x_i;
  the error at T is divisible by prod_i (T - x_i).
* ``composed``: an interpolant composed with a substitution and cut at D;
  at v(T) >= 1 the error is below p^(D+1).
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ._arith import divisors, lcm, vp
from .characters import DirichletChar, teichmuller_char
from .errors import BudgetError, DomainError
from .lvalues import kubota_leopoldt
from .padic import KappaChoice, s_exponent
from .unramified import unramified_ring

__all__ = [
    "TruncatedSeries",
    "g_theta_series",
    "xi_theta",
    "eisenstein_coeff",
    "specialize",
    "classical_coefficient",
]


def _v_int(x, p, cap):
    return cap if x == 0 else min(vp(x, p), cap)


@dataclass(frozen=True)
class TruncatedSeries:
    coeffs: tuple
    p: int
    k: int
    kappa: int
    kind: str = "truncation"
    nodes: tuple = ()

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def ring(self):
        return self.coeffs[0].ring

    def _like(self, coeffs, kind=None):
        return TruncatedSeries(tuple(coeffs), self.p, self.k, self.kappa, kind or self.kind, self.nodes)

    def __add__(self, other):
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        kind = self.kind if self.kind == other.kind else "composed"
        return self._like([a + b for a, b in zip(self.coeffs, other.coeffs)], kind)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return self._like(_series_mul(self.coeffs, other.coeffs, self.degree))
        return self._like([c * other for c in self.coeffs])

    __rmul__ = __mul__

    def scale(self, q):
        return self._like([c.scale(q) for c in self.coeffs])

    def _horner(self, coeffs, T):
        acc = self.ring.zero(self.k)
        for c in reversed(coeffs):
            acc = acc * T + c
        return acc

    def value_precision(self, T):
        D, k = self.degree, self.k
        if self.kind == "truncation":
            return k if T == 0 else min(k, (D + 1) * _v_int(T, self.p, k))
        if self.kind == "interpolant":
            return min(k, sum(_v_int(T - x, self.p, k) for x in self.nodes))
        # composed: exact at T = 0, otherwise D + 1 digits for v(T) >= 1
        if T == 0:
            return k
        return min(k, D + 1) if _v_int(T, self.p, k) >= 1 else 0

    def derivative_precision(self, T):
        D, k = self.degree, self.k
        if self.kind == "truncation":
            return k if T == 0 else min(k, D * _v_int(T, self.p, k))
        return min(k, D) if _v_int(T, self.p, k) >= 1 else 0

    def evaluate(self, T):
        """F(T) for an integer T, at the precision the series can certify."""
        T = int(T)
        prec = self.value_precision(T)
        return self._horner(self.coeffs, T).reduce(prec)

    def derivative_at(self, T):
        T = int(T)
        prec = self.derivative_precision(T)
        deriv = [c * j for j, c in enumerate(self.coeffs)][1:] or [self.ring.zero(self.k)]
        return self._horner(deriv, T).reduce(prec)


def _series_mul(a, b, D):
    out = [None] * (D + 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            if i + j > D:
                break
            t = x * y
            out[i + j] = t if out[i + j] is None else out[i + j] + t
    zero = a[0].ring.zero(a[0].k)
    return [c if c is not None else zero for c in out]


def _kappa(p, kappa):
    choice = KappaChoice.default(p) if kappa is None else KappaChoice(p, kappa)
    return choice


def _ring_for(theta, p, ring):
    return ring or unramified_ring(p, lcm(theta.order, p - 1))


def g_theta_series(theta: DirichletChar, p, D, k, ring=None, kappa=None) -> TruncatedSeries:
    """Newton interpolant of G_theta(kappa^s - 1) = L_p(-s-1, theta omega^2), s = 0..D."""
    if theta.is_odd():
        raise DomainError(f"{theta.label} is not even")
    choice = _kappa(p, kappa)
    ring = _ring_for(theta, p, ring)
    psi = theta * teichmuller_char(p) ** 2
    W = k + D * (D + 1) // 2
    nodes = [choice.kappa**j - 1 for j in range(D + 1)]
    # divided differences, in place
    dd = [kubota_leopoldt(-j - 1, psi, p, W, ring) for j in range(D + 1)]
    newton = [dd[0]]
    for order in range(1, D + 1):
        dd = [
            (dd[i + 1] - dd[i]) / ring.from_int(nodes[i + order] - nodes[i], W)
            for i in range(len(dd) - 1)
        ]
        newton.append(dd[0])
    # Newton form -> monomial coefficients
    coeffs = [ring.zero(W) for _ in range(D + 1)]
    basis = [ring.one(W)] + [ring.zero(W)] * D
    for d, c in enumerate(newton):
        for i in range(d + 1):
            coeffs[i] = coeffs[i] + basis[i] * c
        if d < D:
            # multiply by (T - x_d)
            x = nodes[d]
            shifted = [ring.zero(W)] + basis[:-1]
            basis = [sh - b * x for sh, b in zip(shifted, basis)]
    achieved = min(c.k for c in coeffs)
    if achieved < k:
        raise BudgetError(
            f"interpolation reached {achieved} < {k} digits",
            required=W + (k - achieved),
            achievable=achieved,
        )
    return TruncatedSeries(
        tuple(c.reduce(k) for c in coeffs), p, k, choice.kappa, "interpolant", tuple(nodes)
    )


def xi_theta(theta: DirichletChar, p, D, k, ring=None, kappa=None) -> TruncatedSeries:
    """G_{theta^-1}((1+T)^-1 - 1), composed and cut at degree D."""
    G = g_theta_series(theta.inverse(), p, D, k, ring, kappa)
    R = G.ring
    # (1+T)^-1 - 1 = sum_{j>=1} (-1)^j T^j
    sub = [R.zero(k)] + [R.from_int((-1) ** j, k) for j in range(1, D + 1)]
    acc = [G.coeffs[-1]] + [R.zero(k)] * D
    for c in reversed(G.coeffs[:-1]):
        acc = _series_mul(acc, sub, D)
        acc[0] = acc[0] + c
    return TruncatedSeries(tuple(acc), p, k, G.kappa, "composed", ())


@lru_cache(maxsize=4096)
def _s_int(d, p, kappa, k):
    return s_exponent(d, KappaChoice(p, kappa), k).value


def eisenstein_coeff(n, theta: DirichletChar, p, D, k, ring=None, kappa=None) -> TruncatedSeries:
    """A_n(T) = sum_{d|n, p∤d} theta(d) d (1+T)^{s(d)}; A_0 = G_theta / 2."""
    choice = _kappa(p, kappa)
    ring = _ring_for(theta, p, ring)
    if n == 0:
        return g_theta_series(theta, p, D, k, ring, choice.kappa).scale(Fraction(1, 2))
    if n < 0:
        raise DomainError("n must be >= 0")
    # C(s, j) depends on s mod p^(k + v(j!)), so carry v(D!) extra digits of s
    extra = sum(D // p**i for i in range(1, D + 1) if p**i <= D)
    q = p**k
    coeffs = [ring.zero(k) for _ in range(D + 1)]
    for d in divisors(n):
        if d % p == 0:
            continue
        e = theta.exponent(d)
        if e is None:
            continue
        s = _s_int(d, p, choice.kappa, k + extra)
        weight = theta.embed(d, ring, k) * d
        binom = 1
        for j in range(D + 1):
            coeffs[j] = coeffs[j] + weight * (binom % q)
            binom = binom * (s - j) // (j + 1)
    return TruncatedSeries(tuple(coeffs), p, k, choice.kappa, "truncation", ())


def specialize(F: TruncatedSeries, weight, require=None):
    """F at T = kappa^(weight-2) - 1."""
    if weight < 2:
        raise DomainError("weight must be >= 2")
    T = F.kappa ** (weight - 2) - 1
    val = F.evaluate(T)
    need = F.k if require is None else require
    if val.k < need:
        raise BudgetError(
            f"specialization at weight {weight} certifies {val.k} < {need} digits",
            required=need,
            achievable=val.k,
        )
    return val


def classical_coefficient(n, theta: DirichletChar, p, weight, k, ring=None):
    """sum_{d|n, p∤d} theta omega^(2-weight)(d) d^(weight-1), embedded."""
    ring = _ring_for(theta, p, ring)
    twist = theta * teichmuller_char(p) ** (2 - weight)
    acc = ring.zero(k)
    for d in divisors(n):
        if d % p == 0:
            continue
        if twist.exponent(d) is None:
            continue
        acc = acc + twist.embed(d, ring, k) * d ** (weight - 1)
    return acc
