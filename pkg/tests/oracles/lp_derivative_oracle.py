"""Straight-line oracle for the p-adic L-derivative at the trivial zero.

Shares no code with the library. Method: the classical values

    L_p(1 - k, chi*omega) = -(1 - p^(k-1)) B_{k,chi} / k,   k = 1 + j(p-1),

sit at s_j = -j(p-1), i.e. at u_j = (1+p)^(s_j) - 1 in the Iwasawa variable.
The degree-D interpolating polynomial P(u) through (u_j, value_j) is built
exactly over Q, and L_p'(0) = P'(0) * log_p(1+p).  Because u_0 = 0 and
v_p(u_j) = 1 + v_p(j), the derivative error at u = 0 has valuation >= D.

Only odd quadratic characters (rational values) are handled.  Run:

    python tests/oracles/lp_derivative_oracle.py > tests/fixtures/oracle_values.json
"""
import json
import sys
from fractions import Fraction
from math import comb, gcd

DEGREE = 24


def bernoulli_numbers(n):
    # B_1 = -1/2 convention
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(comb(m + 1, j) * B[j] for j in range(m)) / Fraction(m + 1))
    return B


def quad_char(N):
    def chi(a):
        a %= N
        if gcd(a, N) != 1:
            return 0
        if N == 4:
            return 1 if a == 1 else -1
        return 1 if pow(a, (N - 1) // 2, N) == 1 else -1
    return chi


def gen_bernoulli(k, chi, N, B):
    total = Fraction(0)
    for a in range(1, N + 1):
        c = chi(a)
        if c == 0:
            continue
        x = Fraction(a, N)
        bk = sum(comb(k, j) * B[j] * x ** (k - j) for j in range(k + 1))
        total += c * bk
    return N ** (k - 1) * total


def mod_pk(x, p, k):
    x = Fraction(x)
    num, den = x.numerator, x.denominator
    while den % p == 0:
        if num % p:
            raise ValueError("not p-integral")
        num //= p
        den //= p
    q = p ** k
    return num * pow(den, -1, q) % q


def vp(x, p, cap=60):
    x = Fraction(x)
    if x == 0:
        return cap
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def log1p_series(x, p, k):
    # log(1+x) for v_p(x) >= 1, exact partial sum then reduced
    s = Fraction(0)
    n = 1
    while True:
        term = Fraction((-1) ** (n + 1)) * Fraction(x) ** n / n
        if n > 2 * k + 10 and vp(term, p) >= k + 5:
            break
        s += term
        n += 1
    return s


def derivative_at_zero(N, p, degree):
    chi = quad_char(N)
    kmax = 1 + degree * (p - 1)
    B = bernoulli_numbers(kmax)
    nodes, values = [], []
    for j in range(degree + 1):
        k = 1 + j * (p - 1)
        s = -j * (p - 1)
        u = Fraction(1 + p) ** s - 1
        val = -(1 - Fraction(p) ** (k - 1)) * gen_bernoulli(k, chi, N, B) / k
        nodes.append(u)
        values.append(val)
    # Newton divided differences
    coef = list(values)
    n = len(nodes)
    for lvl in range(1, n):
        for i in range(n - 1, lvl - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (nodes[i] - nodes[i - lvl])
    # P(u) = sum c_i prod_{m<i}(u - u_m); derivative at 0 with u_0 = 0
    deriv = Fraction(0)
    for i in range(1, n):
        # d/du prod_{m<i}(u-u_m) at u=0; factor (u - u_0) = u kills all but one term
        prod = Fraction(1)
        for m in range(1, i):
            prod *= -nodes[m]
        deriv += coef[i] * prod
    return deriv * log1p_series(p, p, 30)


def main():
    out = {"method": "exact Newton interpolation of Bernoulli values at s=-j(p-1)",
           "degree": DEGREE, "pairs": {}}
    for N, p in [(3, 7), (4, 5), (7, 11)]:
        d1 = derivative_at_zero(N, p, DEGREE)
        d2 = derivative_at_zero(N, p, DEGREE - 4)
        chi = quad_char(N)
        L0 = sum(chi(i) * (Fraction(1, 2) - Fraction(i, N)) for i in range(1, N))
        k = 6
        a1, a2 = mod_pk(d1, p, k), mod_pk(d2, p, k)
        assert a1 == a2, (N, p, a1, a2)
        linv = d1 / L0
        out["pairs"][f"{N},{p}"] = {
            "L0": str(L0),
            "derivative_mod_p6": a1,
            "derivative_valuation": vp(d1, p),
            "l_invariant_mod_p6": mod_pk(linv, p, k),
            "l_invariant_valuation": vp(linv, p),
        }
    json.dump(out, sys.stdout, indent=2)
    print()


if __name__ == "__main__":
    main()
