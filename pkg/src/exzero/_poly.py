"""Dense integer polynomials as ascending coefficient tuples."""
from functools import lru_cache

from ._arith import divisors


def poly_trim(a):
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def poly_divmod_monic(a, b):
    """Quotient and remainder of a by a monic integer polynomial b."""
    a = list(a)
    db = len(b) - 1
    if b[-1] != 1:
        raise ValueError("divisor must be monic")
    if len(a) - 1 < db:
        return [0], a
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    return q, poly_trim(a[:db] or [0])


@lru_cache(maxsize=None)
def cyclotomic_polynomial(M):
    """Phi_M by exact division of x^M - 1 by Phi_d over proper divisors d."""
    if M < 1:
        raise ValueError("M must be positive")
    num = [-1] + [0] * (M - 1) + [1]
    for d in divisors(M)[:-1]:
        num, rem = poly_divmod_monic(num, cyclotomic_polynomial(d))
        if any(rem):
            raise ArithmeticError(f"Phi_{d} does not divide x^{M}-1")
    return tuple(num)


def poly_eval_mod(a, x, q):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % q
    return acc
