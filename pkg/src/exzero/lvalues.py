"""Values at s = 0 and negative integers, p-adic L-functions, the L-invariant."""
from dataclasses import dataclass
from fractions import Fraction

from ._arith import bernoulli_number, bernoulli_poly, lcm, vp
from .characters import DirichletChar, check_exceptional, teichmuller_char, theta_from_chi
from .cyclotomic import CycloElt, root_of_unity
from .errors import DomainError, HypothesisError, ParityError, PoleError, PrecisionError
from .padic import PadicInt, angle_part, binomial_power
from .unramified import UnramifiedElt, unramified_ring

__all__ = [
    "partial_zeta_0",
    "partial_zeta_negative",
    "scaling_identity_check",
    "primitive_root_sum",
    "geometric_identity_check",
    "bernoulli_generalized",
    "dirichlet_L_at_0",
    "pair_ring",
    "embed_cyclo",
    "kubota_leopoldt",
    "lp_interpolation_value",
    "lp_derivative_at_0",
    "LInvariantResult",
    "l_invariant",
]


# ------------------------------------------------------------ partial zetas


def partial_zeta_0(a, M):
    """zeta_{a (M)}(0) = 1/2 - a/M."""
    if not 1 <= a <= M:
        raise DomainError(f"residue {a} outside 1..{M}")
    return Fraction(1, 2) - Fraction(a, M)


def partial_zeta_negative(a, M, n):
    """zeta_{a (M)}(-n) = -M^n B_{n+1}(a/M) / (n+1), n >= 0."""
    if not 1 <= a <= M:
        raise DomainError(f"residue {a} outside 1..{M}")
    return -Fraction(M) ** n * bernoulli_poly(n + 1, Fraction(a, M)) / (n + 1)


def scaling_identity_check(a_prime, N, p, r, n=0):
    """zeta_{a'p^r (Np^r)}(-n) == p^{rn} zeta_{a' (N)}(-n)."""
    lhs = partial_zeta_negative(a_prime * p**r, N * p**r, n)
    rhs = Fraction(p) ** (r * n) * partial_zeta_negative(a_prime, N, n)
    return lhs == rhs


def primitive_root_sum(p, r):
    """sum of zeta_{p^r}^i over i in (Z/p^r)^x, exactly."""
    pr = p**r
    vec = [0] * pr
    for i in range(1, pr):
        if i % p:
            vec[i] = 1
    return CycloElt.from_group_ring(pr, vec)


def geometric_identity_check(M, j):
    """t/(t-1) == -sum_{a=1}^{M} zeta_{a (M)}(0) t^a for t = zeta_M^j."""
    if j % M == 0:
        raise PoleError("t = 1")
    t = root_of_unity(M, j)
    lhs = t * (t - 1).inverse()
    vec = [Fraction(0)] * M
    for a in range(1, M + 1):
        vec[(a * j) % M] -= partial_zeta_0(a, M)
    rhs = CycloElt.from_fractions(M, vec)
    return lhs == rhs


# -------------------------------------------------------- classical values


def _class_sum(chi, weights):
    """sum_a chi(a) w(a) grouped by exponent class, as a CycloElt at level ord chi."""
    n = chi.order
    acc = [Fraction(0)] * n
    for a, w in weights:
        e = chi.exponent(a)
        if e is not None:
            acc[e] += w
    return CycloElt.from_fractions(n, acc)


def bernoulli_generalized(k, chi: DirichletChar):
    """B_{k,chi} = M^{k-1} sum_{a=1}^{M} chi(a) B_k(a/M)."""
    if k < 1:
        raise DomainError("k must be >= 1")
    M = chi.modulus
    scale = Fraction(M) ** (k - 1)
    return _class_sum(chi, ((a, scale * bernoulli_poly(k, Fraction(a, M))) for a in range(1, M + 1)))


def dirichlet_L_at_0(chi: DirichletChar):
    """L(0, chi) two ways: partial zetas and -B_{1,chi}; they must agree."""
    if chi.is_trivial():
        raise PoleError("trivial character")
    N = chi.modulus
    via_zeta = _class_sum(chi, ((i, partial_zeta_0(i, N)) for i in range(1, N)))
    via_bernoulli = -bernoulli_generalized(1, chi)
    if via_zeta != via_bernoulli:
        raise ArithmeticError(f"L(0,{chi.label}) paths disagree")
    return via_zeta


# ---------------------------------------------------------- p-adic values


def pair_ring(chi: DirichletChar, p):
    """Ring holding every value attached to (chi, p): level lcm(N, ord chi, p-1)."""
    return unramified_ring(p, lcm(chi.modulus, chi.order, p - 1))


def embed_cyclo(x: CycloElt, ring, k):
    """Embed x, dividing by powers of p in the denominator with precision loss."""
    p = ring.p
    if ring.m % x.M:
        raise DomainError(f"level {x.M} does not divide ring level {ring.m}")
    v = vp(x.den, p) if x.den % p == 0 else 0
    kk = k + v
    powers = ring.powers(kk)
    stride = ring.m // x.M
    acc = ring.zero(kk)
    for i, c in enumerate(x.num):
        if c:
            acc = acc + powers[(i * stride) % ring.m] * c
    return acc.scale(Fraction(1, x.den))


def _default_ring(psi, p):
    return unramified_ring(p, lcm(psi.order, p - 1))


def _class_embed(chi, sums, ring, k):
    """sum_t sums[t] zeta_n^t in the ring, sums given mod p^k."""
    n = chi.order
    acc = ring.zero(k)
    for t, c in enumerate(sums):
        if c:
            acc = acc + ring.root_power(t, n, k) * c
    return acc


def _binom(x, j):
    out = 1
    for i in range(j):
        out = out * (x - i) // (i + 1)
    return out


def _lp_series(s, psi, p, W, ring):
    """Bracketed Washington series divided by (s - 1), computed at precision W."""
    F = lcm(psi.modulus, p)
    vF = vp(F, p)
    q = p**W
    e = 1 - s
    n = psi.order
    residues = []
    for a in range(1, F + 1):
        if a % p == 0:
            continue
        t = psi.exponent(a)
        if t is None:
            continue
        pa = binomial_power(angle_part(a, p, W), e, W).value
        residues.append((a, t, pa))
    # sum over j >= 1 stops once (j-1) v(F) - 1 >= W
    J = (W + 1) // vF + 2
    bracket = None
    inv = {a: pow(a, -1, q) for a, _, _ in residues}
    cur = {a: pa for a, _, pa in residues}
    for j in range(J + 1):
        if j == 0:
            coeff = Fraction(1, F)
        else:
            bj = bernoulli_number(j)
            if bj == 0:
                for a, _, _ in residues:
                    cur[a] = cur[a] * inv[a] % q
                continue
            coeff = _binom(e, j) * Fraction(F) ** (j - 1) * bj
            for a, _, _ in residues:
                cur[a] = cur[a] * inv[a] % q
        if coeff == 0:
            continue
        sums = [0] * n
        for a, t, _ in residues:
            sums[t] = (sums[t] + cur[a]) % q
        term = _class_embed(psi, sums, ring, W).scale(coeff)
        bracket = term if bracket is None else bracket + term
    return bracket.scale(Fraction(1, s - 1))


def kubota_leopoldt(s, psi: DirichletChar, p, k, ring=None) -> UnramifiedElt:
    """L_p(s, psi) for even nontrivial psi, s an integer or a PadicInt."""
    if psi.is_odd():
        raise ParityError(f"{psi.label} is odd; its p-adic L-function is zero")
    prim = psi.primitive()
    if prim.is_trivial():
        raise PoleError("trivial character: the p-adic zeta function is excluded")
    ring = ring or _default_ring(prim, p)
    if ring.m % prim.order:
        raise DomainError(f"ring level {ring.m} lacks values of order {prim.order}")
    cap = k
    if isinstance(s, PadicInt):
        cap = min(k, s.k)
        s = s.value
    s = int(s)
    if s == 1:
        raise DomainError("the series is indeterminate at s = 1")
    W = k + 1 + vp(s - 1, p)
    for _ in range(4):
        val = _lp_series(s, prim, p, W, ring)
        if val.k >= cap:
            return val.reduce(cap)
        W += cap - val.k
    raise PrecisionError(f"L_p precision stuck at {val.k}", achievable=val.k)


def lp_interpolation_value(n, psi: DirichletChar, p, k, ring=None):
    """(1 - phi(p) p^{n-1}) L(1-n, phi) with phi = primitive of psi omega^{-n}."""
    phi = (psi * teichmuller_char(p) ** (-n)).primitive()
    ring = ring or _default_ring(psi, p)
    classical = bernoulli_generalized(n, phi) * Fraction(-1, n)
    euler = 1 - phi.value(p) * (p ** (n - 1))
    return embed_cyclo(euler * classical, ring, k)


def _require_exceptional(chi, p):
    ok, reason = check_exceptional(chi, p)
    if not ok:
        raise HypothesisError(f"({chi.label}, p={p}) is not exceptional: {reason}", reason=reason)


def lp_derivative_at_0(chi: DirichletChar, p, k, ring=None, m=None):
    """L_p'(0, chi omega) by the symmetric quotient with step h = p^m.

    With m = floor(k/2) the odd Taylor terms contribute at valuation >= 2m + 3,
    so k digits are certified when the L_p values carry k + m digits.
    """
    _require_exceptional(chi, p)
    ring = ring or pair_ring(chi, p)
    psi = theta_from_chi(chi, p)
    m = k // 2 if m is None else m
    if m < 1:
        m = 1
    h = p**m
    up = kubota_leopoldt(h, psi, p, k + m, ring)
    dn = kubota_leopoldt(-h, psi, p, k + m, ring)
    quot = (up - dn).scale(Fraction(1, 2 * h))
    target = min(k, 2 * m + 3)
    if quot.k < target:
        raise PrecisionError(f"derivative precision {quot.k} < {target}", achievable=quot.k)
    return quot.reduce(target)


@dataclass(frozen=True)
class LInvariantResult:
    chi_label: str
    p: int
    value: UnramifiedElt
    precision: int
    derivative: UnramifiedElt
    l0: CycloElt
    certified_nonzero: bool


def l_invariant(chi: DirichletChar, p, k, ring=None) -> LInvariantResult:
    """L-invariant as L_p'(0, chi omega) / L(0, chi)."""
    ring = ring or pair_ring(chi, p)
    l0 = dirichlet_L_at_0(chi)
    # division by L(0, chi) costs v_p(L(0, chi)) digits
    guard = 0
    l0_emb = embed_cyclo(l0, ring, k + 2)
    if l0_emb.is_zero():
        raise PrecisionError("L(0, chi) indistinguishable from 0", achievable=0)
    guard = l0_emb.valuation
    deriv = lp_derivative_at_0(chi, p, k + guard, ring)
    value = deriv / embed_cyclo(l0, ring, k + guard)
    prec = min(value.k, k)
    value = value.reduce(prec)
    return LInvariantResult(
        chi_label=chi.label,
        p=p,
        value=value,
        precision=prec,
        derivative=deriv.reduce(min(deriv.k, k)),
        l0=l0,
        certified_nonzero=not value.is_zero(),
    )
