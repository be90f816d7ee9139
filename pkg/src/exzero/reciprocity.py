"""Trace sums, Coleman power-series evaluations and closed-form cup products.

Two computable sides are compared throughout:

* the exact double Galois sum
  S = sum_{G_N} chi(G_N^-1) sum_{G in (Z/p^r)^x} t/(t-1),
  t = zeta_N^{G_N} zeta_{p^r}^G, evaluated in Q(zeta) with no p-adic input;
* the closed forms (p-1) log_p(l) / (p phi(N)) * tau(chi^-1) L(0, chi) and
  its companion with the L-invariant, evaluated in Z_{p^f}/p^r.

Exact brute force gives S = -phi(p^r) tau(chi^-1) L(0, chi): the expansion
t/(t-1) = -sum_a zeta_{a (M)}(0) t^a carries a minus sign.  Functions below
expose both the signed identity and the unsigned one so callers can see
which holds.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import _kernels as kern
from ._arith import euler_phi, is_prime, lcm
from .characters import DirichletChar, check_exceptional, teichmuller_char, theta_from_chi
from .cyclotomic import CycloElt, gauss_sum, partial_trace_p, root_of_unity, root_over_root_minus_one
from .errors import DomainError, HypothesisError, PoleError, UndeterminedError
from .lvalues import dirichlet_L_at_0, embed_cyclo, l_invariant, pair_ring, partial_zeta_0
from .padic import padic_log, teichmuller
from .unramified import UnramifiedElt

__all__ = [
    "ColemanData",
    "coleman_delta",
    "coleman_delta_symbolic",
    "trace_sum_exact",
    "trace_sum_closed_form",
    "trace_chain",
    "vanishing_branches",
    "adjustment_x",
    "adjustment_factor",
    "CupProductValue",
    "cup_ell",
    "cup_p",
    "cup_value",
    "nontriviality_threshold",
    "ratio_law_check",
    "embedding_consistency",
]


def _require_exceptional(chi, p):
    ok, reason = check_exceptional(chi, p)
    if not ok:
        raise HypothesisError(f"({chi.label}, p={p}) is not exceptional: {reason}", reason=reason)


def _point_index(G_N, e, N, pr):
    """Index c with zeta_N^{G_N} zeta_{p^r}^e = zeta_{N p^r}^c."""
    return (G_N * pr + e * N) % (N * pr)


# ------------------------------------------------------------ Coleman terms


@dataclass(frozen=True)
class ColemanData:
    G_N: int
    g_p: int
    r: int
    value: CycloElt


def _omega_value(g_p, p):
    return teichmuller_char(p).value(g_p)


def _t_over_t_minus_one(c, M):
    """zeta_M^c / (zeta_M^c - 1) exactly."""
    if c % M == 0:
        raise PoleError("t = 1")
    if gcd(c, M) == 1:
        return root_over_root_minus_one(M).galois(c)
    t = root_of_unity(M, c)
    return t * (t - 1).inverse()


def coleman_delta(G_N, g_p, N, p, r) -> CycloElt:
    """delta g evaluated at T = zeta_{p^r} - 1, closed form omega(g_p) t/(t-1)."""
    if g_p % p == 0:
        raise DomainError(f"g_p = {g_p} is not a unit mod {p}")
    pr = p**r
    e = teichmuller(g_p, p, r).value
    c = _point_index(G_N, e, N, pr)
    return _omega_value(g_p, p) * _t_over_t_minus_one(c, N * pr)


@dataclass(frozen=True)
class _PowerTerm:
    """coeff * (1+T)^exponent, the exponent known as a number and mod p^r."""

    coeff: CycloElt
    exp_value: CycloElt
    exp_residue: int


def _theta_derivative(terms):
    # (1+T) d/dT (1+T)^e = e (1+T)^e
    return [_PowerTerm(t.coeff * t.exp_value, t.exp_value, t.exp_residue) for t in terms]


def _evaluate_at_root(terms, pr):
    acc = CycloElt.rational(0)
    for t in terms:
        acc = acc + t.coeff * root_of_unity(pr, t.exp_residue)
    return acc


def coleman_delta_symbolic(G_N, g_p, N, p, r) -> CycloElt:
    """Same value from g(T) = zeta_N^{G_N} (1+T)^{omega(g_p)} - 1 by formal differentiation."""
    if g_p % p == 0:
        raise DomainError(f"g_p = {g_p} is not a unit mod {p}")
    pr = p**r
    w = _omega_value(g_p, p)
    g = [
        _PowerTerm(root_of_unity(N, G_N), w, teichmuller(g_p, p, r).value),
        _PowerTerm(CycloElt.rational(-1), CycloElt.rational(0), 0),
    ]
    den = _evaluate_at_root(g, pr)
    if den.is_zero():
        raise PoleError("g vanishes at zeta_{p^r} - 1")
    return _evaluate_at_root(_theta_derivative(g), pr) * den.inverse()


# --------------------------------------------------------------- trace sums


def trace_sum_exact(chi: DirichletChar, p, r) -> CycloElt:
    """S = sum_{G_N} chi(G_N^-1) sum_{G in (Z/p^r)^x} t/(t-1), by brute force."""
    N = chi.modulus
    if gcd(N, p) != 1:
        raise DomainError("p divides N")
    pr = p**r
    M = N * pr
    n = chi.order
    L = lcm(M, n)
    y = root_over_root_minus_one(M)
    mults, shifts = [], []
    for G_N in range(1, N):
        e_chi = chi.exponent(G_N)
        if e_chi is None:
            continue
        # chi(G_N^-1) = zeta_n^{-e}
        shift = (-e_chi * (L // n)) % L
        for G in range(1, pr):
            if G % p:
                mults.append(_point_index(G_N, G, N, pr))
                shifts.append(shift)
    vec = kern.twisted_accumulate(y.group_ring_vector(), mults, shifts, [1] * len(mults), M, L)
    return CycloElt.from_group_ring(L, vec, y.den).restrict_level(lcm(N, n))


def trace_sum_closed_form(chi: DirichletChar, p, r, signed=False) -> CycloElt:
    """phi(p^r) tau(chi^-1) L(0, chi), negated when ``signed``."""
    val = gauss_sum(chi.inverse()) * dirichlet_L_at_0(chi) * euler_phi(p**r)
    return -val if signed else val


def trace_chain(chi: DirichletChar, p, r):
    """Exact checks of each rewriting step from Coleman values to S."""
    N = chi.modulus
    pr = p**r
    units_N = [a for a in range(1, N) if gcd(a, N) == 1]
    units_p = list(range(1, p))
    units_pr = [g for g in range(1, pr) if g % p]
    prime_to_p = lcm(N, p - 1)
    routes_agree = True
    expansion_ok = True
    reindex_ok = True
    step3_total = CycloElt.rational(0)
    for G_N in units_N:
        inner4 = CycloElt.rational(0)
        for G in units_pr:
            inner4 = inner4 + _t_over_t_minus_one(_point_index(G_N, G, N, pr), N * pr)
        inner3 = CycloElt.rational(0)
        for g_p in units_p:
            closed = coleman_delta(G_N, g_p, N, p, r)
            if r == 1 or N * pr <= 200:
                routes_agree &= closed == coleman_delta_symbolic(G_N, g_p, N, p, r)
            traced = partial_trace_p(closed, prime_to_p, p, r) * _omega_value(g_p, p).inverse()
            e = teichmuller(g_p, p, r).value
            direct = CycloElt.rational(0)
            for g in units_pr:
                direct = direct + _t_over_t_minus_one(_point_index(G_N, e * g, N, pr), N * pr)
            expansion_ok &= traced == direct
            inner3 = inner3 + direct
        reindex_ok &= inner3 == inner4 * (p - 1)
        step3_total = step3_total + chi.inverse().value(G_N) * inner4
    S = trace_sum_exact(chi, p, r)
    expanded = _expanded_sum(chi, p, r)
    return {
        "coleman_routes_agree": routes_agree,
        "trace_expansion": expansion_ok,
        "reindexing": reindex_ok,
        "double_sum_matches_brute_force": step3_total == S,
        "expansion_unsigned_equal": expanded == S,
        "expansion_signed_equal": -expanded == S,
    }


def _expanded_sum(chi, p, r):
    """sum_{G_N,G} chi(G_N^-1) sum_a zeta_{a (M)}(0) t^a, with no leading minus."""
    parts = vanishing_branches(chi, p, r)
    return parts["total"]


def vanishing_branches(chi: DirichletChar, p, r):
    """Split sum_a zeta_{a (M)}(0) sum_{G_N,G} chi(G_N^-1) t^a by the divisibility of a."""
    N = chi.modulus
    pr = p**r
    M = N * pr
    n = chi.order
    L = lcm(M, n)
    stride = L // M
    pairs = []
    for G_N in range(1, N):
        e_chi = chi.exponent(G_N)
        if e_chi is not None:
            shift = (-e_chi * (L // n)) % L
            pairs.extend((_point_index(G_N, G, N, pr), shift) for G in range(1, pr) if G % p)
    branches = {"N_divides_a": [Fraction(0)] * L, "p_power_r": [Fraction(0)] * L}
    for i in range(r):
        branches[f"p_power_{i}"] = [Fraction(0)] * L
    for a in range(1, M + 1):
        if a % N == 0:
            key = "N_divides_a"
        else:
            i = 0
            while i < r and a % p ** (i + 1) == 0:
                i += 1
            key = f"p_power_{i}" if i < r else "p_power_r"
        z = partial_zeta_0(a, M)
        vec = branches[key]
        for c, shift in pairs:
            vec[((a * c) % M * stride + shift) % L] += z
    out = {key: CycloElt.from_fractions(L, vec) for key, vec in branches.items()}
    total = CycloElt.rational(0)
    for v in out.values():
        total = total + v
    out["total"] = total
    # termwise primitive-root sums sum_G zeta_{p^r}^{aG} for v_p(a) = i < r
    out["root_sums"] = {i: _root_sum_scaled(p, r, i) for i in range(r)}
    out["p_power_r_expected"] = trace_sum_closed_form(chi, p, r)
    return out


def _root_sum_scaled(p, r, i):
    pr = p**r
    vec = [0] * pr
    for G in range(1, pr):
        if G % p:
            vec[(p**i * G) % pr] += 1
    return CycloElt.from_group_ring(pr, vec)


# ---------------------------------------------------------------- cup values


def adjustment_x(N, p, r):
    """x = p_{r,N} p^r + N with p_{r,N} the inverse of p^r mod N."""
    pr = p**r
    inv = pow(pr, -1, N) if N > 1 else 0
    return inv * pr + N


def adjustment_factor(N, p, r, theta: DirichletChar, ring=None, k=None):
    """theta(x)^-1 for x = p_{r,N} p^r + N: exact root of unity, or its embedding."""
    if gcd(N, p) != 1:
        raise DomainError("p divides N")
    x = adjustment_x(N, p, r)
    val = theta.value(x).inverse()
    if ring is None:
        return val
    return embed_cyclo(val, ring, k)


@dataclass
class CupProductValue:
    q: int
    N: int
    p: int
    r: int
    chi_label: str
    value: UnramifiedElt
    valuation: int
    r0: int = None
    embedding: dict = field(default_factory=dict)
    normalizations: dict = field(default_factory=dict)
    adjustment: dict = field(default_factory=dict)
    extras: dict = field(default_factory=dict)


def nontriviality_threshold(v) -> int:
    """Smallest r with nonzero image: v_p(value) + 1."""
    val = v.value if isinstance(v, CupProductValue) else v
    if val.is_zero():
        raise UndeterminedError(
            f"value is 0 mod p^{val.k}; raise the precision", achievable=val.k
        )
    return val.valuation + 1


def _common_factors(chi, p, r, k, ring):
    N = chi.modulus
    theta = theta_from_chi(chi, p)
    tau = embed_cyclo(gauss_sum(chi.inverse()), ring, k)
    l0 = embed_cyclo(dirichlet_L_at_0(chi), ring, k)
    x = adjustment_x(N, p, r)
    literal = adjustment_factor(N, p, r, theta, ring, k)
    omega = teichmuller_char(p)
    printed = omega.embed(N, ring, k)
    adj = {
        "x": x,
        "literal": literal,
        "omega_N": printed,
        "literal_equals_omega_N": literal.agrees(printed),
    }
    return tau, l0, adj


def _finish(q, chi, p, r, core, adj, ring, extras):
    """Apply the three normalizations to core = scalar * tau * L-part, reduce to r."""
    unadjusted = core.reduce(r)
    literal = (core * adj["literal"]).reduce(r)
    printed = (core * adj["omega_N"]).reduce(r)
    out = CupProductValue(
        q=q,
        N=chi.modulus,
        p=p,
        r=r,
        chi_label=chi.label,
        value=literal,
        valuation=literal.valuation,
        embedding=ring.convention(),
        normalizations={
            "unadjusted": unadjusted,
            "adjusted_literal": literal,
            "adjusted_omega_N": printed,
        },
        adjustment={
            "x": adj["x"],
            "literal": adj["literal"].reduce(r),
            "omega_N": adj["omega_N"].reduce(r),
            "literal_equals_omega_N": adj["literal_equals_omega_N"],
        },
        extras=extras,
    )
    try:
        out.r0 = nontriviality_threshold(literal)
    except UndeterminedError:
        out.r0 = None
    return out


def cup_ell(ell, chi: DirichletChar, p, r, precision=None, ring=None) -> CupProductValue:
    """(p-1) log_p(l) / (p phi(N)) * adjustment * tau(chi^-1) L(0, chi) mod p^r."""
    N = chi.modulus
    if not is_prime(ell) or N % ell:
        raise DomainError(f"{ell} is not a prime divisor of N = {N}")
    _require_exceptional(chi, p)
    k = max(precision or r + 4, r)
    ring = ring or pair_ring(chi, p)
    tau, l0, adj = _common_factors(chi, p, r, k + 1, ring)
    log_l = padic_log(ell, k + 1, p=p)
    core = (tau * l0 * ring.from_padic(log_l)).scale(Fraction(p - 1, p * euler_phi(N)))
    extras = {"log_p_ell": log_l.reduce(k)}
    return _finish(ell, chi, p, r, core, adj, ring, extras)


def cup_p(chi: DirichletChar, p, r, precision=None, ring=None) -> CupProductValue:
    """(p-1) / (p phi(N)) * adjustment * tau(chi^-1) L-invariant L(0, chi) mod p^r."""
    _require_exceptional(chi, p)
    N = chi.modulus
    k = max(precision or r + 4, r)
    ring = ring or pair_ring(chi, p)
    linv = l_invariant(chi, p, k + 1, ring)
    tau, l0, adj = _common_factors(chi, p, r, k + 1, ring)
    # L * L(0) = L_p'(0, chi omega) is divisible by p; scale() refuses otherwise
    core = (tau * linv.value * l0).scale(Fraction(p - 1, p * euler_phi(N)))
    extras = {
        "l_invariant": linv.value.reduce(min(linv.value.k, k)),
        "l_invariant_nonzero": linv.certified_nonzero,
        "derivative": linv.derivative,
    }
    return _finish(p, chi, p, r, core, adj, ring, extras)


def cup_value(q, chi: DirichletChar, p, r, precision=None, ring=None) -> CupProductValue:
    N = chi.modulus
    if q == p:
        return cup_p(chi, p, r, precision, ring)
    if is_prime(q) and N % q == 0:
        return cup_ell(q, chi, p, r, precision, ring)
    raise DomainError(f"q = {q} does not divide N p = {N * p}")


def ratio_law_check(chi: DirichletChar, p, r, ell, precision=None):
    """cup_p * log_p(l) against cup_l * L-invariant, mod p^r."""
    ring = pair_ring(chi, p)
    cp = cup_p(chi, p, r, precision, ring)
    cl = cup_ell(ell, chi, p, r, precision, ring)
    lhs = (cp.value * ring.from_padic(cl.extras["log_p_ell"])).reduce(r)
    rhs = (cl.value * cp.extras["l_invariant"]).reduce(r)
    return lhs, rhs, lhs.agrees(rhs, r)


def embedding_consistency(chi: DirichletChar, p, r, ell, compare_at=None):
    """embed(S) (p-1) log_p(l) / (p^r phi(Np)) against the unadjusted closed form.

    Returns (lhs, rhs, unsigned_agrees, signed_agrees); the signed comparison
    negates the left side.
    """
    N = chi.modulus
    compare_at = r - 1 if compare_at is None else compare_at
    ring = pair_ring(chi, p)
    k = compare_at + r + 2
    S = embed_cyclo(trace_sum_exact(chi, p, r), ring, k)
    log_l = ring.from_padic(padic_log(ell, k, p=p))
    lhs = (S * log_l).scale(Fraction(p - 1, p**r * euler_phi(N * p)))
    rhs = cup_ell(ell, chi, p, max(compare_at, 1), precision=k, ring=ring).normalizations["unadjusted"]
    return (
        lhs,
        rhs,
        lhs.agrees(rhs, compare_at),
        (-lhs).agrees(rhs, compare_at),
    )
