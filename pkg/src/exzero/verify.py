"""Verification suites: each returns a list of named checks with pass/fail.

Every suite is a list of independent items; ``run_suite`` may evaluate them
on a thread pool, but results are always collected in item order so the
report does not depend on the thread count.
"""
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from math import gcd

from ._arith import euler_phi, factorize, lcm
from .characters import DirichletChar, enumerate_characters, teichmuller_char, theta_from_chi
from .cyclotomic import CycloElt, gauss_sum
from .eisenstein import (
    classical_coefficient,
    eisenstein_coeff,
    g_theta_series,
    specialize,
    xi_theta,
)
from .lvalues import (
    dirichlet_L_at_0,
    embed_cyclo,
    geometric_identity_check,
    kubota_leopoldt,
    l_invariant,
    lp_derivative_at_0,
    lp_interpolation_value,
    pair_ring,
    primitive_root_sum,
    scaling_identity_check,
)
from .reciprocity import (
    cup_value,
    embedding_consistency,
    ratio_law_check,
    trace_chain,
    trace_sum_closed_form,
    trace_sum_exact,
    vanishing_branches,
)

DESK = (("3:[1]", 7), ("4:[1]", 5), ("7:[3]", 11))
SUITES = ("lemma41", "reciprocity", "lp", "eisenstein")


def _check(name, anchor, passed, **detail):
    return {"name": name, "anchor": anchor, "passed": bool(passed), "detail": detail}


# ------------------------------------------------------------ partial zeta


def _geometric(max_m):
    failures = []
    count = 0
    for M in range(2, max_m + 1):
        for j in range(1, M):
            count += 1
            if not geometric_identity_check(M, j):
                failures.append([M, j])
    return _check(
        "geometric expansion t/(t-1) = -sum_a zeta_{a(M)}(0) t^a",
        "partial zeta values at s=0 expand t/(t-1)",
        not failures,
        checked=count,
        failures=failures,
    )


def _scaling(bound=200):
    failures = []
    count = 0
    for p in (2, 3, 5, 7, 11, 13):
        for N in range(2, bound + 1):
            if N % p == 0:
                continue
            r = 1
            while N * p**r <= bound:
                for a in range(1, N):
                    for n in (0, 1, 2):
                        count += 1
                        if not scaling_identity_check(a, N, p, r, n):
                            failures.append([a, N, p, r, n])
                r += 1
    return _check(
        "scaling zeta_{a'p^r (Np^r)}(-n) = p^{rn} zeta_{a'(N)}(-n)",
        "partial zeta scaling for a = a'p^r",
        not failures,
        checked=count,
        bound=bound,
        failures=failures,
    )


def _root_sums():
    rows = []
    ok = True
    for p in (5, 7, 11):
        for r in (1, 2, 3):
            got = primitive_root_sum(p, r)
            want = -1 if r == 1 else 0
            ok &= got == want
            rows.append({"p": p, "r": r, "sum": got})
    return _check(
        "sum of primitive p^r-th roots of unity is -1 (r=1) or 0",
        "primitive root-of-unity sum",
        ok,
        cases=rows,
    )


def partial_zeta_items(max_m=30):
    return [lambda: _geometric(max_m), _scaling, _root_sums]


# -------------------------------------------------------------- reciprocity


def _trace_identity(label, p, r):
    chi = DirichletChar.from_label(label)
    S = trace_sum_exact(chi, p, r)
    signed = S == trace_sum_closed_form(chi, p, r, signed=True)
    unsigned = S == trace_sum_closed_form(chi, p, r)
    return _check(
        f"trace sum S = -phi(p^r) tau(chi^-1) L(0,chi) for {label}, p={p}, r={r}",
        "double Galois sum against Gauss sum times L(0,chi)",
        signed,
        trace_sum=S,
        unsigned_identity_holds=unsigned,
        note="brute force carries the minus sign of the geometric expansion",
    )


def _chain(label, p, r):
    chi = DirichletChar.from_label(label)
    flags = trace_chain(chi, p, r)
    steps = (
        "coleman_routes_agree",
        "trace_expansion",
        "reindexing",
        "double_sum_matches_brute_force",
        "expansion_signed_equal",
    )
    return _check(
        f"rewriting chain from Coleman values to S for {label}, p={p}, r={r}",
        "Coleman delta, local trace, reindexing, geometric expansion",
        all(flags[s] for s in steps),
        steps=flags,
        unsigned_expansion_holds=flags["expansion_unsigned_equal"],
    )


def _branches(label, p, r):
    chi = DirichletChar.from_label(label)
    parts = vanishing_branches(chi, p, r)
    n_zero = parts["N_divides_a"].is_zero()
    low = CycloElt.rational(0)
    for i in range(r):
        low = low + parts[f"p_power_{i}"]
    top_ok = parts["p_power_r"] == parts["p_power_r_expected"]
    termwise = {str(i): parts["root_sums"][i] for i in range(r)}
    return _check(
        f"case split of the expanded sum for {label}, p={p}, r={r}",
        "N | a branch, p^i | a branches (i < r), p^r | a branch",
        n_zero and low.is_zero() and top_ok,
        n_branch_zero=n_zero,
        low_branches_zero_in_aggregate=low.is_zero(),
        top_branch_matches=top_ok,
        termwise_root_sums=termwise,
        termwise_vanishing=all(v.is_zero() for v in parts["root_sums"].values()),
    )


def _cups(label, p):
    chi = DirichletChar.from_label(label)
    N = chi.modulus
    qs = [q for q, _ in factorize(N)] + [p]
    ok = True
    rows = []
    for q in qs:
        vals = [cup_value(q, chi, p, r) for r in (1, 2, 3)]
        integral = all(v.value.valuation >= 0 for v in vals)
        compat = vals[2].value.agrees(vals[1].value, 2) and vals[1].value.agrees(vals[0].value, 1)
        ok &= integral and compat
        rows.append({"q": q, "r3": vals[2].value, "r0": vals[2].r0, "compatible": compat})
    return _check(
        f"cup values integral and compatible r=3 -> 2 -> 1 for {label}, p={p}",
        "integrality and independence of r",
        ok,
        cases=rows,
    )


def _ratio(label, p):
    chi = DirichletChar.from_label(label)
    rows = []
    ok = True
    for ell, _ in factorize(chi.modulus):
        lhs, rhs, agree = ratio_law_check(chi, p, 2, ell)
        ok &= agree
        rows.append({"ell": ell, "lhs": lhs, "rhs": rhs})
    return _check(
        f"cup_p log_p(l) = cup_l L-invariant for {label}, p={p}, r=2",
        "ratio of U_p - 1 to U_l - 1",
        ok,
        cases=rows,
    )


def _embedding(label, p, r):
    chi = DirichletChar.from_label(label)
    ell = factorize(chi.modulus)[0][0]
    lhs, rhs, unsigned, signed = embedding_consistency(chi, p, r, ell)
    return _check(
        f"embedded S times prefactor = -(closed form) mod p^{r - 1} for {label}, p={p}",
        "trace side against closed side under one embedding",
        signed,
        lhs=lhs,
        rhs=rhs,
        unsigned_agrees=unsigned,
    )


def reciprocity_items():
    items = []
    for label, p in DESK:
        for r in (1, 2):
            items.append(lambda label=label, p=p, r=r: _trace_identity(label, p, r))
    items.append(lambda: _chain("3:[1]", 7, 1))
    items.append(lambda: _branches("3:[1]", 7, 2))
    for label, p in DESK:
        items.append(lambda label=label, p=p: _cups(label, p))
        items.append(lambda label=label, p=p: _ratio(label, p))
    items.append(lambda: _embedding("3:[1]", 7, 3))
    return items


# ----------------------------------------------------------------------- lp


def _interpolation(label, p, k=8):
    chi = DirichletChar.from_label(label)
    ring = pair_ring(chi, p)
    theta = theta_from_chi(chi, p)
    omega = teichmuller_char(p)
    rows = []
    ok = True
    for name, psi in (("chi*omega", theta), ("theta*omega^2", theta * omega**2)):
        for n in range(1, 6):
            a = kubota_leopoldt(1 - n, psi, p, k, ring)
            b = lp_interpolation_value(n, psi, p, k, ring)
            agree = (a - b).valuation >= k - 2
            ok &= agree
            rows.append({"psi": name, "k'": n, "digits": (a - b).valuation})
    return _check(
        f"L_p(1-k', psi) against Euler-corrected Bernoulli values for {label}, p={p}",
        "interpolation property of the Kubota-Leopoldt function",
        ok,
        precision=k,
        cases=rows,
    )


def _trivial_zero(label, p, k=8):
    chi = DirichletChar.from_label(label)
    ring = pair_ring(chi, p)
    theta = theta_from_chi(chi, p)
    at0 = kubota_leopoldt(0, theta, p, k, ring)
    deriv = lp_derivative_at_0(chi, p, k, ring)
    zero_ok = at0.valuation >= k - 2
    deriv_ok = 1 <= deriv.valuation < k - 2
    m = k // 2
    other = lp_derivative_at_0(chi, p, k, ring, m=m + 1)
    steps_agree = deriv.agrees(other, k - m - 1)
    return _check(
        f"trivial zero and simple zero at s=0 for {label}, p={p}",
        "L_p(0, chi omega) = 0 and L_p'(0, chi omega) a nonzero multiple of p",
        zero_ok and deriv_ok and steps_agree,
        value_at_0=at0,
        derivative=deriv,
        derivative_valuation=deriv.valuation,
        step_sizes_agree=steps_agree,
    )


def _gross(label, p, k=6):
    chi = DirichletChar.from_label(label)
    ring = pair_ring(chi, p)
    res = l_invariant(chi, p, k, ring)
    l0 = embed_cyclo(res.l0, ring, k)
    ok = (res.value * l0).agrees(res.derivative, res.precision) and res.certified_nonzero
    return _check(
        f"L-invariant times L(0,chi) = L_p'(0,chi omega) for {label}, p={p}",
        "derivative at the trivial zero factors through L(0,chi)",
        ok,
        l_invariant=res.value,
        l0=res.l0,
    )


def _two_paths(bound=30):
    failures = []
    count = 0
    for M in range(1, bound + 1):
        for chi in enumerate_characters(M):
            if chi.is_trivial():
                continue
            count += 1
            try:
                dirichlet_L_at_0(chi)
            except ArithmeticError:
                failures.append(chi.label)
    return _check(
        "L(0,chi) by partial zetas equals -B_{1,chi}",
        "two evaluations of L(0,chi)",
        not failures,
        checked=count,
        failures=failures,
    )


def _gauss_norms(bound=30):
    failures = []
    count = 0
    for M in range(3, bound + 1):
        for chi in enumerate_characters(M):
            if not chi.is_primitive():
                continue
            count += 1
            sign = -1 if chi.is_odd() else 1
            if gauss_sum(chi) * gauss_sum(chi.inverse()) != sign * M:
                failures.append(chi.label)
    return _check(
        "tau(chi) tau(chi^-1) = chi(-1) N",
        "Gauss sum norm",
        not failures,
        checked=count,
        failures=failures,
    )


def lp_items():
    items = []
    for label, p in DESK:
        items.append(lambda label=label, p=p: _interpolation(label, p))
        items.append(lambda label=label, p=p: _trivial_zero(label, p))
        items.append(lambda label=label, p=p: _gross(label, p))
    items.append(_two_paths)
    items.append(_gauss_norms)
    return items


# --------------------------------------------------------------- eisenstein


def _specializations(label, p, k=6, max_n=50):
    chi = DirichletChar.from_label(label)
    theta = theta_from_chi(chi, p)
    ring = pair_ring(chi, p)
    failures = []
    for n in range(1, max_n + 1):
        A = eisenstein_coeff(n, theta, p, k, k, ring)
        for w in (2, 3, 4):
            if not specialize(A, w).agrees(classical_coefficient(n, theta, p, w, k, ring), k):
                failures.append([n, w])
    return _check(
        f"weight 2..4 specializations of A_n, n <= {max_n}, for {label}, p={p}",
        "specialization of the Lambda-adic Eisenstein family",
        not failures,
        precision=k,
        failures=failures,
    )


def _constant_term(label, p, k=6, D=4):
    chi = DirichletChar.from_label(label)
    theta = theta_from_chi(chi, p)
    ring = pair_ring(chi, p)
    psi = theta * teichmuller_char(p) ** 2
    A0 = eisenstein_coeff(0, theta, p, D, k, ring)
    ok = True
    rows = []
    for w in (2, 3, 4):
        got = specialize(A0, w)
        want = kubota_leopoldt(1 - w, psi, p, k, ring).scale(Fraction(1, 2))
        ok &= got.agrees(want, k)
        rows.append({"weight": w, "value": got})
    G = g_theta_series(theta, p, D, k, ring)
    T = G.kappa ** (D + 1) - 1
    held = G.evaluate(T)
    held_ok = held.agrees(kubota_leopoldt(-D - 2, psi, p, k, ring), held.k)
    return _check(
        f"constant term and held-out node for {label}, p={p}",
        "G_theta interpolates L_p(-s-1, theta omega^2)",
        ok and held_ok,
        cases=rows,
        held_out_digits=held.k,
    )


def _xi(label, p, k=6, D=5):
    chi = DirichletChar.from_label(label)
    theta = theta_from_chi(chi, p)
    ring = pair_ring(chi, p)
    X = xi_theta(theta, p, D, k, ring)
    T = X.kappa - 1
    val = X.evaluate(T)
    der = X.derivative_at(T)
    ok = val.is_zero() and val.k >= 4 and not der.is_zero()
    return _check(
        f"xi_theta has a simple zero at T = kappa - 1 for {label}, p={p}",
        "trivial zero of xi_theta",
        ok,
        value=val,
        derivative=der,
    )


def _multiplicative(label, p, k=6, D=6, bound=12):
    chi = DirichletChar.from_label(label)
    theta = theta_from_chi(chi, p)
    ring = pair_ring(chi, p)
    failures = []
    count = 0
    for m in range(2, bound + 1):
        for n in range(m + 1, bound + 1):
            if gcd(m, n) != 1:
                continue
            count += 1
            prod = eisenstein_coeff(m, theta, p, D, k, ring) * eisenstein_coeff(n, theta, p, D, k, ring)
            direct = eisenstein_coeff(m * n, theta, p, D, k, ring)
            if not all(a.agrees(b, k) for a, b in zip(prod.coeffs, direct.coeffs)):
                failures.append([m, n])
    return _check(
        f"A_m A_n = A_mn for coprime m, n <= {bound}",
        "multiplicativity of divisor sums",
        not failures,
        checked=count,
        failures=failures,
    )


def eisenstein_items():
    return [
        lambda: _specializations("3:[1]", 7),
        lambda: _constant_term("3:[1]", 7),
        lambda: _xi("3:[1]", 7),
        lambda: _multiplicative("3:[1]", 7),
    ]


# -------------------------------------------------------------------- driver


def suite_items(name, max_m=30):
    if name == "lemma41":
        return partial_zeta_items(max_m)
    if name == "reciprocity":
        return reciprocity_items()
    if name == "lp":
        return lp_items()
    if name == "eisenstein":
        return eisenstein_items()
    raise KeyError(name)


def run_suite(name, max_m=30, threads=1):
    items = suite_items(name, max_m)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(lambda f: f(), items))
    return [f() for f in items]
