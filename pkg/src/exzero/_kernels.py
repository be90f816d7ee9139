"""Integer kernels behind exact cyclotomic arithmetic.

Elements of Q(zeta_M) are handled as integer vectors: either in the group
ring Z[x]/(x^M - 1) (length M) or in canonical form modulo Phi_M (length
phi(M)).  The hot loops are reduction modulo Phi_M, cyclic convolution,
Galois permutation and the twisted Galois sums used by trace computations.

Two int64 backends implement them:

* ``numba``: ``@njit`` loops (default when numba imports),
* ``numpy``: vectorised numpy code.

Select with ``EXZERO_BACKEND=numba|numpy`` or :func:`use_backend`.  Every
entry point first bounds the magnitude of its result; when int64 could
overflow the call runs on Python integers instead, whichever backend is set.
"""
import os
import threading
from contextlib import contextmanager
from functools import lru_cache
from math import gcd

import numpy as np

from ._arith import euler_phi
from ._poly import cyclotomic_polynomial

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

INT64_SAFE = 2**62
# reduction tables larger than this many entries are not materialised
MAX_TABLE_ENTRIES = 8_000_000

_state = threading.local()


def _default_backend():
    name = os.environ.get("EXZERO_BACKEND", "").strip().lower()
    if name in ("numba", "numpy"):
        if name == "numba" and not HAVE_NUMBA:
            return "numpy"
        return name
    return "numba" if HAVE_NUMBA else "numpy"


_DEFAULT = _default_backend()


def backend():
    return getattr(_state, "backend", _DEFAULT)


@contextmanager
def use_backend(name):
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not importable")
    prev = backend()
    _state.backend = name
    try:
        yield
    finally:
        _state.backend = prev


# ---------------------------------------------------------------- level data


class LevelData:
    """Per-level constants: Phi_M and the table of x^e mod Phi_M, e >= phi(M)."""

    def __init__(self, M):
        self.M = M
        self.phi = euler_phi(M)
        self.poly = cyclotomic_polynomial(M)
        self.poly_nz = tuple((i, c) for i, c in enumerate(self.poly[:-1]) if c)
        rows = M - self.phi
        self.table = None
        self.table_bound = None
        if rows * self.phi <= MAX_TABLE_ENTRIES:
            self._build_table(rows)

    def _build_table(self, rows):
        phi = self.phi
        if rows == 0:
            self.table = np.zeros((0, phi), dtype=np.int64)
            self.table_bound = 1
            return
        low = self.poly[:phi]
        cur = [-c for c in low]
        out = [cur]
        for _ in range(rows - 1):
            top = cur[-1]
            nxt = [0] + cur[:-1]
            if top:
                nxt = [a - top * c for a, c in zip(nxt, low)]
            out.append(nxt)
            cur = nxt
        peak = max(abs(c) for row in out for c in row)
        if peak >= 2**31:
            return
        self.table = np.array(out, dtype=np.int64).reshape(rows, phi)
        self.table_bound = 1 + int(np.abs(self.table).sum(axis=0).max())


@lru_cache(maxsize=256)
def level_data(M):
    return LevelData(M)


def _maxabs(vec):
    return max((abs(v) for v in vec), default=0)


# ----------------------------------------------------------- numba kernels

if HAVE_NUMBA:

    @njit(cache=True)
    def _reduce_nb(vec, table):
        phi = table.shape[1]
        out = vec[:phi].copy()
        for e in range(table.shape[0]):
            c = vec[phi + e]
            if c != 0:
                for j in range(phi):
                    out[j] += c * table[e, j]
        return out

    @njit(cache=True)
    def _convolve_nb(a, b, M):
        out = np.zeros(M, dtype=np.int64)
        for i in range(a.shape[0]):
            ai = a[i]
            if ai == 0:
                continue
            for j in range(b.shape[0]):
                bj = b[j]
                if bj != 0:
                    out[(i + j) % M] += ai * bj
        return out

    @njit(cache=True)
    def _permute_nb(vec, j, M):
        out = np.zeros(M, dtype=np.int64)
        for i in range(vec.shape[0]):
            out[(i * j) % M] += vec[i]
        return out

    @njit(cache=True)
    def _twisted_nb(y, mults, shifts, weights, M, L):
        out = np.zeros(L, dtype=np.int64)
        stride = L // M
        for t in range(mults.shape[0]):
            m = mults[t]
            s = shifts[t]
            w = weights[t]
            for i in range(y.shape[0]):
                yi = y[i]
                if yi != 0:
                    out[(((i * m) % M) * stride + s) % L] += w * yi
        return out


# ----------------------------------------------------------- numpy kernels


def _reduce_np(vec, table):
    phi = table.shape[1]
    return vec[:phi] + vec[phi:] @ table


def _convolve_np(a, b, M):
    c = np.convolve(a, b)
    out = np.zeros(M, dtype=np.int64)
    n = min(M, c.shape[0])
    out[:n] += c[:n]
    rest = c[M:]
    while rest.shape[0]:
        n = min(M, rest.shape[0])
        out[:n] += rest[:n]
        rest = rest[M:]
    return out


def _permute_np(vec, j, M):
    out = np.zeros(M, dtype=np.int64)
    idx = (np.arange(vec.shape[0], dtype=np.int64) * j) % M
    np.add.at(out, idx, vec)
    return out


def _twisted_np(y, mults, shifts, weights, M, L):
    out = np.zeros(L, dtype=np.int64)
    stride = L // M
    base = np.arange(y.shape[0], dtype=np.int64)
    for m, s, w in zip(mults.tolist(), shifts.tolist(), weights.tolist()):
        idx = (((base * m) % M) * stride + s) % L
        # i -> i*m mod M is injective for gcd(m, M) = 1
        out[idx] += w * y
    return out


# ------------------------------------------------------ exact Python paths


def _reduce_py(vec, data):
    phi = data.phi
    a = list(vec)
    for e in range(len(a) - 1, phi - 1, -1):
        c = a[e]
        if c:
            a[e] = 0
            base = e - phi
            for i, pc in data.poly_nz:
                a[base + i] -= c * pc
    return a[:phi] + [0] * max(0, phi - len(a))


def _convolve_py(a, b, M):
    out = [0] * M
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[(i + j) % M] += ai * bj
    return out


def _twisted_py(y, mults, shifts, weights, M, L):
    out = [0] * L
    stride = L // M
    for m, s, w in zip(mults, shifts, weights):
        for i, yi in enumerate(y):
            if yi:
                out[(((i * m) % M) * stride + s) % L] += w * yi
    return out


# ----------------------------------------------------------- entry points


def reduce_mod_cyclotomic(vec, M):
    """Canonical form (length phi(M)) of a group-ring vector of length <= M."""
    data = level_data(M)
    if len(vec) < M:
        vec = list(vec) + [0] * (M - len(vec))
    if data.table is not None and _maxabs(vec) * data.table_bound < INT64_SAFE:
        arr = np.asarray(vec, dtype=np.int64)
        if backend() == "numba":
            return _reduce_nb(arr, data.table).tolist()
        return _reduce_np(arr, data.table).tolist()
    return _reduce_py(vec, data)


def cyclic_convolve(a, b, M):
    """Product of two vectors in Z[x]/(x^M - 1)."""
    bound = _maxabs(a) * _maxabs(b) * max(1, min(len(a), len(b)))
    if bound < INT64_SAFE:
        aa = np.asarray(a, dtype=np.int64)
        bb = np.asarray(b, dtype=np.int64)
        if backend() == "numba":
            return _convolve_nb(aa, bb, M).tolist()
        return _convolve_np(aa, bb, M).tolist()
    return _convolve_py(a, b, M)


def galois_permute(vec, j, M):
    """Image of a group-ring vector under x -> x^j (gcd(j, M) = 1)."""
    if _maxabs(vec) < INT64_SAFE:
        arr = np.asarray(vec, dtype=np.int64)
        if backend() == "numba":
            return _permute_nb(arr, j % M, M).tolist()
        return _permute_np(arr, j % M, M).tolist()
    out = [0] * M
    for i, v in enumerate(vec):
        out[(i * j) % M] += v
    return out


def twisted_accumulate(y, mults, shifts, weights, M, L):
    """Sum_t w_t * x^{s_t} * sigma_{m_t}(y) in Z[x]/(x^L - 1), each m_t a unit mod M.

    ``y`` is a vector at level M (entries for x^0..x^{len(y)-1}); it is
    spread to level L = M * stride before the shift by x^{s_t}.
    """
    if L % M:
        raise ValueError("L must be a multiple of M")
    if any(gcd(m, M) != 1 for m in set(mults)):
        raise ValueError("multipliers must be units mod M")
    bound = _maxabs(y) * sum(abs(w) for w in weights)
    if bound < INT64_SAFE:
        yy = np.asarray(y, dtype=np.int64)
        mm = np.asarray(mults, dtype=np.int64) % M
        ss = np.asarray(shifts, dtype=np.int64) % L
        ww = np.asarray(weights, dtype=np.int64)
        if backend() == "numba":
            return _twisted_nb(yy, mm, ss, ww, M, L).tolist()
        return _twisted_np(yy, mm, ss, ww, M, L).tolist()
    return _twisted_py(list(y), list(mults), list(shifts), list(weights), M, L)
