"""Hot inner loops.

Each kernel has a numba implementation and a vectorised numpy fallback with
the same signature.  The active one is chosen by ``ACAUSAL_QED_NUMBA`` (see
:mod:`acausal_qed._accel`) or per call through ``backend=``.

Both backends split the outer index into fixed chunks, sum each chunk
independently and reduce the partial sums in chunk order, so results are
reproducible bit for bit for a given backend and chunk size.
"""
from __future__ import annotations

import numpy as np

from ._accel import njit, resolve_backend

DEFAULT_CHUNK = 256


def _chunk_bounds(m, chunk):
    starts = np.arange(0, m, chunk, dtype=np.int64)
    stops = np.minimum(starts + chunk, m)
    return starts, stops


# --------------------------------------------------------------------------
# translation-invariant double sum over a cubic lattice
# --------------------------------------------------------------------------


@njit(cache=True)
def _lattice_pair_partials_nb(idx, a, b, table, starts, stops):
    m = idx.shape[0]
    out = np.zeros(starts.shape[0], dtype=np.complex128)
    for c in range(starts.shape[0]):
        acc = 0j
        for i in range(starts[c], stops[c]):
            a0 = a[0, i].conjugate()
            a1 = a[1, i].conjugate()
            a2 = a[2, i].conjugate()
            xi = idx[i, 0]
            yi = idx[i, 1]
            zi = idx[i, 2]
            inner = 0j
            for j in range(m):
                w = table[abs(xi - idx[j, 0]), abs(yi - idx[j, 1]), abs(zi - idx[j, 2])]
                inner += w * (a0 * b[0, j] + a1 * b[1, j] + a2 * b[2, j])
            acc += inner
        out[c] = acc
    return out


def _lattice_pair_partials_np(idx, a, b, table, starts, stops):
    out = np.zeros(starts.shape[0], dtype=np.complex128)
    bt = b.T
    for c in range(starts.shape[0]):
        sl = slice(starts[c], stops[c])
        d = np.abs(idx[sl, None, :] - idx[None, :, :])
        w = table[d[..., 0], d[..., 1], d[..., 2]]
        t = w @ bt
        out[c] = np.sum(a[:, sl].T.conj() * t)
    return out


def lattice_pair_sum(a, b, table, chunk=DEFAULT_CHUNK, backend=None, return_partials=False):
    """``sum_ij conj(a_i) . b_j table[|i-j|]`` over all node pairs of an n^3 grid.

    ``a`` and ``b`` have shape ``(3, n, n, n)``; ``table`` has shape ``(n, n, n)``
    and is indexed by the absolute index offset along each axis, so
    ``table[0, 0, 0]`` is the self-pair weight.
    """
    a = np.ascontiguousarray(np.asarray(a, dtype=np.complex128).reshape(3, -1))
    b = np.ascontiguousarray(np.asarray(b, dtype=np.complex128).reshape(3, -1))
    table = np.ascontiguousarray(table, dtype=np.float64)
    n = table.shape[0]
    idx = np.indices((n, n, n)).reshape(3, -1).T.astype(np.int64).copy()
    if a.shape[1] != idx.shape[0] or b.shape[1] != idx.shape[0]:
        raise ValueError("field arrays do not match the lattice table")
    starts, stops = _chunk_bounds(idx.shape[0], int(chunk))
    if resolve_backend(backend) == "numba":
        partials = _lattice_pair_partials_nb(idx, a, b, table, starts, stops)
    else:
        partials = _lattice_pair_partials_np(idx, a, b, table, starts, stops)
    total = 0j
    for p in partials:
        total += p
    if return_partials:
        return complex(total), partials
    return complex(total)


# --------------------------------------------------------------------------
# 1D tensor-product sums for the line action
# --------------------------------------------------------------------------


@njit(cache=True)
def _log_displaced_nb(wa, za, wb, zb, b, starts, stops):
    out = np.zeros(starts.shape[0])
    b2 = b * b
    for c in range(starts.shape[0]):
        acc = 0.0
        for i in range(starts[c], stops[c]):
            inner = 0.0
            for j in range(zb.shape[0]):
                x = za[i] - zb[j]
                inner += wb[j] * np.log(abs(b2 / (x * x) - 1.0))
            acc += wa[i] * inner
        out[c] = acc
    return out


def _log_displaced_np(wa, za, wb, zb, b, starts, stops):
    out = np.zeros(starts.shape[0])
    b2 = b * b
    for c in range(starts.shape[0]):
        sl = slice(starts[c], stops[c])
        x = za[sl, None] - zb[None, :]
        f = np.log(np.abs(b2 / (x * x) - 1.0))
        out[c] = wa[sl] @ (f @ wb)
    return out


@njit(cache=True)
def _wightman_combo_nb(wa, za, wb, zb, b, lam, starts, stops):
    out = np.zeros(starts.shape[0])
    for c in range(starts.shape[0]):
        acc = 0.0
        for i in range(starts[c], stops[c]):
            inner = 0.0
            for j in range(zb.shape[0]):
                x = za[i] - zb[j]
                inner += wb[j] * (
                    2.0 * np.log(lam / abs(x))
                    - np.log(lam / abs(x - b))
                    - np.log(lam / abs(x + b))
                )
            acc += wa[i] * inner
        out[c] = acc
    return out


def _wightman_combo_np(wa, za, wb, zb, b, lam, starts, stops):
    out = np.zeros(starts.shape[0])
    for c in range(starts.shape[0]):
        sl = slice(starts[c], stops[c])
        x = za[sl, None] - zb[None, :]
        f = 2.0 * np.log(lam / np.abs(x)) - np.log(lam / np.abs(x - b)) - np.log(lam / np.abs(x + b))
        out[c] = wa[sl] @ (f @ wb)
    return out


def _reduce(partials):
    total = 0.0
    for p in partials:
        total += p
    return float(total)


def log_displaced_sum(wa, za, wb, zb, b, chunk=DEFAULT_CHUNK, backend=None):
    """``sum_ij wa_i wb_j ln|b^2 / (za_i - zb_j)^2 - 1|``."""
    wa, za, wb, zb = (np.ascontiguousarray(v, dtype=np.float64) for v in (wa, za, wb, zb))
    starts, stops = _chunk_bounds(za.shape[0], int(chunk))
    if resolve_backend(backend) == "numba":
        return _reduce(_log_displaced_nb(wa, za, wb, zb, float(b), starts, stops))
    return _reduce(_log_displaced_np(wa, za, wb, zb, float(b), starts, stops))


def wightman_combo_sum(wa, za, wb, zb, b, lambda_reg, chunk=DEFAULT_CHUNK, backend=None):
    """``sum_ij wa_i wb_j [2 L(x) - L(x-b) - L(x+b)]`` with ``L(x) = ln|Lambda/x|``.

    This is the regulated combination before the regulator is cancelled
    analytically; callers are responsible for keeping every ``|x|`` below
    ``lambda_reg``.
    """
    wa, za, wb, zb = (np.ascontiguousarray(v, dtype=np.float64) for v in (wa, za, wb, zb))
    starts, stops = _chunk_bounds(za.shape[0], int(chunk))
    if resolve_backend(backend) == "numba":
        return _reduce(_wightman_combo_nb(wa, za, wb, zb, float(b), float(lambda_reg), starts, stops))
    return _reduce(_wightman_combo_np(wa, za, wb, zb, float(b), float(lambda_reg), starts, stops))
