"""Pure-Python versions of the combinatorial kernels.

Monomials of degree ``p`` over ``d`` letters are encoded base ``d`` with
the first letter most significant.  The braiding is passed as two flat
tables: ``lam_first[i*d + j], lam_second[i*d + j]`` is the image of the
letter pair ``(i, j)``.  The compiled module ``_kernels`` exposes the same
functions with the same results.
"""

from __future__ import annotations

import numpy as np

__all__ = ["braid_orbits", "antisym_block", "antisymmetrize"]


def _decode(code, d, p):
    out = [0] * p
    for i in range(p - 1, -1, -1):
        code, out[i] = divmod(code, d)
    return tuple(out)


def _encode(mono, d):
    code = 0
    for x in mono:
        code = code * d + x
    return code


def braid_orbits(lam_first, lam_second, inv_first, inv_second, d, p):
    """Label every degree-``p`` monomial with the index of its braid orbit.

    Orbits are numbered in order of their lex-smallest monomial.
    """
    n = d ** p
    labels = np.full(n, -1, dtype=np.int32)
    lf, ls = list(lam_first), list(lam_second)
    jf, js = list(inv_first), list(inv_second)
    pw = [d ** (p - 1 - k) for k in range(p)]
    next_label = 0
    for start in range(n):
        if labels[start] >= 0:
            continue
        labels[start] = next_label
        stack = [start]
        while stack:
            code = stack.pop()
            mono = _decode(code, d, p)
            for k in range(p - 1):
                a, b = mono[k], mono[k + 1]
                idx = a * d + b
                base = code - a * pw[k] - b * pw[k + 1]
                for x, y in ((lf[idx], ls[idx]), (jf[idx], js[idx])):
                    nxt = base + x * pw[k] + y * pw[k + 1]
                    if labels[nxt] < 0:
                        labels[nxt] = next_label
                        stack.append(nxt)
        next_label += 1
    return labels


def antisymmetrize(lam_first, lam_second, d, mono, memo=None):
    """Braided antisymmetrizer applied to one monomial, as ``{mono: int}``.

    Uses the factorization ``A_p = (A_{p-1} x 1) (1 - s_{p-1} + s_{p-1}s_{p-2} - ...)``
    where each shuffle term braids one letter to the last slot.
    """
    if memo is None:
        memo = {}
    return _antisym(tuple(mono), lam_first, lam_second, d, memo)


def _antisym(mono, lf, ls, d, memo):
    p = len(mono)
    if p <= 1:
        return {mono: 1}
    hit = memo.get(mono)
    if hit is not None:
        return hit
    terms = [(mono, 1)]
    for j in range(p - 2, -1, -1):
        cur = list(mono)
        sign = 1
        for k in range(j, p - 1):
            idx = cur[k] * d + cur[k + 1]
            cur[k], cur[k + 1] = lf[idx], ls[idx]
            sign = -sign
        terms.append((tuple(cur), sign))
    out = {}
    for t, sign in terms:
        last = (t[-1],)
        for pre, v in _antisym(t[:-1], lf, ls, d, memo).items():
            key = pre + last
            out[key] = out.get(key, 0) + sign * v
    out = {k: v for k, v in out.items() if v}
    memo[mono] = out
    return out


def antisym_block(lam_first, lam_second, d, p, codes, local):
    """Antisymmetrizer restricted to one braid orbit.

    ``codes`` lists the orbit's monomial codes and ``local[code]`` gives a
    code's position in that list.  Returns ``(rows, cols, vals)`` int64
    arrays: source ``codes[rows[k]]`` maps onto ``codes[cols[k]]`` with
    integer weight ``vals[k]``.
    """
    lf, ls = list(lam_first), list(lam_second)
    memo = {}
    rows, cols, vals = [], [], []
    for r, code in enumerate(codes):
        image = _antisym(_decode(int(code), d, p), lf, ls, d, memo)
        for mono, v in sorted(image.items()):
            rows.append(r)
            cols.append(int(local[_encode(mono, d)]))
            vals.append(v)
    order = np.lexsort((np.asarray(cols, dtype=np.int64), np.asarray(rows, dtype=np.int64)))
    return (
        np.asarray(rows, dtype=np.int64)[order],
        np.asarray(cols, dtype=np.int64)[order],
        np.asarray(vals, dtype=np.int64)[order],
    )
