# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled braid-orbit and antisymmetrizer kernels.

Same contracts as ``bicalc._kernels_py``; see there for the encoding.
"""

import numpy as np
cimport numpy as cnp
from libc.string cimport memcpy
from libcpp.vector cimport vector
from libcpp.pair cimport pair
from libcpp.algorithm cimport sort

cnp.import_array()


def braid_orbits(lam_first, lam_second, inv_first, inv_second, int d, int p):
    cdef cnp.ndarray[cnp.int32_t, ndim=1] lf = np.ascontiguousarray(lam_first, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] ls = np.ascontiguousarray(lam_second, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] jf = np.ascontiguousarray(inv_first, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] js = np.ascontiguousarray(inv_second, dtype=np.int32)
    cdef long long n = 1
    cdef int k
    for k in range(p):
        n *= d
    labels_arr = np.full(n, -1, dtype=np.int32)
    cdef int[::1] labels = labels_arr
    cdef long long[::1] pw = np.array([d ** (p - 1 - i) for i in range(p)], dtype=np.int64)
    cdef vector[long long] stack
    cdef long long start, code, base, nxt
    cdef int a, b, idx, t, next_label = 0
    cdef int x[2]
    cdef int y[2]
    for start in range(n):
        if labels[start] >= 0:
            continue
        labels[start] = next_label
        stack.push_back(start)
        while stack.size():
            code = stack.back()
            stack.pop_back()
            for k in range(p - 1):
                a = <int>((code // pw[k]) % d)
                b = <int>((code // pw[k + 1]) % d)
                idx = a * d + b
                base = code - a * pw[k] - b * pw[k + 1]
                x[0] = lf[idx]; y[0] = ls[idx]
                x[1] = jf[idx]; y[1] = js[idx]
                for t in range(2):
                    nxt = base + x[t] * pw[k] + y[t] * pw[k + 1]
                    if labels[nxt] < 0:
                        labels[nxt] = next_label
                        stack.push_back(nxt)
        next_label += 1
    return labels_arr


ctypedef pair[long long, long long] Term
ctypedef vector[Term] Image


cdef void _shuffle_terms(const int* mono, int q, int d, const int* lf, const int* ls,
                         int* out, int* signs) noexcept nogil:
    """The q shuffle terms of ``mono``: letter j braided to the last slot.

    Term ``t`` occupies ``out[t*q : (t+1)*q]``; term 0 is ``mono`` itself.
    """
    cdef int t, j, k, idx, tmp, s
    cdef int* cur
    memcpy(out, mono, q * sizeof(int))
    signs[0] = 1
    t = 1
    for j in range(q - 2, -1, -1):
        cur = out + t * q
        memcpy(cur, mono, q * sizeof(int))
        s = 1
        for k in range(j, q - 1):
            idx = cur[k] * d + cur[k + 1]
            tmp = lf[idx]
            cur[k + 1] = ls[idx]
            cur[k] = tmp
            s = -s
        signs[t] = s
        t += 1


cdef void _build_tables(int d, int top, const int* lf, const int* ls,
                        vector[vector[Image]]& T) noexcept nogil:
    """``T[q][code]`` = antisymmetrizer image of every monomial of degree q <= top."""
    cdef int q, i, t
    cdef long long n, code, c, pre, nc, v
    cdef vector[long long] acc
    cdef vector[char] mark
    cdef vector[long long] touched
    cdef vector[int] mono, terms, signs
    cdef Py_ssize_t u
    T.resize(top + 1)
    T[1].resize(d)
    for i in range(d):
        T[1][i].push_back(Term(i, 1))
    n = d
    for q in range(2, top + 1):
        n *= d
        T[q].resize(n)
        acc.assign(n, 0)
        mark.assign(n, 0)
        mono.resize(q)
        terms.resize(q * q)
        signs.resize(q)
        for code in range(n):
            c = code
            for i in range(q - 1, -1, -1):
                mono[i] = <int>(c % d)
                c = c // d
            _shuffle_terms(&mono[0], q, d, lf, ls, &terms[0], &signs[0])
            touched.clear()
            for t in range(q):
                pre = 0
                for i in range(q - 1):
                    pre = pre * d + terms[t * q + i]
                for u in range(<Py_ssize_t>T[q - 1][pre].size()):
                    nc = T[q - 1][pre][u].first * d + terms[t * q + q - 1]
                    v = T[q - 1][pre][u].second * signs[t]
                    if not mark[nc]:
                        mark[nc] = 1
                        touched.push_back(nc)
                    acc[nc] += v
            for u in range(<Py_ssize_t>touched.size()):
                nc = touched[u]
                if acc[nc] != 0:
                    T[q][code].push_back(Term(nc, acc[nc]))
                acc[nc] = 0
                mark[nc] = 0


def antisym_block(lam_first, lam_second, int d, int p, codes, local):
    cdef int[::1] lf = np.ascontiguousarray(lam_first, dtype=np.int32)
    cdef int[::1] ls = np.ascontiguousarray(lam_second, dtype=np.int32)
    cdef long long[::1] cds = np.ascontiguousarray(codes, dtype=np.int64)
    cdef int[::1] loc = np.ascontiguousarray(local, dtype=np.int32)
    cdef Py_ssize_t m = cds.shape[0]
    cdef vector[long long] rows, cols, vals
    cdef vector[vector[Image]] T
    cdef vector[long long] acc
    cdef vector[char] mark
    cdef vector[long long] touched
    cdef vector[int] mono, terms, signs
    cdef Py_ssize_t r, u, w
    cdef long long code, c, pre, col
    cdef int i, t
    if p <= 1:
        out_r = np.arange(m, dtype=np.int64)
        out_c = np.asarray(local, dtype=np.int64)[np.asarray(codes, dtype=np.int64)] if m else np.empty(0, np.int64)
        return out_r, out_c, np.ones(m, dtype=np.int64)
    with nogil:
        _build_tables(d, p - 1, &lf[0], &ls[0], T)
        # local indices are bounded by the size of the local map
        acc.assign(loc.shape[0], 0)
        mark.assign(loc.shape[0], 0)
        mono.resize(p)
        terms.resize(p * p)
        signs.resize(p)
        for r in range(m):
            c = cds[r]
            for i in range(p - 1, -1, -1):
                mono[i] = <int>(c % d)
                c = c // d
            _shuffle_terms(&mono[0], p, d, &lf[0], &ls[0], &terms[0], &signs[0])
            touched.clear()
            for t in range(p):
                pre = 0
                for i in range(p - 1):
                    pre = pre * d + terms[t * p + i]
                for u in range(<Py_ssize_t>T[p - 1][pre].size()):
                    col = loc[T[p - 1][pre][u].first * d + terms[t * p + p - 1]]
                    if not mark[col]:
                        mark[col] = 1
                        touched.push_back(col)
                    acc[col] += T[p - 1][pre][u].second * signs[t]
            sort(touched.begin(), touched.end())
            for w in range(<Py_ssize_t>touched.size()):
                col = touched[w]
                if acc[col] != 0:
                    rows.push_back(r)
                    cols.push_back(col)
                    vals.push_back(acc[col])
                acc[col] = 0
                mark[col] = 0
    n = rows.size()
    out_r = np.empty(n, dtype=np.int64)
    out_c = np.empty(n, dtype=np.int64)
    out_v = np.empty(n, dtype=np.int64)
    cdef long long[::1] vr = out_r
    cdef long long[::1] vc = out_c
    cdef long long[::1] vv = out_v
    cdef Py_ssize_t q
    for q in range(<Py_ssize_t>n):
        vr[q] = rows[q]
        vc[q] = cols[q]
        vv[q] = vals[q]
    return out_r, out_c, out_v


def antisymmetrize(lam_first, lam_second, int d, mono, memo=None):
    """Single-monomial antisymmetrizer; ``memo`` is accepted and ignored."""
    cdef int p = len(mono)
    if p <= 1:
        return {tuple(mono): 1}
    code = 0
    for x in mono:
        code = code * d + int(x)
    # identity local map: columns come back as full degree-p codes
    local = np.arange(d ** p, dtype=np.int32)
    rows, cols, vals = antisym_block(lam_first, lam_second, d, p,
                                     np.array([code], dtype=np.int64), local)
    out = {}
    for c, v in zip(cols.tolist(), vals.tolist()):
        digits = []
        for _ in range(p):
            c, rem = divmod(c, d)
            digits.append(rem)
        out[tuple(reversed(digits))] = v
    return out
