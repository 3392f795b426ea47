"""Numba backend: the same kernels as numpy_impl, as compiled loops.

Mod-p elimination runs in int64 (products stay below 2^38 for p < 2^19,
accumulations below 2^51).  Finite-field products use the same lookup
tables as the numpy backend.
"""

import numpy as np
from numba import njit

NAME = "numba"
MODP_DTYPE = np.int64


@njit(cache=True)
def _modinv(a, p):
    # Fermat: a^(p-2) mod p by binary powering.
    result = 1
    base = a % p
    e = p - 2
    while e:
        if e & 1:
            result = (result * base) % p
        base = (base * base) % p
        e >>= 1
    return result


@njit(cache=True)
def _insert(basis, pivcols, nrows, row, p):
    n = row.shape[0]
    for k in range(nrows):
        c = row[pivcols[k]] % p
        if c:
            for j in range(n):
                row[j] -= c * basis[k, j]
    for j in range(n):
        row[j] %= p
    piv = -1
    for j in range(n):
        if row[j]:
            piv = j
            break
    if piv < 0:
        return nrows, -1
    inv = _modinv(row[piv], p)
    for j in range(n):
        row[j] = (row[j] * inv) % p
    for k in range(nrows):
        c = basis[k, piv]
        if c:
            for j in range(n):
                basis[k, j] = (basis[k, j] - c * row[j]) % p
    for j in range(n):
        basis[nrows, j] = row[j]
    pivcols[nrows] = piv
    return nrows + 1, piv


def modp_insert(basis, pivcols, nrows, row, p):
    return _insert(basis, pivcols, nrows, row, p)


@njit(cache=True)
def _reduce_rows(basis, pivcols, nrows, rows, p):
    m, n = rows.shape
    for i in range(m):
        for k in range(nrows):
            c = rows[i, pivcols[k]] % p
            if c:
                for j in range(n):
                    rows[i, j] -= c * basis[k, j]
        for j in range(n):
            rows[i, j] %= p


def modp_reduce_rows(basis, pivcols, nrows, rows, p):
    if nrows and rows.shape[0]:
        _reduce_rows(basis, pivcols, nrows, rows, p)


@njit(cache=True)
def _nilpotent_codes(pos_r, pos_c, n, q, add_t, mul_t, total):
    E = pos_r.shape[0]
    out = np.empty(total, dtype=np.int64)
    cnt = 0
    T = np.zeros((n, n), dtype=np.int16)
    P = np.zeros((n, n), dtype=np.int16)
    W = np.zeros((n, n), dtype=np.int16)
    for code in range(total):
        c = code
        for i in range(n):
            for j in range(n):
                T[i, j] = 0
        for e in range(E):
            T[pos_r[e], pos_c[e]] = c % q
            c //= q
        for i in range(n):
            for j in range(n):
                P[i, j] = T[i, j]
        m = 1
        while m < n:
            for i in range(n):
                for j in range(n):
                    acc = np.int16(0)
                    for k in range(n):
                        acc = add_t[acc, mul_t[P[i, k], P[k, j]]]
                    W[i, j] = acc
            for i in range(n):
                for j in range(n):
                    P[i, j] = W[i, j]
            m *= 2
        ok = True
        for i in range(n):
            for j in range(n):
                if P[i, j]:
                    ok = False
        if ok:
            out[cnt] = code
            cnt += 1
    return out[:cnt]


def nilpotent_codes(pos_r, pos_c, n, q, add_t, mul_t, total, chunk=0):
    return _nilpotent_codes(np.asarray(pos_r, dtype=np.int64),
                            np.asarray(pos_c, dtype=np.int64),
                            n, q, add_t, mul_t, total)


@njit(cache=True)
def _orbit_codes(digits, arrow_off, arrow_rows, arrow_cols,
                 arrow_src, arrow_tgt, dims, G, Ginv, g_off, g_cnt,
                 q, add_t, mul_t):
    nv = dims.shape[0]
    na = arrow_off.shape[0]
    E = digits.shape[0]
    qpow = np.empty(E, dtype=np.int64)
    acc = 1
    for e in range(E):
        qpow[e] = acc
        acc *= q
    total = 1
    for v in range(nv):
        total *= g_cnt[v]
    out = np.empty(total, dtype=np.int64)
    vidx = np.empty(nv, dtype=np.int64)
    dmax = G.shape[1]
    M1 = np.zeros((dmax, dmax), dtype=np.int16)
    M2 = np.zeros((dmax, dmax), dtype=np.int16)
    for idx in range(total):
        rem = idx
        for v in range(nv - 1, -1, -1):
            vidx[v] = rem % g_cnt[v]
            rem //= g_cnt[v]
        code = 0
        pos = 0
        for a in range(na):
            dt = arrow_rows[a]
            ds = arrow_cols[a]
            s = arrow_src[a]
            t = arrow_tgt[a]
            # M1 = P_t * A
            for i in range(dt):
                for j in range(ds):
                    accv = np.int16(0)
                    for k in range(dt):
                        accv = add_t[accv, mul_t[G[g_off[t] + vidx[t], i, k],
                                                 digits[arrow_off[a] + k * ds + j]]]
                    M1[i, j] = accv
            # M2 = M1 * Pinv_s
            for i in range(dt):
                for j in range(ds):
                    accv = np.int16(0)
                    for k in range(ds):
                        accv = add_t[accv, mul_t[M1[i, k],
                                                 Ginv[g_off[s] + vidx[s], k, j]]]
                    M2[i, j] = accv
            for i in range(dt):
                for j in range(ds):
                    code += np.int64(M2[i, j]) * qpow[pos]
                    pos += 1
        out[idx] = code
    return out


def orbit_codes(digits, arrow_off, arrow_rows, arrow_cols,
                arrow_src, arrow_tgt, dims, G, Ginv, g_off, g_cnt,
                q, add_t, mul_t, chunk=0):
    return _orbit_codes(np.asarray(digits, dtype=np.int16),
                        np.asarray(arrow_off, dtype=np.int64),
                        np.asarray(arrow_rows, dtype=np.int64),
                        np.asarray(arrow_cols, dtype=np.int64),
                        np.asarray(arrow_src, dtype=np.int64),
                        np.asarray(arrow_tgt, dtype=np.int64),
                        np.asarray(dims, dtype=np.int64),
                        G, Ginv,
                        np.asarray(g_off, dtype=np.int64),
                        np.asarray(g_cnt, dtype=np.int64),
                        q, add_t, mul_t)
