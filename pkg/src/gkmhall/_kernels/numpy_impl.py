"""Pure-numpy backend: vectorized array arithmetic, no compiled loops.

Mod-p elimination works in float64.  With p < 2^19 and at most 2^14
summands, every intermediate value stays below 2^53, so float64 is exact.
Finite-field matrix products are computed through precomputed add/mul
lookup tables via fancy indexing.
"""

import numpy as np

NAME = "numpy"
MODP_DTYPE = np.float64


def modp_insert(basis, pivcols, nrows, row, p):
    """Reduce row against the maintained RREF basis and insert it.

    basis: preallocated (cap, n) array, first nrows rows valid and in
    reduced row echelon form with pivot columns pivcols[:nrows].
    row is destroyed.  Returns (new nrows, pivot column or -1).
    """
    if nrows:
        f = row[pivcols[:nrows]]
        if f.any():
            row -= f @ basis[:nrows]
            np.mod(row, p, out=row)
    nz = np.nonzero(row)[0]
    if nz.size == 0:
        return nrows, -1
    j = int(nz[0])
    inv = pow(int(row[j]), p - 2, p)
    row *= inv
    np.mod(row, p, out=row)
    if nrows:
        col = basis[:nrows, j].copy()
        if col.any():
            basis[:nrows] -= np.outer(col, row)
            np.mod(basis[:nrows], p, out=basis[:nrows])
    basis[nrows, :] = row
    pivcols[nrows] = j
    return nrows + 1, j


def modp_reduce_rows(basis, pivcols, nrows, rows, p):
    """Reduce a batch of candidate rows (in place) against the basis."""
    if nrows and rows.shape[0]:
        rows -= rows[:, pivcols[:nrows]] @ basis[:nrows]
        np.mod(rows, p, out=rows)


def _bmul(A, B, add_t, mul_t):
    """Batched finite-field matrix product via lookup tables.

    A: (c, n, m), B: (c, m, l) integer code arrays -> (c, n, l).
    """
    c, n, m = A.shape
    l = B.shape[2]
    C = np.zeros((c, n, l), dtype=np.int16)
    for k in range(m):
        term = mul_t[A[:, :, k][:, :, None], B[:, k, :][:, None, :]]
        C = add_t[C, term]
    return C


def nilpotent_codes(pos_r, pos_c, n, q, add_t, mul_t, total, chunk=1 << 14):
    """Codes in [0, total) whose total matrix (entries scattered at the
    given positions by base-q digits) is nilpotent."""
    E = len(pos_r)
    qpow = q ** np.arange(E, dtype=np.int64)
    out = []
    for start in range(0, total, chunk):
        codes = np.arange(start, min(start + chunk, total), dtype=np.int64)
        if E:
            digits = ((codes[:, None] // qpow[None, :]) % q).astype(np.int16)
        else:
            digits = np.zeros((codes.size, 0), dtype=np.int16)
        T = np.zeros((codes.size, n, n), dtype=np.int16)
        if E:
            T[:, pos_r, pos_c] = digits
        P = T
        m = 1
        while m < n:
            P = _bmul(P, P, add_t, mul_t)
            m *= 2
        out.append(codes[~P.any(axis=(1, 2))])
    return np.concatenate(out) if out else np.zeros(0, dtype=np.int64)


def orbit_codes(digits, arrow_off, arrow_rows, arrow_cols,
                arrow_src, arrow_tgt, dims, G, Ginv, g_off, g_cnt,
                q, add_t, mul_t, chunk=1 << 12):
    """All encodings in the base-change orbit of one representation.

    digits: flattened arrow matrices (row-major, concatenated) as codes.
    G/Ginv: stacked padded invertible matrices per vertex (aligned), with
    per-vertex offsets g_off and counts g_cnt.  Returns an int64 array of
    length prod(g_cnt); the caller deduplicates.
    """
    nv = len(dims)
    na = len(arrow_off)
    E = len(digits)
    qpow = q ** np.arange(E, dtype=np.int64)
    total = 1
    for c in g_cnt:
        total *= int(c)
    mats = []
    for a in range(na):
        dt, ds = int(arrow_rows[a]), int(arrow_cols[a])
        o = int(arrow_off[a])
        mats.append(np.array(digits[o:o + dt * ds], dtype=np.int16)
                    .reshape(dt, ds))
    out = np.empty(total, dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        c = idx.size
        vidx = np.empty((nv, c), dtype=np.int64)
        rem = idx
        for v in range(nv - 1, -1, -1):
            vidx[v] = rem % g_cnt[v]
            rem = rem // g_cnt[v]
        codes = np.zeros(c, dtype=np.int64)
        pos = 0
        for a in range(na):
            dt, ds = int(arrow_rows[a]), int(arrow_cols[a])
            s, t = int(arrow_src[a]), int(arrow_tgt[a])
            P = G[g_off[t] + vidx[t]][:, :dt, :dt]
            Qi = Ginv[g_off[s] + vidx[s]][:, :ds, :ds]
            A = np.broadcast_to(mats[a], (c, dt, ds))
            B = _bmul(_bmul(P, A, add_t, mul_t), Qi, add_t, mul_t)
            flat = B.reshape(c, dt * ds).astype(np.int64)
            codes += flat @ qpow[pos:pos + dt * ds]
            pos += dt * ds
        out[start:start + c] = codes
    return out
