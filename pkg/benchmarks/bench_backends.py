#!/usr/bin/env python3
"""Timing comparison of the numba and numpy kernel backends.

Three workloads, matching the three kernel entry points:
  elim    mod-p row insertion into a maintained RREF basis
  nilp    nilpotent matrix enumeration for the Jordan quiver
  orbit   base-change orbit scan for canonical class representatives

Each workload is run once per backend (after a warm-up call so numba's
compile time is not charged to the measurement).  Run from the repo root:

    python benchmarks/bench_backends.py [--repeat N]
"""

import argparse
import time

import numpy as np

from gkmhall import ff
from gkmhall._kernels import get_impl

P_ELIM = 524287


def bench_elim(impl, rng):
    n, cap, nrows_in = 360, 400, 520
    basis = np.zeros((cap, n), dtype=np.int64)
    pivcols = np.zeros(cap, dtype=np.int64)
    rows = rng.integers(0, P_ELIM, size=(nrows_in, n), dtype=np.int64)
    nrows = 0
    for i in range(nrows_in):
        if i and i % 64 == 0:
            batch = rows[i:i + 64].copy()
            impl.modp_reduce_rows(basis, pivcols, nrows, batch, P_ELIM)
        nrows, _ = impl.modp_insert(basis, pivcols, nrows,
                                    rows[i].copy(), P_ELIM)
    return nrows


def bench_nilp(impl):
    F = ff.field(5)
    n = 3
    pos = [(i, j) for i in range(n) for j in range(n)]
    codes = impl.nilpotent_codes(
        np.asarray([i for i, _ in pos], dtype=np.int64),
        np.asarray([j for _, j in pos], dtype=np.int64),
        n, F.q, F.add_table, F.mul_table, F.q ** len(pos))
    return len(codes)


def bench_orbit(impl):
    # Kronecker representation of dimension (2, 2): scan the full
    # GL2 x GL2 base-change orbit (2304 group elements, 8 matrix entries).
    from gkmhall import hall
    from gkmhall.cartan import KRONECKER_QUIVER

    F = ff.field(3)
    ctx = hall.HallContext(KRONECKER_QUIVER, F)
    rep = ctx.rep((2, 2), (((1, 0), (0, 1)), ((0, 1), (0, 0))))
    q = F.q
    dmax = 2
    G_list, Ginv_list, g_off, g_cnt = [], [], [], []
    off = 0
    for d in rep.dim:
        invs = hall._invertible_mats(F, d)
        g_off.append(off)
        g_cnt.append(len(invs))
        off += len(invs)
        for m, mi in invs:
            Pm = np.zeros((dmax, dmax), dtype=np.int16)
            Pi = np.zeros((dmax, dmax), dtype=np.int16)
            for i in range(d):
                for j in range(d):
                    Pm[i, j] = m[i][j]
                    Pi[i, j] = mi[i][j]
            G_list.append(Pm)
            Ginv_list.append(Pi)
    digits = []
    arrow_off, arrow_rows, arrow_cols, arrow_src, arrow_tgt = \
        [], [], [], [], []
    for ai, (s, t) in enumerate(ctx.arrows):
        arrow_off.append(len(digits))
        arrow_rows.append(rep.dim[t])
        arrow_cols.append(rep.dim[s])
        arrow_src.append(s)
        arrow_tgt.append(t)
        for row in rep.mats[ai]:
            digits.extend(row)
    codes = impl.orbit_codes(
        np.asarray(digits, dtype=np.int16),
        np.asarray(arrow_off, dtype=np.int64),
        np.asarray(arrow_rows, dtype=np.int64),
        np.asarray(arrow_cols, dtype=np.int64),
        np.asarray(arrow_src, dtype=np.int64),
        np.asarray(arrow_tgt, dtype=np.int64),
        np.asarray(rep.dim, dtype=np.int64),
        np.stack(G_list), np.stack(Ginv_list),
        np.asarray(g_off, dtype=np.int64),
        np.asarray(g_cnt, dtype=np.int64),
        q, F.add_table, F.mul_table)
    return int(np.unique(codes).size)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    workloads = [
        ("elim", lambda impl: bench_elim(impl,
                                         np.random.default_rng(20240814))),
        ("nilp", bench_nilp),
        ("orbit", bench_orbit),
    ]
    backends = []
    for name in ("numba", "numpy"):
        try:
            backends.append((name, get_impl(name)))
        except ImportError:
            print("backend %s unavailable, skipping" % name)

    print("%-8s %-8s %12s %12s" % ("work", "backend", "best (ms)", "result"))
    results = {}
    for wname, fn in workloads:
        for bname, impl in backends:
            fn(impl)  # warm-up / JIT compile
            best = None
            out = None
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                out = fn(impl)
                dt = (time.perf_counter() - t0) * 1000.0
                best = dt if best is None else min(best, dt)
            results.setdefault(wname, {})[bname] = out
            print("%-8s %-8s %12.2f %12s" % (wname, bname, best, out))
    for wname, outs in results.items():
        vals = set(outs.values())
        if len(vals) > 1:
            raise SystemExit("backend disagreement on %s: %r" % (wname, outs))
    print("backends agree on all workloads")


if __name__ == "__main__":
    main()
