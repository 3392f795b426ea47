import numpy as np
import pytest

from gkmhall import _kernels, cartan, ff, hall

BACKENDS = []
for _name in ("numpy", "numba"):
    try:
        BACKENDS.append((_name, _kernels.get_impl(_name)))
    except ImportError:
        pass


def test_backend_name_env(monkeypatch):
    monkeypatch.setenv("GKMHALL_BACKEND", "numpy")
    assert _kernels.backend_name() == "numpy"
    assert _kernels.impl().NAME == "numpy"
    monkeypatch.setenv("GKMHALL_BACKEND", "bogus")
    with pytest.raises(ValueError):
        _kernels.backend_name()


def test_get_impl_unknown():
    with pytest.raises(ValueError):
        _kernels.get_impl("fortran")


def _elim_run(impl, p, rows):
    basis = np.zeros((64, rows.shape[1]), dtype=np.int64)
    pivcols = np.zeros(64, dtype=np.int64)
    nrows = 0
    pivs = []
    for row in rows:
        nrows, piv = impl.modp_insert(basis, pivcols, nrows, row.copy(), p)
        pivs.append(piv)
    return nrows, pivs, basis[:nrows].copy(), pivcols[:nrows].copy()


@pytest.mark.skipif(len(BACKENDS) < 2, reason="needs both backends")
def test_modp_insert_parity():
    rng = np.random.default_rng(7)
    p = 524287
    rows = rng.integers(0, p, size=(40, 24), dtype=np.int64)
    rows[5] = (3 * rows[2] + 4 * rows[3]) % p  # force dependencies
    rows[11] = 0
    outs = [_elim_run(impl, p, rows) for _, impl in BACKENDS]
    a, b = outs
    assert a[0] == b[0] and a[1] == b[1]
    assert np.array_equal(a[2], b[2]) and np.array_equal(a[3], b[3])


@pytest.mark.skipif(len(BACKENDS) < 2, reason="needs both backends")
def test_modp_reduce_rows_parity():
    rng = np.random.default_rng(11)
    p = 65521
    rows = rng.integers(0, p, size=(20, 16), dtype=np.int64)
    base = rng.integers(0, p, size=(10, 16), dtype=np.int64)
    results = []
    for _, impl in BACKENDS:
        basis = np.zeros((32, 16), dtype=np.int64)
        pivcols = np.zeros(32, dtype=np.int64)
        nrows = 0
        for row in base:
            nrows, _ = impl.modp_insert(basis, pivcols, nrows,
                                        row.copy(), p)
        batch = rows.copy()
        impl.modp_reduce_rows(basis, pivcols, nrows, batch, p)
        results.append(batch % p)
    assert np.array_equal(results[0], results[1])


def test_reduce_then_insert_is_stable():
    # a row already reduced against the basis inserts with the same pivot
    for _, impl in BACKENDS:
        p = 97
        rng = np.random.default_rng(3)
        basis = np.zeros((16, 8), dtype=np.int64)
        pivcols = np.zeros(16, dtype=np.int64)
        nrows = 0
        for row in rng.integers(0, p, size=(4, 8), dtype=np.int64):
            nrows, _ = impl.modp_insert(basis, pivcols, nrows,
                                        row.copy(), p)
        fresh = rng.integers(0, p, size=(1, 8), dtype=np.int64)
        reduced = fresh.copy()
        impl.modp_reduce_rows(basis, pivcols, nrows, reduced, p)
        n1, piv1 = impl.modp_insert(basis.copy(), pivcols.copy(), nrows,
                                    fresh[0].copy(), p)
        n2, piv2 = impl.modp_insert(basis.copy(), pivcols.copy(), nrows,
                                    reduced[0].copy() % p, p)
        assert (n1, piv1) == (n2, piv2)


@pytest.mark.parametrize("n,p", [(2, 3), (2, 5), (3, 3)])
def test_nilpotent_codes_counts(n, p):
    # nilpotent n x n matrices over F_q number q^(n^2 - n)
    F = ff.field(p)
    pos = [(i, j) for i in range(n) for j in range(n)]
    for _, impl in BACKENDS:
        codes = impl.nilpotent_codes(
            np.asarray([i for i, _ in pos], dtype=np.int64),
            np.asarray([j for _, j in pos], dtype=np.int64),
            n, F.q, F.add_table, F.mul_table, F.q ** len(pos))
        assert len(codes) == F.q ** (n * n - n)


@pytest.mark.skipif(len(BACKENDS) < 2, reason="needs both backends")
def test_nilpotent_codes_parity():
    F = ff.field(3)
    n = 3
    pos = [(i, j) for i in range(n) for j in range(n)]
    args = (np.asarray([i for i, _ in pos], dtype=np.int64),
            np.asarray([j for _, j in pos], dtype=np.int64),
            n, F.q, F.add_table, F.mul_table, F.q ** len(pos))
    a = np.sort(np.asarray(BACKENDS[0][1].nilpotent_codes(*args)))
    b = np.sort(np.asarray(BACKENDS[1][1].nilpotent_codes(*args)))
    assert np.array_equal(a, b)


@pytest.mark.skipif(len(BACKENDS) < 2, reason="needs both backends")
def test_orbit_canonical_forms_agree(monkeypatch):
    canon = {}
    for name, _ in BACKENDS:
        monkeypatch.setenv("GKMHALL_BACKEND", name)
        ctx = hall.HallContext(cartan.KRONECKER_QUIVER, ff.field(3))
        canon[name] = sorted(k.hex() for k in ctx.classes_at((2, 2)))
    a, b = canon.values()
    assert a == b


@pytest.mark.skipif(len(BACKENDS) < 2, reason="needs both backends")
def test_full_class_count_backend_independent(monkeypatch):
    counts = {}
    for name, _ in BACKENDS:
        monkeypatch.setenv("GKMHALL_BACKEND", name)
        J = cartan.Quiver(("v",), (("l", "v", "v"),))
        ctx = hall.HallContext(J, ff.field(3))
        keys = ctx.classes_at((3,))
        counts[name] = (len(keys),
                        sorted(ctx.orbit_size(k) for k in keys))
    a, b = counts.values()
    assert a == b
