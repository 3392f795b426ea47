import itertools

import pytest

from gkmhall import cartan, ff, freelie, hall

JORDAN = cartan.Quiver(("v",), (("l", "v", "v"),))
KRON = cartan.KRONECKER_QUIVER
A2Q = cartan.Quiver(("1", "2"), (("x", "1", "2"),))


def kron_ctx(p=3):
    return hall.HallContext(KRON, ff.field(p))


def test_guard_rejects_large_dims():
    with pytest.raises(hall.GuardError):
        hall.check_guard(KRON, (4, 3))
    hall.check_guard(KRON, (3, 3))


def test_simple_and_zero_reps():
    ctx = kron_ctx()
    s = ctx.simple("+")
    assert s.dim == (1, 0)
    z = ctx.zero_rep()
    assert ctx.classify(z).ids == ()
    assert hall.counit(hall.one(ctx)) == 1
    assert hall.counit(hall.class_element(ctx, s)) == 0


def test_jordan_nilpotency_filter():
    ctx = hall.HallContext(JORDAN, ff.field(3))
    assert not ctx.is_nilpotent(ctx.rep((1,), (((1,),),)))
    assert ctx.is_nilpotent(ctx.rep((2,), (((0, 1), (0, 0)),)))


def test_jordan_classes_follow_partitions():
    F = ff.field(3)
    for n, parts in ((1, 1), (2, 2), (3, 3)):
        pairs = hall.iso_classes(JORDAN, (n,), F)
        assert len(pairs) == parts
    pairs = hall.iso_classes(JORDAN, (3,), F)
    sizes = sorted(s for _, s in pairs)
    assert sizes == [1, 104, 624]
    assert sum(sizes) == 3 ** 6  # all nilpotent 3x3 matrices


def test_kronecker_class_counts_and_orbit_sum():
    ctx = kron_ctx()
    assert len(ctx.classes_at((1, 1))) == 5
    keys = ctx.classes_at((2, 2))
    assert len(keys) == 24
    assert sum(ctx.orbit_size(k) for k in keys) == 3 ** 8


def test_decompose_inverts_direct_sum():
    ctx = kron_ctx()
    a = ctx.simple("+")
    b = ctx.simple("-")
    key = ctx.classify(ctx.direct_sum(ctx.direct_sum(a, b), a))
    assert key.d() == 3
    assert sorted(ctx.dim_of_key(ctx.key_of_ids([i])) for i in key.ids) \
        == [(0, 1), (1, 0), (1, 0)]


def test_hall_number_jordan_repeated_simple():
    for p in (2, 3, 5):
        ctx = hall.HallContext(JORDAN, ff.field(p))
        S = ctx.classify(ctx.simple("v"))
        SS = ctx.classify(ctx.direct_sum(ctx.simple("v"), ctx.simple("v")))
        assert ctx.hall_number(SS, S, S) == p + 1


def test_kronecker_simple_products():
    ctx = kron_ctx()
    sp = hall.class_element(ctx, ctx.simple("+"))
    sm = hall.class_element(ctx, ctx.simple("-"))
    up = hall.hall_product(sp, sm)
    down = hall.hall_product(sm, sp)
    # S+ on top of S-: every dim (1,1) class extends; the reverse order
    # only reaches the split class
    assert sorted(up.terms.values()) == [1, 1, 1, 1, 1]
    assert len(down.terms) == 1 and set(down.terms.values()) == {1}
    split = next(iter(down.terms))
    assert split.d() == 2
    bracket = hall.lie_bracket(sp, sm)
    assert split not in bracket.terms
    assert len(bracket.terms) == 4


def test_hall_product_associative_on_simples():
    ctx = hall.HallContext(KRON, ff.field(2))
    sp = hall.class_element(ctx, ctx.simple("+"))
    sm = hall.class_element(ctx, ctx.simple("-"))
    for x, y, z in itertools.product((sp, sm), repeat=3):
        assert (x * y) * z == x * (y * z)


def test_one_is_neutral():
    ctx = kron_ctx()
    e = hall.one(ctx)
    sp = hall.class_element(ctx, ctx.simple("+"))
    assert e * sp == sp
    assert sp * e == sp


def test_product_guard_propagates():
    ctx = kron_ctx()
    x = hall.class_element(ctx, ctx.rep((2, 2), ((((1, 0), (0, 1))),
                                                 (((0, 1), (0, 0))))))
    with pytest.raises(hall.GuardError):
        hall.hall_product(x, x)


def test_comultiply_and_counit():
    ctx = kron_ctx()
    split = ctx.classify(ctx.direct_sum(ctx.simple("+"), ctx.simple("-")))
    d = hall.comultiply(hall.class_element(ctx, split))
    assert len(d.terms) == 4
    assert all(c == 1 for c in d.terms.values())
    zero = ctx.classify(ctx.zero_rep())
    assert (split, zero) in d.terms and (zero, split) in d.terms


def test_primitivity_of_simples_and_indecs():
    ctx = kron_ctx()
    for v in KRON.vertices:
        assert hall.is_primitive(hall.class_element(ctx, ctx.simple(v)))
    split = ctx.classify(ctx.direct_sum(ctx.simple("+"), ctx.simple("-")))
    assert not hall.is_primitive(hall.class_element(ctx, split))


def test_reduce_mod_collapse_warns():
    ctx = hall.HallContext(KRON, ff.field(2))
    x = hall.class_element(ctx, ctx.simple("+"))
    with pytest.warns(UserWarning):
        y = hall.reduce_mod(x)
    assert y.is_zero() or y.ring == 1


def test_reduce_mod_f4():
    ctx = hall.HallContext(KRON, ff.field(2, 2))
    x = 5 * hall.class_element(ctx, ctx.simple("+"))
    y = hall.reduce_mod(x)
    assert y.ring == 3
    assert list(y.terms.values()) == [2]


def test_class_key_hex_distinct_and_stable():
    ctx = kron_ctx()
    keys = ctx.classes_at((2, 2))
    hexes = [k.hex() for k in keys]
    assert len(set(hexes)) == len(hexes)
    assert all(set(h) <= set("01234567") for h in hexes)
    ctx2 = kron_ctx()
    hexes2 = {k.hex() for k in ctx2.classes_at((2, 2))}
    assert set(hexes) == hexes2


def test_serialize_format():
    ctx = kron_ctx()
    x = 2 * hall.class_element(ctx, ctx.simple("+")) \
        - hall.class_element(ctx, ctx.simple("-"))
    lines = x.serialize().strip().splitlines()
    assert len(lines) == 2
    for line in lines:
        coeff, key = line.split("\t")
        assert int(coeff) in (2, -1)


def test_integer_bialgebra_fails_on_repeated_simple():
    ctx = kron_ctx()
    x = hall.class_element(ctx, ctx.simple("+"))
    lhs = hall.comultiply(hall.hall_product(x, x))
    rhs = hall.comultiply(x) * hall.comultiply(x)
    assert lhs != rhs
    diff = lhs - rhs
    sp = ctx.classify(ctx.simple("+"))
    assert diff.terms == {(sp, sp): ctx.field.q - 1}
    assert lhs.reduce(ctx.field.modulus) == rhs.reduce(ctx.field.modulus)


def test_check_bialgebra_reduced_passes():
    report = hall.check_bialgebra(KRON, ff.field(3), (1, 1))
    assert report.ok()
    assert any(r.verdict == "PASS" for r in report.rows)


def test_serre_probe_small_quivers():
    for Q in (A2Q, cartan.Quiver(("1", "2"), ())):
        report = hall.serre_probe(Q, ff.field(3))
        assert report.ok()
    vac = hall.serre_probe(A2Q, ff.field(2))
    assert [r.verdict for r in vac.rows] == ["VACUOUS"]


def test_evaluate_relator_matches_bracket():
    ctx = kron_ctx()
    C = cartan.matrix_of_quiver(KRON)
    A = freelie.plain_algebra(C)
    rel = freelie.bracket(A.gen_by_index(0), A.gen_by_index(1))
    sp = hall.class_element(ctx, ctx.simple("+"))
    sm = hall.class_element(ctx, ctx.simple("-"))
    assert hall.evaluate_relator(ctx, rel, [sp, sm]) \
        == hall.lie_bracket(sp, sm)


def test_report_tsv_columns():
    rows = [hall.CheckRow("(1)", "n=1", "PASS"),
            hall.CheckRow("(2)", "n=1", "FAIL", "resid")]
    text = hall.Report(rows).to_tsv("3^1")
    lines = text.strip().splitlines()
    assert lines[0].split("\t") == ["(1)", "3^1", "n=1", "PASS", ""]
    assert lines[1].split("\t")[3] == "FAIL"
    assert not hall.Report(rows).ok()
