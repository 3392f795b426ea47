import pytest

from gkmhall import cartan, presentation


def affine_profile(cutoff):
    out = {}
    for m in range(cutoff + 1):
        for n in range(cutoff + 1):
            if (m, n) == (0, 0) or m + n > cutoff:
                continue
            out[(m, n)] = 1 if abs(m - n) <= 1 else 0
    return out


def test_modp_primes_are_distinct_primes_below_2_19():
    p1, p2 = presentation.MODP_PRIMES
    assert p1 != p2 and p1 < 2 ** 19 and p2 < 2 ** 19
    for p in (p1, p2):
        assert all(p % d for d in range(2, int(p ** 0.5) + 1))


def test_presentation_rejects_inhomogeneous_relators():
    C = cartan.validate([[2, -1], [-1, 2]])
    P = presentation.positive_presentation(C)
    from gkmhall.freelie import RelatorSet
    A = P.algebra
    bad = A.gen_by_index(0) + A.gen_by_index(1)
    with pytest.raises(presentation.PresentationError):
        presentation.Presentation(A, P.deltas,
                                  RelatorSet(A, (("bad", bad),)))


def test_graded_dims_exact_rank_one_affine_profile():
    C = cartan.validate([[2]])
    P = presentation.positive_presentation(cartan.double(C))
    table = presentation.graded_dims_exact(P, 6)
    nonzero = {d: v for d, v in table.entries.items() if v}
    assert nonzero == {d: 1 for d, v in affine_profile(6).items() if v}


def test_graded_dims_exact_a2_root_multiplicities():
    C = cartan.validate([[2, -1], [-1, 2]])
    P = presentation.positive_presentation(C)
    table = presentation.graded_dims_exact(P, 5)
    nonzero = {d: v for d, v in table.entries.items() if v}
    assert nonzero == {(1, 0): 1, (0, 1): 1, (1, 1): 1}


def test_graded_dims_exact_imaginary_simple_free_part():
    # a_11 = 0: no Serre power on the imaginary generator, free growth
    C = cartan.validate([[0]])
    P = presentation.positive_presentation(C)
    table = presentation.graded_dims_exact(P, 4)
    assert table.entries[(1,)] == 1
    assert table.entries[(2,)] == 0  # [x, x] = 0 kills degree 2


def test_truncated_engines_agree():
    C = cartan.validate([[2]])
    P = presentation.doubled_presentation(C)
    modp = presentation.quotient_dims_truncated(P, 5)
    import os
    os.environ["GKMHALL_EXACT"] = "1"
    try:
        exact = presentation.quotient_dims_truncated(P, 5)
    finally:
        del os.environ["GKMHALL_EXACT"]
    assert modp.entries == exact.entries
    assert modp.stability == exact.stability


def test_verify_theorem33_rank_one_matches():
    C = cartan.validate([[2]])
    report = presentation.verify_theorem33(C, 6)
    assert report.all_match()
    dims = {r.beta: r.dim for r in report.rows}
    assert dims[(0,)] == 1
    assert dims[(1,)] == 1 and dims[(-1,)] == 1
    assert all(r.dim == r.oracle for r in report.rows)


def test_verify_theorem33_rejects_tiny_cutoff():
    C = cartan.validate([[2]])
    with pytest.raises(ValueError):
        presentation.verify_theorem33(C, 1)


def test_thm33_report_tsv_shape():
    C = cartan.validate([[2]])
    report = presentation.verify_theorem33(C, 4)
    lines = report.to_tsv().strip().splitlines()
    assert len(lines) == len(report.rows)
    assert all(len(l.split("\t")) == 4 for l in lines)


def test_sl2_model_check():
    report = presentation.sl2_model_check()
    assert report.surjective
    assert all(z for _, _, z in report.rows)
    assert report.ok()
