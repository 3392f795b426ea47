import pytest

from gkmhall import cli

A2_TEXT = "2\n2 -1\n-1 2\n"
RANK1_TEXT = "1\n2\n"
KRON_TEXT = "v +\nv -\na alpha + -\na beta + -\n"


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_ok(tmp_path, capsys):
    path = write(tmp_path, "a2.mat", A2_TEXT)
    code, out, _ = run(capsys, "validate", path)
    assert code == 0
    assert out.strip() == "valid"


def test_validate_violations_exit_1(tmp_path, capsys):
    path = write(tmp_path, "bad.mat", "2\n1 1\n0 2\n")
    code, out, _ = run(capsys, "validate", path)
    assert code == 1
    conds = {line.split("\t")[0] for line in out.strip().splitlines()}
    assert "BC1" in conds and "BC2" in conds


def test_double_rank_one(tmp_path, capsys):
    path = write(tmp_path, "c.mat", RANK1_TEXT)
    code, out, _ = run(capsys, "double", path)
    assert code == 0
    lines = [l for l in out.splitlines() if l and not l.startswith("#")]
    assert lines[0].strip() == "2"
    assert [l.split() for l in lines[1:]] == [["2", "-2"], ["-2", "2"]]


def test_symmetrize(tmp_path, capsys):
    path = write(tmp_path, "c.mat", "2\n2 -2\n-1 2\n")
    code, out, _ = run(capsys, "symmetrize", path)
    assert code == 0
    assert out.strip().split("\t") == ["1", "2"]


def test_symmetrize_failure_exit_1(tmp_path, capsys):
    path = write(tmp_path, "c.mat",
                 "3\n2 -1 -2\n-2 2 -1\n-1 -2 2\n")
    code, out, _ = run(capsys, "symmetrize", path)
    assert code == 1
    assert "not-symmetrizable" in out


def test_product_quiver_round_trip(tmp_path, capsys):
    from gkmhall import cartan
    path = write(tmp_path, "q.qv", "v 1\nv 2\na x 1 2\n")
    code, out, _ = run(capsys, "product-quiver", path)
    assert code == 0
    Q = cartan.parse_quiver_text(out)
    assert len(Q.vertices) == 4 and len(Q.arrows) == 6


def test_dims_rank_one(tmp_path, capsys):
    path = write(tmp_path, "c.mat", RANK1_TEXT)
    code, out, _ = run(capsys, "dims", path, "--cutoff", "4")
    assert code == 0
    rows = {tuple(l.split("\t")[:-2]): l.split("\t")[-2]
            for l in out.strip().splitlines()}
    assert rows[("1",)] == "1"
    assert rows[("2",)] == "0"


def test_verify_thm33(tmp_path, capsys):
    path = write(tmp_path, "c.mat", RANK1_TEXT)
    code, out, _ = run(capsys, "verify-thm33", path, "--cutoff", "4")
    assert code == 0
    assert out.startswith("# assumption:")
    assert "MATCH" in out and "MISMATCH" not in out


def test_hall_product_tsv(tmp_path, capsys):
    path = write(tmp_path, "k.qv", KRON_TEXT)
    code, out, _ = run(capsys, "hall-product", path, "--field", "3^1")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 4  # one row per ordered vertex pair
    assert all(len(l.split("\t")) == 3 for l in lines)


def test_hall_bialgebra_requires_matching_dim(tmp_path, capsys):
    path = write(tmp_path, "k.qv", KRON_TEXT)
    code, _, err = run(capsys, "hall-bialgebra", path, "--field", "3^1",
                       "--dim", "1,1,1")
    assert code == 2
    code, out, _ = run(capsys, "hall-bialgebra", path, "--field", "3^1",
                       "--dim", "1,1")
    assert code == 0
    assert "FAIL" not in out


def test_serre_probe_cli(tmp_path, capsys):
    path = write(tmp_path, "a2.qv", "v 1\nv 2\na x 1 2\n")
    code, out, _ = run(capsys, "serre-probe", path, "--field", "3^1")
    assert code == 0


def test_kronecker_q_f2_all_pass(capsys):
    code, out, _ = run(capsys, "kronecker-q", "--field", "2^1")
    assert code == 0
    verdicts = {l.split("\t")[3] for l in out.strip().splitlines()}
    assert verdicts == {"PASS"}


def test_kronecker_q1_exit_codes(capsys):
    # F2: vacuous, exit 0; F3: honest FAILs at regular degree 2, exit 1
    code, out, _ = run(capsys, "kronecker-q1", "--field", "2^1")
    assert code == 0 and "VACUOUS" in out
    code, out, _ = run(capsys, "kronecker-q1", "--field", "3^1")
    assert code == 1
    fails = [l for l in out.strip().splitlines()
             if l.split("\t")[3] == "FAIL"]
    assert {l.split("\t")[0] for l in fails} == {"(6')", "(iv)"}


def test_kronecker_loop_cli(capsys):
    code, out, _ = run(capsys, "kronecker-loop", "--field", "3^1",
                       "--nbound", "1", "--cutoff", "4")
    assert code == 0
    assert "generators" in out


def test_out_file(tmp_path, capsys):
    src = write(tmp_path, "c.mat", RANK1_TEXT)
    dst = tmp_path / "out.tsv"
    code, out, _ = run(capsys, "validate", src, "--out", str(dst))
    assert code == 0
    assert out == ""
    assert dst.read_text().strip() == "valid"


def test_parse_error_names_line(tmp_path, capsys):
    path = write(tmp_path, "t.mat", "2\n2 -1\n")
    code, _, err = run(capsys, "validate", path)
    assert code == 2
    assert "t.mat" in err


def test_missing_file_exit_2(capsys):
    code, _, err = run(capsys, "validate", "/nonexistent/x.mat")
    assert code == 2


def test_unknown_subcommand_exit_2(capsys):
    assert cli.main(["frobnicate"]) == 2


def test_bad_field_exit_2(capsys, tmp_path):
    path = write(tmp_path, "k.qv", KRON_TEXT)
    code, _, err = run(capsys, "hall-product", path, "--field", "10^1")
    assert code == 2
