"""Command-line interface.

Every subcommand reads plain-text matrix or quiver files, writes
deterministic TSV to --out (default standard output), and exits 0 when
all checks pass, 1 when at least one check fails, and 2 on usage or
parse errors (parse diagnostics name the offending line).
"""

from __future__ import annotations

import argparse
import sys

from . import cartan, ff, hall, kronecker, presentation


def _read(path):
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise cartan.ParseError(path, 0, str(exc))


def _load_matrix(path):
    rows = cartan.parse_matrix_text(_read(path), path=path)
    return rows


def _load_quiver(path):
    return cartan.parse_quiver_text(_read(path), path=path)


def _emit(args, text):
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)


def _field_of(args):
    try:
        return ff.parse_field(args.field)
    except ValueError as exc:
        raise cartan.ParseError("--field", 0, str(exc))


def _dim_of(args):
    if args.dim is None:
        raise cartan.ParseError("--dim", 0, "this subcommand requires --dim")
    try:
        return tuple(int(x) for x in args.dim.split(","))
    except ValueError:
        raise cartan.ParseError("--dim", 0,
                                "expected comma-separated integers")


def cmd_validate(args):
    rows = _load_matrix(args.path)
    bad = cartan.violations(rows)
    if not bad:
        _emit(args, "valid\n")
        return 0
    lines = ["%s\t%d\t%d" % (cond, i, j) for cond, (i, j) in bad]
    _emit(args, "\n".join(lines) + "\n")
    return 1


def cmd_symmetrize(args):
    C = cartan.validate(_load_matrix(args.path))
    sym = cartan.symmetrize(C)
    if sym is None:
        _emit(args, "not-symmetrizable\n")
        return 1
    _emit(args, "\t".join(str(e) for e in sym.epsilon) + "\n")
    return 0


def cmd_double(args):
    C = cartan.validate(_load_matrix(args.path))
    D = cartan.double(C)
    _emit(args, cartan.format_matrix(D.entries))
    return 0


def cmd_product_quiver(args):
    Q = _load_quiver(args.path)
    _emit(args, cartan.format_quiver(cartan.product_quiver(Q)))
    return 0


def cmd_dims(args):
    C = cartan.validate(_load_matrix(args.path))
    P = presentation.positive_presentation(C)
    table = presentation.graded_dims_exact(P, args.cutoff)
    _emit(args, table.to_tsv())
    return 0


def cmd_verify_thm33(args):
    C = cartan.validate(_load_matrix(args.path))
    report = presentation.verify_theorem33(C, args.cutoff)
    head = "# assumption: %s\n" % report.assumption
    _emit(args, head + report.to_tsv())
    return 0 if not any(r.verdict == "MISMATCH" for r in report.rows) else 1


def cmd_hall_product(args):
    Q = _load_quiver(args.path)
    F = _field_of(args)
    ctx = hall.HallContext(Q, F)
    lines = []
    for u in Q.vertices:
        for v in Q.vertices:
            prod = hall.hall_product(
                hall.class_element(ctx, ctx.simple(u)),
                hall.class_element(ctx, ctx.simple(v)))
            ser = ";".join(line.replace("\t", ":")
                           for line in prod.serialize().splitlines())
            lines.append("%s\t%s\t%s" % (u, v, ser))
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_hall_bialgebra(args):
    Q = _load_quiver(args.path)
    F = _field_of(args)
    bound = _dim_of(args)
    if len(bound) != len(Q.vertices):
        raise cartan.ParseError("--dim", 0,
                                "length must match the vertex count")
    report = hall.check_bialgebra(Q, F, bound)
    _emit(args, report.to_tsv("%d^%d" % (F.p, F.r)))
    return 0 if report.ok() else 1


def cmd_serre_probe(args):
    Q = _load_quiver(args.path)
    F = _field_of(args)
    report = hall.serre_probe(Q, F)
    _emit(args, report.to_tsv("%d^%d" % (F.p, F.r)))
    return 0 if report.ok() else 1


def cmd_kronecker_q(args):
    F = _field_of(args)
    report = kronecker.verify_q_relations(F, args.nbound)
    _emit(args, report.to_tsv("%d^%d" % (F.p, F.r)))
    return 0 if report.ok() else 1


def cmd_kronecker_q1(args):
    F = _field_of(args)
    report = kronecker.verify_q1_relations(F, args.nbound)
    _emit(args, report.to_tsv("%d^%d" % (F.p, F.r)))
    return 0 if report.ok() else 1


def cmd_kronecker_loop(args):
    F = _field_of(args)
    model = kronecker.loop_model(max(2, args.cutoff))
    rows = model.relation_rows().rows
    rows += kronecker.correspondence_check([F], args.nbound).rows
    report = kronecker.Report(rows)
    _emit(args, report.to_tsv("%d^%d" % (F.p, F.r)))
    return 0 if report.ok() else 1


_COMMANDS = {
    "validate": (cmd_validate, True),
    "symmetrize": (cmd_symmetrize, True),
    "double": (cmd_double, True),
    "product-quiver": (cmd_product_quiver, True),
    "dims": (cmd_dims, True),
    "verify-thm33": (cmd_verify_thm33, True),
    "hall-product": (cmd_hall_product, True),
    "hall-bialgebra": (cmd_hall_bialgebra, True),
    "serre-probe": (cmd_serre_probe, True),
    "kronecker-q": (cmd_kronecker_q, False),
    "kronecker-q1": (cmd_kronecker_q1, False),
    "kronecker-loop": (cmd_kronecker_loop, False),
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gkmhall",
        description="Generalized Kac-Moody presentations and "
                    "degenerate Ringel-Hall algebra checks.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, needs_path) in _COMMANDS.items():
        p = sub.add_parser(name)
        if needs_path:
            p.add_argument("path", help="matrix or quiver file")
        p.add_argument("--cutoff", type=int, default=8)
        p.add_argument("--field", default="3^1")
        p.add_argument("--dim", default=None)
        p.add_argument("--nbound", type=int, default=2)
        p.add_argument("--out", default="-")
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    fn = _COMMANDS[args.command][0]
    try:
        return fn(args)
    except cartan.ParseError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except cartan.CartanValidationError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except (hall.GuardError, OverflowError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
