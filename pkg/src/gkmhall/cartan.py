"""Borcherds-Cartan matrices, quivers, doubling, and the product quiver.

A Borcherds-Cartan matrix is an integer matrix whose diagonal entries are
2 or nonpositive, whose off-diagonal entries are nonpositive, and whose
zero pattern is symmetric.  The doubling operation sends C to the block
matrix (C, -2Id; -2Id, C); on the quiver side the matching operation is
taking the product with the Kronecker quiver.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class CartanValidationError(ValueError):
    """Raised when a matrix fails the Borcherds-Cartan conditions.

    The ``violations`` attribute lists every (condition, (i, j)) pair,
    with conditions named "BC1" (diagonal), "BC2" (off-diagonal sign) and
    "BC3" (symmetric zero pattern).
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("not a Borcherds-Cartan matrix: %s" % self.violations)


@dataclass(frozen=True)
class BorcherdsCartanMatrix:
    index_labels: tuple
    entries: tuple  # tuple of tuples of int

    @property
    def size(self):
        return len(self.index_labels)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def is_symmetric(self):
        n = self.size
        return all(self.entries[i][j] == self.entries[j][i]
                   for i in range(n) for j in range(n))


@dataclass(frozen=True)
class Symmetrizer:
    epsilon: tuple  # positive ints, gcd 1


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple  # tuple of (name, source, target)

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise ValueError("duplicate vertex names")
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("duplicate arrow names")
        for name, s, t in self.arrows:
            if s not in vs or t not in vs:
                raise ValueError("arrow %r has undeclared endpoint" % (name,))

    def loop_count(self, v):
        return sum(1 for _, s, t in self.arrows if s == v and t == v)

    def arrows_between(self, u, v):
        """Arrows joining u and v irrespective of orientation (u != v)."""
        return sum(1 for _, s, t in self.arrows
                   if (s == u and t == v) or (s == v and t == u))


@dataclass(frozen=True)
class SignedIndex:
    base: object
    sign: str  # "+" or "-"

    def __post_init__(self):
        if self.sign not in ("+", "-"):
            raise ValueError("sign must be '+' or '-'")

    def __str__(self):
        return "%s%s" % (self.sign, self.base)


def violations(rows):
    """All Borcherds-Cartan condition violations of a square integer matrix."""
    n = len(rows)
    for row in rows:
        if len(row) != n:
            raise ValueError("matrix is not square")
    found = []
    for i in range(n):
        if not (rows[i][i] == 2 or rows[i][i] <= 0):
            found.append(("BC1", (i, i)))
        for j in range(n):
            if i != j and rows[i][j] > 0:
                found.append(("BC2", (i, j)))
            if i != j and rows[i][j] != 0 and rows[j][i] == 0:
                found.append(("BC3", (i, j)))
    return found


def validate(rows, labels=None):
    """Check the Borcherds-Cartan conditions and wrap the matrix.

    Raises CartanValidationError carrying every violated (condition,
    position) pair, or ValueError for a non-square input.
    """
    bad = violations(rows)
    if bad:
        raise CartanValidationError(bad)
    if labels is None:
        labels = tuple(range(len(rows)))
    return BorcherdsCartanMatrix(tuple(labels), tuple(tuple(r) for r in rows))


def symmetrize(C):
    """Minimal positive integer symmetrizer of C, or None.

    Solves eps_i * a_ij = eps_j * a_ji exactly over the rationals by
    propagating ratios along the (symmetric) nonzero pattern, component
    by component, then clears denominators to gcd 1.  The usual
    definition allows nonnegative eps_i; here strictly positive entries
    are required, which is automatic whenever a solution exists because
    linked off-diagonal entries share their (negative) sign.
    """
    n = C.size
    eps = [None] * n
    for start in range(n):
        if eps[start] is not None:
            continue
        eps[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i == j or C[i, j] == 0:
                    continue
                # BC3 passed, so C[j, i] != 0 here.
                val = eps[i] * Fraction(C[i, j], C[j, i])
                if eps[j] is None:
                    eps[j] = val
                    stack.append(j)
                elif eps[j] != val:
                    return None
    # Consistency across all pairs (propagation covers trees; cycles can clash).
    for i in range(n):
        for j in range(n):
            if eps[i] * C[i, j] != eps[j] * C[j, i]:
                return None
    denom = 1
    for e in eps:
        denom = denom * e.denominator // gcd(denom, e.denominator)
    ints = [int(e * denom) for e in eps]
    g = 0
    for v in ints:
        g = gcd(g, v)
    ints = [v // g for v in ints]
    if any(v <= 0 for v in ints):
        return None
    return Symmetrizer(tuple(ints))


def double(C):
    """The doubled matrix with blocks (C, -2Id; -2Id, C).

    Indices are ordered as all (+, i) in the original order, then all
    (-, i); the result is again a valid Borcherds-Cartan matrix.
    """
    n = C.size
    labels = tuple(SignedIndex(l, "+") for l in C.index_labels) + \
        tuple(SignedIndex(l, "-") for l in C.index_labels)
    rows = []
    for a in range(2 * n):
        row = []
        for b in range(2 * n):
            i, j = a % n, b % n
            if (a < n) == (b < n):
                row.append(C[i, j])
            else:
                row.append(-2 if i == j else 0)
        rows.append(tuple(row))
    return validate(rows, labels)


def matrix_of_quiver(Q):
    """The symmetric Borcherds-Cartan matrix of a finite quiver.

    Diagonal entries are 2(1 - l_i) with l_i the number of loops at i;
    off-diagonal entries are minus the number of arrows between the two
    vertices, counted irrespective of orientation.
    """
    vs = Q.vertices
    rows = []
    for u in vs:
        row = []
        for v in vs:
            if u == v:
                row.append(2 * (1 - Q.loop_count(u)))
            else:
                row.append(-Q.arrows_between(u, v))
        rows.append(tuple(row))
    return validate(rows, vs)


KRONECKER_QUIVER = Quiver(("+", "-"), (("alpha", "+", "-"), ("beta", "+", "-")))


def product_quiver(Q):
    """Product of Q with the Kronecker quiver (vertices {+,-}, two arrows +->-).

    The vertex set doubles; every vertex of Q contributes a Kronecker pair
    of arrows between its two signed copies, and every arrow of Q is
    duplicated once per sign.
    """
    vertices = tuple("%s%s" % (v, s) for s in ("+", "-") for v in Q.vertices)
    arrows = []
    for v in Q.vertices:
        for k in ("alpha", "beta"):
            arrows.append(("%s:%s" % (v, k), "%s+" % v, "%s-" % v))
    for name, s, t in Q.arrows:
        for sign in ("+", "-"):
            arrows.append(("%s%s" % (name, sign), "%s%s" % (s, sign),
                           "%s%s" % (t, sign)))
    return Quiver(vertices, tuple(arrows))


# -- text formats ------------------------------------------------------------
# Matrix files: '#' comment lines, first data line n, then n rows of n ints.
# Quiver files: lines "v <name>" and "a <name> <src> <tgt>".

class ParseError(ValueError):
    def __init__(self, path, line_no, message):
        self.path = path
        self.line_no = line_no
        super().__init__("%s:%d: %s" % (path, line_no, message))


def _data_lines(text):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield no, line


def parse_matrix_text(text, path="<matrix>"):
    lines = list(_data_lines(text))
    if not lines:
        raise ParseError(path, 1, "empty matrix file")
    no, head = lines[0]
    try:
        n = int(head)
    except ValueError:
        raise ParseError(path, no, "expected matrix size, got %r" % head)
    if n < 1:
        raise ParseError(path, no, "matrix size must be >= 1")
    if len(lines) - 1 != n:
        raise ParseError(path, no, "expected %d rows, got %d" % (n, len(lines) - 1))
    rows = []
    for no, line in lines[1:]:
        try:
            row = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(path, no, "non-integer matrix entry in %r" % line)
        if len(row) != n:
            raise ParseError(path, no, "expected %d entries, got %d" % (n, len(row)))
        rows.append(row)
    return rows


def format_matrix(rows):
    n = len(rows)
    out = [str(n)]
    for row in rows:
        out.append(" ".join(str(v) for v in row))
    return "\n".join(out) + "\n"


def parse_quiver_text(text, path="<quiver>"):
    vertices = []
    arrows = []
    seen = set()
    for no, line in _data_lines(text):
        parts = line.split()
        if parts[0] == "v" and len(parts) == 2:
            vertices.append(parts[1])
            seen.add(parts[1])
        elif parts[0] == "a" and len(parts) == 4:
            name, s, t = parts[1:]
            if s not in seen:
                raise ParseError(path, no, "arrow %r: unknown source %r" % (name, s))
            if t not in seen:
                raise ParseError(path, no, "arrow %r: unknown target %r" % (name, t))
            arrows.append((name, s, t))
        else:
            raise ParseError(path, no, "unrecognized line %r" % line)
    try:
        return Quiver(tuple(vertices), tuple(arrows))
    except ValueError as e:
        raise ParseError(path, 1, str(e))


def format_quiver(Q):
    out = ["v %s" % v for v in Q.vertices]
    out += ["a %s %s %s" % a for a in Q.arrows]
    return "\n".join(out) + "\n"
