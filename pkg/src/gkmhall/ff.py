"""Small finite fields F_{p^r} with exact table-based arithmetic.

Elements are integer codes 0..q-1; the code's base-p digits are the
coefficients of the polynomial representative (constant term first).
Addition is digitwise mod p; multiplication reduces modulo the
lexicographically first irreducible monic polynomial of degree r.
All tables are precomputed, so arithmetic is exact lookups.
"""

from __future__ import annotations

import numpy as np

_PRIMES = (2, 3, 5, 7)
_FIELD_CACHE = {}


def _poly_from_code(code, p, r):
    return [(code // p ** k) % p for k in range(r)]


def _code_from_poly(poly, p):
    code = 0
    for k, c in enumerate(poly):
        code += (c % p) * p ** k
    return code


def _poly_mul_mod(a, b, modpoly, p):
    # modpoly: monic of degree r, coefficient list length r+1
    r = len(modpoly) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                prod[i + j] = (prod[i + j] + ca * cb) % p
    for d in range(len(prod) - 1, r - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            for k in range(r + 1):
                prod[d - r + k] = (prod[d - r + k] - c * modpoly[k]) % p
    return [c % p for c in prod[:r]] + [0] * max(0, r - len(prod))


def _find_irreducible(p, r):
    """Lexicographically least monic irreducible of degree r over F_p.

    For r <= 3, irreducible == no roots in F_p (plus squarefree trivially);
    r == 1 returns x.
    """
    if r == 1:
        return [0, 1]
    for code in range(p ** r):
        coeffs = _poly_from_code(code, p, r) + [1]
        if coeffs[0] == 0:
            continue
        if all(sum(c * x ** k for k, c in enumerate(coeffs)) % p
               for x in range(p)):
            return coeffs
    raise RuntimeError("no irreducible polynomial found")  # unreachable


class FiniteField:
    """F_{p^r} with p prime <= 7 and r <= 3."""

    def __init__(self, p, r=1):
        if p not in _PRIMES:
            raise ValueError("p must be a prime <= 7, got %r" % (p,))
        if not 1 <= r <= 3:
            raise ValueError("r must be between 1 and 3, got %r" % (r,))
        self.p = p
        self.r = r
        self.q = p ** r
        q = self.q
        self.modpoly = _find_irreducible(p, r)
        add = np.zeros((q, q), dtype=np.int16)
        mul = np.zeros((q, q), dtype=np.int16)
        for a in range(q):
            pa = _poly_from_code(a, p, r)
            for b in range(q):
                pb = _poly_from_code(b, p, r)
                add[a, b] = _code_from_poly(
                    [(x + y) % p for x, y in zip(pa, pb)], p)
                mul[a, b] = _code_from_poly(
                    _poly_mul_mod(pa, pb, self.modpoly, p), p)
        self.add_table = add
        self.mul_table = mul
        neg = np.zeros(q, dtype=np.int16)
        inv = np.zeros(q, dtype=np.int16)
        for a in range(q):
            neg[a] = _code_from_poly(
                [(-c) % p for c in _poly_from_code(a, p, r)], p)
            if a:
                for b in range(1, q):
                    if mul[a, b] == 1:
                        inv[a] = b
                        break
        self.neg_table = neg
        self.inv_table = inv

    def __repr__(self):
        return "FiniteField(%d, %d)" % (self.p, self.r)

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.r) == (other.p, other.r)

    def __hash__(self):
        return hash((self.p, self.r))

    @property
    def modulus(self):
        """The degeneration modulus p^r - 1 (1 means the residue ring collapses)."""
        return self.q - 1

    def add(self, a, b):
        return int(self.add_table[a, b])

    def sub(self, a, b):
        return int(self.add_table[a, self.neg_table[b]])

    def mul(self, a, b):
        return int(self.mul_table[a, b])

    def neg(self, a):
        return int(self.neg_table[a])

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return int(self.inv_table[a])

    def elements(self):
        return range(self.q)


def field(p, r=1):
    key = (p, r)
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = FiniteField(p, r)
    return _FIELD_CACHE[key]


def parse_field(text):
    """Parse "p^r" or "p" into a field, e.g. "3^1", "4" is rejected."""
    if "^" in text:
        ps, rs = text.split("^", 1)
        return field(int(ps), int(rs))
    return field(int(text))


# -- dense matrices over a field (tuples of tuples of codes) -----------------

def zeros(rows, cols):
    return tuple(tuple(0 for _ in range(cols)) for _ in range(rows))

def identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_add(F, A, B):
    return tuple(tuple(F.add(a, b) for a, b in zip(ra, rb))
                 for ra, rb in zip(A, B))


def mat_scale(F, c, A):
    return tuple(tuple(F.mul(c, a) for a in row) for row in A)


def mat_mul(F, A, B):
    if not A or not B:
        return ()
    n, m, l = len(A), len(B), len(B[0]) if B else 0
    add, mul = F.add_table, F.mul_table
    out = []
    for i in range(n):
        row = []
        Ai = A[i]
        for j in range(l):
            acc = 0
            for k in range(m):
                acc = add[acc, mul[Ai[k], B[k][j]]]
            row.append(int(acc))
        out.append(tuple(row))
    return tuple(out)


def mat_vec(F, A, v):
    return tuple(r[0] for r in mat_mul(F, A, tuple((x,) for x in v)))


def rref(F, rows):
    """Reduced row echelon form.  Returns (rref rows, pivot column list)."""
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(mat)):
            if mat[i][c]:
                pr = i
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = F.inv(mat[r][c])
        mat[r] = [F.mul(inv, x) for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [F.sub(x, F.mul(f, y))
                          for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return [tuple(row) for row in mat[:r]], pivots


def rank(F, rows):
    return len(rref(F, rows)[0])


def nullspace(F, rows):
    """Basis of the right nullspace, as tuples."""
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = rref(F, rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = F.neg(red[i][fc])
        basis.append(tuple(vec))
    return basis


def mat_inverse(F, A):
    """Inverse of a square matrix, or None if singular."""
    n = len(A)
    aug = [list(A[i]) + [1 if j == i else 0 for j in range(n)]
           for i in range(n)]
    red, pivots = rref(F, aug)
    if pivots[:n] != list(range(n)):
        return None
    return tuple(tuple(red[i][n:]) for i in range(n))


def is_invertible(F, A):
    n = len(A)
    if n == 0:
        return True
    if any(len(r) != n for r in A):
        return False
    return len(rref(F, A)[0]) == n


def solve_in_span(F, basis_rows, target):
    """Coefficients expressing target in the span of basis_rows, or None."""
    if not basis_rows:
        return None if any(target) else ()
    ncols = len(target)
    aug = [list(r) for r in basis_rows]
    red, pivots = rref(F, aug)
    coeffs_on_red = []
    t = list(target)
    for i, pc in enumerate(pivots):
        c = t[pc]
        coeffs_on_red.append(c)
        if c:
            t = [F.sub(x, F.mul(c, y)) for x, y in zip(t, red[i])]
    if any(t):
        return None
    # convert from coefficients on the rref rows to the original rows
    sol = nullspace_solution(F, basis_rows, target)
    return sol


def nullspace_solution(F, rows, target):
    """Solve x * rows = target (row combination), returning x or None."""
    m = len(rows)
    if m == 0:
        return None if any(target) else ()
    ncols = len(rows[0])
    # transpose system: rows^T * x^T = target^T
    aug = [[rows[i][c] for i in range(m)] + [target[c]] for c in range(ncols)]
    red, pivots = rref(F, aug)
    if m in pivots:
        return None
    x = [0] * m
    for i, pc in enumerate(pivots):
        x[pc] = red[i][m]
    return tuple(x)


def subspaces(F, dim, k):
    """All k-dimensional subspaces of F^dim, each as an rref row tuple."""
    if k == 0:
        return [()]
    if k > dim:
        return []
    import itertools
    out = []
    for pivots in itertools.combinations(range(dim), k):
        free_positions = []
        for i in range(k):
            for c in range(pivots[i] + 1, dim):
                if c not in pivots:
                    # free entry unless the column is a later pivot
                    free_positions.append((i, c))
        def fill(idx, rows):
            if idx == len(free_positions):
                out.append(tuple(tuple(r) for r in rows))
                return
            i, c = free_positions[idx]
            for val in range(F.q):
                rows[i][c] = val
                fill(idx + 1, rows)
            rows[i][c] = 0
        base = [[0] * dim for _ in range(k)]
        for i, pc in enumerate(pivots):
            base[i][pc] = 1
        fill(0, base)
    return out


def in_rowspace(F, red_rows, pivots, vec):
    """Membership of vec in a row space given in rref form."""
    t = list(vec)
    for i, pc in enumerate(pivots):
        if t[pc]:
            c = t[pc]
            t = [F.sub(x, F.mul(c, y)) for x, y in zip(t, red_rows[i])]
    return not any(t)
