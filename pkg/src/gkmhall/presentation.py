"""Lie algebras presented by generators and relators.

Two graded-dimension engines share one staging scheme (relators enter at
their top total degree; ideal rows are closed under ad(generator) stage
by stage):

* graded_dims_exact: relators homogeneous in the full multidegree, so the
  ideal is multidegree-graded and per-block exact rational elimination
  gives true dimensions with no truncation error.

* quotient_dims_truncated: relators only homogeneous for a coarse grading
  delta (they may mix total degrees, like [[x-,x+],x+] + a x+).  Blocks
  are delta-degrees; rows live on Lyndon-word coordinates within a total
  degree window <= N.  Reported dims are upper bounds for the quotient,
  nonincreasing in N; the stability flag compares cutoffs N-1 and N.

The truncated engine eliminates mod a ~2^19 prime (values then fit table
free in int64/float64 kernels; a modular rank can only undercount, so the
reported dimension remains a valid upper bound, and agreement with an
exact oracle still certifies equality).  Set GKMHALL_EXACT=1 to force
exact rational elimination in the truncated engine as well.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels
from .freelie import (FreeLieAlgebra, RelatorSet, bracket, doubled_algebra,
                      kernel_relators, plain_algebra, serre_relators)


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_below(n):
    while not _is_prime(n):
        n -= 1
    return n


# Two elimination primes just below 2^19 (second used only to re-check a
# MISMATCH verdict; any prime gives a valid dimension upper bound).
MODP_PRIMES = (_prime_below(2 ** 19), _prime_below(_prime_below(2 ** 19) - 1))
assert all(_is_prime(p) for p in MODP_PRIMES)


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class Presentation:
    """Generator alphabet with a coarse grading delta and a relator set."""

    algebra: FreeLieAlgebra
    deltas: tuple       # one integer tuple per generator
    relators: RelatorSet

    def __post_init__(self):
        if len(self.deltas) != self.algebra.k:
            raise PresentationError("one delta per generator required")
        if self.relators.algebra is not self.algebra:
            raise PresentationError("relators live on a different alphabet")
        for _, r in self.relators.relators:
            if r.is_zero():
                raise PresentationError("zero relator")
            if self.delta_of_element(r) is None:
                raise PresentationError("delta-inhomogeneous relator %r" % (r,))

    def delta_of_word(self, word):
        m = len(self.deltas[0])
        out = [0] * m
        for a in word:
            d = self.deltas[a]
            for s in range(m):
                out[s] += d[s]
        return tuple(out)

    def delta_of_element(self, x):
        ds = {self.delta_of_word(w) for w in x.terms}
        if len(ds) == 1:
            return ds.pop()
        return None


def positive_presentation(C):
    """n+(C): plain alphabet, delta = multidegree, Serre relators."""
    A = plain_algebra(C)
    n = C.size
    deltas = tuple(tuple(1 if j == i else 0 for j in range(n))
                   for i in range(n))
    return Presentation(A, deltas, serre_relators(C, doubled=False))


def doubled_presentation(C):
    """Doubled alphabet with delta(x+_i)=+e_i, delta(x-_i)=-e_i and the
    relators of the quotient presentation (Serre on C-double plus kernel
    generators)."""
    A = doubled_algebra(C)
    n = C.size
    deltas = tuple(tuple(1 if j == i else 0 for j in range(n))
                   for i in range(n)) + \
        tuple(tuple(-1 if j == i else 0 for j in range(n))
              for i in range(n))
    s = serre_relators(C, doubled=True)
    k = kernel_relators(C)
    rels = RelatorSet(A, s.relators + k.relators)
    return Presentation(A, deltas, rels)


@dataclass
class GradedDimensionTable:
    entries: dict       # degree tuple -> dim
    cutoff: int
    stability: dict     # degree tuple -> bool
    previous: dict = field(default_factory=dict)  # dims at cutoff-1

    def degrees(self):
        return sorted(self.entries)

    def to_tsv(self):
        lines = []
        for d in self.degrees():
            cells = [str(c) for c in d]
            cells.append(str(self.entries[d]))
            cells.append("stable" if self.stability[d] else "unstable")
            lines.append("\t".join(cells))
        return "\n".join(lines) + "\n"


# -- exact engine (multidegree-homogeneous relators) -------------------------

class _ExactBlock:
    """Inter-reduced sparse rows with distinct pivot words."""

    __slots__ = ("pivrows",)

    def __init__(self):
        self.pivrows = {}  # pivot word -> row dict (pivot coeff 1)

    def insert(self, row):
        row = dict(row)
        for piv, prow in self.pivrows.items():
            c = row.get(piv)
            if c:
                for w, cw in prow.items():
                    nv = row.get(w, 0) - c * cw
                    if nv:
                        row[w] = nv
                    else:
                        row.pop(w, None)
        if not row:
            return None
        piv = min(row, key=lambda w: (len(w), w))
        lead = row[piv]
        row = {w: Fraction(c, 1) / lead for w, c in row.items()}
        for prow in self.pivrows.values():
            c = prow.get(piv)
            if c:
                for w, cw in row.items():
                    nv = prow.get(w, 0) - c * cw
                    if nv:
                        prow[w] = nv
                    else:
                        prow.pop(w, None)
        self.pivrows[piv] = row
        return row

    @property
    def rank(self):
        return len(self.pivrows)


def _child_row(alg, row, g):
    """ad(x_g) applied to a Lyndon-coordinate row."""
    out = {}
    for w, c in row.items():
        for u, cu in alg.letter_bracket(g, w).items():
            nv = out.get(u, 0) + c * cu
            if nv:
                out[u] = nv
            else:
                out.pop(u, None)
    return out


def _exact_spans(P, cutoff):
    """Ideal spans per multidegree: dict multidegree -> _ExactBlock."""
    alg = P.algebra
    rel_by_deg = {}
    for _, r in P.relators.relators:
        if r.multidegree() is None:
            raise PresentationError("multidegree-inhomogeneous relator %r" % (r,))
        deg = sum(r.multidegree())
        rel_by_deg.setdefault(deg, []).append(r)
    blocks = {}
    new_rows = []  # (multidegree, row) inserted in the previous stage
    for t in range(1, cutoff + 1):
        candidates = []
        for r in rel_by_deg.get(t, ()):
            candidates.append((r.multidegree(), dict(r.terms)))
        for md, row in new_rows:
            for g in range(alg.k):
                child = _child_row(alg, row, g)
                if child:
                    cmd = tuple(a + (1 if i == g else 0)
                                for i, a in enumerate(md))
                    candidates.append((cmd, child))
        new_rows = []
        for md, row in candidates:
            block = blocks.setdefault(md, _ExactBlock())
            inserted = block.insert(row)
            if inserted is not None:
                new_rows.append((md, dict(inserted)))
    return blocks


def _multidegrees(k, cutoff):
    """All nonzero multidegrees over k slots with total <= cutoff."""
    out = []

    def rec(prefix, remaining):
        if len(prefix) == k:
            if sum(prefix):
                out.append(tuple(prefix))
            return
        for v in range(remaining + 1):
            rec(prefix + [v], remaining - v)
    rec([], cutoff)
    return sorted(out)


def graded_dims_exact(P, cutoff):
    """Exact graded dimensions of the quotient, per multidegree."""
    alg = P.algebra
    blocks = _exact_spans(P, cutoff)
    entries = {}
    stability = {}
    for md in _multidegrees(alg.k, cutoff):
        nwords = len(alg.lyndon_words_of_multidegree(md))
        rank = blocks[md].rank if md in blocks else 0
        entries[md] = nwords - rank
        stability[md] = True
    return GradedDimensionTable(entries, cutoff, stability,
                                previous=dict(entries))


# -- truncated engine (delta-homogeneous relators) ---------------------------

class _ModpBlock:
    __slots__ = ("cols", "col_index", "basis", "pivcols", "nrows",
                 "row_stage", "new_rows")

    def __init__(self, cols, dtype):
        self.cols = cols
        self.col_index = {w: i for i, w in enumerate(cols)}
        n = len(cols)
        self.basis = np.zeros((n, n), dtype=dtype)
        self.pivcols = np.zeros(n, dtype=np.int64)
        self.nrows = 0
        self.row_stage = []
        self.new_rows = []

    def ncols_upto(self, t):
        return sum(1 for w in self.cols if len(w) <= t)

    def rank_upto(self, t):
        return sum(1 for s in self.row_stage if s <= t)


def _build_blocks(P, cutoff, dtype):
    alg = P.algebra
    by_beta = {}
    for w in alg.lyndon_words(cutoff):
        by_beta.setdefault(P.delta_of_word(w), []).append(w)
    blocks = {}
    for beta, ws in by_beta.items():
        ws.sort(key=lambda w: (len(w), w))
        blocks[beta] = _ModpBlock(ws, dtype)
    return blocks


def _transition(alg, P, g, src_block, blocks, p, dtype, cache):
    """Matrix of ad(x_g) from a source block to its target block, mod p."""
    key = (g, id(src_block))
    M = cache.get(key)
    if M is not None:
        return M
    n_src = len(src_block.cols)
    dg = P.deltas[g]
    # target beta = delta of (source word + letter g); compute from any word
    src_beta = P.delta_of_word(src_block.cols[0])
    beta_t = tuple(a + b for a, b in zip(src_beta, dg))
    tgt = blocks.get(beta_t)
    if tgt is None:
        cache[key] = (None, None)
        return (None, None)
    M = np.zeros((n_src, len(tgt.cols)), dtype=dtype)
    cutoff_len = max(len(w) for w in tgt.cols)
    for si, w in enumerate(src_block.cols):
        if len(w) + 1 > cutoff_len:
            continue
        for u, c in alg.letter_bracket(g, w).items():
            ti = tgt.col_index.get(u)
            if ti is not None:
                M[si, ti] = c % p
    out = (M, tgt)
    cache[key] = out
    return out


def _truncated_modp(P, cutoff, p):
    impl = _kernels.impl()
    dtype = impl.MODP_DTYPE
    alg = P.algebra
    blocks = _build_blocks(P, cutoff, dtype)
    rel_by_stage = {}
    for _, r in P.relators.relators:
        stage = max(len(w) for w in r.terms)
        if stage <= cutoff:
            rel_by_stage.setdefault(stage, []).append(r)
    cache = {}
    for t in range(1, cutoff + 1):
        cand = {}  # id(block) -> (block, list of rows)
        for r in rel_by_stage.get(t, ()):
            beta = P.delta_of_element(r)
            block = blocks[beta]
            vec = np.zeros(len(block.cols), dtype=dtype)
            for w, c in r.terms.items():
                vec[block.col_index[w]] = c % p
            cand.setdefault(id(block), (block, []))[1].append(vec)
        for block in blocks.values():
            if not block.new_rows:
                continue
            rows = block.basis[np.array(block.new_rows, dtype=np.int64)]
            for g in range(alg.k):
                M, tgt = _transition(alg, P, g, block, blocks, p, dtype, cache)
                if M is None:
                    continue
                children = np.mod(rows @ M, p).astype(dtype)
                cand.setdefault(id(tgt), (tgt, []))[1].append(children)
        for block in blocks.values():
            block.new_rows = []
        for block, rows in cand.values():
            mats = [np.atleast_2d(r) for r in rows]
            allrows = np.ascontiguousarray(np.vstack(mats).astype(dtype))
            impl.modp_reduce_rows(block.basis, block.pivcols, block.nrows,
                                  allrows, p)
            for i in range(allrows.shape[0]):
                before = block.nrows
                block.nrows, piv = impl.modp_insert(
                    block.basis, block.pivcols, block.nrows,
                    allrows[i].copy(), p)
                if block.nrows > before:
                    block.row_stage.append(t)
                    block.new_rows.append(before)
    return blocks


def _truncated_exact(P, cutoff):
    """Exact rational variant of the truncated engine (GKMHALL_EXACT)."""
    alg = P.algebra
    rel_by_stage = {}
    for _, r in P.relators.relators:
        stage = max(len(w) for w in r.terms)
        if stage <= cutoff:
            rel_by_stage.setdefault(stage, []).append(r)
    spans = {}       # beta -> _ExactBlock
    stages = {}      # beta -> list of stages of inserted rows
    new_rows = []
    for t in range(1, cutoff + 1):
        candidates = []
        for r in rel_by_stage.get(t, ()):
            candidates.append((P.delta_of_element(r), dict(r.terms)))
        for beta, row in new_rows:
            for g in range(alg.k):
                child = {w: c for w, c in _child_row(alg, row, g).items()
                         if len(w) <= cutoff}
                if child:
                    cb = tuple(a + b for a, b in zip(beta, P.deltas[g]))
                    candidates.append((cb, child))
        new_rows = []
        for beta, row in candidates:
            block = spans.setdefault(beta, _ExactBlock())
            inserted = block.insert(row)
            if inserted is not None:
                stages.setdefault(beta, []).append(t)
                new_rows.append((beta, dict(inserted)))
    return spans, stages


def quotient_dims_truncated(P, cutoff, prime=None):
    """Upper-bound graded dimensions per delta-degree at total degree <= N."""
    alg = P.algebra
    words = alg.lyndon_words(cutoff)
    if os.environ.get("GKMHALL_EXACT") == "1":
        spans, stages = _truncated_exact(P, cutoff)
        by_beta = {}
        for w in words:
            by_beta.setdefault(P.delta_of_word(w), []).append(w)
        entries, stability, previous = {}, {}, {}
        for beta in sorted(by_beta):
            ws = by_beta[beta]
            rank_n = spans[beta].rank if beta in spans else 0
            rank_p = (sum(1 for s in stages.get(beta, []) if s <= cutoff - 1))
            ncols_n = len(ws)
            ncols_p = sum(1 for w in ws if len(w) <= cutoff - 1)
            entries[beta] = ncols_n - rank_n
            # a degree absent from the narrower window is a first
            # observation, not an instability: baseline = current value
            previous[beta] = (ncols_p - rank_p) if ncols_p else entries[beta]
            stability[beta] = entries[beta] == previous[beta]
        return GradedDimensionTable(entries, cutoff, stability, previous)
    p = MODP_PRIMES[0] if prime is None else prime
    blocks = _truncated_modp(P, cutoff, p)
    entries, stability, previous = {}, {}, {}
    for beta in sorted(blocks):
        b = blocks[beta]
        entries[beta] = len(b.cols) - b.nrows
        ncols_p = b.ncols_upto(cutoff - 1)
        # first observation of a degree counts as its own baseline
        previous[beta] = (ncols_p - b.rank_upto(cutoff - 1)) if ncols_p \
            else entries[beta]
        stability[beta] = entries[beta] == previous[beta]
    return GradedDimensionTable(entries, cutoff, stability, previous)


# -- Theorem 3.3 desk check --------------------------------------------------

@dataclass
class Thm33Row:
    beta: tuple
    dim: int
    oracle: int
    stable: bool
    verdict: str


@dataclass
class Thm33Report:
    matrix_labels: tuple
    cutoff: int
    rows: list
    assumption: str = ("degree-0 oracle dim = |I| "
                       "(h_i assumed linearly independent)")

    def all_match(self):
        return all(r.verdict == "MATCH" for r in self.rows)

    def to_tsv(self):
        lines = []
        for r in self.rows:
            cells = [",".join(str(c) for c in r.beta), str(r.dim),
                     str(r.oracle), r.verdict]
            lines.append("\t".join(cells))
        return "\n".join(lines) + "\n"


def verify_theorem33(C, cutoff):
    """Compare the doubled-quotient dims against the n+(C) oracle.

    Verdict per delta-degree: MATCH (stable and equal to the oracle),
    UNSTABLE (window still moving), MISMATCH (stable but unequal).  A
    MISMATCH under the first elimination prime is re-checked with the
    second before being reported.
    """
    if cutoff < 2:
        raise ValueError("cutoff must be >= 2")
    P = doubled_presentation(C)
    table = quotient_dims_truncated(P, cutoff)
    entries, previous = dict(table.entries), dict(table.previous)
    oracle_table = graded_dims_exact(positive_presentation(C), cutoff)

    def oracle_of(beta):
        if all(b == 0 for b in beta):
            return C.size
        if all(b >= 0 for b in beta):
            return oracle_table.entries.get(beta, 0)
        if all(b <= 0 for b in beta):
            return oracle_table.entries.get(tuple(-b for b in beta), 0)
        return 0

    mismatch = [beta for beta in entries
                if entries[beta] == previous[beta]
                and entries[beta] != oracle_of(beta)]
    if mismatch and os.environ.get("GKMHALL_EXACT") != "1":
        second = quotient_dims_truncated(P, cutoff, prime=MODP_PRIMES[1])
        for beta in entries:
            entries[beta] = min(entries[beta], second.entries[beta])
            previous[beta] = min(previous[beta], second.previous[beta])
    rows = []
    for beta in sorted(entries):
        dim = entries[beta]
        stable = dim == previous[beta]
        oracle = oracle_of(beta)
        if not stable:
            verdict = "UNSTABLE"
        elif dim == oracle:
            verdict = "MATCH"
        else:
            verdict = "MISMATCH"
        rows.append(Thm33Row(beta, dim, oracle, stable, verdict))
    return Thm33Report(C.index_labels, cutoff, rows)


# -- the sl2 matrix model (Lemma 3.1) ----------------------------------------

def _mat_mul2(A, B):
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(2))
                       for j in range(2)) for i in range(2))


def _mat_sub2(A, B):
    return tuple(tuple(A[i][j] - B[i][j] for j in range(2)) for i in range(2))


def _mat_comm2(A, B):
    return _mat_sub2(_mat_mul2(A, B), _mat_mul2(B, A))


def _eval_tree(tree, images, memo):
    if isinstance(tree, int):
        return images[tree]
    got = memo.get(tree)
    if got is None:
        got = _mat_comm2(_eval_tree(tree[0], images, memo),
                         _eval_tree(tree[1], images, memo))
        memo[tree] = got
    return got


def evaluate_in_sl2(x, images):
    """Evaluate a FreeLieElement in 2x2 matrices via generator images."""
    memo = {}
    out = ((Fraction(0), Fraction(0)), (Fraction(0), Fraction(0)))
    for w, c in x.terms.items():
        m = _eval_tree(x.algebra.bracketing(w), images, memo)
        out = tuple(tuple(out[i][j] + c * m[i][j] for j in range(2))
                    for i in range(2))
    return out


@dataclass
class Sl2Report:
    rows: list            # (tag, relator repr, maps to zero?)
    surjective: bool

    def ok(self):
        return self.surjective and all(z for _, _, z in self.rows)


def sl2_model_check():
    """Map the doubled alphabet for C=[2] into sl2 and check every relator
    dies while e, f, h are hit."""
    from .cartan import validate
    C = validate([[2]])
    e = ((Fraction(0), Fraction(1)), (Fraction(0), Fraction(0)))
    f = ((Fraction(0), Fraction(0)), (Fraction(1), Fraction(0)))
    images = (e, f)
    rels = serre_relators(C, doubled=True).relators + \
        kernel_relators(C).relators
    rows = []
    for tag, r in rels:
        val = evaluate_in_sl2(r, images)
        rows.append((tag, repr(r), all(val[i][j] == 0 for i in range(2)
                                       for j in range(2))))
    A = doubled_algebra(C)
    xs = [A.gen_by_index(0), A.gen_by_index(1)]
    h = evaluate_in_sl2(bracket(xs[0], xs[1]), images)
    vecs = [sum([list(m[0]), list(m[1])], []) for m in (e, f, h)]
    # rank of the three flattened images over the rationals
    rank = 0
    basis = []
    for v in vecs:
        v = list(v)
        for b in basis:
            piv = next(i for i, c in enumerate(b) if c)
            if v[piv]:
                fct = Fraction(v[piv], 1) / b[piv]
                v = [a - fct * c for a, c in zip(v, b)]
        if any(v):
            basis.append(v)
            rank += 1
    return Sl2Report(rows, rank == 3)
