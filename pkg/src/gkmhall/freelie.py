"""Free Lie algebras on a finite alphabet with the Lyndon-word basis.

Elements are stored as exact rational (in practice integer) linear
combinations of Lyndon words, each word standing for its standard right
bracketing.  Brackets are computed by expanding into the tensor algebra
and projecting back onto the basis, using the triangularity of the
expansion of a Lyndon bracketing (the word itself is its lexicographically
least term).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


def is_lyndon(word):
    """True if word is strictly smaller than all of its proper rotations."""
    n = len(word)
    if n == 0:
        return False
    for i in range(1, n):
        if word[i:] + word[:i] <= word:
            return False
    return True


def duval_generate(k, maxlen):
    """All Lyndon words of length <= maxlen over the alphabet 0..k-1.

    Duval's algorithm; output in lexicographic order.
    """
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        m = len(w)
        if m <= maxlen:
            out.append(tuple(w))
        while len(w) < maxlen:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()
    return out


def standard_factorization(word):
    """Split a Lyndon word (length >= 2) as u,v with v the longest proper
    Lyndon suffix."""
    for i in range(1, len(word)):
        if is_lyndon(word[i:]):
            return word[:i], word[i:]
    raise ValueError("not a Lyndon word: %r" % (word,))


class AlphabetMismatch(ValueError):
    pass


class FreeLieAlgebra:
    """Free Lie algebra on an ordered finite set of generator labels."""

    def __init__(self, labels):
        self.labels = tuple(labels)
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("generator labels must be unique")
        self.k = len(self.labels)
        self._expansion = {}      # word -> {word: int}
        self._bracketing = {}
        self._lyndon_by_len = {}  # maxlen -> list of words
        self._letter_bracket = {}  # (generator index, word) -> {word: int}

    # -- words ---------------------------------------------------------------

    def lyndon_words(self, max_total):
        if max_total not in self._lyndon_by_len:
            self._lyndon_by_len[max_total] = duval_generate(self.k, max_total)
        return self._lyndon_by_len[max_total]

    def lyndon_words_of_multidegree(self, multidegree):
        total = sum(multidegree)
        if total == 0:
            return []
        return [w for w in self.lyndon_words(total)
                if len(w) == total and self.multidegree(w) == tuple(multidegree)]

    def multidegree(self, word):
        d = [0] * self.k
        for a in word:
            d[a] += 1
        return tuple(d)

    def bracketing(self, word):
        """Standard right bracketing of a Lyndon word, as nested tuples."""
        if word in self._bracketing:
            return self._bracketing[word]
        if len(word) == 1:
            tree = word[0]
        else:
            u, v = standard_factorization(word)
            tree = (self.bracketing(u), self.bracketing(v))
        self._bracketing[word] = tree
        return tree

    def expansion(self, word):
        """Tensor-algebra expansion of the standard bracketing of a Lyndon
        word, as a dict mapping plain words to integer coefficients."""
        e = self._expansion.get(word)
        if e is not None:
            return e
        if len(word) == 1:
            e = {word: 1}
        else:
            u, v = standard_factorization(word)
            e = _concat_commutator(self.expansion(u), self.expansion(v))
        self._expansion[word] = e
        return e

    # -- elements ------------------------------------------------------------

    def zero(self):
        return FreeLieElement(self, {})

    def gen(self, label):
        i = self.labels.index(label)
        return FreeLieElement(self, {(i,): 1})

    def gen_by_index(self, i):
        return FreeLieElement(self, {(i,): 1})

    def element(self, terms):
        return FreeLieElement(self, dict(terms))

    def from_tensor(self, tensor):
        """Project a Lie element given in tensor coordinates onto the
        Lyndon basis.  Raises ValueError if the input is not a Lie
        element (peeling then meets a non-Lyndon leading word)."""
        groups = {}
        for w, c in tensor.items():
            if c:
                groups.setdefault(self.multidegree(w), {})[w] = c
        result = {}
        for part in groups.values():
            while part:
                w = min(k for k, c in part.items() if c)
                if not is_lyndon(w):
                    raise ValueError("not a Lie element; stuck at word %r"
                                     % (w,))
                c = part[w]
                result[w] = c
                for u, cu in self.expansion(w).items():
                    nv = part.get(u, 0) - c * cu
                    if nv:
                        part[u] = nv
                    else:
                        part.pop(u, None)
        return FreeLieElement(self, result)

    def letter_bracket(self, i, word):
        """[x_i, b(word)] in Lyndon coordinates, as a word->int dict.

        Memoized; this is the workhorse of ideal closure in the
        presentation module (every ad(generator) application is a linear
        combination of letter brackets).
        """
        key = (i, word)
        out = self._letter_bracket.get(key)
        if out is None:
            tensor = _concat_commutator({(i,): 1}, self.expansion(word))
            out = self.from_tensor(tensor).terms
            self._letter_bracket[key] = out
        return out


_ALGEBRA_CACHE = {}


def algebra_on(labels):
    """Shared FreeLieAlgebra instance per label tuple (memo reuse)."""
    labels = tuple(labels)
    if labels not in _ALGEBRA_CACHE:
        _ALGEBRA_CACHE[labels] = FreeLieAlgebra(labels)
    return _ALGEBRA_CACHE[labels]


def _concat_product(a, b):
    out = {}
    for u, cu in a.items():
        for v, cv in b.items():
            w = u + v
            nv = out.get(w, 0) + cu * cv
            if nv:
                out[w] = nv
            else:
                out.pop(w, None)
    return out


def _concat_commutator(a, b):
    out = _concat_product(a, b)
    for u, cu in b.items():
        for v, cv in a.items():
            w = u + v
            nv = out.get(w, 0) - cu * cv
            if nv:
                out[w] = nv
            else:
                out.pop(w, None)
    return out


class FreeLieElement:
    """Exact linear combination of Lyndon basis words.

    Coefficients are ints or Fractions; no floating point ever enters.
    """

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms):
        self.algebra = algebra
        self.terms = {w: c for w, c in terms.items() if c}

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, FreeLieElement)
                and self.algebra is other.algebra
                and self.terms == other.terms)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            nv = out.get(w, 0) + c
            if nv:
                out[w] = nv
            else:
                out.pop(w, None)
        return FreeLieElement(self.algebra, out)

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __rmul__(self, scalar):
        return FreeLieElement(self.algebra,
                              {w: scalar * c for w, c in self.terms.items()})

    def _check(self, other):
        if not isinstance(other, FreeLieElement) or other.algebra is not self.algebra:
            raise AlphabetMismatch("elements live over different alphabets")

    def multidegree(self):
        """Common multidegree of all terms, or None for 0 / inhomogeneous."""
        degs = {self.algebra.multidegree(w) for w in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def total_degrees(self):
        return sorted({len(w) for w in self.terms})

    def to_tensor(self):
        out = {}
        for w, c in self.terms.items():
            for u, cu in self.algebra.expansion(w).items():
                nv = out.get(u, 0) + c * cu
                if nv:
                    out[u] = nv
                else:
                    out.pop(u, None)
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            c = self.terms[w]
            word = ".".join(str(self.algebra.labels[a]) for a in w)
            bits.append("%s*[%s]" % (c, word))
        return " + ".join(bits)


def bracket(x, y):
    """Lie bracket, expressed in the Lyndon basis."""
    x._check(y)
    tx, ty = x.to_tensor(), y.to_tensor()
    return x.algebra.from_tensor(_concat_commutator(tx, ty))


def ad_power(x, k, y):
    """k-fold left bracket [x,[x,...,[x,y]...]]."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = y
    for _ in range(k):
        out = bracket(x, out)
    return out


# -- relator families --------------------------------------------------------

@dataclass(frozen=True)
class RelatorSet:
    algebra: FreeLieAlgebra
    relators: tuple  # of (tag, FreeLieElement)

    def elements(self):
        return [r for _, r in self.relators]

    def tagged(self, tag):
        return [r for t, r in self.relators if t == tag]


def normalize_relator(x):
    """Scale so the coefficient of the lexicographically smallest basis
    word is positive and the integer content is 1."""
    if x.is_zero():
        return x
    terms = {w: Fraction(c) for w, c in x.terms.items()}
    denom = 1
    for c in terms.values():
        denom = denom * c.denominator // gcd(denom, c.denominator)
    ints = {w: int(c * denom) for w, c in terms.items()}
    g = 0
    for c in ints.values():
        g = gcd(g, c)
    lead = min(ints, key=lambda w: (len(w), w))
    if ints[lead] < 0:
        g = -g
    return FreeLieElement(x.algebra, {w: c // g for w, c in ints.items()})


def plain_algebra(C):
    return algebra_on(tuple("x%s" % l for l in C.index_labels))


def doubled_algebra(C):
    labels = tuple("x+%s" % l for l in C.index_labels) + \
        tuple("x-%s" % l for l in C.index_labels)
    return algebra_on(labels)


def serre_relators(C, doubled=False):
    """Serre-type relators attached to a Borcherds-Cartan matrix.

    doubled=False: on the alphabet {x_i}, the commutations [x_i, x_j] for
    a_ij = 0 (i < j) and the power relators ad(x_i)^(1-a_ij)(x_j) for
    a_ii = 2, j != i.

    doubled=True: on {x+_i, x-_i}, the same families within each sign,
    the cross-sign commutators [x+_i, x-_j] (i != j), and the cross-sign
    powers ad(x^a_i)^3(x^-a_i) for a_ii = 2.  This set coincides with the
    plain set of the doubled matrix after label translation.
    """
    n = C.size
    rels = []
    if not doubled:
        A = plain_algebra(C)
        x = [A.gen_by_index(i) for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                if C[i, j] == 0:
                    rels.append(("commutation", bracket(x[i], x[j])))
        for i in range(n):
            if C[i, i] == 2:
                for j in range(n):
                    if j != i:
                        rels.append(("serre_power",
                                     ad_power(x[i], 1 - C[i, j], x[j])))
    else:
        A = doubled_algebra(C)
        xp = [A.gen_by_index(i) for i in range(n)]
        xm = [A.gen_by_index(n + i) for i in range(n)]
        gens = {"+": xp, "-": xm}
        for sign in ("+", "-"):
            xs = gens[sign]
            for i in range(n):
                for j in range(i + 1, n):
                    if C[i, j] == 0:
                        rels.append(("commutation", bracket(xs[i], xs[j])))
        for i in range(n):
            for j in range(n):
                if i != j:
                    rels.append(("cross_sign", bracket(xp[i], xm[j])))
        for sign in ("+", "-"):
            xs, xo = gens[sign], gens["-" if sign == "+" else "+"]
            for i in range(n):
                if C[i, i] == 2:
                    for j in range(n):
                        if j != i:
                            rels.append(("serre_power",
                                         ad_power(xs[i], 1 - C[i, j], xs[j])))
                    rels.append(("cross_sign", ad_power(xs[i], 3, xo[i])))
    rels = [(t, normalize_relator(r)) for t, r in rels]
    return RelatorSet(A, tuple(rels))


def kernel_relators(C):
    """Generators of the kernel of the quotient map onto the full algebra:
    [[x+_i, x-_i], [x+_j, x-_j]] for i < j, and
    [[x^-a_i, x^a_i], x^a_j] + a_ij x^a_j for all i, j and both signs."""
    n = C.size
    A = doubled_algebra(C)
    xp = [A.gen_by_index(i) for i in range(n)]
    xm = [A.gen_by_index(n + i) for i in range(n)]
    rels = []
    h = [bracket(xp[i], xm[i]) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            rels.append(("torus", bracket(h[i], h[j])))
    for sign, xs, xo in (("+", xp, xm), ("-", xm, xp)):
        for i in range(n):
            for j in range(n):
                rel = bracket(bracket(xo[i], xs[i]), xs[j]) + C[i, j] * xs[j]
                rels.append(("weight", rel))
    rels = [(t, normalize_relator(r)) for t, r in rels]
    return RelatorSet(A, tuple(rels))
