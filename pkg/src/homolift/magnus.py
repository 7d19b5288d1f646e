"""The equivariant Magnus matrix: a square matrix over the group ring of the
dynamical quotient, assembled from transition-graph arc decorations.  Row i,
column j collects sign * translation-monomial over the arcs from edge i to
edge j.

Traces of exact powers, entrywise specialization at characters, and the
characteristic polynomial over the group ring live here too.
"""

from dataclasses import dataclass, field

from .cyclotomic import Cyclotomic
from .errors import DimensionMismatchError, ResourceLimitError
from .laurent import LaurentElement, specialize


@dataclass(frozen=True)
class MagnusMatrix:
    size: int
    dim: int
    edge_order: tuple     # edge names indexing rows/columns
    entries: tuple        # size x size tuple of LaurentElement
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def entry(self, i, j):
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, MagnusMatrix):
            return NotImplemented
        return (self.size == other.size and self.dim == other.dim
                and all(self.entries[i][j] == other.entries[i][j]
                        for i in range(self.size) for j in range(self.size)))

    def is_zero(self):
        return all(e.is_zero() for row in self.entries for e in row)

    def to_text_rows(self):
        return [[e.to_text() for e in row] for row in self.entries]


def matrix_from_rows(edge_order, dim, rows):
    size = len(rows)
    return MagnusMatrix(size, dim, tuple(edge_order),
                        tuple(tuple(row) for row in rows))


def magnus_matrix(transition):
    """Assemble the matrix from a transition graph's arcs."""
    m = len(transition.nodes)
    d = transition.dim
    rows = [[LaurentElement.zero(d) for _ in range(m)] for _ in range(m)]
    for arc in transition.arcs:
        mono = LaurentElement.monomial(arc.translation, arc.sign)
        rows[arc.source][arc.target] = rows[arc.source][arc.target] + mono
    return matrix_from_rows(transition.nodes, d, rows)


def identity_magnus(edge_order, dim):
    m = len(edge_order)
    rows = [[LaurentElement.constant(dim, int(i == j)) for j in range(m)]
            for i in range(m)]
    return matrix_from_rows(edge_order, dim, rows)


def mat_mul(a, b):
    """Sparse row-by-row product; transition matrices are mostly zeros."""
    if a.dim != b.dim or a.size != b.size:
        raise DimensionMismatchError("matrix shapes/dimensions differ")
    m = a.size
    d = a.dim
    rows_b = [[(j, e.terms) for j, e in enumerate(row) if e.terms]
              for row in b.entries]
    zero = LaurentElement.zero(d)
    out = []
    for i in range(m):
        acc = [None] * m
        for t, x in enumerate(a.entries[i]):
            if not x.terms:
                continue
            xt = x.terms
            for j, yt in rows_b[t]:
                tgt = acc[j]
                if tgt is None:
                    tgt = acc[j] = {}
                for v1, c1 in xt.items():
                    for v2, c2 in yt.items():
                        v = tuple(p + q for p, q in zip(v1, v2))
                        tgt[v] = tgt.get(v, 0) + c1 * c2
        out.append([
            LaurentElement._raw(d, {v: c for v, c in acc[j].items() if c})
            if acc[j] else zero for j in range(m)])
    return matrix_from_rows(a.edge_order, a.dim, out)


def mat_pow(a, k):
    """k-th power; successive powers are cached on the matrix."""
    if k < 1:
        raise ValueError("exponent must be >= 1")
    powers = a._cache.setdefault("powers", [a])
    while len(powers) < k:
        powers.append(mat_mul(powers[-1], a))
    return powers[k - 1]


def trace(a):
    acc = LaurentElement.zero(a.dim)
    for i in range(a.size):
        acc = acc + a.entries[i][i]
    return acc


def trace_power(a, k):
    return trace(mat_pow(a, k))


def specialize_matrix(a, chi):
    """Entrywise specialization; exact (cyclotomic) when the character is."""
    if a.dim != chi.dim:
        raise DimensionMismatchError("matrix and character dimensions differ")
    return [[specialize(a.entries[i][j], chi) for j in range(a.size)]
            for i in range(a.size)]


@dataclass(frozen=True)
class EquivariantCharPoly:
    """det(xI - A) with group-ring coefficients, lowest degree first."""

    dim: int
    coefficients: tuple   # m+1 LaurentElements, leading one is 1

    def specialize(self, chi):
        return [specialize(c, chi) for c in self.coefficients]


def charpoly_generic(entries, zero, one):
    """Characteristic polynomial over any commutative Q-algebra.

    Faddeev-LeVerrier: only ring operations plus exact division by integers.
    Returns coefficients lowest degree first (monic).
    """
    n = len(entries)
    coeffs_desc = [one]
    mk = [[zero for _ in range(n)] for _ in range(n)]
    ck = one
    for k in range(1, n + 1):
        b = [[mk[i][j] + (ck if i == j else zero) for j in range(n)]
             for i in range(n)]
        mk = [[sum((entries[i][t] * b[t][j] for t in range(n)), zero)
               for j in range(n)] for i in range(n)]
        tr = sum((mk[i][i] for i in range(n)), zero)
        ck = tr / (-k)
        coeffs_desc.append(ck)
    return list(reversed(coeffs_desc))


def equivariant_charpoly(a, max_size=12):
    if a.size > max_size:
        raise ResourceLimitError(
            f"characteristic polynomial over the group ring limited to "
            f"size {max_size}, got {a.size}")
    zero = LaurentElement.zero(a.dim)
    one = LaurentElement.constant(a.dim, 1)
    coeffs = charpoly_generic([list(r) for r in a.entries], zero, one)
    return EquivariantCharPoly(a.dim, tuple(coeffs))


def charpoly_complex_exact(entries):
    """Characteristic polynomial of a square matrix of Cyclotomic numbers."""
    n = len(entries)
    orders = {e.order for row in entries for e in row}
    order = 1
    from math import gcd
    for o in orders:
        order = order * o // gcd(order, o)
    zero = Cyclotomic.zero(order)
    one = Cyclotomic.from_rational(1, order)
    ents = [[e.promoted(order) for e in row] for row in entries]
    return charpoly_generic(ents, zero, one)


def cyc_mat_mul(a, b):
    n = len(a)
    return [[sum((a[i][t] * b[t][j] for t in range(n)), Cyclotomic.zero(1))
             for j in range(n)] for i in range(n)]


def cyc_trace(a):
    return sum((a[i][i] for i in range(len(a))), Cyclotomic.zero(1))
