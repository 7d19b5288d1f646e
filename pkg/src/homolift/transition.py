"""The decorated transition graph of a graph self-map.

Nodes are the edges of the underlying graph; each traversal of edge j inside
the image of edge i contributes one arc i -> j, decorated with its ordinal,
its sign, the prefix path before the traversal (including the reversed step
for a negative traversal, so the prefix always ends at the origin of edge j),
and the translation of that prefix in the dynamical quotient.

Simple cycles, the rational polytope spanned by their normalized
translations, its extremal and vertex subgraphs, and per-vertex stability
all live here.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import geometry, magnus
from .errors import ResourceLimitError, ValidationError
from .graphs import EdgePath, empty_path
from .homology import translate
from .laurent import LaurentElement

DEFAULT_CYCLE_CAP = 10 ** 6


@dataclass(frozen=True)
class Arc:
    source: int          # node index (edge of the base graph)
    target: int
    dec: int             # 1-based ordinal among traversals of the target edge
    step_index: int      # 0-based position inside the image path
    sign: int
    prefix: EdgePath
    translation: tuple


@dataclass(frozen=True)
class TransitionGraph:
    nodes: tuple          # edge names, declaration order
    dim: int
    arcs: tuple
    counts: tuple         # counts[i][j] = number of arcs i -> j
    graph_map: object
    tree: object
    quotient: object
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def arcs_from(self, i):
        return [a for a in self.arcs if a.source == i]

    def node_index(self, name):
        return self.nodes.index(name)


def transition_graph(f, st, q):
    g = f.graph
    nodes = tuple(e.name for e in g.edges)
    index = {name: i for i, name in enumerate(nodes)}
    m = len(nodes)
    counts = [[0] * m for _ in range(m)]
    arcs = []
    for e in g.edges:
        i = index[e.name]
        img = f.edge_image[e.name]
        start_vertex = img.start(g)
        for idx, (name, direction) in enumerate(img.steps):
            j = index[name]
            counts[i][j] += 1
            if direction > 0:
                prefix_steps = img.steps[:idx]
            else:
                prefix_steps = img.steps[:idx + 1]
            prefix = (EdgePath(prefix_steps) if prefix_steps
                      else empty_path(start_vertex))
            arcs.append(Arc(
                source=i, target=j, dec=counts[i][j], step_index=idx,
                sign=1 if direction > 0 else -1,
                prefix=prefix,
                translation=translate(q, st, prefix)))
    return TransitionGraph(nodes, q.rank, tuple(arcs),
                           tuple(tuple(r) for r in counts), f, st, q)


def path_data(transition, arcs):
    """Sign, translation, and prefix path of a composable arc sequence.

    The prefix follows the left-to-right recursion
    prefix(d . a) = f(prefix(d)) . prefix(a); the translation is the sum of
    the arc translations, which agrees with the closed-up class of the
    recursive prefix because the map acts trivially on the quotient.
    """
    if not arcs:
        raise ValidationError("arc sequence must be nonempty")
    f = transition.graph_map
    sign = 1
    translation = (0,) * transition.dim
    prefix = None
    prev = None
    for arc in arcs:
        if prev is not None and arc.source != prev.target:
            raise ValidationError("arcs do not form a composable path")
        sign *= arc.sign
        translation = tuple(x + y for x, y in zip(translation, arc.translation))
        prefix = arc.prefix if prefix is None else \
            f.apply_to_path(prefix).concat(arc.prefix, f.graph)
        prev = arc
    return sign, translation, prefix


@dataclass(frozen=True)
class Cycle:
    arc_indices: tuple
    length: int
    sign: int
    translation: tuple
    normalized: tuple     # translation / length, Fractions

    def arcs(self, transition):
        return [transition.arcs[i] for i in self.arc_indices]


def simple_cycles(transition, cap=DEFAULT_CYCLE_CAP):
    """All simple directed cycles (no repeated node), Johnson's algorithm.

    Deterministic order: by smallest node, then discovery order.  Raises
    ResourceLimitError beyond the cap rather than truncating.
    """
    cached = transition._cache.get("cycles")
    if cached is not None and transition._cache.get("cycle_cap") == cap:
        return cached
    n = len(transition.nodes)
    adj = [[] for _ in range(n)]
    for idx, arc in enumerate(transition.arcs):
        adj[arc.source].append(idx)
    out = []

    for s in range(n):
        blocked = [False] * n
        bsets = [set() for _ in range(n)]
        arc_stack = []

        def unblock(u):
            blocked[u] = False
            for w in list(bsets[u]):
                bsets[u].discard(w)
                if blocked[w]:
                    unblock(w)

        def circuit(v):
            found = False
            blocked[v] = True
            for aidx in adj[v]:
                arc = transition.arcs[aidx]
                w = arc.target
                if w < s:
                    continue
                if w == s:
                    seq = tuple(arc_stack) + (aidx,)
                    out.append(_make_cycle(transition, seq))
                    if len(out) > cap:
                        raise ResourceLimitError(
                            f"simple cycle count exceeds cap {cap}")
                    found = True
                elif not blocked[w]:
                    arc_stack.append(aidx)
                    if circuit(w):
                        found = True
                    arc_stack.pop()
            if found:
                unblock(v)
            else:
                for aidx in adj[v]:
                    w = transition.arcs[aidx].target
                    if w >= s:
                        bsets[w].add(v)
            return found

        circuit(s)
    transition._cache["cycles"] = out
    transition._cache["cycle_cap"] = cap
    return out


def _make_cycle(transition, arc_indices):
    sign = 1
    trans = (0,) * transition.dim
    for i in arc_indices:
        arc = transition.arcs[i]
        sign *= arc.sign
        trans = tuple(x + y for x, y in zip(trans, arc.translation))
    k = len(arc_indices)
    normalized = tuple(Fraction(x, k) for x in trans)
    return Cycle(tuple(arc_indices), k, sign, trans, normalized)


def based_cycles(transition, length, arc_subset=None):
    """All based cycles of exactly the given length, as arc index tuples."""
    n = len(transition.nodes)
    allowed = (set(range(len(transition.arcs))) if arc_subset is None
               else set(arc_subset))
    adj = [[] for _ in range(n)]
    for idx in sorted(allowed):
        adj[transition.arcs[idx].source].append(idx)
    out = []

    def walk(start, v, depth, acc):
        if depth == length:
            if v == start:
                out.append(tuple(acc))
            return
        for aidx in adj[v]:
            acc.append(aidx)
            walk(start, transition.arcs[aidx].target, depth + 1, acc)
            acc.pop()

    for s in range(n):
        walk(s, s, 0, [])
    return out


@dataclass(frozen=True)
class ShadowPolytope:
    ambient_dim: int
    dim: int
    vertices: tuple       # sorted tuples of Fractions
    generators: dict      # vertex -> tuple of cycle indices achieving it


def shadow(transition, cap=DEFAULT_CYCLE_CAP):
    """Convex hull of normalized translations of simple cycles, exact."""
    cycles = simple_cycles(transition, cap)
    d = transition.dim
    points = [c.normalized for c in cycles]
    verts = geometry.hull_vertices(points)
    dim = geometry.affine_dimension(verts) if verts else -1
    gens = {}
    for v in verts:
        gens[v] = tuple(i for i, c in enumerate(cycles) if c.normalized == v)
    return ShadowPolytope(d, max(dim, 0) if verts else 0, tuple(verts), gens)


@dataclass(frozen=True)
class SubgraphSelection:
    kind: str             # "extremal" or "vertex"
    data: tuple           # the functional, or the vertex
    arc_indices: frozenset
    max_value: Fraction = None


def extremal_subgraph(transition, omega, cap=DEFAULT_CYCLE_CAP):
    """Union of the simple cycles maximizing the functional on normalized
    translations.  Every cycle decomposes into simple ones, so this union
    carries all maximizing cycles."""
    omega = tuple(Fraction(x) for x in omega)
    cycles = simple_cycles(transition, cap)
    if not cycles:
        return SubgraphSelection("extremal", omega, frozenset(), None)
    values = [sum(w * x for w, x in zip(omega, c.normalized)) for c in cycles]
    m = max(values)
    arcs = frozenset(i for c, v in zip(cycles, values) if v == m
                     for i in c.arc_indices)
    return SubgraphSelection("extremal", omega, arcs, m)


def vertex_subgraph(transition, u, cap=DEFAULT_CYCLE_CAP):
    u = tuple(Fraction(x) for x in u)
    poly = shadow(transition, cap)
    if u not in poly.vertices:
        raise ValidationError(f"{u} is not a vertex of the shadow polytope")
    cycles = simple_cycles(transition, cap)
    arcs = frozenset(i for c in cycles if c.normalized == u
                     for i in c.arc_indices)
    return SubgraphSelection("vertex", u, arcs)


def subgraph_matrix(transition, selection):
    m = len(transition.nodes)
    d = transition.dim
    rows = [[LaurentElement.zero(d) for _ in range(m)] for _ in range(m)]
    for idx in selection.arc_indices:
        arc = transition.arcs[idx]
        mono = LaurentElement.monomial(arc.translation, arc.sign)
        rows[arc.source][arc.target] = rows[arc.source][arc.target] + mono
    return magnus.matrix_from_rows(transition.nodes, d, rows)


def is_stable(matrix):
    """Not nilpotent, decided by traces of powers up to the size.

    Over a characteristic-zero integral domain, vanishing of the first m
    power traces forces nilpotency, so this test is exact.
    """
    power = matrix
    for k in range(1, matrix.size + 1):
        if k > 1:
            power = magnus.mat_mul(power, matrix)
        if not magnus.trace(power).is_zero():
            return True
    return False


def dilatation(transition):
    """Spectral radius of the unsigned traversal count matrix."""
    counts = np.array(transition.counts, dtype=float)
    if counts.size == 0:
        return 0.0
    eigs = np.linalg.eigvals(counts)
    return float(max(abs(eigs)))


def count_matrix(f):
    g = f.graph
    nodes = [e.name for e in g.edges]
    index = {name: i for i, name in enumerate(nodes)}
    m = len(nodes)
    counts = [[0] * m for _ in range(m)]
    for e in g.edges:
        for name, _ in f.edge_image[e.name].steps:
            counts[index[e.name]][index[name]] += 1
    return counts


def positive_power(vertex_matrices, vertices, bound):
    """Smallest k <= bound with every vertex trace a single positive monomial
    at k times the vertex; None if no such k within the bound."""
    for mat in vertex_matrices:
        if not is_stable(mat):
            raise ValidationError("positive_power requires stable vertices")
    powers = list(vertex_matrices)
    for k in range(1, bound + 1):
        if k > 1:
            powers = [magnus.mat_mul(p, a)
                      for p, a in zip(powers, vertex_matrices)]
        ok = True
        for mat_k, v in zip(powers, vertices):
            tr = magnus.trace(mat_k)
            target = tuple(k * x for x in v)
            if not (len(tr.terms) == 1 and tr.coefficient(target) > 0):
                ok = False
                break
        if ok:
            return k
    return None


@dataclass(frozen=True)
class DimensionDiagnostic:
    mode: str             # "surface" or "free"
    shadow_dim: int
    quotient_rank: int
    boundary_count: int
    expected_dim: int
    matches: bool
    applicable: bool      # exponential growth is necessary for the formula
    note: str


def dimension_diagnostic(f, poly, q):
    """Compare the polytope dimension against the rank formula; advisory.

    Surface mode (boundary count given): expected rank + 1 - b; free mode:
    expected rank.  Inputs with dilatation 1 are flagged as outside the
    formula's hypotheses rather than as mismatches.
    """
    b = f.boundary_count
    counts = np.array(count_matrix(f), dtype=float)
    lam = float(max(abs(np.linalg.eigvals(counts)))) if counts.size else 0.0
    applicable = lam > 1 + 1e-9
    if b is not None:
        mode = "surface"
        expected = q.rank + 1 - b
    else:
        mode = "free"
        expected = q.rank
    matches = poly.dim == expected
    if not applicable:
        note = "growth rate is 1; dimension formula assumes exponential growth"
    elif matches:
        note = "dimension matches"
    else:
        note = f"dimension {poly.dim} differs from expected {expected}"
    return DimensionDiagnostic(mode, poly.dim, q.rank,
                               -1 if b is None else b,
                               expected, matches, applicable, note)
