"""Integer homology of a graph via a spanning tree, the induced action of a
self-map, and the torsion-free dynamical quotient it acts trivially on.

The quotient is the torsion-free part of coker(I - f*), computed by Smith
normal form; the projection matrix is put into Hermite form so identical
inputs give identical matrices.
"""

from dataclasses import dataclass

from . import linalg
from .errors import ValidationError
from .graphs import EdgePath, empty_path


@dataclass(frozen=True)
class SpanningTreeData:
    tree_edges: frozenset
    tree_paths: dict      # vertex -> EdgePath from base
    h1_basis: tuple       # non-tree edge names, declaration order

    @property
    def rank(self):
        return len(self.h1_basis)


def spanning_tree(graph):
    """Breadth-first spanning tree from the base, edges in declaration order."""
    parent = {graph.base: None}  # vertex -> (edge name, direction) reaching it
    queue = [graph.base]
    tree = set()
    while queue:
        v = queue.pop(0)
        for e in graph.edges:
            if e.origin == v and e.terminus not in parent:
                parent[e.terminus] = (e.name, 1)
                tree.add(e.name)
                queue.append(e.terminus)
            elif e.terminus == v and e.origin not in parent:
                parent[e.origin] = (e.name, -1)
                tree.add(e.name)
                queue.append(e.origin)
    if len(parent) != len(graph.vertices):
        raise ValidationError("graph is not connected")

    paths = {}
    for v in graph.vertices:
        steps = []
        w = v
        while parent[w] is not None:
            name, direction = parent[w]
            steps.append((name, direction))
            e = graph.edge_by_name[name]
            w = e.origin if direction > 0 else e.terminus
        steps.reverse()
        paths[v] = EdgePath(tuple(steps)) if steps else empty_path(v)
    basis = tuple(e.name for e in graph.edges if e.name not in tree)
    return SpanningTreeData(frozenset(tree), paths, basis)


def path_class(path, st):
    """Class in H1 of the path closed up through the tree.

    Tree paths contribute no basis edges, so this is just the signed count
    of basis-edge traversals in the path itself.
    """
    idx = {name: i for i, name in enumerate(st.h1_basis)}
    out = [0] * len(st.h1_basis)
    for name, direction in path.steps:
        i = idx.get(name)
        if i is not None:
            out[i] += direction
    return tuple(out)


def basis_loop(graph, st, edge_name):
    """The based loop tree_path(o(e)) . e . tree_path(t(e))^-1."""
    e = graph.edge_by_name[edge_name]
    p = st.tree_paths[e.origin]
    p = p.concat(EdgePath(((edge_name, 1),)), graph)
    return p.concat(st.tree_paths[e.terminus].reverse(graph), graph)


@dataclass(frozen=True)
class HomologyAction:
    matrix: tuple  # rows; column j is the class of f(loop of j-th basis edge)

    @property
    def rank(self):
        return len(self.matrix)

    def rows(self):
        return [list(r) for r in self.matrix]

    def to_text(self):
        return "\n".join(" ".join(str(x) for x in row) for row in self.matrix)


def homology_action(f, st):
    r = len(st.h1_basis)
    cols = []
    for name in st.h1_basis:
        loop = basis_loop(f.graph, st, name)
        cols.append(path_class(f.apply_to_path(loop), st))
    matrix = tuple(tuple(cols[j][i] for j in range(r)) for i in range(r))
    return HomologyAction(matrix)


@dataclass(frozen=True)
class EquivariantQuotient:
    """Projection of H1 onto the torsion-free cokernel of (I - f*).

    ``projection`` is d x r of full row rank with saturated row space;
    ``section`` is an integer right inverse (projection @ section = I_d),
    computed lazily since only the deck-action machinery needs it.
    ``cocycle`` sends each edge to the image of its one-step path: zero on
    tree edges.
    """

    rank: int
    projection: tuple       # d rows of length r
    cocycle: dict           # edge name -> tuple of length d
    _smith: tuple           # (S, rank of I - f*, Hermite transform U)

    def project(self, vec):
        return tuple(sum(row[j] * vec[j] for j in range(len(vec)))
                     for row in self.projection)

    @property
    def section(self):
        cached = getattr(self, "_section_cache", None)
        if cached is None:
            s, rank_m, u = self._smith
            r = len(s)
            if self.rank == 0:
                cached = ()
            else:
                # bottom columns of S^-1 are a right inverse of S's bottom
                # rows; correct by the Hermite transform
                sinv = linalg.int_matrix_inverse([list(x) for x in s])
                cols = [[sinv[i][j] for j in range(rank_m, r)]
                        for i in range(r)]
                uinv = linalg.int_matrix_inverse([list(x) for x in u])
                cached = tuple(tuple(row)
                               for row in linalg.mat_mul(cols, uinv))
            object.__setattr__(self, "_section_cache", cached)
        return cached


def equivariant_quotient(fa, st=None):
    """Torsion-free cokernel of (I - f*) via Smith normal form.

    If ``st`` is given the per-edge cocycle is filled in (needed by the
    transition graph and by covers).
    """
    r = fa.rank
    m = [[int(i == j) - fa.matrix[i][j] for j in range(r)] for i in range(r)]
    s, dmat, _t = linalg.smith_normal_form(m)
    rank_m = sum(1 for x in linalg.smith_diagonal(dmat) if x)
    d = r - rank_m
    bottom = [list(s[i]) for i in range(rank_m, r)]
    if d == 0:
        proj = []
        u = []
    else:
        proj, u = linalg.hermite_row_form(bottom)
    projection = tuple(tuple(row) for row in proj)

    cocycle = {}
    if st is not None:
        for i, name in enumerate(st.h1_basis):
            unit = [0] * r
            unit[i] = 1
            cocycle[name] = tuple(linalg.mat_vec(proj, unit)) if d else ()
        for name in st.tree_edges:
            cocycle[name] = (0,) * d
    smith = (tuple(tuple(row) for row in s), rank_m,
             tuple(tuple(row) for row in u))
    return EquivariantQuotient(d, projection, cocycle, smith)


def translate(q, st, path):
    """Translation of a path in the dynamical quotient: project its class."""
    vec = path_class(path, st)
    return q.project(vec)
