import math
import random
from fractions import Fraction

import pytest

from homolift import geometry, magnus
from homolift.errors import ValidationError
from homolift.graphs import parse_graph_map
from homolift.homology import translate
from homolift.laurent import LaurentElement
from homolift.transition import (TransitionGraph, based_cycles, dilatation,
                                 dimension_diagnostic, extremal_subgraph,
                                 is_stable, path_data, positive_power, shadow,
                                 simple_cycles, subgraph_matrix,
                                 transition_graph, vertex_subgraph)

AB_MAP = """vertices: v
edges: a: v -> v ; b: v -> v
base: v
map a -> a
map b -> b a
"""


def arc_by(transition, source, target, dec):
    names = transition.nodes
    for arc in transition.arcs:
        if (names[arc.source], names[arc.target], arc.dec) == (source, target, dec):
            return arc
    raise KeyError((source, target, dec))


def test_s3_arcs(analyses):
    t = analyses["example_s3"].transition
    assert len(t.arcs) == 4
    eta1 = arc_by(t, "b", "b", 1)
    eta2 = arc_by(t, "a", "a", 1)
    eta3 = arc_by(t, "a", "b", 1)
    eta4 = arc_by(t, "a", "b", 2)
    assert (eta1.sign, eta1.translation) == (1, (0, 0))
    assert eta1.prefix.is_empty()
    assert (eta2.sign, eta2.translation) == (1, (0, 1))
    assert eta2.prefix.steps == (("b", 1),)
    assert (eta3.sign, eta3.translation) == (1, (0, 0))
    assert eta3.prefix.is_empty()
    assert (eta4.sign, eta4.translation) == (-1, (1, 0))
    assert eta4.prefix.steps == (("b", 1), ("a", 1), ("b", -1))
    assert t.counts == ((1, 2), (0, 1))


def test_identity_arcs(analyses):
    t = analyses["identity"].transition
    assert len(t.arcs) == 2
    assert all(a.sign == 1 and a.translation == (0, 0) for a in t.arcs)


def test_golden_arcs(analyses):
    t = analyses["golden_mean"].transition
    assert len(t.arcs) == 3
    assert all(a.sign == 1 and a.translation == () for a in t.arcs)
    assert {(t.nodes[a.source], t.nodes[a.target]) for a in t.arcs} == \
        {("a", "a"), ("a", "b"), ("b", "a")}


def test_path_data_examples(analyses):
    t = analyses["example_s3"].transition
    eta2 = arc_by(t, "a", "a", 1)
    eta4 = arc_by(t, "a", "b", 2)
    sign, trans, prefix = path_data(t, [eta2, eta2])
    assert sign == 1 and trans == (0, 2)
    assert prefix.steps == (("b", 1), ("b", 1))
    sign, trans, _ = path_data(t, [eta2])
    assert (sign, trans) == (eta2.sign, eta2.translation)
    sign, trans, _ = path_data(t, [eta2, eta4])
    assert sign == -1 and trans == (1, 1)
    with pytest.raises(ValidationError):
        path_data(t, [eta4, eta2])  # b -> then from a: not composable


def test_simple_cycles_examples(analyses):
    t3 = analyses["example_s3"].transition
    cycles = simple_cycles(t3)
    assert sorted((c.length, c.translation) for c in cycles) == \
        [(1, (0, 0)), (1, (0, 1))]
    tg = analyses["golden_mean"].transition
    assert sorted(c.length for c in simple_cycles(tg)) == [1, 2]


def test_simple_cycles_empty():
    empty = TransitionGraph(("a", "b"), 0, (), ((0, 0), (0, 0)), None, None, None)
    assert simple_cycles(empty) == []


def test_shadow_examples(analyses):
    poly = shadow(analyses["example_s3"].transition)
    assert poly.dim == 1
    assert poly.vertices == ((Fraction(0), Fraction(0)),
                             (Fraction(0), Fraction(1)))
    f = parse_graph_map(AB_MAP)
    from homolift.search import Analysis
    an = Analysis.of(f)
    poly = shadow(an.transition)
    assert poly.vertices == ((Fraction(0),),) and poly.dim == 0
    poly = shadow(analyses["golden_mean"].transition)
    assert poly.vertices == ((),) and poly.dim == 0


def test_shadow_generators(analyses):
    t = analyses["example_s3"].transition
    poly = shadow(t)
    cycles = simple_cycles(t)
    for v, gens in poly.generators.items():
        assert gens, v
        for i in gens:
            assert cycles[i].normalized == v


def test_extremal_subgraph_examples(analyses):
    t = analyses["example_s3"].transition
    sel = extremal_subgraph(t, (0, 1))
    assert sel.max_value == 1
    assert {(t.nodes[t.arcs[i].source], t.arcs[i].dec)
            for i in sel.arc_indices} == {("a", 1)}
    sel0 = extremal_subgraph(t, (0, 0))
    assert sel0.max_value == 0
    assert len(sel0.arc_indices) == 2  # both one-cycles
    seln = extremal_subgraph(t, (0, -1))
    assert {t.nodes[t.arcs[i].source] for i in seln.arc_indices} == {"b"}


def test_vertex_subgraph_examples(analyses):
    t = analyses["example_s3"].transition
    vu = vertex_subgraph(t, (0, 1))
    assert {t.nodes[t.arcs[i].source] for i in vu.arc_indices} == {"a"}
    v0 = vertex_subgraph(t, (0, 0))
    assert {t.nodes[t.arcs[i].source] for i in v0.arc_indices} == {"b"}
    with pytest.raises(ValidationError):
        vertex_subgraph(t, (5, 5))
    tg = analyses["golden_mean"].transition
    all_arcs = vertex_subgraph(tg, ())
    assert len(all_arcs.arc_indices) == 3


def test_subgraph_matrix_examples(analyses):
    t = analyses["example_s3"].transition
    Y = LaurentElement.monomial((0, 1))
    mat = subgraph_matrix(t, vertex_subgraph(t, (0, 1)))
    assert mat.entries[0][0] == Y
    assert all(mat.entries[i][j].is_zero() for i in range(2) for j in range(2)
               if (i, j) != (0, 0))
    mat0 = subgraph_matrix(t, vertex_subgraph(t, (0, 0)))
    assert mat0.entries[1][1] == LaurentElement.constant(2, 1)
    from homolift.transition import SubgraphSelection
    empty = subgraph_matrix(t, SubgraphSelection("extremal", (), frozenset()))
    assert empty.is_zero()


def test_stability_examples(analyses):
    t = analyses["example_s3"].transition
    assert is_stable(subgraph_matrix(t, vertex_subgraph(t, (0, 1))))
    zero = magnus.matrix_from_rows(
        ("a", "b"), 2, [[LaurentElement.zero(2)] * 2] * 2)
    assert not is_stable(zero)
    X = LaurentElement.monomial((1, 0))
    nilp = magnus.matrix_from_rows(
        ("a", "b"), 2,
        [[LaurentElement.zero(2), X], [LaurentElement.zero(2),
                                       LaurentElement.zero(2)]])
    assert not is_stable(nilp)


def test_stability_matches_brute_force(analyses):
    for an in analyses.values():
        t = an.transition
        poly = shadow(t)
        for u in poly.vertices:
            mat = subgraph_matrix(t, vertex_subgraph(t, u))
            power = magnus.mat_pow(mat, mat.size)
            assert is_stable(mat) == (not power.is_zero())


def test_dilatation_examples(analyses):
    assert abs(dilatation(analyses["golden_mean"].transition)
               - (1 + math.sqrt(5)) / 2) < 1e-9
    assert abs(dilatation(analyses["identity"].transition) - 1) < 1e-12
    assert abs(dilatation(analyses["example_s3"].transition) - 1) < 1e-9
    assert abs(dilatation(analyses["unipotent_silver"].transition)
               - (1 + math.sqrt(2))) < 1e-9


def test_positive_power_examples(analyses):
    t = analyses["example_s3"].transition
    mats = [subgraph_matrix(t, vertex_subgraph(t, u))
            for u in ((0, 0), (0, 1))]
    assert positive_power(mats, [(0, 0), (0, 1)], 8) == 1
    minus_x = magnus.matrix_from_rows(
        ("e",), 1, [[LaurentElement.monomial((1,), -1)]])
    assert positive_power([minus_x], [(1,)], 8) == 2
    zero = magnus.matrix_from_rows(("e",), 1, [[LaurentElement.zero(1)]])
    with pytest.raises(ValidationError):
        positive_power([zero], [(0,)], 8)


def test_positive_power_none_within_bound():
    minus_x = magnus.matrix_from_rows(
        ("e",), 1, [[LaurentElement.monomial((1,), -1)]])
    assert positive_power([minus_x], [(1,)], 1) is None


def test_dimension_diagnostic(analyses):
    gm = analyses["golden_mean"]
    diag = dimension_diagnostic(gm.graph_map, shadow(gm.transition), gm.quotient)
    assert diag.mode == "free" and diag.applicable and diag.matches
    s3 = analyses["example_s3"]
    diag = dimension_diagnostic(s3.graph_map, shadow(s3.transition), s3.quotient)
    assert not diag.applicable
    ident = analyses["identity"]
    diag = dimension_diagnostic(ident.graph_map, shadow(ident.transition),
                                ident.quotient)
    assert diag.shadow_dim == 0 and diag.expected_dim == 2 and not diag.matches


def test_dimension_diagnostic_surface_mode():
    f = parse_graph_map("""vertices: v
edges: a: v -> v ; b: v -> v
base: v
boundary: 1
map a -> a b
map b -> a
""")
    from homolift.search import Analysis
    an = Analysis.of(f)
    diag = dimension_diagnostic(f, shadow(an.transition), an.quotient)
    assert diag.mode == "surface"
    assert diag.expected_dim == an.quotient.rank  # b = 1


def test_counting_consistency(analyses):
    # row sums are image lengths; paths in the transition graph of length k
    # from i to j count the traversals of j in the k-th iterate of i
    from homolift.graphs import iterate_edge_image
    for an in analyses.values():
        f, t = an.graph_map, an.transition
        for i, name in enumerate(t.nodes):
            assert sum(t.counts[i]) == len(f.edge_image[name])
        n = len(t.nodes)
        for k in range(1, 5):
            power = [[0] * n for _ in range(n)]
            for seq_start in range(n):
                pass
            # matrix power of counts
            power = t.counts
            for _ in range(k - 1):
                power = tuple(tuple(sum(power[i][x] * t.counts[x][j]
                                        for x in range(n)) for j in range(n))
                              for i in range(n))
            for i in range(n):
                img = iterate_edge_image(f, t.nodes[i], k)
                for j in range(n):
                    traversals = sum(1 for nm, _ in img.steps
                                     if nm == t.nodes[j])
                    assert power[i][j] == traversals


def _random_arc_path(transition, rng, max_len):
    arcs = transition.arcs
    if not arcs:
        return []
    out = [rng.choice(arcs)]
    for _ in range(rng.randint(0, max_len - 1)):
        nxt = [a for a in arcs if a.source == out[-1].target]
        if not nxt:
            break
        out.append(rng.choice(nxt))
    return out


def test_groupoid_homomorphism(analyses):
    # translation of a path = sum of arc translations = translation of the
    # recursively built prefix (single-vertex base graphs)
    rng = random.Random(99)
    for an in analyses.values():
        t = an.transition
        for _ in range(500):
            arcs = _random_arc_path(t, rng, 5)
            if not arcs:
                continue
            sign, trans, prefix = path_data(t, arcs)
            assert trans == tuple(sum(x) for x in
                                  zip(*(a.translation for a in arcs)))
            assert translate(an.quotient, an.tree, prefix) == trans
            assert sign == math.prod(a.sign for a in arcs)


def test_cycle_translations_in_shadow(analyses):
    for an in analyses.values():
        t = an.transition
        if not t.arcs:
            continue
        poly = shadow(t)
        pts = [tuple(v) for v in poly.vertices]
        for k in range(1, 7):
            for cyc in based_cycles(t, k):
                total = [0] * t.dim
                for idx in cyc:
                    for i, x in enumerate(t.arcs[idx].translation):
                        total[i] += x
                norm = tuple(Fraction(x, k) for x in total)
                assert geometry.in_convex_hull(norm, pts), (k, norm)


def test_extremal_lemma(analyses):
    # every cycle inside the extremal subgraph achieves the maximum
    rng = random.Random(5)
    for an in analyses.values():
        t = an.transition
        if not t.arcs or t.dim == 0:
            continue
        for _ in range(20):
            omega = tuple(Fraction(rng.randint(-3, 3)) for _ in range(t.dim))
            sel = extremal_subgraph(t, omega)
            if sel.max_value is None:
                continue
            for k in range(1, 7):
                for cyc in based_cycles(t, k, sel.arc_indices):
                    total = [0] * t.dim
                    for idx in cyc:
                        for i, x in enumerate(t.arcs[idx].translation):
                            total[i] += x
                    val = sum(w * Fraction(x, k)
                              for w, x in zip(omega, total))
                    assert val == sel.max_value


def test_cycle_cap_fails_loudly(analyses):
    from homolift.errors import ResourceLimitError
    t = analyses["example_s3"].transition
    fresh = TransitionGraph(t.nodes, t.dim, t.arcs, t.counts,
                            t.graph_map, t.tree, t.quotient)
    with pytest.raises(ResourceLimitError):
        simple_cycles(fresh, cap=1)


def test_simple_cycles_against_brute_force():
    # Johnson enumeration vs exhaustive search on random small multigraphs
    from homolift.transition import Arc

    def brute(nodes_n, arcs):
        adj = [[] for _ in range(nodes_n)]
        for idx, (src, dst) in enumerate(arcs):
            adj[src].append((idx, dst))
        found = set()

        def walk(start, v, used_nodes, seq):
            for idx, w in adj[v]:
                if w == start:
                    cyc = tuple(seq + [idx])
                    best = min(cyc[i:] + cyc[:i] for i in range(len(cyc)))
                    found.add(best)
                elif w not in used_nodes and w > start:
                    walk(start, w, used_nodes | {w}, seq + [idx])

        for s in range(nodes_n):
            walk(s, s, {s}, [])
        return found

    rng = random.Random(31)
    for _ in range(40):
        n = rng.randint(1, 4)
        arc_pairs = [(rng.randrange(n), rng.randrange(n))
                     for _ in range(rng.randint(0, 7))]
        arcs = tuple(Arc(s, t, 1, 0, 1, None, ()) for s, t in arc_pairs)
        counts = [[0] * n for _ in range(n)]
        for s, t in arc_pairs:
            counts[s][t] += 1
        tg = TransitionGraph(tuple(f"e{i}" for i in range(n)), 0, arcs,
                             tuple(tuple(r) for r in counts), None, None, None)
        got = {min((c.arc_indices[i:] + c.arc_indices[:i]
                    for i in range(len(c.arc_indices))))
               for c in simple_cycles(tg)}
        assert got == brute(n, arc_pairs)
