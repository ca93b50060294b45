"""Deletion, cut, duality, contraction, unions, class counts."""

import random

import pytest

from rgp import corpus
from rgp.errors import TooLarge, UnknownEdge
from rgp.maps import (Permutation, RotationSpec, canonical_form, face_count,
                      from_rotation_system, isomorphic, structure_report,
                      vertices_of)
from rgp.ops import (ClassCounts, class_counts, contract, cut, delete,
                     delete_flag, disjoint_union, natural_dual, partial_dual,
                     spanning_subgraph, to_rotation_spec)


@pytest.fixture(scope="module")
def fig2():
    return corpus.fig_two_vertex()


# --- deletion / cut -----------------------------------------------------------

def test_delete_fig2_edge(fig2):
    g = delete(fig2, "e1")
    assert set(g.map.crosses) == {3, 4, 7, 8, 9, 10, 11, 12}
    assert g.map.sigma0 == Permutation.from_cycles(g.map.crosses,
                                                   [(9, 11, 8), (7, 12, 10)])
    assert g.map.sigma1 == Permutation.from_cycles(g.map.crosses, [(3, 8), (4, 7)])
    assert list(g.edge_labels) == ["e2"]
    assert g.flag_labels == fig2.flag_labels


def test_delete_unknown_edge(fig2):
    with pytest.raises(UnknownEdge):
        delete(fig2, "nope")


def test_delete_bridge_leaves_bare_vertices():
    g = delete(corpus.bridge(), "e1")
    rep = structure_report(g)
    assert (rep.v, rep.e, rep.f, rep.k, rep.faces) == (2, 0, 0, 2, 2)
    assert g.bare_vertices == 2


def test_cut_fig2(fig2):
    g = cut(fig2, "e1")
    assert g.map.crosses == fig2.map.crosses
    assert g.map.sigma0 == fig2.map.sigma0
    assert g.map.sigma1 == Permutation.from_cycles(fig2.map.crosses, [(3, 8), (4, 7)])
    assert g.flag_labels["e1.1"] == frozenset({1, 2})
    assert g.flag_labels["e1.2"] == frozenset({5, 6})
    assert "e1" not in g.edge_labels


def test_cut_bridge_gives_two_flagged_points():
    g = cut(corpus.bridge(), "e1")
    expect = disjoint_union(corpus.single_vertex(1), corpus.single_vertex(1))
    assert isomorphic(g, expect)


def test_cut_then_delete_flags_is_delete(fig2):
    # cutting an edge and removing both stubs equals deleting it
    g = delete_flag(delete_flag(cut(fig2, "e2"), "e2.1"), "e2.2")
    assert isomorphic(g, delete(fig2, "e2"))


# --- duality --------------------------------------------------------------------

def test_natural_dual_swaps_vertices_and_faces():
    for g in (corpus.two_cycle(), corpus.dumbbell(), corpus.sunset(),
              corpus.fig_two_vertex(), corpus.banana(3, planar=False)):
        d = natural_dual(g)
        a, b = structure_report(g), structure_report(d)
        assert (a.v, a.faces) == (b.faces, b.v)
        assert a.e == b.e and a.f == b.f and a.k == b.k


def test_dual_of_loop_is_bridge():
    assert isomorphic(natural_dual(corpus.loop_graph()), corpus.bridge())


def test_full_partial_dual_equals_natural_dual(fig2):
    for g in (fig2, corpus.two_cycle(), corpus.sunset(), corpus.twisted_loop()):
        assert partial_dual(g, g.edge_labels) == natural_dual(g)


def test_partial_dual_involution(fig2):
    for g in (fig2, corpus.dumbbell(), corpus.star(3, with_flags=True)):
        for e in g.edge_labels:
            assert partial_dual(partial_dual(g, [e]), [e]) == g
        assert partial_dual(partial_dual(g, g.edge_labels), g.edge_labels) == g


def test_partial_dual_composition_random():
    rng = random.Random(23)
    for _ in range(20):
        g = corpus.random_rotation_graph(rng, max_edges=4)
        edges = list(g.edge_labels)
        s1 = {e for e in edges if rng.random() < 0.5}
        s2 = {e for e in edges if rng.random() < 0.5}
        lhs = partial_dual(partial_dual(g, s1), s2)
        rhs = partial_dual(g, s1 ^ s2)
        assert isomorphic(lhs, rhs)


def test_partial_dual_keeps_labels(fig2):
    d = partial_dual(fig2, ["e1"])
    assert d.edge_labels["e1"] == fig2.edge_labels["e1"]
    assert d.edge_labels["e2"] == fig2.edge_labels["e2"]
    assert d.flag_labels == fig2.flag_labels


def test_partial_dual_two_cycle_is_double_tadpole():
    assert isomorphic(partial_dual(corpus.two_cycle(), ["e1"]),
                      corpus.double_tadpole())


def test_partial_dual_vertex_count_is_subgraph_boundary_count():
    rng = random.Random(31)
    for _ in range(15):
        g = corpus.random_rotation_graph(rng, max_edges=4, max_flags=2)
        edges = list(g.edge_labels)
        sub = {e for e in edges if rng.random() < 0.5}
        expected = face_count(spanning_subgraph(g, sub))
        assert structure_report(partial_dual(g, sub)).v == expected


def test_delete_commutes_with_disjoint_partial_dual(fig2):
    g = fig2
    assert delete(partial_dual(g, ["e1"]), "e2") == partial_dual(delete(g, "e2"), ["e1"])


def test_partial_duality_preserves_orientability():
    rng = random.Random(41)
    for _ in range(15):
        g = corpus.random_rotation_graph(rng, max_edges=4)
        ori = structure_report(g).orientable
        edges = list(g.edge_labels)
        sub = {e for e in edges if rng.random() < 0.5}
        assert structure_report(partial_dual(g, sub)).orientable == ori


# --- contraction -----------------------------------------------------------------

def _direct_contract_nonloop(g, e):
    """Independent contraction: splice the far rotation into the near one."""
    spec = to_rotation_spec(g)
    (lab, p, q, twist), = [t for t in spec.edges if t[0] == e]
    vmap = {vl: list(items) for vl, items in spec.vertices}
    u = next(vl for vl, items in vmap.items() if p in items)
    w = next(vl for vl, items in vmap.items() if q in items)
    assert u != w, "loop edges not handled here"
    qi = vmap[w].index(q)
    rest = vmap[w][qi + 1:] + vmap[w][:qi]      # far rotation, q removed
    if twist:
        rest = list(reversed(rest))
    pi = vmap[u].index(p)
    merged = vmap[u][:pi] + rest + vmap[u][pi + 1:]
    verts = []
    for vl, items in vmap.items():
        if vl == u:
            verts.append((vl, tuple(merged)))
        elif vl != w:
            verts.append((vl, tuple(items)))
    edges = tuple(t for t in spec.edges if t[0] != e)
    return from_rotation_system(RotationSpec(tuple(verts), edges, spec.flags))


def test_contract_matches_direct_merge():
    cases = []
    cases += [(corpus.bridge(1, 2), "e1"), (corpus.dumbbell(), "e1"),
              (corpus.linear_tree3(), "e1"), (corpus.sunset(), "e2"),
              (corpus.triangle(with_flags=True), "e3")]
    rng = random.Random(53)
    while len(cases) < 15:
        g = corpus.random_rotation_graph(rng, max_edges=4, max_flags=2, min_edges=1)
        v_of = {}
        for i, v in enumerate(vertices_of(g)):
            for c in v.crosses:
                v_of[c] = i
        for lab, orb in g.edge_labels.items():
            x = min(orb)
            if v_of[x] != v_of[g.map.sigma1(x)]:
                cases.append((g, lab))
                break
    for g, e in cases:
        assert isomorphic(contract(g, e), _direct_contract_nonloop(g, e))


def test_contract_bridge_is_point():
    g = contract(corpus.bridge(), "e1")
    rep = structure_report(g)
    assert (rep.v, rep.e, rep.f) == (1, 0, 0)
    assert g.bare_vertices == 1


def test_contract_equals_delete_after_dual(fig2):
    for e in ("e1", "e2"):
        assert contract(fig2, e) == delete(partial_dual(fig2, [e]), e)


# --- disjoint union -----------------------------------------------------------------

def test_disjoint_union_counts():
    a, b = corpus.dumbbell(), corpus.sunset()
    u = disjoint_union(a, b)
    ra, rb, ru = structure_report(a), structure_report(b), structure_report(u)
    assert (ru.v, ru.e, ru.f, ru.k) == (ra.v + rb.v, ra.e + rb.e, ra.f + rb.f, ra.k + rb.k)


def test_disjoint_union_label_collision_prefixes():
    a = corpus.two_cycle()
    u = disjoint_union(a, a)
    assert set(u.edge_labels) == {"a:e1", "a:e2", "b:e1", "b:e2"}


def test_disjoint_union_commutes_up_to_iso():
    a, b = corpus.loop_graph(1, 0), corpus.bridge(0, 1)
    assert isomorphic(disjoint_union(a, b), disjoint_union(b, a))


# --- rotation-spec export ---------------------------------------------------------

def test_rotation_round_trip():
    graphs = list(corpus.acceptance_corpus().values())
    rng = random.Random(61)
    graphs += [corpus.random_rotation_graph(rng) for _ in range(20)]
    for g in graphs:
        h = from_rotation_system(to_rotation_spec(g))
        assert isomorphic(g, h)


# --- class counts --------------------------------------------------------------------

def test_class_counts_two_cycle_pair():
    g = corpus.two_cycle()
    c = class_counts(g)
    assert c == ClassCounts(odd=2, even=2, codd=8, cev=8,
                            oddf=4, evf=4, coddf=16, cevf=16)
    d = class_counts(partial_dual(g, ["e1"]))
    assert (d.odd, d.even, d.oddf, d.evf) == (0, 4, 8, 8)
    assert (d.cev, d.coddf, d.cevf) == (c.cev, c.coddf, c.cevf)
    assert d.codd != c.codd


def test_class_counts_flagged_point():
    c = class_counts(corpus.single_vertex(1))
    assert (c.odd, c.even, c.oddf, c.evf) == (1, 0, 1, 0)


def test_class_counts_bare_vertex():
    c = class_counts(corpus.single_vertex(0))
    assert (c.odd, c.even, c.oddf, c.evf) == (0, 1, 0, 1)
    assert (c.codd, c.cev) == (0, 2)


def _closed_form_counts(g):
    """Per-vertex product formulas for the cutting classes."""
    from rgp.maps import vertex_index_of_cross
    v_of = vertex_index_of_cross(g)
    nv = len(vertices_of(g))
    halves = [0] * nv
    flags = [0] * nv
    for orb in g.edge_labels.values():
        x = min(orb)
        halves[v_of[x]] += 1
        halves[v_of[g.map.sigma1(x)]] += 1
    for orb in g.flag_labels.values():
        flags[v_of[min(orb)]] += 1
    oddf = evf = 1
    for h, f in zip(halves, flags):
        if h:
            oddf *= 1 << (h - 1)
            evf *= 1 << (h - 1)
        else:
            oddf *= f % 2
            evf *= 1 - f % 2
    oddf *= 0 if g.bare_vertices else 1
    return oddf, evf


def test_cutting_counts_match_closed_form():
    rng = random.Random(71)
    for _ in range(25):
        g = corpus.random_rotation_graph(rng, max_edges=4, max_flags=3)
        c = class_counts(g)
        oddf, evf = _closed_form_counts(g)
        assert (c.oddf, c.evf) == (oddf, evf)


def test_class_counts_guard():
    g = corpus.random_rotation_graph(random.Random(1), max_edges=4, min_edges=4)
    with pytest.raises(TooLarge):
        class_counts(g, max_size=7)


def test_colored_invariance_under_single_edge_duality():
    rng = random.Random(83)
    for _ in range(15):
        g = corpus.random_rotation_graph(rng, max_edges=3, max_flags=2, min_edges=1)
        c = class_counts(g)
        e = sorted(g.edge_labels, key=str)[0]
        d = class_counts(partial_dual(g, [e]))
        assert (d.cev, d.coddf, d.cevf) == (c.cev, c.coddf, c.cevf)


def _quasi_tree_sets(g):
    labs = g.sorted_edges()
    out = set()
    for mask in range(1 << len(labs)):
        keep = [lab for i, lab in enumerate(labs) if mask >> i & 1]
        if face_count(spanning_subgraph(g, keep)) == 1:
            out.add(frozenset(keep))
    return out


def _two_boundary_sets(gh, stub, leaf):
    from rgp.corpus import _flag_faces
    labs = gh.sorted_edges()
    out = set()
    for mask in range(1 << len(labs)):
        keep = [lab for i, lab in enumerate(labs) if mask >> i & 1]
        sub = spanning_subgraph(gh, keep)
        if face_count(sub) != 2:
            continue
        ff = _flag_faces(sub)
        if -1 not in (ff[stub], ff[leaf]) and ff[stub] != ff[leaf]:
            out.add(frozenset(keep))
    return out


def test_half_edge_detached_structure_and_quasi_tree_sets():
    for g in (corpus.dumbbell(), corpus.two_cycle(), corpus.banana(3, planar=False)):
        qt = _quasi_tree_sets(g)
        for e in g.sorted_edges():
            for end in (1, 2):
                gh = corpus.half_edge_detached(g, e, end)
                rep, rep0 = structure_report(gh), structure_report(g)
                assert (rep.v, rep.e, rep.f) == (rep0.v + 1, rep0.e, 2)
                assert _two_boundary_sets(gh, f"{e}.stub", f"{e}.leaf") == qt


def test_half_edge_detached_rejects_bad_input():
    with pytest.raises(ValueError):
        corpus.half_edge_detached(corpus.sunset(), "e1")  # has flags
    with pytest.raises(ValueError):
        corpus.half_edge_detached(corpus.dumbbell(), "nope")
    with pytest.raises(ValueError):
        corpus.half_edge_detached(corpus.dumbbell(), "e1", end=3)
