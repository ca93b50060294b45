"""Map axioms, derived structure, rotation systems, canonical forms."""

import random

import pytest

from rgp import corpus
from rgp.errors import DanglingHalfEdge, DuplicateId, InvalidMap, OddIncidence
from rgp.maps import (CombinatorialMap, Permutation, RotationSpec,
                      boundary_components, canonical_form, face_count,
                      from_rotation_system, isomorphic, make_graph,
                      orientation_selection, relabel_crosses,
                      structure_report, validate_map, vertices_of)


def perm(domain, cycles):
    return Permutation.from_cycles(domain, cycles)


@pytest.fixture(scope="module")
def fig2():
    return corpus.fig_two_vertex()


# --- validation ---------------------------------------------------------------

def test_fig2_is_valid(fig2):
    assert validate_map(fig2.map) == []


def test_theta_fixed_point_detected():
    dom = range(4)
    m = CombinatorialMap(frozenset(dom),
                         Permutation.identity(dom),
                         perm(dom, [(0, 1)]),   # 2, 3 fixed by theta
                         Permutation.identity(dom))
    bad = validate_map(m)
    assert any(v.axiom == "A.2" and v.witnesses == (2,) for v in bad)


def test_sigma1_equal_theta_detected():
    dom = range(4)
    m = CombinatorialMap(frozenset(dom),
                         Permutation.identity(dom),
                         perm(dom, [(0, 1), (2, 3)]),
                         perm(dom, [(0, 1), (2, 3)]))
    bad = validate_map(m)
    assert any(v.axiom == "A.2" and "theta" in v.message for v in bad)


def test_conjugation_axiom_detected():
    dom = range(4)
    # sigma0 = (0,2) on 'a' crosses only, not inverted on the partner cycle
    m = CombinatorialMap(frozenset(dom),
                         perm(dom, [(0, 2)]),
                         perm(dom, [(0, 1), (2, 3)]),
                         Permutation.identity(dom))
    bad = validate_map(m)
    assert any(v.axiom == "A.3" for v in bad)


def test_shared_orbit_axiom_detected():
    dom = range(4)
    # sigma0 = (0,1)(2,3): each cycle contains a theta pair
    m = CombinatorialMap(frozenset(dom),
                         perm(dom, [(0, 1), (3, 2)]),
                         perm(dom, [(0, 1), (2, 3)]),
                         Permutation.identity(dom))
    bad = validate_map(m)
    assert any(v.axiom in ("A.3", "A.4") for v in bad)


def test_domain_mismatch_detected():
    m = CombinatorialMap(frozenset(range(4)),
                         Permutation.identity(range(4)),
                         perm(range(4), [(0, 1), (2, 3)]),
                         Permutation.identity(range(2)))
    assert any(v.axiom == "domain" for v in validate_map(m))


# --- derived structure -------------------------------------------------------

def test_fig2_structure(fig2):
    rep = structure_report(fig2)
    assert rep == structure_report(fig2)
    assert (rep.v, rep.e, rep.f, rep.k, rep.faces, rep.euler_genus, rep.orientable) \
        == (2, 2, 2, 1, 1, 1, False)


def test_fig2_vertices(fig2):
    vs = vertices_of(fig2)
    assert [v.crosses for v in vs] == [frozenset({1, 2, 3, 4}),
                                       frozenset(range(5, 13))]
    # conjugate cycle pairs: partner = reversed cycle pushed through theta
    for v in vs:
        th = fig2.map.theta
        rev = (v.cycle[0],) + tuple(reversed(v.cycle[1:]))
        assert set(v.partner) == {th(x) for x in v.cycle}


def test_conjugacy_property_random():
    rng = random.Random(7)
    for _ in range(25):
        g = corpus.random_rotation_graph(rng, max_edges=4, max_flags=3)
        th = g.map.theta
        for v in vertices_of(g):
            n = len(v.cycle)
            conj = tuple(th(v.cycle[-i]) for i in range(n))
            # same cyclic word
            doubled = v.partner + v.partner
            assert any(doubled[i:i + n] == conj for i in range(n))


def test_single_flag_map():
    g = corpus.single_vertex(1)
    rep = structure_report(g)
    assert (rep.v, rep.e, rep.f, rep.faces, rep.k) == (1, 0, 1, 1, 1)


def test_bare_vertex():
    g = corpus.single_vertex(0)
    rep = structure_report(g)
    assert (rep.v, rep.e, rep.f, rep.faces, rep.k, rep.euler_genus) == (1, 0, 0, 1, 1, 0)


def test_counts_relation_random():
    # |crosses| = 4e + 2f on every random graph
    rng = random.Random(11)
    for _ in range(30):
        g = corpus.random_rotation_graph(rng)
        rep = structure_report(g)
        assert len(g.map.crosses) == 4 * rep.e + 2 * rep.f


def test_face_count_is_dual_vertex_count(fig2):
    from rgp.ops import natural_dual
    for g in (fig2, corpus.two_cycle(), corpus.dumbbell(), corpus.sunset()):
        assert face_count(g) == structure_report(natural_dual(g)).v


# --- rotation systems ----------------------------------------------------------

def test_loop_with_two_flag_faces():
    g = corpus.loop_graph(1, 1)
    rep = structure_report(g)
    assert (rep.v, rep.e, rep.f, rep.faces) == (1, 1, 2, 2)


def test_rotation_errors():
    with pytest.raises(DuplicateId):
        from_rotation_system(RotationSpec(
            vertices=(("u", ("h1", "h1")),), edges=()))
    with pytest.raises(DanglingHalfEdge):
        from_rotation_system(RotationSpec(
            vertices=(("u", ("h1",)),),
            edges=(("e1", "h1", "h2", 0),)))
    with pytest.raises(OddIncidence):
        from_rotation_system(RotationSpec(
            vertices=(("u", ("h1",)),),
            edges=(("e1", "h1", "h1", 0),)))
    with pytest.raises(DuplicateId):
        from_rotation_system(RotationSpec(
            vertices=(("u", ("h1", "h2", "h3")),),
            edges=(("e1", "h1", "h2", 0), ("e2", "h2", "h3", 0))))


def test_untwisted_rotations_are_orientable():
    rng = random.Random(3)
    for _ in range(30):
        g = corpus.random_rotation_graph(rng, orientable=True)
        assert orientation_selection(g).orientable


def test_twisted_loop_not_orientable():
    assert not orientation_selection(corpus.twisted_loop()).orientable


def test_random_rotation_graphs_validate():
    rng = random.Random(5)
    for _ in range(40):
        g = corpus.random_rotation_graph(rng)
        assert validate_map(g.map) == []


# --- canonical form -------------------------------------------------------------

def _random_bijection(rng, crosses):
    xs = sorted(crosses)
    ys = xs[:]
    rng.shuffle(ys)
    # move to a fresh integer range half the time
    if rng.random() < 0.5:
        off = rng.randint(100, 200)
        ys = [y + off for y in ys]
    return dict(zip(xs, ys))


def test_canonical_form_relabel_invariance():
    rng = random.Random(13)
    graphs = [corpus.fig_two_vertex(), corpus.two_cycle(), corpus.sunset(),
              corpus.dumbbell(), corpus.twisted_loop(), corpus.star(3, with_flags=True)]
    for g in graphs:
        key = canonical_form(g).key
        for _ in range(25):
            h = relabel_crosses(g, _random_bijection(rng, g.map.crosses))
            assert canonical_form(h).key == key


def test_canonical_form_distinguishes_twist():
    flat = corpus.two_cycle()
    twisted = from_rotation_system(RotationSpec(
        vertices=(("u", ("a1", "a2")), ("v", ("b2", "b1"))),
        edges=(("e1", "a1", "b1", 1), ("e2", "a2", "b2", 0)),
    ))
    assert canonical_form(flat).key != canonical_form(twisted).key
    assert not isomorphic(flat, twisted)


def test_canonical_slots_cover_edges(fig2):
    cf = canonical_form(fig2)
    assert sorted(cf.edge_slots.values()) == [0, 1]
    assert sorted(cf.flag_slots.values()) == [0, 1]


def test_isomorphic_ignores_labels():
    g = corpus.two_cycle()
    h = make_graph(g.map, {"left": g.edge_labels["e1"], "right": g.edge_labels["e2"]},
                   dict(g.flag_labels))
    assert isomorphic(g, h)


# --- boundary components ---------------------------------------------------------

def test_boundary_component_count_examples():
    assert len(boundary_components(corpus.two_cycle())) == 2
    assert len(boundary_components(corpus.banana(3))) == 3
    assert len(boundary_components(corpus.banana(3, planar=False))) == 1
    assert len(boundary_components(corpus.dumbbell())) == 3
    assert len(boundary_components(corpus.twisted_loop())) == 1
