"""Operations on ribbon graphs: deletion, cut, duality, contraction, unions,
and the odd/even spanning-class counts.

Edge deletion induces the permutations on the surviving crosses; cutting an
edge turns it into two flags (labelled <e>.1 and <e>.2); partial duality is
the three-line permutation surgery and keeps every edge's four crosses and
every flag's two crosses intact, so labels survive all of these operations.
Contraction is deletion after dualising the one edge.

Vertices that lose all their crosses (deleting a bridge end, a flag removal)
are kept as bare isolated vertices — the polynomial layer weights them by
degree 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .errors import DuplicateId, TooLarge, UnknownEdge
from .maps import (CombinatorialMap, Permutation, RibbonGraph, RotationSpec,
                   make_graph, orientation_selection, vertices_of,
                   vertex_index_of_cross, flag_cross_set, _dual_triple)


# ---------------------------------------------------------------------------
# deletion / cut
# ---------------------------------------------------------------------------

def delete_edges(g: RibbonGraph, labels: Iterable) -> RibbonGraph:
    """Remove the given edges; endpoint vertices that lose every cross stay
    behind as bare vertices."""
    labels = list(labels)
    removed: set[int] = set()
    for lab in labels:
        removed |= g.edge_crosses(lab)
    kept = set(g.map.crosses) - removed
    newly_bare = sum(1 for v in vertices_of(g) if v.crosses <= removed)
    m = CombinatorialMap(
        frozenset(kept),
        g.map.sigma0.induced_on(kept),
        g.map.theta.induced_on(kept),
        g.map.sigma1.induced_on(kept),
    )
    edges = {lab: orb for lab, orb in g.edge_labels.items() if lab not in set(labels)}
    return make_graph(m, edges, dict(g.flag_labels),
                      bare_vertices=g.bare_vertices + newly_bare)


def delete(g: RibbonGraph, e) -> RibbonGraph:
    g.edge_crosses(e)  # raises UnknownEdge early
    return delete_edges(g, [e])


def cut(g: RibbonGraph, e) -> RibbonGraph:
    """Replace the edge by two flags, one per half-ribbon: sigma1 becomes the
    identity on the edge's crosses, everything else is untouched."""
    orb = g.edge_crosses(e)
    rest = set(g.map.crosses) - orb
    m = CombinatorialMap(g.map.crosses, g.map.sigma0, g.map.theta,
                         g.map.sigma1.piecewise(rest))
    x = min(orb)
    first = frozenset((x, g.map.theta(x)))
    second = frozenset(orb - first)
    flags = dict(g.flag_labels)
    for suffix, half in ((1, first), (2, second)):
        lab = f"{e}.{suffix}"
        while lab in flags:
            lab += "'"
        flags[lab] = half
    edges = {lab: o for lab, o in g.edge_labels.items() if lab != e}
    return make_graph(m, edges, flags, bare_vertices=g.bare_vertices)


def delete_flag(g: RibbonGraph, flag) -> RibbonGraph:
    """Remove one flag (both crosses); a vertex reduced to nothing stays bare."""
    try:
        orb = g.flag_labels[flag]
    except KeyError:
        raise UnknownEdge(f"no flag labelled {flag!r}") from None
    kept = set(g.map.crosses) - orb
    newly_bare = sum(1 for v in vertices_of(g) if v.crosses <= orb)
    m = CombinatorialMap(
        frozenset(kept),
        g.map.sigma0.induced_on(kept),
        g.map.theta.induced_on(kept),
        g.map.sigma1.induced_on(kept),
    )
    flags = {lab: o for lab, o in g.flag_labels.items() if lab != flag}
    return make_graph(m, dict(g.edge_labels), flags,
                      bare_vertices=g.bare_vertices + newly_bare)


# ---------------------------------------------------------------------------
# duality
# ---------------------------------------------------------------------------

def natural_dual(g: RibbonGraph) -> RibbonGraph:
    """Geometric dual: vertices and faces swap, edge/flag cross-sets persist."""
    m = _dual_triple(g.map, flag_cross_set(g))
    return make_graph(m, dict(g.edge_labels), dict(g.flag_labels),
                      bare_vertices=g.bare_vertices)


def partial_dual(g: RibbonGraph, edges: Iterable) -> RibbonGraph:
    """Dualise only the given edge subset.

    With E' the union of those edges' crosses and the complement including
    every other cross, the new triple is
    (sigma0 theta_{E'} sigma1_{E'}, sigma1_{E'} theta_{E'c}, sigma1_{E'c} theta_{E'}).
    Dualising every edge equals the natural dual; dualising twice is the
    identity.
    """
    subset = set(edges)
    Ep: set[int] = set()
    for lab in subset:
        Ep |= g.edge_crosses(lab)
    Epc = set(g.map.crosses) - Ep
    th_p = g.map.theta.piecewise(Ep)
    th_c = g.map.theta.piecewise(Epc)
    s1_p = g.map.sigma1.piecewise(Ep)
    s1_c = g.map.sigma1.piecewise(Epc)
    m = CombinatorialMap(
        g.map.crosses,
        g.map.sigma0.compose(th_p).compose(s1_p),
        s1_p.compose(th_c),
        s1_c.compose(th_p),
    )
    return make_graph(m, dict(g.edge_labels), dict(g.flag_labels),
                      bare_vertices=g.bare_vertices)


def contract(g: RibbonGraph, e) -> RibbonGraph:
    """Contract the edge: dualise it, then delete it."""
    return delete(partial_dual(g, [e]), e)


def spanning_subgraph(g: RibbonGraph, keep: Iterable) -> RibbonGraph:
    """Same vertices, only the given edges (flags retained)."""
    keep = set(keep)
    for lab in keep:
        g.edge_crosses(lab)
    return delete_edges(g, [lab for lab in g.edge_labels if lab not in keep])


# ---------------------------------------------------------------------------
# disjoint union
# ---------------------------------------------------------------------------

def disjoint_union(a: RibbonGraph, b: RibbonGraph) -> RibbonGraph:
    """Put two graphs side by side.  Labels are kept when the two label sets
    are disjoint; otherwise every label is prefixed ('a:' / 'b:')."""
    if a.map.crosses and b.map.crosses:
        shift = max(a.map.crosses) + 1 - min(b.map.crosses)
    else:
        shift = 0

    collide = (set(a.edge_labels) | set(a.flag_labels)) & (set(b.edge_labels) | set(b.flag_labels))

    def relab(side: str, lab):
        return f"{side}:{lab}" if collide else lab

    crosses = frozenset(a.map.crosses) | frozenset(x + shift for x in b.map.crosses)

    def merge(pa: Permutation, pb: Permutation) -> Permutation:
        out = dict(pa.mapping)
        for x, y in pb.mapping.items():
            out[x + shift] = y + shift
        return Permutation(out)

    m = CombinatorialMap(crosses,
                         merge(a.map.sigma0, b.map.sigma0),
                         merge(a.map.theta, b.map.theta),
                         merge(a.map.sigma1, b.map.sigma1))
    edges = {relab("a", lab): orb for lab, orb in a.edge_labels.items()}
    edges.update({relab("b", lab): frozenset(c + shift for c in orb)
                  for lab, orb in b.edge_labels.items()})
    flags = {relab("a", lab): orb for lab, orb in a.flag_labels.items()}
    flags.update({relab("b", lab): frozenset(c + shift for c in orb)
                  for lab, orb in b.flag_labels.items()})
    if len(edges) != len(a.edge_labels) + len(b.edge_labels) or \
       len(flags) != len(a.flag_labels) + len(b.flag_labels):
        raise DuplicateId("label collision inside one operand")
    return make_graph(m, edges, flags,
                      bare_vertices=a.bare_vertices + b.bare_vertices)


# ---------------------------------------------------------------------------
# spanning-class counts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClassCounts:
    odd: int
    even: int
    codd: int
    cev: int
    oddf: int
    evf: int
    coddf: int
    cevf: int


def _incidence_tables(g: RibbonGraph):
    """Per-vertex flag counts and, per edge, its two endpoint vertex indices."""
    v_of = vertex_index_of_cross(g)
    nv = len(vertices_of(g))
    flags_at = [0] * nv
    for orb in g.flag_labels.values():
        flags_at[v_of[min(orb)]] += 1
    ends = {}
    for lab, orb in g.edge_labels.items():
        x = min(orb)
        ends[lab] = (v_of[x], v_of[g.map.sigma1(x)])
    return flags_at, ends, nv


def class_counts(g: RibbonGraph, max_size: int = 24) -> ClassCounts:
    """Brute-force counts of the odd/even spanning subgraph classes.

    odd/even range over edge subsets with all flags kept; the 'f' variants
    range over subsets of half-edge slots (flags still forced), with a vertex
    degree = chosen slots + flags there.  Colored counts multiply by 2 per
    vertex.  Guarded by 2e+f <= max_size.
    """
    e, f = len(g.edge_labels), len(g.flag_labels)
    if 2 * e + f > max_size:
        raise TooLarge(f"2e+f = {2 * e + f} exceeds {max_size}")
    flags_at, ends, nv = _incidence_tables(g)
    order = sorted(g.edge_labels, key=str)
    bare = g.bare_vertices
    v_total = nv + bare

    odd = even = 0
    for mask in range(1 << e):
        deg = list(flags_at)
        for i, lab in enumerate(order):
            if mask >> i & 1:
                u, w = ends[lab]
                deg[u] += 1
                deg[w] += 1
        if all(d % 2 for d in deg) and bare == 0:
            odd += 1
        if all(d % 2 == 0 for d in deg):
            even += 1

    # half-edge slots: two per edge, each attached to one endpoint
    slot_vertex = []
    for lab in order:
        u, w = ends[lab]
        slot_vertex.append(u)
        slot_vertex.append(w)
    vmask = [0] * nv
    for s, v in enumerate(slot_vertex):
        vmask[v] |= 1 << s
    oddf = evf = 0
    for mask in range(1 << (2 * e)):
        ok_odd = bare == 0
        ok_even = True
        for v in range(nv):
            parity = (bin(mask & vmask[v]).count("1") + flags_at[v]) % 2
            if parity == 0:
                ok_odd = False
            else:
                ok_even = False
            if not (ok_odd or ok_even):
                break
        if ok_odd:
            oddf += 1
        if ok_even:
            evf += 1

    color = 1 << v_total
    return ClassCounts(odd=odd, even=even, codd=odd * color, cev=even * color,
                       oddf=oddf, evf=evf, coddf=oddf * color, cevf=evf * color)


# ---------------------------------------------------------------------------
# rotation-system export
# ---------------------------------------------------------------------------

def to_rotation_spec(g: RibbonGraph) -> RotationSpec:
    """Present the graph as vertex rotations + edge pairings (+ twists).

    Rotations follow the deterministic per-vertex cycle selection; an edge is
    twisted when sigma1 couples two selected crosses.  Feeding the result back
    through from_rotation_system yields an isomorphic graph.
    """
    chosen = orientation_selection(g).chosen
    hr_id: dict[frozenset, object] = {}
    for lab, orb in g.edge_labels.items():
        x = min(orb)
        first = frozenset((x, g.map.theta(x)))
        second = frozenset(orb - first)
        hr_id[first] = f"{lab}.1"
        hr_id[second] = f"{lab}.2"
    for lab, orb in g.flag_labels.items():
        hr_id[orb] = lab
    if len(set(hr_id.values())) != len(hr_id):
        raise DuplicateId("half-ribbon ids collide; relabel edges or flags")

    verts = []
    for i, v in enumerate(vertices_of(g)):
        walk = v.cycle if set(v.cycle) <= chosen else v.partner
        items = tuple(hr_id[frozenset((x, g.map.theta(x)))] for x in walk)
        verts.append((f"v{i + 1}", items))
    for j in range(g.bare_vertices):
        verts.append((f"v{len(vertices_of(g)) + j + 1}", ()))

    edges = []
    for lab in sorted(g.edge_labels, key=str):
        orb = g.edge_labels[lab]
        x = min(orb)
        first = frozenset((x, g.map.theta(x)))
        second = frozenset(orb - first)
        sx = next(iter(first & chosen))
        sy = next(iter(second & chosen))
        twist = 1 if g.map.sigma1(sx) == sy else 0
        edges.append((lab, f"{lab}.1", f"{lab}.2", twist))

    flags = tuple(sorted(g.flag_labels, key=str))
    return RotationSpec(vertices=tuple(verts), edges=tuple(edges), flags=flags)
