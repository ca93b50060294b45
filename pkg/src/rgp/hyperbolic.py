"""Hyperbolic-model polynomials: HU, the quadratic form HV, the face-product
factorization at Omega = 1, and the heat-kernel / commutative limits.

HU is the odd-weight evaluation of Q,

    HU = Q(x -> t, y -> O, z -> O t^2, w -> t O^2)  with  r_n = 2 [n odd],

a polynomial with nonnegative integer coefficients supported on the pairs
(A, B) whose residual graph has odd flag count at every vertex ("admissible").
Closed forms for trees, cycles and the Omega = 1 specialization give three
independent computation routes, all cross-checked in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import HasFlags, NotACycle, NotATree, NotConnected
from .maps import (
    RibbonGraph,
    face_count,
    face_sets,
    orientation_selection,
    structure_report,
    vertices_of,
    make_graph,
    CombinatorialMap,
    Permutation,
)
from .ops import cut, delete, delete_flag, partial_dual, spanning_subgraph, to_rotation_spec
from .poly import MultiPoly, VarId
from .qpoly import RSequenceSpec, _incidences, q_by_expansion, q_by_reduction

# Q-reduction results are independent of labels, so one memo serves every HU
# computation in the process (HV alone triggers dozens of related graphs).
_SHARED_MEMO: dict = {}


def _t(lab) -> MultiPoly:
    return MultiPoly.variable("T", lab)


def _omega(lab) -> MultiPoly:
    return MultiPoly.variable("OMEGA", lab)


def _one_plus_t2(lab) -> MultiPoly:
    return MultiPoly.const(1) + _t(lab) * _t(lab)


def hu(g: RibbonGraph, method: str = "reduction", max_edges: int = 10) -> MultiPoly:
    """First hyperbolic polynomial, via Q under the odd-vertex weight."""
    rule = RSequenceSpec.odd_two_even_zero()
    if method == "reduction":
        q = q_by_reduction(g, rule, memo=_SHARED_MEMO).poly
    elif method == "expansion":
        q = q_by_expansion(g, rule, max_edges=max_edges).poly
    else:
        raise ValueError(f"unknown method {method!r}")
    mapping = {}
    for lab in g.edge_labels:
        t, om = _t(lab), _omega(lab)
        mapping[VarId("X", lab)] = t
        mapping[VarId("Y", lab)] = om
        mapping[VarId("Z", lab)] = om * t * t
        mapping[VarId("W", lab)] = t * om * om
    return q.substitute(mapping)


def hu_partial_dual_transform(p: MultiPoly, edges) -> MultiPoly:
    """Swap t_e <-> O_e on the given edges: HU of a partial dual equals the
    swapped HU of the original."""
    mapping = {}
    for lab in edges:
        mapping[VarId("T", lab)] = _omega(lab)
        mapping[VarId("OMEGA", lab)] = _t(lab)
    return p.substitute(mapping)


# ---------------------------------------------------------------------------
# closed forms: trees and cycles
# ---------------------------------------------------------------------------

class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int):
        self.parent[self.find(x)] = self.find(y)


def hu_tree(g: RibbonGraph) -> MultiPoly:
    """HU of a tree: contract any A, then every leftover vertex must be made
    odd by cut edges, weighted 2^(e - |A| + 1)."""
    rep = structure_report(g)
    if rep.k != 1 or rep.e != rep.v - 1:
        raise NotATree(f"v={rep.v}, e={rep.e}, k={rep.k} is not a tree")
    if g.bare_vertices:
        return MultiPoly.zero()   # a flagless point has even (zero) flag count
    flags_at, ends = _incidences(g)
    edges = sorted(g.edge_labels, key=str)
    ne = len(edges)
    total = MultiPoly.zero()
    for amask in range(1 << ne):
        uf = _UnionFind(len(flags_at))
        rest = []
        for i, lab in enumerate(edges):
            if amask >> i & 1:
                uf.union(*ends[lab])
            else:
                rest.append(lab)
        nA = bin(amask).count("1")
        for bmask in range(1 << len(rest)):
            deg: dict[int, int] = {}
            for v, nf in enumerate(flags_at):
                deg[uf.find(v)] = deg.get(uf.find(v), 0) + nf
            for j, lab in enumerate(rest):
                if bmask >> j & 1:
                    u, w = ends[lab]
                    deg[uf.find(u)] += 1
                    deg[uf.find(w)] += 1
            if any(d % 2 == 0 for d in deg.values()):
                continue
            term = MultiPoly.const(2 ** (ne - nA + 1))
            for i, lab in enumerate(edges):
                if amask >> i & 1:
                    term = term * _omega(lab) * _one_plus_t2(lab)
            for j, lab in enumerate(rest):
                if bmask >> j & 1:
                    term = term * _omega(lab) * _omega(lab) * _t(lab)
                else:
                    term = term * _t(lab)
            total = total + term
    return total


def hu_cycle(g: RibbonGraph) -> MultiPoly:
    """HU of an untwisted cycle (flags allowed anywhere, loops count)."""
    rep = structure_report(g)
    slots_ok = all(len(v.crosses) // 2 - nf == 2
                   for v, nf in zip(vertices_of(g), _incidences(g)[0]))
    if rep.k != 1 or g.bare_vertices or rep.e < 1 or not slots_ok or rep.faces != 2:
        raise NotACycle("expected a connected untwisted cycle (two faces, "
                        "every vertex bivalent)")
    flags_at, ends = _incidences(g)
    edges = sorted(g.edge_labels, key=str)
    ne = len(edges)

    fsets = face_sets(g)
    face_flags = [sum(1 for orb in g.flag_labels.values() if orb <= fs)
                  for fs in fsets]
    m, n = face_flags

    total = MultiPoly.zero()
    if (m - n) % 2 == 0:
        # the two-face term survives only when both faces break the same way
        omegas = MultiPoly.one()
        for lab in edges:
            omegas = omegas * _omega(lab)
        acc = MultiPoly.zero()
        for amask in range(1 << ne):
            if (bin(amask).count("1") + n) % 2 == 0:
                continue
            term = MultiPoly.one()
            for i, lab in enumerate(edges):
                if amask >> i & 1:
                    term = term * _t(lab) * _t(lab)
            acc = acc + term
        total = total + MultiPoly.const(4) * omegas * acc

    for amask in range((1 << ne) - 1):   # proper subsets only
        uf = _UnionFind(len(flags_at))
        rest = []
        for i, lab in enumerate(edges):
            if amask >> i & 1:
                uf.union(*ends[lab])
            else:
                rest.append(lab)
        nA = bin(amask).count("1")
        for bmask in range(1 << len(rest)):
            deg: dict[int, int] = {}
            for v, nf in enumerate(flags_at):
                deg[uf.find(v)] = deg.get(uf.find(v), 0) + nf
            for j, lab in enumerate(rest):
                if bmask >> j & 1:
                    u, w = ends[lab]
                    deg[uf.find(u)] += 1
                    deg[uf.find(w)] += 1
            if any(d % 2 == 0 for d in deg.values()):
                continue
            term = MultiPoly.const(2 ** (ne - nA))
            for i, lab in enumerate(edges):
                if amask >> i & 1:
                    term = term * _omega(lab) * _one_plus_t2(lab)
            for j, lab in enumerate(rest):
                if bmask >> j & 1:
                    term = term * _omega(lab) * _omega(lab) * _t(lab)
                else:
                    term = term * _t(lab)
            total = total + term
    return total


# ---------------------------------------------------------------------------
# the critical point Omega = 1
# ---------------------------------------------------------------------------

def hu_critical(g: RibbonGraph) -> MultiPoly:
    """HU at Omega = 1, computed directly as a product over faces.

    Each face contributes the odd-cardinality sum over its edge slots (an edge
    has two slots; both may lie on the same face) shifted by the face's flag
    parity; a flagless isolated vertex contributes an empty odd sum, i.e. 0.
    """
    if g.bare_vertices:
        return MultiPoly.zero()
    total = MultiPoly.const(2 ** face_count(g))
    for fs in face_sets(g):
        even, odd = MultiPoly.one(), MultiPoly.zero()
        for lab, orb in sorted(g.edge_labels.items(), key=lambda kv: str(kv[0])):
            mult = len(orb & fs) // 2
            if mult == 0:
                continue
            if mult == 1:
                fe, fo = MultiPoly.one(), _t(lab)
            else:
                fe, fo = _one_plus_t2(lab), MultiPoly.const(2) * _t(lab)
            even, odd = even * fe + odd * fo, even * fo + odd * fe
        phi = sum(1 for orb in g.flag_labels.values() if orb <= fs)
        total = total * (odd if phi % 2 == 0 else even)
    return total


def hu_via_critical_algorithm(g: RibbonGraph) -> MultiPoly:
    """Rebuild the full HU from its Omega = 1 factorization.

    Each monomial of the face product determines the dualized set A (edges of
    even t-degree) and the the cut-within-A set (t^2 edges); the edges of odd
    t-degree are distributed over cut/delete by the odd-parity admissibility
    rule.  Only meaningful on orientable graphs — the factorization itself
    fails otherwise — so non-orientable input raises ValueError.
    """
    if not orientation_selection(g).orientable:
        raise ValueError("reconstruction from the critical factorization "
                         "requires an orientable graph")
    crit = hu_critical(g)
    edges = sorted(g.edge_labels, key=str)
    total = MultiPoly.zero()
    for mono, _coeff in crit.terms.items():
        texp = {v.label: e for v, e in mono}
        A = [lab for lab in edges if texp.get(lab, 0) % 2 == 0]
        square = [lab for lab in edges if texp.get(lab, 0) == 2]
        odd = [lab for lab in edges if texp.get(lab, 0) == 1]
        h = partial_dual(g, A)
        flags_at, ends = _incidences(h)
        base = list(flags_at)
        for lab in square:
            u, w = ends[lab]
            base[u] += 1
            base[w] += 1
        admissible = MultiPoly.zero()
        for dmask in range(1 << len(odd)):
            deg = list(base)
            chosen = [odd[j] for j in range(len(odd)) if dmask >> j & 1]
            for lab in chosen:
                u, w = ends[lab]
                deg[u] += 1
                deg[w] += 1
            if any(d % 2 == 0 for d in deg):
                continue
            part = MultiPoly.one()
            for lab in chosen:
                part = part * _omega(lab) * _omega(lab)
            admissible = admissible + part
        nverts = len(vertices_of(h)) + h.bare_vertices
        term = MultiPoly.const(2 ** nverts) * admissible
        for lab in A:
            term = term * _omega(lab)
        for lab in square:
            term = term * _t(lab) * _t(lab)
        for lab in odd:
            term = term * _t(lab)
        total = total + term
    flattened = total.substitute({VarId("OMEGA", lab): 1 for lab in edges})
    assert flattened == crit, "reconstruction must specialize back to the face product"
    return total


# ---------------------------------------------------------------------------
# the quadratic form HV
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadraticForm:
    """Flag-indexed quadratic form: diagonal, symmetric and antisymmetric
    coefficient tables.  sym and antisym are keyed by flag pairs (i, j) with
    str(i) < str(j); the antisymmetric part for (j, i) is the negation."""
    flags: tuple
    diag: dict
    sym: dict
    antisym: dict


def _selected_cross(g: RibbonGraph, chosen: frozenset, flag) -> int:
    orb = g.flag_labels[flag]
    (sel,) = orb & chosen
    return sel


def _join_flags(g: RibbonGraph, a_i: int, a_j: int, drop: tuple, extra=None):
    """Fuse two flag half-ribbons into an edge (new sigma1 couples the chosen
    side of one to the unchosen side of the other).  Returns (graph, label)."""
    m = g.map
    b_i, b_j = m.theta(a_i), m.theta(a_j)
    s1 = dict(m.sigma1.mapping)
    s1.update({a_i: b_j, b_j: a_i, b_i: a_j, a_j: b_i})
    label = "~".join(str(f) for f in drop)
    while label in g.edge_labels:
        label += "'"
    edge_labels = dict(g.edge_labels)
    edge_labels[label] = frozenset((a_i, b_i, a_j, b_j))
    flag_labels = {lab: orb for lab, orb in g.flag_labels.items() if lab not in drop}
    if extra is not None:
        flag_labels[extra[0]] = extra[1]
    joined = make_graph(
        CombinatorialMap(m.crosses, m.sigma0, m.theta, Permutation(s1)),
        edge_labels, flag_labels, g.bare_vertices)
    return joined, label


def _insert_flag_after(g: RibbonGraph, at: int):
    """Splice a fresh flag into the rotation right after cross `at`.
    Returns (graph, flag label, chosen cross of the new flag)."""
    m = g.map
    p = max(m.crosses) + 1
    pbar = p + 1
    s = m.sigma0(at)
    s0 = dict(m.sigma0.mapping)
    s0.update({at: p, p: s, m.theta(s): pbar, pbar: m.theta(at)})
    th = dict(m.theta.mapping)
    th.update({p: pbar, pbar: p})
    s1 = dict(m.sigma1.mapping)
    s1.update({p: p, pbar: pbar})
    label = "+"
    while label in g.flag_labels:
        label += "+"
    flag_labels = dict(g.flag_labels)
    flag_labels[label] = frozenset((p, pbar))
    grown = make_graph(
        CombinatorialMap(frozenset(m.crosses | {p, pbar}),
                         Permutation(s0), Permutation(th), Permutation(s1)),
        dict(g.edge_labels), flag_labels, g.bare_vertices)
    return grown, label, p


def _edge_difference(g: RibbonGraph, label) -> MultiPoly:
    """HU(G^e - e) - HU(G^e v e) for the fused edge."""
    pd = partial_dual(g, [label])
    d = hu(delete(pd, label)) - hu(cut(pd, label))
    assert not any(v.label == label for v in d.variables()), \
        "the fused edge must be eliminated from both branches"
    return d


def hv(g: RibbonGraph) -> QuadraticForm:
    """Second hyperbolic polynomial as a quadratic form over the flags.

    diag_i drops flag i and takes HU; the off-diagonal parts fuse flags i and
    j into an edge (antisym additionally splices a parity-marking flag next to
    i) and take the difference of HU over the two ways of removing it.  The
    antisymmetric table is canonical up to one global sign, fixed here by the
    deterministic cycle selection.
    """
    from .errors import NoFlags
    flags = tuple(sorted(g.flag_labels, key=str))
    if not flags:
        raise NoFlags("the quadratic form needs at least one flag")
    chosen = orientation_selection(g).chosen
    diag = {i: hu(delete_flag(g, i)) for i in flags}
    sym = {}
    antisym = {}
    for a in range(len(flags)):
        for b in range(a + 1, len(flags)):
            i, j = flags[a], flags[b]
            a_i = _selected_cross(g, chosen, i)
            a_j = _selected_cross(g, chosen, j)
            joined, lab = _join_flags(g, a_i, a_j, drop=(i, j))
            sym[(i, j)] = _edge_difference(joined, lab)

            def marked(first: int, second: int) -> MultiPoly:
                grown, _flab, _p = _insert_flag_after(g, first)
                fused, elab = _join_flags(grown, first, second, drop=(i, j))
                return _edge_difference(fused, elab)

            fwd = marked(a_i, a_j)
            bwd = marked(a_j, a_i)
            assert fwd == MultiPoly.zero() - bwd, \
                "the marked difference must be antisymmetric in the flag order"
            antisym[(i, j)] = fwd
    return QuadraticForm(flags, diag, sym, antisym)


# ---------------------------------------------------------------------------
# heat-kernel limit: the Symanzik polynomial
# ---------------------------------------------------------------------------

def symanzik_u(g: RibbonGraph) -> MultiPoly:
    """Sum over spanning quasi-trees: b^(|A| - v + 1) * prod_{e not in A} a_e."""
    if g.flag_labels:
        raise HasFlags("the heat-kernel limit is defined for flagless graphs")
    rep = structure_report(g)
    if rep.k != 1:
        raise NotConnected(f"{rep.k} components")
    edges = sorted(g.edge_labels, key=str)
    ne = len(edges)
    beta = MultiPoly.variable("BETA")
    total = MultiPoly.zero()
    for amask in range(1 << ne):
        keep = [edges[i] for i in range(ne) if amask >> i & 1]
        if face_count(spanning_subgraph(g, keep)) != 1:
            continue
        term = beta ** (len(keep) - rep.v + 1)
        for i, lab in enumerate(edges):
            if not amask >> i & 1:
                term = term * MultiPoly.variable("ALPHA", lab)
        total = total + term
    return total


def symanzik_dual_check(g: RibbonGraph, edges) -> bool:
    """Exact covariance of U under partial duality: dualized edges invert
    (a_e -> b^2/a_e, times a_e/b each) with a global b^(v - v_dual) factor."""
    sub = set(edges)
    h = partial_dual(g, sub)
    direct = symanzik_u(h)
    shift = structure_report(g).v - structure_report(h).v
    rebuilt: dict = {}
    for mono, c in symanzik_u(g).terms.items():
        new_vars: dict = {}
        bexp = shift
        for v, e in mono:
            if v.kind == "ALPHA" and v.label in sub:
                bexp += 2 * e
                continue                      # a_e -> b^2 / a_e cancels it
            if v.kind == "BETA":
                bexp += e
                continue
            new_vars[v] = e
        for lab in sub:
            had = any(v.kind == "ALPHA" and v.label == lab for v, _ in mono)
            if not had:
                new_vars[VarId("ALPHA", lab)] = new_vars.get(VarId("ALPHA", lab), 0) + 1
            bexp -= 1
        if bexp < 0:
            return False
        if bexp:
            new_vars[VarId("BETA", None)] = bexp
        key = tuple(sorted(new_vars.items(), key=lambda t: t[0].sort_key()))
        rebuilt[key] = rebuilt.get(key, 0) + c
    return MultiPoly(rebuilt) == direct


def symanzik_commutative_limit(p: MultiPoly) -> MultiPoly:
    """Drop to b-degree zero: the spanning-tree part of U."""
    return p.coefficient_of_kind_degree("BETA", 0)


# ---------------------------------------------------------------------------
# commutative (small-Omega) limit of HU
# ---------------------------------------------------------------------------

def _cycle_edges(comp_edges: list, ends) -> list:
    """Leaf-strip the component; what survives is its unique cycle."""
    degree: dict = {}
    for lab in comp_edges:
        u, w = ends[lab]
        degree[u] = degree.get(u, 0) + 1
        degree[w] = degree.get(w, 0) + 1
    alive = set(comp_edges)
    changed = True
    while changed:
        changed = False
        for lab in list(alive):
            u, w = ends[lab]
            if u != w and (degree[u] == 1 or degree[w] == 1):
                alive.remove(lab)
                degree[u] -= 1
                degree[w] -= 1
                changed = True
    return sorted(alive, key=str)


def hu_commutative_limit(g: RibbonGraph, method: str = "enumeration") -> MultiPoly:
    """Leading small-Omega part of HU (total Omega-degree = vertex count).

    enumeration: sum over spanning subgraphs whose components are trees with
    at least one edge or unicyclic graphs with an untwisted cycle; each tree
    contributes 4 * sum_e O_e^2 t_e prod_(rest) O (1+t^2), each cycle the odd
    cut-subset sum, and uncovered edges contribute t_e.

    extraction: substitute O_e -> b O_e into HU and take the b^v coefficient.
    No monomial may sit below degree v; degree above v everywhere means the
    coefficient, and hence the limit, is zero (interleaved twisted loops).
    """
    if g.flag_labels:
        raise HasFlags("the commutative limit is defined for flagless graphs")
    if method == "extraction":
        p = hu(g)
        if p.is_zero():
            return MultiPoly.zero()
        v = structure_report(g).v
        beta = MultiPoly.variable("BETA")
        graded = p.substitute(
            {VarId("OMEGA", lab): beta * _omega(lab) for lab in g.edge_labels})
        degrees = {sum(e for vv, e in mono if vv.kind == "BETA")
                   for mono in graded.terms}
        if min(degrees) < v:
            raise ValueError(f"leading Omega-degree {min(degrees)} < v = {v}")
        return graded.coefficient_of_kind_degree("BETA", v)
    if method != "enumeration":
        raise ValueError(f"unknown method {method!r}")

    if g.bare_vertices:
        return MultiPoly.zero()   # an uncoverable vertex admits no subgraph
    flags_at, ends = _incidences(g)
    nv = len(flags_at)
    edges = sorted(g.edge_labels, key=str)
    ne = len(edges)
    twist = {lab: tw for lab, _p, _q, tw in to_rotation_spec(g).edges}

    total = MultiPoly.zero()
    for mask in range(1 << ne):
        keep = [edges[i] for i in range(ne) if mask >> i & 1]
        uf = _UnionFind(nv)
        touched = set()
        for lab in keep:
            u, w = ends[lab]
            uf.union(u, w)
            touched.update((u, w))
        if len(touched) != nv:
            continue
        comp_edges: dict = {}
        for lab in keep:
            comp_edges.setdefault(uf.find(ends[lab][0]), []).append(lab)
        comp_size: dict = {}
        for v in range(nv):
            r = uf.find(v)
            comp_size[r] = comp_size.get(r, 0) + 1
        weight = MultiPoly.one()
        ok = True
        for root, labs in comp_edges.items():
            size = comp_size[root]
            if len(labs) == size - 1:
                acc = MultiPoly.zero()
                for lab in labs:
                    part = _omega(lab) * _omega(lab) * _t(lab)
                    for other in labs:
                        if other != lab:
                            part = part * _omega(other) * _one_plus_t2(other)
                    acc = acc + part
                weight = weight * MultiPoly.const(4) * acc
            elif len(labs) == size:
                cyc = _cycle_edges(labs, ends)
                if sum(twist[lab] for lab in cyc) % 2 == 1:
                    ok = False
                    break
                even, odd = MultiPoly.one(), MultiPoly.zero()
                for lab in cyc:
                    fe = _omega(lab)
                    fo = _omega(lab) * _t(lab) * _t(lab)
                    even, odd = even * fe + odd * fo, even * fo + odd * fe
                for lab in labs:
                    if lab not in cyc:
                        odd = odd * _omega(lab) * _one_plus_t2(lab)
                weight = weight * MultiPoly.const(4) * odd
            else:
                ok = False
                break
        if not ok:
            continue
        for i, lab in enumerate(edges):
            if not mask >> i & 1:
                weight = weight * _t(lab)
        total = total + weight
    return total
