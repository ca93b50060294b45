"""The four-variable subset-expansion polynomial Q and its specializations.

Q sums over pairs (A, B): A a subset of edges, B a subset of edges of the
partial dual by A.  Edges fall into four classes — untouched (x), dualised
only (y), dualised and kept (z), kept only (w) — and each vertex of the
partial dual contributes a weight r_n where n counts the flags left on it by
the residual operation (cut B, delete the rest, keep original flags).

Two strategies are implemented: direct enumeration of (A, B), and the
four-term edge reduction

    Q(G) = x_e Q(G - e) + y_e Q(G^e - e) + z_e Q(G^e v e) + w_e Q(G v e)

with memoisation keyed by the canonical form (so isomorphic intermediate
graphs are computed once and transported along the label bijection).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import TooLarge
from .maps import RibbonGraph, canonical_form, vertex_index_of_cross, vertices_of
from .ops import cut, delete, partial_dual
from .poly import MultiPoly, VarId


# ---------------------------------------------------------------------------
# vertex-degree weight sequences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RSequenceSpec:
    """The weight r_n attached to a residual vertex with n flags."""
    rule: str
    constant: Optional[int] = None

    SYMBOLIC = "SYMBOLIC"
    EVEN_TWO_ODD_ZERO = "EVEN_TWO_ODD_ZERO"
    ODD_TWO_EVEN_ZERO = "ODD_TWO_EVEN_ZERO"
    DELTA_ONE = "DELTA_ONE"
    CONSTANT = "CONSTANT"

    @staticmethod
    def symbolic() -> "RSequenceSpec":
        return RSequenceSpec(RSequenceSpec.SYMBOLIC)

    @staticmethod
    def even_two_odd_zero() -> "RSequenceSpec":
        return RSequenceSpec(RSequenceSpec.EVEN_TWO_ODD_ZERO)

    @staticmethod
    def odd_two_even_zero() -> "RSequenceSpec":
        return RSequenceSpec(RSequenceSpec.ODD_TWO_EVEN_ZERO)

    @staticmethod
    def delta_one() -> "RSequenceSpec":
        return RSequenceSpec(RSequenceSpec.DELTA_ONE)

    @staticmethod
    def constant(c: int) -> "RSequenceSpec":
        return RSequenceSpec(RSequenceSpec.CONSTANT, c)

    def weight(self, n: int) -> MultiPoly:
        if self.rule == self.SYMBOLIC:
            return MultiPoly.variable("R", n)
        if self.rule == self.EVEN_TWO_ODD_ZERO:
            return MultiPoly.const(2 if n % 2 == 0 else 0)
        if self.rule == self.ODD_TWO_EVEN_ZERO:
            return MultiPoly.const(2 if n % 2 == 1 else 0)
        if self.rule == self.DELTA_ONE:
            return MultiPoly.const(1 if n == 1 else 0)
        if self.rule == self.CONSTANT:
            return MultiPoly.const(self.constant)
        raise ValueError(f"unknown r-rule {self.rule!r}")

    def key(self):
        return (self.rule, self.constant)


@dataclass(frozen=True)
class QResult:
    poly: MultiPoly
    method: str                      # "EXPANSION" or "REDUCTION"
    admissible_pairs: Optional[int]  # (A,B) pairs with nonzero weight; expansion only


def _edge_var(kind: str, label) -> MultiPoly:
    return MultiPoly.variable(kind, label)


def _incidences(g: RibbonGraph):
    """flags-per-vertex and edge-endpoint vertex indices (loops repeat)."""
    v_of = vertex_index_of_cross(g)
    nv = len(vertices_of(g))
    flags_at = [0] * nv
    for orb in g.flag_labels.values():
        flags_at[v_of[min(orb)]] += 1
    ends = {}
    for lab, orb in g.edge_labels.items():
        x = min(orb)
        ends[lab] = (v_of[x], v_of[g.map.sigma1(x)])
    return flags_at, ends


def _terminal_weight(g: RibbonGraph, r: RSequenceSpec) -> MultiPoly:
    """Product of r_(flag count) over all vertices of an edgeless graph."""
    flags_at, _ = _incidences(g)
    total = MultiPoly.one()
    for n in flags_at:
        total = total * r.weight(n)
    for _ in range(g.bare_vertices):
        total = total * r.weight(0)
    return total


# ---------------------------------------------------------------------------
# strategy 1: subset expansion
# ---------------------------------------------------------------------------

def q_by_expansion(g: RibbonGraph, r: RSequenceSpec | None = None,
                   max_edges: int = 10) -> QResult:
    """Enumerate all (A, B) pairs.  Guarded by e(G) <= max_edges."""
    r = r or RSequenceSpec.symbolic()
    edges = sorted(g.edge_labels, key=str)
    ne = len(edges)
    if ne > max_edges:
        raise TooLarge(f"{ne} edges exceeds the expansion guard {max_edges}")

    total = MultiPoly.zero()
    admissible = 0
    for amask in range(1 << ne):
        A = [edges[i] for i in range(ne) if amask >> i & 1]
        h = partial_dual(g, A)
        flags_at, ends = _incidences(h)
        r0_bare = r.weight(0) ** h.bare_vertices
        in_a = [bool(amask >> i & 1) for i in range(ne)]
        for bmask in range(1 << ne):
            deg = list(flags_at)
            for i in range(ne):
                if bmask >> i & 1:
                    u, w = ends[edges[i]]
                    deg[u] += 1
                    deg[w] += 1
            weight = r0_bare
            for n in deg:
                weight = weight * r.weight(n)
                if weight.is_zero():
                    break
            if weight.is_zero():
                continue
            admissible += 1
            mono = MultiPoly.one()
            for i, lab in enumerate(edges):
                in_b = bool(bmask >> i & 1)
                if in_a[i]:
                    mono = mono * _edge_var("Z" if in_b else "Y", lab)
                else:
                    mono = mono * _edge_var("W" if in_b else "X", lab)
            total = total + weight * mono
    return QResult(total, "EXPANSION", admissible)


# ---------------------------------------------------------------------------
# strategy 2: four-term reduction
# ---------------------------------------------------------------------------

_EDGE_KINDS = ("X", "Y", "Z", "W")


def _rename_edge_vars(p: MultiPoly, mapping: dict) -> MultiPoly:
    """Rewrite x/y/z/w variable labels through `mapping` (monomial surgery)."""
    out = {}
    for mono, c in p.terms.items():
        new = []
        for v, e in mono:
            if v.kind in _EDGE_KINDS and v.label in mapping:
                new.append((VarId(v.kind, mapping[v.label]), e))
            else:
                new.append((v, e))
        key = tuple(sorted(new, key=lambda t: t[0].sort_key()))
        out[key] = out.get(key, 0) + c
    return MultiPoly(out)


def q_by_reduction(g: RibbonGraph, r: RSequenceSpec | None = None,
                   edge_order: Optional[list] = None,
                   memo: Optional[dict] = None) -> QResult:
    """Recursive four-term reduction with canonical-form memoisation.

    The reduction edge is the first entry of edge_order present in the current
    graph (default: smallest label).  Results are independent of the order;
    the memo (shareable across calls) stores polynomials over canonical edge
    slots and rebrands them through each caller's slot bijection.
    """
    r = r or RSequenceSpec.symbolic()
    if memo is None:
        memo = {}
    rkey = r.key()

    def rec(h: RibbonGraph) -> MultiPoly:
        if not h.edge_labels:
            return _terminal_weight(h, r)
        cf = canonical_form(h)
        hit = memo.get((cf.key, rkey))
        if hit is not None:
            slot_to_label = {slot: lab for lab, slot in cf.edge_slots.items()}
            return _rename_edge_vars(hit, slot_to_label)
        e = None
        if edge_order:
            for cand in edge_order:
                if cand in h.edge_labels:
                    e = cand
                    break
        if e is None:
            e = min(h.edge_labels, key=str)
        hd = partial_dual(h, [e])
        p = (_edge_var("X", e) * rec(delete(h, e))
             + _edge_var("Y", e) * rec(delete(hd, e))
             + _edge_var("Z", e) * rec(cut(hd, e))
             + _edge_var("W", e) * rec(cut(h, e)))
        memo[(cf.key, rkey)] = _rename_edge_vars(p, cf.edge_slots)
        return p

    return QResult(rec(g), "REDUCTION", None)


def q_polynomial(g: RibbonGraph, r: RSequenceSpec | None = None,
                 method: str = "reduction", max_edges: int = 10,
                 memo: Optional[dict] = None) -> QResult:
    if method == "expansion":
        return q_by_expansion(g, r, max_edges=max_edges)
    if method == "reduction":
        return q_by_reduction(g, r, memo=memo)
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# partial-duality transport
# ---------------------------------------------------------------------------

def q_partial_dual_transform(p: MultiPoly, edges: Iterable) -> MultiPoly:
    """Swap x<->y and z<->w on the given edge labels: the polynomial of a
    partial dual equals the transformed polynomial of the original."""
    mapping = {}
    for lab in edges:
        mapping[VarId("X", lab)] = MultiPoly.variable("Y", lab)
        mapping[VarId("Y", lab)] = MultiPoly.variable("X", lab)
        mapping[VarId("Z", lab)] = MultiPoly.variable("W", lab)
        mapping[VarId("W", lab)] = MultiPoly.variable("Z", lab)
    return p.substitute(mapping)


# ---------------------------------------------------------------------------
# specializations
# ---------------------------------------------------------------------------

def _sub_per_edge(g: RibbonGraph, p: MultiPoly, x=None, y=None, z=None, w=None) -> MultiPoly:
    mapping = {}
    for lab in g.edge_labels:
        for kind, val in (("X", x), ("Y", y), ("Z", z), ("W", w)):
            if val is not None:
                mapping[VarId(kind, lab)] = MultiPoly.const(val)
    return p.substitute(mapping)


def specialize_br(g: RibbonGraph, memo: Optional[dict] = None) -> MultiPoly:
    """x=1, z=w=0 and a single symbolic vertex weight r: the edge-subset sum
    of y^A r^(vertex count of the partial dual)."""
    p = q_by_reduction(g, RSequenceSpec.symbolic(), memo=memo).poly
    p = _sub_per_edge(g, p, x=1, z=0, w=0)
    rvar = MultiPoly.variable("R")
    mapping = {v: rvar for v in p.variables() if v.kind == "R" and v.label is not None}
    return p.substitute(mapping)


def specialize_dimer(g: RibbonGraph, memo: Optional[dict] = None) -> MultiPoly:
    """x=1, y=z=0 with the delta-at-one weight: the perfect-matching sum in w."""
    p = q_by_reduction(g, RSequenceSpec.delta_one(), memo=memo).poly
    return _sub_per_edge(g, p, x=1, y=0, z=0)


def specialize_ising(g: RibbonGraph, memo: Optional[dict] = None) -> MultiPoly:
    """y=z=0 with even-degree weight 2: the even-subgraph (Ising) sum in x, w."""
    p = q_by_reduction(g, RSequenceSpec.even_two_odd_zero(), memo=memo).poly
    return _sub_per_edge(g, p, y=0, z=0)
