"""Combinatorial maps with flags, and the ribbon graphs they carry.

A graph is stored as a triple of permutations (sigma0, theta, sigma1) acting
on an even set of integer "crosses" (quarter-edges):

  * theta is a fixed-point-free involution pairing the two crosses of each
    half-ribbon;
  * sigma1 is an involution commuting with theta; a theta-orbit fixed by
    sigma1 is a flag, the rest pair up four crosses at a time into edges;
  * sigma0 encodes the cyclic order around vertices; conjugation by theta
    inverts it, so its cycles come in conjugate pairs, one pair per vertex.

Everything downstream (duality, the polynomials, the CLI) works on the
RibbonGraph wrapper, which adds stable edge/flag labels and a count of bare
(cross-free) isolated vertices — those are invisible to the permutations but
deletion must keep them, and the polynomial weights see them as degree-0
vertices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence

from .errors import (DanglingHalfEdge, DuplicateId, InvalidMap, OddIncidence)


# ---------------------------------------------------------------------------
# permutations
# ---------------------------------------------------------------------------

class Permutation:
    """A bijection on a finite set of ints, stored as a total dict."""

    __slots__ = ("mapping",)

    def __init__(self, mapping: Mapping[int, int]):
        self.mapping = dict(mapping)
        if set(self.mapping.values()) != set(self.mapping):
            raise InvalidMap("mapping is not a bijection on its domain")

    @staticmethod
    def identity(domain: Iterable[int]) -> "Permutation":
        return Permutation({x: x for x in domain})

    @staticmethod
    def from_cycles(domain: Iterable[int], cycles: Sequence[Sequence[int]]) -> "Permutation":
        mapping = {x: x for x in domain}
        seen: set[int] = set()
        for cyc in cycles:
            for x in cyc:
                if x not in mapping:
                    raise InvalidMap(f"cycle element {x} outside domain")
                if x in seen:
                    raise InvalidMap(f"element {x} appears in two cycles")
                seen.add(x)
            for a, b in zip(cyc, cyc[1:] + type(cyc)([cyc[0]])):
                mapping[a] = b
        return Permutation(mapping)

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    @property
    def domain(self) -> set[int]:
        return set(self.mapping)

    def inverse(self) -> "Permutation":
        return Permutation({v: k for k, v in self.mapping.items()})

    def compose(self, other: "Permutation") -> "Permutation":
        """Right-to-left: (self.compose(other))(x) == self(other(x))."""
        return Permutation({x: self.mapping[y] for x, y in other.mapping.items()})

    def piecewise(self, subset: Iterable[int]) -> "Permutation":
        """Act as self on `subset`, identity elsewhere.  The subset must be
        closed under self, otherwise the result is not a permutation."""
        sub = set(subset)
        out = {x: (self.mapping[x] if x in sub else x) for x in self.mapping}
        return Permutation(out)

    def induced_on(self, kept: Iterable[int]) -> "Permutation":
        """The permutation on `kept` sending x to its first iterate in `kept`
        (cycle structure with the removed elements skipped)."""
        ks = set(kept)
        out = {}
        for x in ks:
            y = self.mapping[x]
            while y not in ks:
                y = self.mapping[y]
            out[x] = y
        return Permutation(out)

    def orbit(self, x: int) -> list[int]:
        out = [x]
        y = self.mapping[x]
        while y != x:
            out.append(y)
            y = self.mapping[y]
        return out

    def cycles(self) -> list[tuple[int, ...]]:
        """All cycles (including fixed points), each starting at its minimum,
        sorted by that minimum."""
        seen: set[int] = set()
        out = []
        for x in sorted(self.mapping):
            if x in seen:
                continue
            orb = self.orbit(x)
            seen.update(orb)
            out.append(tuple(orb))
        return out

    def is_involution(self) -> bool:
        return all(self.mapping[y] == x for x, y in self.mapping.items())

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.mapping == other.mapping

    def __repr__(self):
        body = "".join("(" + ",".join(map(str, c)) + ")" for c in self.cycles() if len(c) > 1)
        return body or "id"


# ---------------------------------------------------------------------------
# maps and validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CombinatorialMap:
    crosses: frozenset
    sigma0: Permutation
    theta: Permutation
    sigma1: Permutation


@dataclass(frozen=True)
class Violation:
    axiom: str
    witnesses: tuple
    message: str


def validate_map(m: CombinatorialMap) -> list[Violation]:
    """All axiom violations, each with witness crosses; empty iff valid."""
    out: list[Violation] = []
    X = set(m.crosses)
    for name, perm in (("sigma0", m.sigma0), ("theta", m.theta), ("sigma1", m.sigma1)):
        if perm.domain != X:
            out.append(Violation("domain", (), f"{name} domain differs from cross set"))
    if out:
        return out  # pointwise checks below assume matching domains
    if len(X) % 2:
        out.append(Violation("A.1", (), "odd number of crosses"))
    for x in sorted(X):
        if m.theta(m.theta(x)) != x:
            out.append(Violation("A.1", (x,), "theta is not an involution"))
        if m.sigma1(m.sigma1(x)) != x:
            out.append(Violation("A.1", (x,), "sigma1 is not an involution"))
        if m.theta(m.sigma1(x)) != m.sigma1(m.theta(x)):
            out.append(Violation("A.1", (x,), "theta and sigma1 do not commute"))
        if m.theta(x) == x:
            out.append(Violation("A.2", (x,), "theta has a fixed point"))
        if m.theta(x) == m.sigma1(x):
            out.append(Violation("A.2", (x,), "sigma1 equals theta at this cross"))
        if m.sigma0(m.theta(x)) != m.theta(m.sigma0.inverse()(x)):
            out.append(Violation("A.3", (x,), "sigma0 not inverted by theta-conjugation"))
    if not any(v.axiom in ("A.1", "A.2", "A.3") for v in out):
        for x in sorted(X):
            if x in set(m.sigma0.orbit(m.theta(x))):
                out.append(Violation("A.4", (x, m.theta(x)),
                                     "cross and its theta-partner share a sigma0-cycle"))
    return out


# ---------------------------------------------------------------------------
# ribbon graphs (map + labels + bare vertices)
# ---------------------------------------------------------------------------

class Vertex(NamedTuple):
    cycle: tuple        # sigma0-cycle containing the vertex's minimal cross
    partner: tuple      # its theta-conjugate
    crosses: frozenset


@dataclass(frozen=True)
class RibbonGraph:
    map: CombinatorialMap
    edge_labels: dict    # label -> frozenset of 4 crosses
    flag_labels: dict    # label -> frozenset of 2 crosses
    bare_vertices: int = 0

    def edge_crosses(self, label) -> frozenset:
        from .errors import UnknownEdge
        try:
            return self.edge_labels[label]
        except KeyError:
            raise UnknownEdge(f"no edge labelled {label!r}") from None

    def sorted_edges(self) -> list:
        return sorted(self.edge_labels, key=str)

    def sorted_flags(self) -> list:
        return sorted(self.flag_labels, key=str)


def make_graph(m: CombinatorialMap,
               edge_labels: Optional[dict] = None,
               flag_labels: Optional[dict] = None,
               bare_vertices: int = 0,
               check: bool = True) -> RibbonGraph:
    """Wrap a valid map, deriving (or checking) the edge/flag label tables.

    Auto labels are e1,e2,... / f1,f2,... numbered by smallest cross.
    """
    if check:
        violations = validate_map(m)
        if violations:
            raise InvalidMap("; ".join(f"{v.axiom}: {v.message} {v.witnesses}" for v in violations))
    flag_orbits, edge_orbits = _classify_orbits(m)
    if edge_labels is None:
        edge_labels = {f"e{i + 1}": orb for i, orb in enumerate(edge_orbits)}
    else:
        _check_labels(edge_labels, edge_orbits, "edge")
    if flag_labels is None:
        flag_labels = {f"f{i + 1}": orb for i, orb in enumerate(flag_orbits)}
    else:
        _check_labels(flag_labels, flag_orbits, "flag")
    return RibbonGraph(m, dict(edge_labels), dict(flag_labels), bare_vertices)


def _classify_orbits(m: CombinatorialMap):
    """(flag orbits, edge orbits), each sorted by smallest cross."""
    flags, edges = [], []
    seen: set[int] = set()
    for x in sorted(m.crosses):
        if x in seen:
            continue
        tx = m.theta(x)
        if m.sigma1(x) == x:
            orb = frozenset((x, tx))
            flags.append(orb)
        else:
            orb = frozenset((x, tx, m.sigma1(x), m.sigma1(tx)))
            if len(orb) != 4:
                raise InvalidMap(f"edge orbit at cross {x} does not have 4 crosses")
            edges.append(orb)
        seen.update(orb)
    return flags, edges


def _check_labels(labels: dict, orbits: list, kind: str):
    given = sorted(labels.values(), key=lambda s: min(s))
    if given != orbits:
        raise InvalidMap(f"{kind} label table does not match the {kind} orbits")


def vertices_of(g: RibbonGraph) -> list[Vertex]:
    """Vertices as conjugate sigma0-cycle pairs, sorted by smallest cross.
    Bare vertices are not included (they have no crosses)."""
    m = g.map
    seen: set[int] = set()
    out: list[Vertex] = []
    for x in sorted(m.crosses):
        if x in seen:
            continue
        cyc = tuple(m.sigma0.orbit(x))
        partner = tuple(m.sigma0.orbit(m.theta(x)))
        if set(cyc) & set(partner):
            raise InvalidMap(f"conjugate cycles overlap at cross {x}")
        seen.update(cyc)
        seen.update(partner)
        out.append(Vertex(cyc, partner, frozenset(cyc) | frozenset(partner)))
    return out


def vertex_index_of_cross(g: RibbonGraph) -> dict:
    out = {}
    for i, v in enumerate(vertices_of(g)):
        for x in v.crosses:
            out[x] = i
    return out


def half_ribbons_of(g: RibbonGraph) -> list[frozenset]:
    m = g.map
    return [frozenset((x, m.theta(x))) for x in sorted(m.crosses) if x < m.theta(x)]


def _dual_triple(m: CombinatorialMap, flag_crosses: set[int]) -> CombinatorialMap:
    """The natural dual (sigma0 theta_H sigma1, sigma1_H theta_F, theta_H sigma1_F),
    H = half-edge crosses, F = flag crosses."""
    H = set(m.crosses) - flag_crosses
    theta_H = m.theta.piecewise(H)
    theta_F = m.theta.piecewise(flag_crosses)
    sigma1_H = m.sigma1.piecewise(H)       # sigma1 is identity on F anyway
    sigma1_F = m.sigma1.piecewise(flag_crosses)
    return CombinatorialMap(
        m.crosses,
        m.sigma0.compose(theta_H).compose(m.sigma1),
        sigma1_H.compose(theta_F),
        theta_H.compose(sigma1_F),
    )


def flag_cross_set(g: RibbonGraph) -> set[int]:
    out: set[int] = set()
    for orb in g.flag_labels.values():
        out |= orb
    return out


def boundary_components(g: RibbonGraph) -> list[tuple]:
    """The faces, one cross-cycle per face (the conjugate partner is implied).
    Bare vertices contribute faces to the counts but no cycles here."""
    dual = _dual_triple(g.map, flag_cross_set(g))
    seen: set[int] = set()
    out = []
    for x in sorted(dual.crosses):
        if x in seen:
            continue
        cyc = tuple(dual.sigma0.orbit(x))
        partner = tuple(dual.sigma0.orbit(dual.theta(x)))
        seen.update(cyc)
        seen.update(partner)
        out.append(cyc)
    return out


def face_count(g: RibbonGraph) -> int:
    return len(boundary_components(g)) + g.bare_vertices


def face_sets(g: RibbonGraph) -> list[frozenset]:
    """Per face, the union of its conjugate boundary-cycle cross sets
    (bare vertices excluded — they have no crosses)."""
    dual = _dual_triple(g.map, flag_cross_set(g))
    seen: set[int] = set()
    out = []
    for x in sorted(dual.crosses):
        if x in seen:
            continue
        both = set(dual.sigma0.orbit(x)) | set(dual.sigma0.orbit(dual.theta(x)))
        seen |= both
        out.append(frozenset(both))
    return out


def component_count(g: RibbonGraph) -> int:
    """Connected components (orbits of the full group, plus bare vertices)."""
    m = g.map
    seen: set[int] = set()
    k = 0
    for x in sorted(m.crosses):
        if x in seen:
            continue
        k += 1
        stack = [x]
        seen.add(x)
        while stack:
            y = stack.pop()
            for img in (m.sigma0(y), m.theta(y), m.sigma1(y)):
                if img not in seen:
                    seen.add(img)
                    stack.append(img)
    return k + g.bare_vertices


def cross_components(g: RibbonGraph) -> list[frozenset]:
    m = g.map
    seen: set[int] = set()
    comps = []
    for x in sorted(m.crosses):
        if x in seen:
            continue
        comp = {x}
        stack = [x]
        while stack:
            y = stack.pop()
            for img in (m.sigma0(y), m.theta(y), m.sigma1(y)):
                if img not in comp:
                    comp.add(img)
                    stack.append(img)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


# ---------------------------------------------------------------------------
# orientability
# ---------------------------------------------------------------------------

class OrientationChoice(NamedTuple):
    orientable: bool
    chosen: frozenset  # one sigma0-cycle per vertex, as a set of crosses


def orientation_selection(g: RibbonGraph) -> OrientationChoice:
    """Try to pick one cycle of each conjugate pair so that sigma1 always
    couples a chosen cross to a non-chosen one.  Such a choice exists iff the
    surface is orientable.

    The returned selection is deterministic (each component is seeded from the
    cycle containing its minimal cross) and is produced even when the graph is
    non-orientable — callers that only need a reproducible side-picking
    convention (serialisation, the quadratic form) use it regardless.
    """
    m = g.map
    verts = vertices_of(g)
    v_of = {}
    for i, v in enumerate(verts):
        for x in v.crosses:
            v_of[x] = i
    choice: dict[int, tuple] = {}
    chosen_crosses: set[int] = set()
    orientable = True
    for i, v in enumerate(verts):
        if i in choice:
            continue
        # new component: seed with the cycle holding the minimal cross
        choice[i] = v.cycle
        chosen_crosses.update(v.cycle)
        queue = [i]
        while queue:
            j = queue.pop(0)
            for x in choice[j]:
                y = m.sigma1(x)
                if y == x:
                    continue  # flags impose nothing
                k = v_of[y]
                want = verts[k].partner if y in verts[k].cycle else verts[k].cycle
                if k not in choice:
                    choice[k] = want
                    chosen_crosses.update(want)
                    queue.append(k)
                elif choice[k] != want:
                    orientable = False
    return OrientationChoice(orientable, frozenset(chosen_crosses))


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StructureReport:
    v: int
    e: int
    f: int
    k: int
    faces: int
    euler_genus: int
    orientable: bool


def structure_report(g: RibbonGraph) -> StructureReport:
    v = len(vertices_of(g)) + g.bare_vertices
    e = len(g.edge_labels)
    f = len(g.flag_labels)
    k = component_count(g)
    faces = face_count(g)
    return StructureReport(
        v=v, e=e, f=f, k=k, faces=faces,
        euler_genus=2 * k - v + e - faces,
        orientable=orientation_selection(g).orientable,
    )


# ---------------------------------------------------------------------------
# rotation systems
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RotationSpec:
    """A vertex-rotation presentation: per vertex the counterclockwise list of
    incident items (half-edge or flag ids), plus edge declarations pairing two
    half-edge ids with an optional twist.  Items bound by no edge are flags;
    ids listed in `flags` are additionally required to be flags."""
    vertices: tuple      # ((vertex_label, (item, ...)), ...)
    edges: tuple         # ((edge_label, end1, end2, twist), ...)
    flags: tuple = ()    # optional explicit flag ids


def from_rotation_system(spec: RotationSpec) -> RibbonGraph:
    # --- id checks
    placed: dict = {}
    order: list = []
    for vlabel, items in spec.vertices:
        for it in items:
            if it in placed:
                raise DuplicateId(f"item {it!r} appears in two rotations")
            placed[it] = vlabel
            order.append(it)
    vlabels = [vl for vl, _ in spec.vertices]
    if len(vlabels) != len(set(vlabels)):
        raise DuplicateId("duplicate vertex label")

    bound: dict = {}
    elabels = set()
    for elabel, p, q, twist in spec.edges:
        if elabel in elabels:
            raise DuplicateId(f"duplicate edge label {elabel!r}")
        elabels.add(elabel)
        if p == q:
            raise OddIncidence(f"edge {elabel!r} must join two distinct half-edges")
        for end in (p, q):
            if end not in placed:
                raise DanglingHalfEdge(f"edge {elabel!r} references unplaced id {end!r}")
            if end in bound:
                raise DuplicateId(f"half-edge {end!r} bound by two edges")
            bound[end] = elabel
        if twist not in (0, 1):
            raise OddIncidence(f"edge {elabel!r} twist must be 0 or 1")

    for fid in spec.flags:
        if fid in bound:
            raise DuplicateId(f"flag {fid!r} is also an edge end")
        if fid not in placed:
            raise DanglingHalfEdge(f"flag {fid!r} appears in no rotation")
    flag_ids = [it for it in order if it not in bound]
    if len(flag_ids) != len(set(flag_ids)):
        raise DuplicateId("duplicate flag id")

    # --- crosses: item r gets (2r, 2r+1)
    a = {it: 2 * r for r, it in enumerate(order)}
    b = {it: 2 * r + 1 for r, it in enumerate(order)}
    crosses = frozenset(range(2 * len(order)))

    s0 = {x: x for x in crosses}
    for _, items in spec.vertices:
        if not items:
            continue
        acyc = [a[it] for it in items]
        bcyc = [b[items[0]]] + [b[it] for it in reversed(items[1:])]
        for cyc in (acyc, bcyc):
            for u, w in zip(cyc, cyc[1:] + cyc[:1]):
                s0[u] = w
    th = {}
    for it in order:
        th[a[it]] = b[it]
        th[b[it]] = a[it]
    s1 = {x: x for x in crosses}
    for elabel, p, q, twist in spec.edges:
        if twist:
            pairs = ((a[p], a[q]), (b[p], b[q]))
        else:
            pairs = ((a[p], b[q]), (b[p], a[q]))
        for u, w in pairs:
            s1[u] = w
            s1[w] = u

    m = CombinatorialMap(crosses, Permutation(s0), Permutation(th), Permutation(s1))
    edge_labels = {elabel: frozenset((a[p], b[p], a[q], b[q]))
                   for elabel, p, q, _ in spec.edges}
    flag_labels = {fid: frozenset((a[fid], b[fid])) for fid in flag_ids}
    bare = sum(1 for _, items in spec.vertices if not items)
    return make_graph(m, edge_labels, flag_labels, bare_vertices=bare)


# ---------------------------------------------------------------------------
# canonical form
# ---------------------------------------------------------------------------

class CanonicalForm(NamedTuple):
    key: bytes
    edge_slots: dict   # edge label -> slot index, stable across isomorphs
    flag_slots: dict


def _bfs_serial(m: CombinatorialMap, comp: frozenset, start: int):
    relabel = {start: 0}
    seq = [start]
    head = 0
    while head < len(seq):
        x = seq[head]
        head += 1
        for img in (m.sigma0(x), m.theta(x), m.sigma1(x)):
            if img not in relabel:
                relabel[img] = len(seq)
                seq.append(img)
    serial = tuple((relabel[m.sigma0(x)], relabel[m.theta(x)], relabel[m.sigma1(x)])
                   for x in seq)
    return serial, relabel


def canonical_form(g: RibbonGraph) -> CanonicalForm:
    """Label-independent canonical key plus the induced edge/flag slot maps.

    Per component, the serialisation of (sigma0, theta, sigma1) is minimised
    over BFS relabelings from every start cross; components are then sorted by
    their serialisations and concatenated (plus the bare-vertex count).  Two
    graphs get equal keys iff they are isomorphic as labelled-forgetting maps.
    The slot maps number edges/flags by first appearance in the winning
    relabeling, blockwise in component order, so a memoised polynomial can be
    transported along any isomorphism.
    """
    m = g.map
    comps = cross_components(g)
    entries = []
    for comp in comps:
        best = None
        best_relabel = None
        for start in sorted(comp):
            serial, relabel = _bfs_serial(m, comp, start)
            if best is None or serial < best:
                best, best_relabel = serial, relabel
        entries.append((best, min(comp), best_relabel))
    entries.sort(key=lambda t: (t[0], t[1]))

    edge_slots: dict = {}
    flag_slots: dict = {}
    for serial, _, relabel in entries:
        dom = set(relabel)
        local_edges = [lab for lab, orb in g.edge_labels.items() if orb <= dom]
        local_edges.sort(key=lambda lab: min(relabel[c] for c in g.edge_labels[lab]))
        for lab in local_edges:
            edge_slots[lab] = len(edge_slots)
        local_flags = [lab for lab, orb in g.flag_labels.items() if orb <= dom]
        local_flags.sort(key=lambda lab: min(relabel[c] for c in g.flag_labels[lab]))
        for lab in local_flags:
            flag_slots[lab] = len(flag_slots)

    payload = (g.bare_vertices, tuple(e[0] for e in entries))
    return CanonicalForm(repr(payload).encode(), edge_slots, flag_slots)


def isomorphic(g: RibbonGraph, h: RibbonGraph) -> bool:
    return canonical_form(g).key == canonical_form(h).key


def relabel_crosses(g: RibbonGraph, bijection: Mapping[int, int]) -> RibbonGraph:
    """Transport the graph along a cross bijection (test helper)."""
    m = g.map
    pi = dict(bijection)
    if set(pi) != set(m.crosses) or len(set(pi.values())) != len(pi):
        raise InvalidMap("bijection must cover exactly the crosses, injectively")

    def push(p: Permutation) -> Permutation:
        return Permutation({pi[x]: pi[p(x)] for x in m.crosses})

    m2 = CombinatorialMap(frozenset(pi[x] for x in m.crosses),
                          push(m.sigma0), push(m.theta), push(m.sigma1))
    e2 = {lab: frozenset(pi[c] for c in orb) for lab, orb in g.edge_labels.items()}
    f2 = {lab: frozenset(pi[c] for c in orb) for lab, orb in g.flag_labels.items()}
    return make_graph(m2, e2, f2, bare_vertices=g.bare_vertices)
