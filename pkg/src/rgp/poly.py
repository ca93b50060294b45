"""Exact multivariate polynomials with integer coefficients.

The polynomial ring used everywhere else in the package.  Variables are typed
by *kind* (one kind per family of indeterminates: the four edge variables of
the subset-expansion polynomial, the two hyperbolic families, Schwinger
parameters, the loop-counting weight, the degree-weight sequence r_n, and two
reserved scaling variables) plus a label.  Monomials are canonically sorted,
so equal polynomials have equal dicts, equal canonical strings, and equal
JSON payloads — all goldens in the test suite compare byte-exact strings.

Coefficients are Python ints (arbitrary precision); rational evaluation goes
through fractions.Fraction.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Union

from .errors import MissingVariable, ParseError

# Kind order is part of the canonical monomial order.  LAMBDA/MU exist only so
# scaling identities can be asserted as honest polynomial identities in fresh
# variables; they sort after everything else.
KINDS = ("X", "Y", "Z", "W", "T", "OMEGA", "ALPHA", "BETA", "R", "LAMBDA", "MU")
_KIND_INDEX = {k: i for i, k in enumerate(KINDS)}

# Print prefixes.  BETA, LAMBDA, MU and the bare symbolic r carry no label.
_PREFIX = {"X": "x", "Y": "y", "Z": "z", "W": "w", "T": "t",
           "OMEGA": "O", "ALPHA": "a", "BETA": "b", "R": "r",
           "LAMBDA": "l", "MU": "m"}
_PREFIX_TO_KIND = {v: k for k, v in _PREFIX.items()}

Label = Union[str, int, None]


class VarId(NamedTuple):
    kind: str
    label: Label = None

    def sort_key(self):
        # Labels are homogeneous within a kind (str for edge labels, int for
        # r-indices), but guard against mixing anyway.
        label = self.label
        if label is None:
            tag, val = 0, ""
        elif isinstance(label, int):
            tag, val = 1, label
        else:
            tag, val = 2, str(label)
        return (_KIND_INDEX[self.kind], tag, val)

    def name(self) -> str:
        prefix = _PREFIX[self.kind]
        if self.label is None:
            return prefix
        return f"{prefix}_{self.label}"


# A monomial is a tuple of (VarId, exponent>0) sorted by VarId.sort_key.
Monomial = tuple

_ONE_MONO: Monomial = ()


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps: dict[VarId, int] = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(((v, e) for v, e in exps.items() if e), key=lambda p: p[0].sort_key()))


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _mono_order_key(m: Monomial):
    # Graded order, highest total degree first; ties broken by the variable
    # sequence (earlier kinds/labels first, higher exponents first).
    return (-_mono_degree(m), tuple((v.sort_key(), -e) for v, e in m))


class MultiPoly:
    """Immutable-by-convention sparse polynomial: {monomial: nonzero int}."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        self.terms: dict[Monomial, int] = {m: c for m, c in (terms or {}).items() if c}

    # -- constructors ----------------------------------------------------

    @staticmethod
    def const(c: int) -> "MultiPoly":
        return MultiPoly({_ONE_MONO: int(c)} if c else {})

    @staticmethod
    def zero() -> "MultiPoly":
        return MultiPoly()

    @staticmethod
    def one() -> "MultiPoly":
        return MultiPoly.const(1)

    @staticmethod
    def variable(kind: str, label: Label = None, exp: int = 1) -> "MultiPoly":
        if kind not in _KIND_INDEX:
            raise ValueError(f"unknown variable kind {kind!r}")
        if exp < 0:
            raise ValueError("negative exponent")
        if exp == 0:
            return MultiPoly.one()
        return MultiPoly({((VarId(kind, label), exp),): 1})

    # -- ring operations -------------------------------------------------

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return MultiPoly(out)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        out: dict[Monomial, int] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = _mono_mul(ma, mb)
                s = out.get(m, 0) + ca * cb
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return MultiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power")
        result = MultiPoly.one()
        for _ in range(n):
            result = result * self
        return result

    def scale(self, c: int) -> "MultiPoly":
        if c == 0:
            return MultiPoly.zero()
        return MultiPoly({m: c * k for m, k in self.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.terms == MultiPoly.const(other).terms
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- queries ----------------------------------------------------------

    def variables(self) -> set[VarId]:
        return {v for m in self.terms for v, _ in m}

    def degree_in(self, var: VarId, monomial: Monomial) -> int:
        for v, e in monomial:
            if v == var:
                return e
        return 0

    def kind_degree(self, kind: str, monomial: Monomial) -> int:
        return sum(e for v, e in monomial if v.kind == kind)

    def coefficient_of_kind_degree(self, kind: str, degree: int) -> "MultiPoly":
        """Collect terms whose total degree in `kind` equals `degree`,
        with those variables removed from the monomials."""
        out: dict[Monomial, int] = {}
        for m, c in self.terms.items():
            if self.kind_degree(kind, m) != degree:
                continue
            rest = tuple((v, e) for v, e in m if v.kind != kind)
            out[rest] = out.get(rest, 0) + c
        return MultiPoly(out)

    # -- substitution / evaluation ----------------------------------------

    def substitute(self, mapping: Mapping[VarId, "MultiPoly | int"]) -> "MultiPoly":
        """Replace each mapped variable by a polynomial (or int); unmapped
        variables pass through."""
        norm = {v: (p if isinstance(p, MultiPoly) else MultiPoly.const(p))
                for v, p in mapping.items()}
        total = MultiPoly.zero()
        for m, c in self.terms.items():
            term = MultiPoly.const(c)
            passthrough: list = []
            for v, e in m:
                if v in norm:
                    term = term * (norm[v] ** e)
                else:
                    passthrough.append((v, e))
            if passthrough:
                term = term * MultiPoly({tuple(passthrough): 1})
            total = total + term
        return total

    def eval_rational(self, assignment: Mapping[VarId, "Fraction | int"]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            val = Fraction(c)
            for v, e in m:
                if v not in assignment:
                    raise MissingVariable(f"no value for {v.name()}")
                val *= Fraction(assignment[v]) ** e
            total += val
        return total

    # -- canonical text ----------------------------------------------------

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self.terms.items(), key=lambda t: _mono_order_key(t[0]))

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        chunks: list[str] = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            factors = [f"{v.name()}^{e}" if e > 1 else v.name() for v, e in m]
            if mag != 1 or not factors:
                factors.insert(0, str(mag))
            body = "*".join(factors)
            if i == 0:
                chunks.append(body if c > 0 else f"-{body}")
            else:
                chunks.append(f" {sign} {body}")
        return "".join(chunks)

    def __repr__(self):
        return f"MultiPoly({self.to_string()})"

    # -- JSON --------------------------------------------------------------

    def to_json_obj(self) -> list:
        return [
            {"coeff": str(c),
             "vars": [{"kind": v.kind, "label": v.label, "exp": e} for v, e in m]}
            for m, c in self.sorted_terms()
        ]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @staticmethod
    def from_json_obj(obj) -> "MultiPoly":
        if not isinstance(obj, list):
            raise ParseError("polynomial JSON must be a list of terms")
        terms: dict[Monomial, int] = {}
        for entry in obj:
            try:
                coeff = int(entry["coeff"])
                mono: dict[VarId, int] = {}
                for rec in entry["vars"]:
                    kind, label, exp = rec["kind"], rec["label"], int(rec["exp"])
                    if kind not in _KIND_INDEX:
                        raise ParseError(f"unknown kind {kind!r}")
                    if exp <= 0:
                        raise ParseError("exponents must be positive")
                    v = VarId(kind, label)
                    mono[v] = mono.get(v, 0) + exp
                key = tuple(sorted(mono.items(), key=lambda p: p[0].sort_key()))
            except (KeyError, TypeError, ValueError) as exc:
                if isinstance(exc, ParseError):
                    raise
                raise ParseError(f"malformed polynomial JSON term: {exc}") from exc
            terms[key] = terms.get(key, 0) + coeff
        return MultiPoly(terms)

    @staticmethod
    def from_json(text: str) -> "MultiPoly":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON: {exc.msg}", position=exc.pos) from exc
        return MultiPoly.from_json_obj(obj)


# --- module-level operation aliases (the functional API) ----------------------

def add(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    return a + b


def mul(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    return a * b


def scale(a: MultiPoly, c: int) -> MultiPoly:
    return a.scale(c)


def substitute(a: MultiPoly, mapping: Mapping[VarId, MultiPoly | int]) -> MultiPoly:
    return a.substitute(mapping)


def eval_rational(a: MultiPoly, assignment: Mapping[VarId, Fraction | int]) -> Fraction:
    return a.eval_rational(assignment)


def to_string_canonical(a: MultiPoly) -> str:
    return a.to_string()


# --- parsing -------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z][A-Za-z0-9_.:\-]*)|(?P<op>[-+*^()]))")


def _name_to_var(name: str, pos: int) -> VarId:
    if name in ("b", "l", "m", "r"):
        return VarId({"b": "BETA", "l": "LAMBDA", "m": "MU", "r": "R"}[name], None)
    if "_" in name:
        prefix, label = name.split("_", 1)
        kind = _PREFIX_TO_KIND.get(prefix)
        if kind is None or not label:
            raise ParseError(f"unknown variable {name!r}", position=pos)
        if kind == "R":
            if not label.isdigit():
                raise ParseError(f"r-index must be an integer in {name!r}", position=pos)
            return VarId("R", int(label))
        if kind in ("BETA", "LAMBDA", "MU"):
            raise ParseError(f"variable {name!r} does not take a label", position=pos)
        return VarId(kind, label)
    raise ParseError(f"unknown variable {name!r}", position=pos)


def parse(text: str) -> MultiPoly:
    """Parse the canonical textual form (sums of '*'-joined factors with '^'
    powers).  Inverse of to_string_canonical on its image."""
    tokens: list[tuple[str, str, int]] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            # Whitespace-only tail is fine; anything else is an error.
            if text[pos:].strip():
                bad = len(text) - len(text[pos:].lstrip())
                raise ParseError(f"unexpected character {text[bad]!r}", position=bad)
            break
        for group in ("int", "name", "op"):
            if m.group(group) is not None:
                tokens.append((group, m.group(group), m.start(group)))
        pos = m.end()
    if not tokens:
        raise ParseError("empty polynomial", position=0)

    result = MultiPoly.zero()
    i = 0
    n = len(tokens)

    def parse_factor(j: int) -> tuple[MultiPoly, int]:
        kind, value, at = tokens[j]
        if kind == "int":
            base = MultiPoly.const(int(value))
        elif kind == "name":
            base = MultiPoly({((_name_to_var(value, at), 1),): 1})
        else:
            raise ParseError(f"expected a number or variable, got {value!r}", position=at)
        j += 1
        if j < n and tokens[j][:2] == ("op", "^"):
            j += 1
            if j >= n or tokens[j][0] != "int":
                raise ParseError("exponent must be an integer",
                                 position=tokens[j - 1][2])
            base = base ** int(tokens[j][1])
            j += 1
        return base, j

    while i < n:
        # sign
        sign = 1
        while i < n and tokens[i][:2] in (("op", "+"), ("op", "-")):
            if tokens[i][1] == "-":
                sign = -sign
            i += 1
        if i >= n:
            raise ParseError("dangling sign", position=tokens[-1][2])
        term, i = parse_factor(i)
        while i < n and tokens[i][:2] == ("op", "*"):
            factor, i = parse_factor(i + 1)
            term = term * factor
        result = result + term.scale(sign)
        if i < n and tokens[i][:2] not in (("op", "+"), ("op", "-")):
            raise ParseError(f"expected '+', '-' or end, got {tokens[i][1]!r}",
                             position=tokens[i][2])
    return result
