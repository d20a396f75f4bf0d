"""Line-oriented text format for presentations, algebras, monoids and monads.

    signature
      op f 1
    generators a
    relations
      f(f(a)) = a
    equations
      vars x y
      f(x) = x
    algebra Z2
      carrier 0 1
      op f: (0)->1 (1)->0
      env a->0
    monoid B
      carrier 0 1
      unit 1
      mult (0,0)->0 (0,1)->0 (1,0)->0 (1,1)->1
    monad powerset

A section keyword starts a section; anything after it on the line belongs to it.
``;`` separates declarations on one line, ``#`` starts a comment, indentation is
free.  ``print_file`` writes the canonical form: two-space indent, one
declaration per line, ``\\n`` endings.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field

from .algebra import FiniteAlgebra
from .congruence import GroundPresentation
from .equational import Equation
from .errors import ArityMismatch, FalgError, ParseError, UnknownSymbol
from .monads import FiniteMonoid, FinitePowerset, FreeMSet, IdentityMonad, MonadOracle, PresentedMonad, TermMonad
from .signature import FinSet, Signature
from .terms import IDENT, Term, format_term, generators_of, parse_term

SECTIONS = ("signature", "generators", "relations", "equations", "algebra", "monoid", "monad")
RESERVED = frozenset(SECTIONS) | {"vars"}
MAX_TABLE = 10**6
MONAD_KINDS = ("identity", "powerset", "free-mset", "terms", "presented")

_ELEM = re.compile(r"[A-Za-z0-9_]+\Z")
_LEX = re.compile(r"\s*(?:(->)|(free-mset\b)|([A-Za-z0-9_]+)|([(),:=]))")


@dataclass(frozen=True)
class NamedAlgebra:
    name: str
    algebra: FiniteAlgebra
    env: tuple = ()  # (generator, element) pairs


@dataclass(frozen=True)
class MonadDecl:
    kind: str
    arg: str | int | None = None  # monoid name for free-mset, depth for terms/presented


@dataclass(frozen=True)
class PresentationFile:
    signature: Signature = field(default_factory=lambda: Signature(()))
    generators: tuple = ()
    relations: tuple = ()
    vars: tuple = ()
    equations: tuple = ()
    algebras: tuple = ()
    monoids: tuple = ()
    monads: tuple = ()

    @property
    def ground(self) -> GroundPresentation:
        return GroundPresentation(self.signature, FinSet(self.generators), tuple(self.relations))

    def equation_objects(self) -> list[Equation]:
        """Each equation quantifies over the declared variables it actually uses."""
        out = []
        for l, r in self.equations:
            used = generators_of(l) | generators_of(r)
            out.append(Equation(FinSet(v for v in self.vars if v in used), l, r))
        return out

    def algebra(self, name: str) -> NamedAlgebra:
        for a in self.algebras:
            if a.name == name:
                return a
        raise UnknownSymbol(name)

    def monoid(self, name: str) -> FiniteMonoid:
        for m in self.monoids:
            if m.name == name:
                return m
        raise UnknownSymbol(name)

    def monad_oracle(self, decl: MonadDecl, depth: int, inst_depth: int | None = None) -> MonadOracle:
        if decl.kind == "identity":
            return IdentityMonad()
        if decl.kind == "powerset":
            return FinitePowerset()
        if decl.kind == "free-mset":
            return FreeMSet(self.monoid(decl.arg))
        d = decl.arg if decl.arg is not None else depth
        if decl.kind == "terms":
            return TermMonad(self.signature, d)
        return PresentedMonad(self.signature, self.equation_objects(), d, inst_depth)


# -- parsing ---------------------------------------------------------------------


def _element(tok: str):
    if tok.isdigit() and str(int(tok)) == tok:
        return int(tok)
    return tok


class _Parser:
    def __init__(self):
        self.ops: list[tuple[str, int]] = []
        self.op_lines: dict[str, int] = {}
        self.generators: list[str] = []
        self.positions: dict[str, tuple[int, int]] = {}  # generators and variables
        self.relations: list = []
        self.vars: list[str] = []
        self.equations: list = []
        self.pending_rel: list = []  # (text, line, col) parsed after the signature is known
        self.pending_eq: list = []
        self.blocks: list[dict] = []  # algebra / monoid / monad blocks, in order
        self.section: str | None = None
        self.block: dict | None = None

    # tokens within one declaration segment
    def lex(self, text: str, line: int, col: int) -> list[tuple[str, int]]:
        out, pos = [], 0
        while pos < len(text):
            m = _LEX.match(text, pos)
            if not m or m.end() == pos:
                rest = text[pos:]
                if not rest.strip():
                    break
                at = pos + len(rest) - len(rest.lstrip())
                raise ParseError(f"unexpected character {text[at]!r}", line, col + at)
            g = m.lastindex
            out.append((m.group(g), col + m.start(g)))
            pos = m.end()
        return out

    def ident(self, tok: tuple[str, int] | None, line: int, what: str) -> str:
        if tok is None:
            raise ParseError(f"missing {what}", line, 1, what)
        name, col = tok
        if not IDENT.match(name):
            raise ParseError(f"bad {what} {name!r}", line, col, "identifier")
        if name in RESERVED:
            raise ParseError(f"{name!r} is a reserved word", line, col, what)
        return name

    def segment(self, text: str, line: int, col: int) -> None:
        stripped = text.strip()
        if not stripped:
            return
        col += len(text) - len(text.lstrip())
        head = stripped.split(None, 1)[0]
        if head in SECTIONS:
            rest = stripped[len(head):]
            self.open_section(head, rest, line, col, col + len(head))
        else:
            self.declaration(stripped, line, col)

    def open_section(self, kw: str, rest: str, line: int, col: int, rest_col: int) -> None:
        self.section = kw
        self.block = None
        if kw in ("algebra", "monoid"):
            toks = self.lex(rest, line, rest_col)
            name = self.ident(toks[0] if toks else None, line, f"{kw} name")
            if len(toks) > 1:
                raise ParseError(f"unexpected {toks[1][0]!r}", line, toks[1][1], "end of declaration")
            for b in self.blocks:
                if b.get("name") == name and b["kind"] == kw:
                    raise ParseError(f"duplicate {kw} {name!r}", line, toks[0][1])
            self.block = {"kind": kw, "name": name, "line": line, "col": col, "carrier": None, "tables": {},
                          "env": [], "unit": None, "mult": None}
            self.blocks.append(self.block)
        elif kw == "monad":
            toks = self.lex(rest, line, rest_col)
            if not toks or toks[0][0] not in MONAD_KINDS:
                raise ParseError("unknown monad kind", line, toks[0][1] if toks else rest_col, " | ".join(MONAD_KINDS))
            kind, arg = toks[0][0], None
            if kind == "free-mset":
                arg = self.ident(toks[1] if len(toks) > 1 else None, line, "monoid name")
                extra = toks[2:]
            elif kind in ("terms", "presented") and len(toks) > 1:
                if not toks[1][0].isdigit():
                    raise ParseError("bad depth", line, toks[1][1], "non-negative integer")
                arg = int(toks[1][0])
                extra = toks[2:]
            else:
                extra = toks[1:]
            if extra:
                raise ParseError(f"unexpected {extra[0][0]!r}", line, extra[0][1], "end of declaration")
            self.blocks.append({"kind": "monad", "monad": MonadDecl(kind, arg), "line": line, "col": col})
            self.section = None
        elif kw == "generators":
            for name, c in self.lex(rest, line, rest_col):
                self.add_generator(self.ident((name, c), line, "generator"), line, c)
        elif rest.strip():
            self.segment(rest, line, rest_col)

    def add_generator(self, name: str, line: int, col: int) -> None:
        if name in self.generators:
            raise ParseError(f"duplicate generator {name!r}", line, col)
        self.generators.append(name)
        self.positions[name] = (line, col)

    def declaration(self, text: str, line: int, col: int) -> None:
        sec = self.section
        if sec is None:
            raise ParseError("declaration outside any section", line, col, "a section keyword")
        if sec == "generators":
            for name, c in self.lex(text, line, col):
                self.add_generator(self.ident((name, c), line, "generator"), line, c)
            return
        if sec in ("relations", "equations"):
            if sec == "equations" and text.split(None, 1)[0] == "vars":
                for name, c in self.lex(text[4:], line, col + 4):
                    v = self.ident((name, c), line, "variable")
                    if v in self.vars:
                        raise ParseError(f"duplicate variable {v!r}", line, c)
                    self.vars.append(v)
                    self.positions.setdefault(v, (line, c))
                return
            if text.count("=") != 1:
                raise ParseError("expected one '='", line, col, "term = term")
            (self.pending_rel if sec == "relations" else self.pending_eq).append((text, line, col))
            return
        toks = self.lex(text, line, col)
        kw = toks[0][0]
        if sec == "signature":
            if kw != "op" or len(toks) != 3:
                raise ParseError("bad operation declaration", line, col, "op NAME ARITY")
            name = self.ident(toks[1], line, "operation name")
            if not toks[2][0].isdigit():
                raise ParseError("bad arity", line, toks[2][1], "non-negative integer")
            if name in self.op_lines:
                raise ParseError(f"duplicate operation {name!r}", line, toks[1][1])
            self.ops.append((name, int(toks[2][0])))
            self.op_lines[name] = line
            return
        self.block_declaration(toks, line, col)

    def block_declaration(self, toks, line: int, col: int) -> None:
        b = self.block
        kw, rest = toks[0][0], toks[1:]
        if kw == "carrier":
            if b["carrier"] is not None:
                raise ParseError("carrier declared twice", line, col)
            elems = []
            for t, c in rest:
                if not _ELEM.match(t):
                    raise ParseError(f"bad element {t!r}", line, c, "element")
                e = _element(t)
                if e in elems:
                    raise ParseError(f"duplicate element {t!r}", line, c)
                elems.append(e)
            b["carrier"] = elems
        elif kw == "unit" and b["kind"] == "monoid":
            if len(rest) != 1:
                raise ParseError("bad unit declaration", line, col, "unit ELEMENT")
            b["unit"] = (self.elem(b, rest[0], line), line)
        elif kw == "mult" and b["kind"] == "monoid":
            if b["mult"] is not None:
                raise ParseError("mult declared twice", line, col)
            b["mult"] = self.entries(b, rest, line, 2)
        elif kw == "op" and b["kind"] == "algebra":
            if len(rest) < 2 or rest[1][0] != ":":
                raise ParseError("bad operation table", line, col, "op NAME: (args)->value ...")
            name, c = rest[0]
            if name not in self.op_lines:
                raise UnknownSymbol(name, line, c)
            if name in b["tables"]:
                raise ParseError(f"table for {name!r} given twice", line, c)
            b["tables"][name] = (self.entries(b, rest[2:], line, None), line, c)
        elif kw == "env" and b["kind"] == "algebra":
            for i in range(0, len(rest), 3):
                grp = rest[i:i + 3]
                if len(grp) != 3 or grp[1][0] != "->":
                    raise ParseError("bad environment entry", line, grp[0][1], "GENERATOR->ELEMENT")
                g = self.ident(grp[0], line, "generator")
                if g not in self.generators:
                    raise UnknownSymbol(g, line, grp[0][1])
                if any(g == h for h, _ in b["env"]):
                    raise ParseError(f"generator {g!r} mapped twice", line, grp[0][1])
                b["env"].append((g, self.elem(b, grp[2], line)))
        else:
            expected = "carrier, op or env" if b["kind"] == "algebra" else "carrier, unit or mult"
            raise ParseError(f"unexpected {kw!r}", line, toks[0][1], expected)

    def elem(self, b, tok, line):
        t, c = tok
        if b["carrier"] is None:
            raise ParseError("carrier must come first", line, c, "carrier declaration")
        e = _element(t) if _ELEM.match(t) else None
        if e not in b["carrier"]:
            raise ParseError(f"{t!r} is not in the carrier", line, c, "carrier element")
        return e

    def entries(self, b, toks, line, arity):
        """``(x,y)->z`` groups; returns {args: value}."""
        out, i = {}, 0
        while i < len(toks):
            start = toks[i][1]
            if toks[i][0] != "(":
                raise ParseError(f"unexpected {toks[i][0]!r}", line, start, "'('")
            i += 1
            args = []
            if i < len(toks) and toks[i][0] == ")":
                i += 1
            else:
                while True:
                    if i >= len(toks):
                        raise ParseError("unterminated argument list", line, start, "')'")
                    args.append(self.elem(b, toks[i], line))
                    i += 1
                    if i < len(toks) and toks[i][0] == ")":
                        i += 1
                        break
                    if i >= len(toks) or toks[i][0] != ",":
                        raise ParseError("bad argument list", line, toks[i][1] if i < len(toks) else start, "',' or ')'")
                    i += 1
            if i + 1 >= len(toks) or toks[i][0] != "->":
                raise ParseError("missing value", line, start, "->ELEMENT")
            value = self.elem(b, toks[i + 1], line)
            i += 2
            args = tuple(args)
            if arity is not None and len(args) != arity:
                raise ParseError(f"expected {arity} arguments", line, start)
            if args in out:
                raise ParseError("entry given twice", line, start)
            out[args] = value
        return out

    # -- assembly -----------------------------------------------------------------

    def finish(self) -> PresentationFile:
        sig = Signature(tuple(self.ops))
        for name in self.generators:
            if name in self.op_lines:
                raise ParseError(f"generator {name!r} clashes with an operation", *self.positions[name])
        relations = tuple(self.pair(text, line, col, sig, self.generators) for text, line, col in self.pending_rel)
        for v in self.vars:
            if v in self.op_lines:
                raise ParseError(f"variable {v!r} clashes with an operation", *self.positions[v])
        equations = tuple(self.pair(text, line, col, sig, self.vars) for text, line, col in self.pending_eq)
        algebras, monoids, monads = [], [], []
        for b in self.blocks:
            if b["kind"] == "algebra":
                algebras.append(self.build_algebra(b, sig))
            elif b["kind"] == "monoid":
                monoids.append(self.build_monoid(b))
            else:
                monads.append(b)
        names = {m.name for m in monoids}
        for b in monads:
            d = b["monad"]
            if d.kind == "free-mset" and d.arg not in names:
                raise UnknownSymbol(d.arg, b["line"], b["col"])
        return PresentationFile(sig, tuple(self.generators), relations, tuple(self.vars), equations,
                                tuple(algebras), tuple(monoids), tuple(b["monad"] for b in monads))

    def pair(self, text, line, col, sig, names) -> tuple[Term, Term]:
        lhs, rhs = text.split("=")
        l = parse_term(lhs, sig, names, line=line, col_offset=col - 1)
        r = parse_term(rhs, sig, names, line=line, col_offset=col + len(lhs))
        return l, r

    def build_algebra(self, b, sig: Signature) -> NamedAlgebra:
        line, col = b["line"], b["col"]
        if b["carrier"] is None:
            raise ParseError(f"algebra {b['name']!r} has no carrier", line, col, "carrier declaration")
        arities = sig.arities
        for name, (table, tline, tcol) in b["tables"].items():
            if len(b["carrier"]) ** arities[name] > MAX_TABLE:
                raise ParseError(f"table for {name!r} is too large", tline, tcol)
            for args in table:
                if len(args) != arities[name]:
                    raise ArityMismatch(name, arities[name], len(args), tline)
            for args in itertools.product(b["carrier"], repeat=arities[name]):
                if args not in table:
                    raise ParseError(f"table for {name!r} misses {args!r}", tline, tcol)
        for name, _ in sig.ops:
            if name not in b["tables"]:
                raise ParseError(f"algebra {b['name']!r} has no table for {name!r}", line, col, f"op {name}: ...")
        tables = {name: t for name, (t, _, _) in b["tables"].items()}
        A = FiniteAlgebra(sig, FinSet(b["carrier"]), tables)
        return NamedAlgebra(b["name"], A, tuple(b["env"]))

    def build_monoid(self, b) -> FiniteMonoid:
        line, col = b["line"], b["col"]
        if b["carrier"] is None or b["unit"] is None or b["mult"] is None:
            raise ParseError(f"monoid {b['name']!r} needs carrier, unit and mult", line, col)
        M = FiniteMonoid(FinSet(b["carrier"]), b["mult"], b["unit"][0], b["name"])
        try:
            M.check()
        except FalgError as exc:
            raise ParseError(str(exc), line, col) from None
        return M


def _line_col(data: bytes, offset: int) -> tuple[int, int]:
    line = data.count(b"\n", 0, offset) + 1
    return line, offset - (data.rfind(b"\n", 0, offset) + 1) + 1


def parse(text: str | bytes) -> PresentationFile:
    """Parse a presentation file.  Every failure is a ``FalgError`` carrying a line."""
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError("invalid UTF-8", *_line_col(bytes(text), exc.start)) from None
    p = _Parser()
    try:
        for lineno, raw in enumerate(text.split("\n"), start=1):
            raw = raw.rstrip("\r")
            body = raw.split("#", 1)[0]
            col = 1
            for seg in body.split(";"):
                p.segment(seg, lineno, col)
                col += len(seg) + 1
        return p.finish()
    except RecursionError:
        raise ParseError("terms nested too deeply", 1, 1) from None


# -- printing --------------------------------------------------------------------


def _fmt_elem(e) -> str:
    return str(e)


def _fmt_entries(table: dict, carrier, arity: int) -> str:
    parts = []
    for args in itertools.product(carrier, repeat=arity):
        parts.append("(" + ",".join(map(_fmt_elem, args)) + ")->" + _fmt_elem(table[args]))
    return " ".join(parts)


def print_file(f: PresentationFile) -> str:
    out: list[str] = []
    if f.signature.ops:
        out.append("signature")
        out.extend(f"  op {name} {arity}" for name, arity in f.signature.ops)
    if f.generators:
        out.append("generators " + " ".join(f.generators))
    if f.relations:
        out.append("relations")
        out.extend(f"  {format_term(l)} = {format_term(r)}" for l, r in f.relations)
    if f.vars or f.equations:
        out.append("equations")
        if f.vars:
            out.append("  vars " + " ".join(f.vars))
        out.extend(f"  {format_term(l)} = {format_term(r)}" for l, r in f.equations)
    for na in f.algebras:
        A = na.algebra
        out.append(f"algebra {na.name}")
        out.append("  carrier " + " ".join(map(_fmt_elem, A.carrier)))
        for name, arity in f.signature.ops:
            out.append(f"  op {name}: " + _fmt_entries(A.tables[name], A.carrier.elements, arity))
        if na.env:
            out.append("  env " + " ".join(f"{g}->{_fmt_elem(e)}" for g, e in na.env))
    for M in f.monoids:
        out.append(f"monoid {M.name}")
        out.append("  carrier " + " ".join(map(_fmt_elem, M.carrier)))
        out.append(f"  unit {_fmt_elem(M.unit)}")
        out.append("  mult " + _fmt_entries(M.mult, M.carrier.elements, 2))
    for d in f.monads:
        out.append("monad " + d.kind + ("" if d.arg is None else f" {d.arg}"))
    return "".join(line + "\n" for line in out)


def load(path) -> PresentationFile:
    with open(path, "rb") as fh:
        return parse(fh.read())
