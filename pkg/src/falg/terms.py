"""Terms over a signature: the free monad on finite sets.

A term is either ``Var(gen)`` (a generator, depth 0) or ``App(op, args)``
(depth ``1 + max(depth(args))``, so constants have depth 1).  Terms are
immutable and compare structurally; ``TermStore`` hash-conses them into
integer node ids for the congruence machinery.
"""

from __future__ import annotations

import itertools
import re
from typing import Callable, Hashable, Iterable, Mapping

from .config import node_cap
from .errors import (
    ArityMismatch,
    DepthBudgetExceeded,
    ParseError,
    SizeCapExceeded,
    UndefinedOnElement,
    UnknownElement,
    UnknownGenerator,
    UnknownSymbol,
)
from .signature import FinSet, Signature, polynomial_size


class Term:
    __slots__ = ("depth", "size", "_hash")

    def __setattr__(self, name, value):
        raise AttributeError("terms are immutable")

    def __lt__(self, other: "Term") -> bool:
        return term_key(self) < term_key(other)


class Var(Term):
    __slots__ = ("gen",)

    def __init__(self, gen: Hashable):
        object.__setattr__(self, "gen", gen)
        object.__setattr__(self, "depth", 0)
        object.__setattr__(self, "size", 1)
        object.__setattr__(self, "_hash", hash(("var", gen)))

    def __eq__(self, other):
        return self is other or (type(other) is Var and self._hash == other._hash and self.gen == other.gen)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Var({self.gen!r})"

    def __str__(self):
        return format_term(self)

    def __reduce__(self):
        return (Var, (self.gen,))


class App(Term):
    __slots__ = ("op", "args")

    def __init__(self, op: str, args: Iterable[Term] = ()):
        args = tuple(args)
        object.__setattr__(self, "op", op)
        object.__setattr__(self, "args", args)
        object.__setattr__(self, "depth", 1 + max((a.depth for a in args), default=0))
        object.__setattr__(self, "size", 1 + sum(a.size for a in args))
        object.__setattr__(self, "_hash", hash((op, args)))

    def __eq__(self, other):
        return self is other or (
            type(other) is App and self._hash == other._hash and self.op == other.op and self.args == other.args
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"App({self.op!r}, {list(self.args)!r})"

    def __str__(self):
        return format_term(self)

    def __reduce__(self):
        return (App, (self.op, self.args))


def app(op: str, *args: Term) -> App:
    return App(op, args)


def atom_key(g) -> tuple:
    if isinstance(g, str):
        return (0, g)
    if isinstance(g, int) and not isinstance(g, bool):
        return (1, g)
    if isinstance(g, Term):
        return (2, term_key(g))
    if isinstance(g, tuple):
        return (3, tuple(atom_key(x) for x in g))
    if isinstance(g, frozenset):
        return (4, tuple(sorted(atom_key(x) for x in g)))
    return (5, repr(g))


def term_key(t: Term) -> tuple:
    """Deterministic total order: by depth, then size, then structure."""
    if type(t) is Var:
        return (0, 1, 0, atom_key(t.gen))
    return (t.depth, t.size, 1, t.op, tuple(term_key(a) for a in t.args))


def subterms(t: Term) -> Iterable[Term]:
    """Post-order, with repeats removed."""
    seen = set()
    stack = [(t, False)]
    while stack:
        u, done = stack.pop()
        if u in seen:
            continue
        if done or type(u) is Var or not u.args:
            seen.add(u)
            yield u
            continue
        stack.append((u, True))
        for a in reversed(u.args):
            if a not in seen:
                stack.append((a, False))


def generators_of(t: Term) -> set:
    return {u.gen for u in subterms(t) if type(u) is Var}


def check_term(t: Term, sig: Signature, X: FinSet | None = None) -> None:
    arities = sig.arities
    for u in subterms(t):
        if type(u) is Var:
            if X is not None and u.gen not in X:
                raise UnknownGenerator(u.gen)
        else:
            if u.op not in arities:
                raise UnknownSymbol(u.op)
            if arities[u.op] != len(u.args):
                raise ArityMismatch(u.op, arities[u.op], len(u.args))


# -- monad structure -----------------------------------------------------------


def unit(x: Hashable, X: FinSet | None = None) -> Var:
    if X is not None and x not in X:
        raise UnknownGenerator(x)
    return Var(x)


def _fold(t: Term, leaf: Callable[[Hashable], Term]) -> Term:
    memo: dict[Term, Term] = {}
    for u in subterms(t):
        if type(u) is Var:
            memo[u] = leaf(u.gen)
        else:
            memo[u] = App(u.op, tuple(memo[a] for a in u.args))
    return memo[t]


def _as_function(f) -> Callable:
    if callable(f):
        return f
    table = f

    def look(x):
        try:
            return table[x]
        except KeyError:
            raise UndefinedOnElement(x) from None

    return look


def map_vars(f: Mapping | Callable, t: Term) -> Term:
    """The functor action: relabel every leaf ``x`` to ``f(x)``."""
    g = _as_function(f)
    return _fold(t, lambda x: Var(g(x)))


def flatten(tt: Term) -> Term:
    """Monad multiplication: graft the term stored at each leaf into place."""

    def graft(leaf):
        if not isinstance(leaf, Term):
            raise TypeError(f"leaf {leaf!r} is not a term")
        return leaf

    return _fold(tt, graft)


def substitute(t: Term, sigma: Mapping | Callable) -> Term:
    g = _as_function(sigma)
    return _fold(t, g)


def strength(t: Term, y: Hashable, Y: FinSet | None = None) -> Term:
    """``TX x Y -> T(X x Y)``: pair every leaf with ``y``."""
    if Y is not None and y not in Y:
        raise UnknownElement(y)
    return _fold(t, lambda x: Var((x, y)))


# -- enumeration ---------------------------------------------------------------


def chain_sizes(sig: Signature, n_generators: int, depth: int) -> list[int]:
    """Sizes of the depth-bounded term sets: ``t0 = |X|``, ``t(n+1) = H(t(n)) + |X|``."""
    sizes = [n_generators]
    for _ in range(depth):
        sizes.append(polynomial_size(sig, sizes[-1]) + n_generators)
    return sizes


def _check_budget(sig: Signature, X: FinSet, depth: int, cap: int | None) -> None:
    cap = node_cap() if cap is None else cap
    t = len(X)
    if t > cap:
        raise DepthBudgetExceeded(f"{t} terms at depth 0 exceed cap {cap}")
    for d in range(depth):
        t = polynomial_size(sig, t) + len(X)
        if t > cap:
            raise DepthBudgetExceeded(f"more than {cap} terms at depth {d + 1}")


def enumerate_terms(sig: Signature, X: FinSet, depth: int, cap: int | None = None) -> list[Term]:
    """All terms of depth <= ``depth``, ordered by depth, then op, then argument tuple."""
    _check_budget(sig, X, depth, cap)
    layers: list[list[Term]] = [[Var(x) for x in X]]
    everything = list(layers[0])
    for d in range(1, depth + 1):
        new = []
        for op, arity in sig.ops:
            if arity == 0:
                if d == 1:
                    new.append(App(op, ()))
                continue
            # at least one argument must come from the newest layer
            for args in itertools.product(everything, repeat=arity):
                if max(a.depth for a in args) == d - 1:
                    new.append(App(op, args))
        layers.append(new)
        everything.extend(new)
    return everything


# -- hash-consing ----------------------------------------------------------------

VAR = None  # op slot of a generator node


class TermStore:
    """Arena of interned nodes; ``intern`` is total and idempotent."""

    def __init__(self, cap: int | None = None):
        self.cap = node_cap() if cap is None else cap
        self.table: dict[tuple, int] = {}
        self.nodes: list[tuple] = []  # (op, child ids) or (VAR, gen)
        self.depth: list[int] = []
        self.size: list[int] = []
        self._term_cache: dict[Term, int] = {}
        self._terms: list[Term | None] = []

    def __len__(self) -> int:
        return len(self.nodes)

    def _new(self, key: tuple, depth: int, size: int) -> int:
        if len(self.nodes) >= self.cap:
            raise SizeCapExceeded(f"term store exceeded {self.cap} nodes")
        nid = len(self.nodes)
        self.table[key] = nid
        self.nodes.append(key)
        self.depth.append(depth)
        self.size.append(size)
        self._terms.append(None)
        return nid

    def lookup_key(self, key: tuple) -> int | None:
        return self.table.get(key)

    def var(self, gen) -> int:
        key = (VAR, gen)
        nid = self.table.get(key)
        return nid if nid is not None else self._new(key, 0, 1)

    def app(self, op: str, kids: tuple[int, ...]) -> int:
        key = (op, kids)
        nid = self.table.get(key)
        if nid is not None:
            return nid
        depth = 1 + max((self.depth[k] for k in kids), default=0)
        size = 1 + sum(self.size[k] for k in kids)
        return self._new(key, depth, size)

    def intern(self, t: Term) -> int:
        cache = self._term_cache
        nid = cache.get(t)
        if nid is not None:
            return nid
        for u in subterms(t):
            if u in cache:
                continue
            if type(u) is Var:
                cache[u] = self.var(u.gen)
            else:
                cache[u] = self.app(u.op, tuple(cache[a] for a in u.args))
        return cache[t]

    def find_term(self, t: Term) -> int | None:
        """Node id of ``t`` if already interned, without interning anything."""
        nid = self._term_cache.get(t)
        if nid is not None:
            return nid
        if type(t) is Var:
            return self.table.get((VAR, t.gen))
        kids = []
        for a in t.args:
            k = self.find_term(a)
            if k is None:
                return None
            kids.append(k)
        return self.table.get((t.op, tuple(kids)))

    def term(self, nid: int) -> Term:
        cached = self._terms[nid]
        if cached is not None:
            return cached
        stack = [nid]
        while stack:
            n = stack[-1]
            if self._terms[n] is not None:
                stack.pop()
                continue
            op, rest = self.nodes[n]
            if op is VAR:
                self._terms[n] = Var(rest)
                stack.pop()
                continue
            missing = [k for k in rest if self._terms[k] is None]
            if missing:
                stack.extend(missing)
                continue
            self._terms[n] = App(op, tuple(self._terms[k] for k in rest))
            stack.pop()
        return self._terms[nid]

    def less(self, a: int, b: int) -> bool:
        """``term_key(term(a)) < term_key(term(b))`` computed on the DAG."""
        return self._cmp(a, b) < 0

    def _cmp(self, a: int, b: int) -> int:
        if a == b:
            return 0
        da, db = self.depth[a], self.depth[b]
        if da != db:
            return -1 if da < db else 1
        sa, sb = self.size[a], self.size[b]
        if sa != sb:
            return -1 if sa < sb else 1
        oa, ra = self.nodes[a]
        ob, rb = self.nodes[b]
        if oa is VAR or ob is VAR:
            if oa is VAR and ob is VAR:
                ka, kb = atom_key(ra), atom_key(rb)
                return -1 if ka < kb else (1 if ka > kb else 0)
            return -1 if oa is VAR else 1
        if oa != ob:
            return -1 if oa < ob else 1
        for x, y in zip(ra, rb):
            c = self._cmp(x, y)
            if c:
                return c
        return 0


# -- text syntax -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|(\()|(\))|(,))")
IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def _format_atom(g) -> str:
    if isinstance(g, str):
        return g
    if isinstance(g, tuple):
        return "(" + ",".join(_format_atom(x) for x in g) + ")"
    if isinstance(g, Term):
        return "[" + format_term(g) + "]"
    if isinstance(g, frozenset):
        return "{" + ",".join(_format_atom(x) for x in sorted(g, key=atom_key)) + "}"
    return str(g)


def format_term(t: Term) -> str:
    out: dict[Term, str] = {}
    for u in subterms(t):
        if type(u) is Var:
            out[u] = _format_atom(u.gen)
        elif not u.args:
            out[u] = u.op
        else:
            out[u] = u.op + "(" + ", ".join(out[a] for a in u.args) + ")"
    return out[t]


def parse_term(
    text: str,
    sig: Signature,
    generators: Iterable[str] | None = None,
    *,
    line: int = 1,
    col_offset: int = 0,
) -> Term:
    """Parse ``g(a, f(b))``.  Bare identifiers resolve to constants first, then generators.

    ``generators=None`` accepts any identifier that is not an operation as a generator.
    """
    arities = sig.arities
    gens = None if generators is None else set(generators)
    pos = 0
    n = len(text)

    def err(msg, at, expected=None):
        raise ParseError(msg, line, col_offset + at + 1, expected)

    def next_token():
        nonlocal pos
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            rest = text[pos:].lstrip()
            if not rest:
                return None, pos
            at = n - len(rest)
            err(f"unexpected character {rest[0]!r}", at, "identifier, '(', ')' or ','")
        start = m.start(m.lastindex)
        pos = m.end()
        return m.group(m.lastindex), start

    def peek():
        m = _TOKEN.match(text, pos)
        return m.group(m.lastindex) if m and m.end() > pos else None

    def parse_one() -> Term:
        tok, at = next_token()
        if tok is None:
            err("unexpected end of term", n, "identifier")
        if not IDENT.match(tok):
            err(f"unexpected {tok!r}", at, "identifier")
        if peek() == "(":
            next_token()
            args = []
            if peek() == ")":
                next_token()
            else:
                while True:
                    args.append(parse_one())
                    tok2, at2 = next_token()
                    if tok2 == ")":
                        break
                    if tok2 != ",":
                        err(f"unexpected {tok2!r}" if tok2 else "unexpected end of term", at2, "',' or ')'")
            if tok not in arities:
                raise UnknownSymbol(tok, line, col_offset + at + 1)
            if arities[tok] != len(args):
                raise ArityMismatch(tok, arities[tok], len(args), line)
            return App(tok, args)
        if tok in arities:
            if arities[tok] != 0:
                raise ArityMismatch(tok, arities[tok], 0, line)
            return App(tok, ())
        if gens is not None and tok not in gens:
            raise UnknownSymbol(tok, line, col_offset + at + 1)
        return Var(tok)

    t = parse_one()
    tok, at = next_token()
    if tok is not None:
        err(f"trailing {tok!r}", at, "end of term")
    return t
