"""Finite sets, signatures and the polynomial functor they induce on finite sets."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Mapping

from .errors import DuplicateElement, DuplicateSymbol, UndefinedOnElement


@dataclass(frozen=True)
class FinSet:
    """An ordered finite set of hashable atoms."""

    elements: tuple
    _members: frozenset = field(init=False, repr=False, compare=False)

    def __init__(self, elements: Iterable[Hashable] = ()):
        elems = tuple(elements)
        members = frozenset(elems)
        if len(members) != len(elems):
            seen = set()
            for e in elems:
                if e in seen:
                    raise DuplicateElement(e)
                seen.add(e)
        object.__setattr__(self, "elements", elems)
        object.__setattr__(self, "_members", members)

    def __iter__(self) -> Iterator:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return x in self._members

    def __getitem__(self, i):
        return self.elements[i]

    def index(self, x) -> int:
        return self.elements.index(x)

    def product(self, other: "FinSet") -> "FinSet":
        return FinSet(itertools.product(self.elements, other.elements))


ONE = FinSet(["*"])


def standard_set(n: int) -> FinSet:
    """``{a, b, c, ...}`` (falls back to ``x<i>`` past 26)."""
    letters = "abcdefghijklmnopqrstuvwxyz"
    return FinSet(letters[i] if i < 26 else f"x{i}" for i in range(n))


@dataclass(frozen=True)
class Signature:
    """Finitely many operation symbols with natural-number arities."""

    ops: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        seen = set()
        for sym, arity in self.ops:
            if sym in seen:
                raise DuplicateSymbol(sym)
            if not isinstance(arity, int) or arity < 0:
                raise ValueError(f"arity of {sym!r} must be a natural number, got {arity!r}")
            seen.add(sym)

    def __iter__(self):
        return iter(self.ops)

    def __len__(self) -> int:
        return len(self.ops)

    def __contains__(self, sym) -> bool:
        return any(s == sym for s, _ in self.ops)

    def arity(self, sym: str) -> int:
        for s, n in self.ops:
            if s == sym:
                return n
        raise KeyError(sym)

    @property
    def arities(self) -> dict[str, int]:
        return dict(self.ops)

    def is_super_finitary(self) -> bool:
        # Over Set: finitely many symbols, each of finite arity, i.e. all but
        # finitely many arity components are empty.
        return all(isinstance(n, int) and n >= 0 for _, n in self.ops)

    def constants(self) -> list[str]:
        return [s for s, n in self.ops if n == 0]


def validate_signature(ops: Iterable[tuple[str, int]]) -> Signature:
    sig = Signature(tuple((str(s), int(n)) for s, n in ops))
    assert sig.is_super_finitary()
    return sig


def eval_polynomial(sig: Signature, X: FinSet) -> FinSet:
    """All flat applications ``(op, (x1, ..., xn))`` with the ``xi`` drawn from X."""
    return FinSet(
        (op, args) for op, arity in sig.ops for args in itertools.product(X.elements, repeat=arity)
    )


def polynomial_size(sig: Signature, n: int) -> int:
    return sum(n**arity for _, arity in sig.ops)


def eval_polynomial_on_map(sig: Signature, f: Mapping, X: FinSet) -> dict:
    """The polynomial functor's action on a finite map ``f: X -> Y``, as a dict."""
    for x in X:
        if x not in f:
            raise UndefinedOnElement(x)
    return {(op, args): (op, tuple(f[a] for a in args)) for op, args in eval_polynomial(sig, X)}
