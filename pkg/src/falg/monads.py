"""Finitary monads on finite sets, given computationally.

A ``MonadOracle`` knows its carrier on a finite set, its action on maps (applied
to one element at a time), its unit and its multiplication.  Elements carry
their own structure, so the unit and multiplication need no set argument.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Mapping

from .equational import Equation, bounded_theory_congruence
from .errors import CarrierNotMaterializable, NotAMonoid
from .signature import FinSet, Signature
from .terms import App, Term, Var, atom_key, chain_sizes, enumerate_terms, flatten, generators_of, map_vars, term_key


@dataclass(frozen=True)
class FiniteMonoid:
    carrier: FinSet
    mult: Mapping[tuple, Hashable]
    unit: Hashable
    name: str = ""

    def __call__(self, a, b):
        return self.mult[(a, b)]

    def check(self) -> None:
        C = self.carrier
        if self.unit not in C:
            raise NotAMonoid(f"unit {self.unit!r} is not in the carrier")
        for a, b in itertools.product(C, C):
            if (a, b) not in self.mult or self.mult[(a, b)] not in C:
                raise NotAMonoid(f"multiplication undefined or out of carrier at {(a, b)!r}")
        for a in C:
            if self.mult[(self.unit, a)] != a or self.mult[(a, self.unit)] != a:
                raise NotAMonoid(f"unit law fails at {a!r}")
        for a, b, c in itertools.product(C, C, C):
            if self.mult[(self.mult[(a, b)], c)] != self.mult[(a, self.mult[(b, c)])]:
                raise NotAMonoid(f"associativity fails at {(a, b, c)!r}")

    @classmethod
    def from_function(cls, carrier: Iterable, op: Callable, unit, name: str = "") -> "FiniteMonoid":
        carrier = FinSet(carrier)
        M = cls(carrier, {(a, b): op(a, b) for a in carrier for b in carrier}, unit, name)
        M.check()
        return M


class MonadOracle:
    """Base class; subclasses override the five structural methods."""

    name = "monad"
    finite = True  # carrier of every finite set is finite and materializable
    exact_equality = True  # False when distinct elements may still be equal in the monad

    def carrier_of(self, X: FinSet) -> FinSet:
        raise NotImplementedError

    def action_on(self, f: Callable, t):
        raise NotImplementedError

    def unit_at(self, x):
        raise NotImplementedError

    def mult_at(self, tt):
        raise NotImplementedError

    def carrier_size(self, n: int) -> int | None:
        """Size of the carrier on an n-element set, if cheaply known."""
        return None

    def random_element(self, S: FinSet, rng: random.Random):
        return rng.choice(self.carrier_of(S).elements)

    def __repr__(self):
        return f"<{self.name}>"


class IdentityMonad(MonadOracle):
    name = "identity"

    def carrier_of(self, X):
        return X

    def action_on(self, f, t):
        return f(t)

    def unit_at(self, x):
        return x

    def mult_at(self, tt):
        return tt

    def carrier_size(self, n):
        return n


class FreeMSet(MonadOracle):
    """``X -> M x X`` with unit ``x -> (1, x)`` and ``(n, (m, x)) -> (n*m, x)``."""

    def __init__(self, M: FiniteMonoid):
        self.monoid = M
        self.name = f"free-mset({M.name or len(M.carrier)})"

    def carrier_of(self, X):
        return FinSet((m, x) for m in self.monoid.carrier for x in X)

    def action_on(self, f, t):
        m, x = t
        return (m, f(x))

    def unit_at(self, x):
        return (self.monoid.unit, x)

    def mult_at(self, tt):
        n, (m, x) = tt
        return (self.monoid(n, m), x)

    def carrier_size(self, n):
        return len(self.monoid.carrier) * n

    def random_element(self, S, rng):
        return (rng.choice(self.monoid.carrier.elements), rng.choice(S.elements))


class FinitePowerset(MonadOracle):
    """Finite subsets, with singleton unit and union as multiplication."""

    name = "powerset"

    def carrier_of(self, X):
        return FinSet(frozenset(c) for k in range(len(X) + 1) for c in itertools.combinations(X.elements, k))

    def action_on(self, f, t):
        return frozenset(f(x) for x in t)

    def unit_at(self, x):
        return frozenset([x])

    def mult_at(self, tt):
        return frozenset().union(*tt)

    def carrier_size(self, n):
        return 2**n

    def random_element(self, S, rng):
        return frozenset(x for x in S.elements if rng.random() < 0.5)


class TermMonad(MonadOracle):
    """Terms over a signature.  Carriers are infinite unless a depth bound is given,
    in which case ``carrier_of`` lists terms up to that depth (the operations
    themselves stay exact and may leave the bounded part)."""

    finite = False

    def __init__(self, signature: Signature, depth: int | None = None):
        self.signature = signature
        self.depth = depth
        ops = ",".join(f"{s}:{n}" for s, n in signature.ops)
        self.name = f"terms({ops})" + ("" if depth is None else f"@{depth}")

    def bounded(self, depth: int) -> "TermMonad":
        return TermMonad(self.signature, depth)

    def carrier_of(self, X):
        if self.depth is None:
            raise CarrierNotMaterializable("term carriers are infinite; give a depth bound")
        return FinSet(enumerate_terms(self.signature, X, self.depth))

    def action_on(self, f, t):
        return map_vars(f, t)

    def unit_at(self, x):
        return Var(x)

    def mult_at(self, tt):
        return flatten(tt)

    def carrier_size(self, n):
        if self.depth is None:
            return None
        return chain_sizes(self.signature, n, self.depth)[-1]

    def random_element(self, S, rng):
        return _random_term(self.signature, S, self.depth or 2, rng)


def _random_term(sig: Signature, S: FinSet, depth: int, rng: random.Random) -> Term:
    if depth == 0 or not sig.ops or (len(S) and rng.random() < 0.3):
        if len(S):
            return Var(rng.choice(S.elements))
        consts = sig.constants()
        if not consts:
            raise CarrierNotMaterializable("no terms over an empty set without constants")
        return App(rng.choice(consts), ())
    op, arity = rng.choice(sig.ops)
    return App(op, tuple(_random_term(sig, S, depth - 1, rng) for _ in range(arity)))


def _bottom_up(idx, t: Term) -> Term:
    """Canonical form through a frozen index, normalizing arguments first so terms
    deeper than the index still reach known classes where congruence allows."""
    if type(t) is App and t.args:
        t = App(t.op, tuple(_bottom_up(idx, a) for a in t.args))
    return idx.canonical(t)


class PresentedMonad(MonadOracle):
    """Terms modulo equations, through the bounded theory congruence.

    Elements are canonical representatives.  Canonical forms are computed in the
    index for the generators a term actually uses, so they are sound but only as
    complete as ``inst_depth`` allows.
    """

    finite = False
    exact_equality = False

    def __init__(self, signature: Signature, equations: Iterable[Equation], depth: int | None = None, inst_depth: int | None = None):
        self.signature = signature
        self.equations = tuple(equations)
        self.depth = depth
        self.inst_depth = inst_depth
        self._indexes: dict = {}
        self.name = f"presented({len(self.equations)} eqs)" + ("" if depth is None else f"@{depth}")

    def bounded(self, depth: int) -> "PresentedMonad":
        return PresentedMonad(self.signature, self.equations, depth, self.inst_depth)

    def _index(self, k: int):
        # the theory congruence commutes with renaming generators, so one index per count
        idx = self._indexes.get(k)
        if idx is None:
            inst = self.depth if self.inst_depth is None else self.inst_depth
            idx = bounded_theory_congruence(self.signature, self.equations, FinSet(range(k)), inst, self.depth)
            self._indexes[k] = idx.freeze()
        return idx

    def canonical(self, t: Term) -> Term:
        if self.depth is None:
            raise CarrierNotMaterializable("presented monad needs a depth bound")
        gens = sorted(set(generators_of(t)), key=atom_key)
        # order preserving, so least members correspond under the renaming
        there = {g: i for i, g in enumerate(gens)}
        rep = _bottom_up(self._index(len(gens)), map_vars(there.__getitem__, t))
        return map_vars(gens.__getitem__, rep)

    def carrier_of(self, X):
        if self.depth is None:
            raise CarrierNotMaterializable("presented monad needs a depth bound")
        reps = {self.canonical(t) for t in enumerate_terms(self.signature, X, self.depth)}
        return FinSet(sorted((r for r in reps if r.depth <= self.depth), key=term_key))

    def action_on(self, f, t):
        return self.canonical(map_vars(f, t))

    def unit_at(self, x):
        return Var(x)

    def mult_at(self, tt):
        return self.canonical(flatten(tt))

    def carrier_size(self, n):
        # an upper bound: the number of terms before identification
        if self.depth is None:
            return None
        return chain_sizes(self.signature, n, self.depth)[-1]

    def random_element(self, S, rng):
        return self.canonical(_random_term(self.signature, S, self.depth or 2, rng))

