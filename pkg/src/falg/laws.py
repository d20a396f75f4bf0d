"""Exhaustive (or, past a point budget, seeded-sampled) sweeps of the monad laws,
the strength axioms and the counit's monad-morphism squares."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .adjunction import STAR, canonical_strength, counit_component, drop_right, monoid_from_monad
from .monads import MonadOracle
from .signature import FinSet, standard_set

DEFAULT_MAX_POINTS = 100_000


@dataclass
class LawReport:
    law: str
    checked: int = 0
    exhaustive: bool = True
    violations: list = field(default_factory=list)
    decisive: bool = True  # False: a mismatch may only reflect incomplete equality

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def refuted(self) -> bool:
        return bool(self.violations) and self.decisive

    def fail(self, *detail):
        if len(self.violations) < 10:
            self.violations.append(detail)
        else:
            self.violations[-1] = ("...",)

    def __str__(self):
        mode = "exhaustive" if self.exhaustive else "sampled"
        tag = "ok " if self.ok else "FAIL" if self.decisive else "?? "
        return f"{tag} {self.law}: {self.checked} points ({mode})"


def all_maps(X: FinSet, Y: FinSet) -> Iterable[dict]:
    for values in itertools.product(Y.elements, repeat=len(X)):
        yield dict(zip(X.elements, values))


def _fn(d: dict) -> Callable:
    return d.__getitem__


class _Points:
    """Element supply for carriers, materialized when small enough."""

    def __init__(self, T: MonadOracle, max_points: int, seed: int):
        self.T = T
        self.max_points = max_points
        self.rng = random.Random(seed)
        self._cache: dict = {}

    def carrier(self, S: FinSet) -> tuple[list, bool]:
        key = S.elements
        if key in self._cache:
            return self._cache[key]
        size = self.T.carrier_size(len(S))
        if size is not None and size > self.max_points:
            pts = [self.T.random_element(S, self.rng) for _ in range(min(self.max_points, 2000))]
            out = (pts, False)
        else:
            out = (list(self.T.carrier_of(S)), True)
        self._cache[key] = out
        return out

    def nested(self, X: FinSet, levels: int) -> tuple[list, bool]:
        """Elements of T^levels X."""
        S = X
        exhaustive = True
        for i in range(levels - 1):
            pts, ex = self.carrier(S)
            if not ex:
                # cannot form the next carrier; sample straight from nested draws
                return [self._draw(S, levels - i) for _ in range(2000)], False
            exhaustive &= ex
            S = FinSet(pts)
        pts, ex = self.carrier(S)
        return pts, exhaustive and ex

    def _draw(self, S: FinSet, levels: int):
        # S is a subset of T^k X; draw an element of T^levels over it.  Each level
        # draws over a pool of at most four elements so terms keep few distinct leaves.
        S = FinSet(dict.fromkeys(self.rng.choice(S.elements) for _ in range(4)))
        for _ in range(levels):
            S = FinSet(dict.fromkeys([self.T.random_element(S, self.rng) for _ in range(4)]))
        return self.rng.choice(S.elements)


def _mark(T: MonadOracle, reports: list[LawReport]) -> list[LawReport]:
    for r in reports:
        r.decisive = T.exact_equality
    return reports


def sets_up_to(k: int) -> list[FinSet]:
    return [standard_set(n) for n in range(k + 1)]


def check_monad_laws(T: MonadOracle, k: int = 3, max_points: int = DEFAULT_MAX_POINTS, seed: int = 0) -> list[LawReport]:
    pts = _Points(T, max_points, seed)
    sets = sets_up_to(k)
    reports = {name: LawReport(name) for name in (
        "functor identity", "functor composition", "unit naturality", "multiplication naturality",
        "left unit", "right unit", "associativity")}

    for X in sets:
        TX, ex = pts.carrier(X)
        r = reports["functor identity"]
        r.exhaustive &= ex
        for t in TX:
            r.checked += 1
            if T.action_on(lambda x: x, t) != t:
                r.fail(X, t)
        r = reports["left unit"]
        r.exhaustive &= ex
        for t in TX:
            r.checked += 1
            if T.mult_at(T.unit_at(t)) != t:
                r.fail(X, t)
        r = reports["right unit"]
        r.exhaustive &= ex
        for t in TX:
            r.checked += 1
            if T.mult_at(T.action_on(T.unit_at, t)) != t:
                r.fail(X, t)

        for Y in sets:
            for f in all_maps(X, Y):
                F = _fn(f)
                r = reports["unit naturality"]
                for x in X:
                    r.checked += 1
                    if T.action_on(F, T.unit_at(x)) != T.unit_at(f[x]):
                        r.fail(X, Y, f, x)
                for Z in sets:
                    r = reports["functor composition"]
                    r.exhaustive &= ex
                    for g in all_maps(Y, Z):
                        G = _fn(g)
                        for t in TX:
                            r.checked += 1
                            if T.action_on(lambda x: g[f[x]], t) != T.action_on(G, T.action_on(F, t)):
                                r.fail(X, Y, Z, f, g, t)

        TTX, ex2 = pts.nested(X, 2)
        r = reports["multiplication naturality"]
        r.exhaustive &= ex2
        for Y in sets:
            for f in all_maps(X, Y):
                F = _fn(f)
                for tt in TTX:
                    r.checked += 1
                    lhs = T.action_on(F, T.mult_at(tt))
                    rhs = T.mult_at(T.action_on(lambda t: T.action_on(F, t), tt))
                    if lhs != rhs:
                        r.fail(X, Y, f, tt)

        TTTX, ex3 = pts.nested(X, 3)
        r = reports["associativity"]
        r.exhaustive &= ex3
        for ttt in TTTX:
            r.checked += 1
            if T.mult_at(T.mult_at(ttt)) != T.mult_at(T.action_on(T.mult_at, ttt)):
                r.fail(X, ttt)
    return _mark(T, list(reports.values()))


def check_strength_axioms(T: MonadOracle, k: int = 3, max_points: int = DEFAULT_MAX_POINTS, seed: int = 0) -> list[LawReport]:
    pts = _Points(T, max_points, seed)
    sets = sets_up_to(k)
    s = canonical_strength(T)
    reports = {name: LawReport(name) for name in (
        "strength unit object", "strength associativity", "strength unit", "strength multiplication",
        "strength naturality")}

    for X in sets:
        TX, ex = pts.carrier(X)
        r = reports["strength unit object"]
        r.exhaustive &= ex
        for t in TX:
            r.checked += 1
            if T.action_on(drop_right, s(t, STAR)) != t:
                r.fail(X, t)
        for Y in sets:
            r = reports["strength unit"]
            for x, y in itertools.product(X, Y):
                r.checked += 1
                if s(T.unit_at(x), y) != T.unit_at((x, y)):
                    r.fail(x, y)
            for Z in sets:
                r = reports["strength associativity"]
                r.exhaustive &= ex
                for t in TX:
                    for y, z in itertools.product(Y, Z):
                        r.checked += 1
                        lhs = s(s(t, y), z)
                        rhs = T.action_on(lambda p: ((p[0], p[1][0]), p[1][1]), s(t, (y, z)))
                        if lhs != rhs:
                            r.fail(t, y, z)
            r = reports["strength naturality"]
            r.exhaustive &= ex
            for X2, Y2 in itertools.product(sets[:3], sets[:3]):
                for f, g in itertools.product(list(all_maps(X, X2)), list(all_maps(Y, Y2))):
                    for t, y in itertools.product(TX, Y):
                        r.checked += 1
                        lhs = T.action_on(lambda p: (f[p[0]], g[p[1]]), s(t, y))
                        rhs = s(T.action_on(_fn(f), t), g[y])
                        if lhs != rhs:
                            r.fail(t, y, f, g)

        TTX, ex2 = pts.nested(X, 2)
        r = reports["strength multiplication"]
        r.exhaustive &= ex2
        for Y in sets:
            for tt in TTX:
                for y in Y:
                    r.checked += 1
                    lhs = T.mult_at(T.action_on(lambda p: s(p[0], p[1]), s(tt, y)))
                    rhs = s(T.mult_at(tt), y)
                    if lhs != rhs:
                        r.fail(tt, y)
    return _mark(T, list(reports.values()))


def check_counit_morphism(T: MonadOracle, k: int = 3, bound: int | None = None) -> list[LawReport]:
    """The counit ``T1 x X -> TX`` is natural and commutes with units and multiplications."""
    R = monoid_from_monad(T, bound)
    eps = counit_component(T)
    sets = sets_up_to(k)
    nat, unit, mult = LawReport("counit naturality"), LawReport("counit unit"), LawReport("counit multiplication")
    for X in sets:
        for x in X:
            unit.checked += 1
            if eps((R.unit, x)) != T.unit_at(x):
                unit.fail(x)
        for Y in sets:
            for f in all_maps(X, Y):
                for a, x in itertools.product(R.carrier, X):
                    nat.checked += 1
                    if T.action_on(_fn(f), eps((a, x))) != eps((a, f[x])):
                        nat.fail(a, x, f)
        for (a, b), c in R.table.items():
            for x in X:
                mult.checked += 1
                # mu_T . (eps * eps) against eps . mu_LRT on (a, (b, x))
                lhs = T.mult_at(eps((a, eps((b, x)))))
                if lhs != eps((c, x)):
                    mult.fail(a, b, x)
        mult.exhaustive = R.complete
    return _mark(T, [nat, unit, mult])
