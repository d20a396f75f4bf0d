"""Monoids versus finitary monads on sets.

``monad_from_monoid`` sends a monoid M to the monad of free M-sets ``X -> M x X``;
``monoid_from_monad`` sends a monad T to the monoid ``T1`` whose multiplication
substitutes the second argument into the first via the canonical strength.
The unit ``m -> (m, *)`` and the counit ``T1 x X -> TX`` make these adjoint.

Fixed conventions: ``1 = {"*"}``; ``1 x X ~ X`` and ``X x 1 ~ X`` are projections.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable, Mapping

from .errors import CarrierNotMaterializable, NotAMonoid
from .monads import FiniteMonoid, FreeMSet, MonadOracle
from .signature import ONE, FinSet

STAR = "*"


def drop_left(p):
    """``1 x X -> X``"""
    return p[1]


def drop_right(p):
    """``X x 1 -> X``"""
    return p[0]


def canonical_strength(T: MonadOracle, X: FinSet | None = None, Y: FinSet | None = None) -> Callable:
    """``s(t, y) = T(x -> (x, y))(t)``, the only strength a set functor has."""

    def s(t, y):
        return T.action_on(lambda x: (x, y), t)

    return s


def monad_from_monoid(M: FiniteMonoid) -> FreeMSet:
    M.check()
    return FreeMSet(M)


@dataclass
class InducedMonoid:
    """``T1`` with unit ``eta(*)``.  ``table`` holds only products that land in the
    materialized carrier; ``complete`` says whether that was all of them."""

    monad: MonadOracle
    carrier: FinSet
    unit: Hashable
    table: dict = field(repr=False)
    complete: bool

    def __call__(self, a, b):
        return self.table[(a, b)]

    def label(self, x) -> int:
        return self.carrier.index(x)

    def labelled(self) -> FiniteMonoid | None:
        """The same monoid on ``0..n-1`` in carrier order (complete tables only)."""
        if not self.complete:
            return None
        idx = {x: i for i, x in enumerate(self.carrier)}
        M = FiniteMonoid(
            FinSet(range(len(self.carrier))),
            {(idx[a], idx[b]): idx[c] for (a, b), c in self.table.items()},
            idx[self.unit],
            self.monad.name,
        )
        M.check()
        return M

    def as_finite_monoid(self) -> FiniteMonoid:
        if not self.complete:
            raise CarrierNotMaterializable("multiplication table is only partially materialized")
        M = FiniteMonoid(self.carrier, dict(self.table), self.unit, f"R({self.monad.name})")
        M.check()
        return M


def induced_multiplication(T: MonadOracle) -> Callable:
    """``T1 x T1 -> T(1 x T1) -> TT1 -> T1`` exactly as composed."""
    s = canonical_strength(T)

    def m(a, b):
        paired = s(a, b)  # in T(1 x T1)
        nested = T.action_on(drop_left, paired)  # in TT1
        return T.mult_at(nested)

    return m


def monoid_from_monad(T: MonadOracle, bound: int | None = None) -> InducedMonoid:
    if bound is not None and hasattr(T, "bounded"):
        T = T.bounded(bound)
    elif not T.finite and getattr(T, "depth", None) is None:
        raise CarrierNotMaterializable(f"{T.name}: T1 is infinite; supply a bound")
    carrier = T.carrier_of(ONE)
    unit = T.unit_at(STAR)
    m = induced_multiplication(T)
    table = {}
    complete = True
    for a, b in itertools.product(carrier, carrier):
        c = m(a, b)
        if c in carrier:
            table[(a, b)] = c
        else:
            complete = False
    R = InducedMonoid(T, carrier, unit, table, complete)
    if complete:
        try:
            R.as_finite_monoid()
        except NotAMonoid as exc:  # pragma: no cover - would mean a broken oracle
            raise NotAMonoid(f"{T.name}: induced structure is not a monoid: {exc}") from exc
    return R


def counit_component(T: MonadOracle, X: FinSet | None = None) -> Callable:
    """``T1 x X -> T(1 x X) -> TX``."""
    s = canonical_strength(T)

    def eps(p):
        a, x = p
        return T.action_on(drop_left, s(a, x))

    return eps


def unit_nu(M: FiniteMonoid) -> dict:
    """``M -> M x 1``, ``m -> (m, *)``."""
    return {m: (m, STAR) for m in M.carrier}


def is_monoid_isomorphism(f: Mapping, source: FiniteMonoid, target: InducedMonoid | FiniteMonoid) -> bool:
    tgt_carrier = target.carrier
    if set(f) != set(source.carrier) or len(set(f.values())) != len(f) or set(f.values()) != set(tgt_carrier):
        return False
    if f[source.unit] != target.unit:
        return False
    mult = target.table if isinstance(target, InducedMonoid) else target.mult
    return all(f[source(a, b)] == mult.get((f[a], f[b])) for a in source.carrier for b in source.carrier)


@dataclass
class TriangleReport:
    first_checked: int = 0
    second_checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_triangle_identities(M: FiniteMonoid, T: MonadOracle, size_bound: int = 3) -> TriangleReport:
    """``eps_LM . L(nu_M) = id`` on ``M x X`` for all ``|X| <= size_bound``, and
    ``R(eps_T) . nu_RT = id`` on ``T1``."""
    from .signature import standard_set

    report = TriangleReport()
    LM = monad_from_monoid(M)
    nu = unit_nu(M)
    eps_LM = counit_component(LM)
    for n in range(size_bound + 1):
        X = standard_set(n)
        for m, x in itertools.product(M.carrier, X):
            report.first_checked += 1
            got = eps_LM((nu[m], x))
            if got != (m, x):
                report.violations.append(("first", X, (m, x), got))

    R = monoid_from_monad(T) if T.finite or getattr(T, "depth", None) is not None else None
    if R is None:
        raise CarrierNotMaterializable(f"{T.name}: T1 must be materialized for the second identity")
    eps_T = counit_component(T)
    for a in R.carrier:
        report.second_checked += 1
        got = eps_T((a, STAR))  # eps_T at component 1 applied to nu_RT(a) = (a, *)
        if got != a:
            report.violations.append(("second", a, got))
    return report
