"""Small stock objects: monoids, finite algebras, presentations and chains used by
the demos and the test suites."""

from __future__ import annotations

import itertools

from .algebra import FiniteAlgebra
from .colimits import constant_chain, growing_merging_chain, inclusion_chain, merging_chain, truncation_chain
from .congruence import GroundPresentation
from .equational import equation
from .monads import FiniteMonoid
from .signature import FinSet, Signature
from .terms import App, Var, app

a, b = Var("a"), Var("b")
x, y, z = Var("x"), Var("y"), Var("z")

UNARY = Signature((("f", 1),))
TWO_UNARY = Signature((("f", 1), ("g", 1)))
BINARY = Signature((("g", 2),))
MONOID_SIG = Signature((("m", 2), ("e", 0)))
E = App("e", ())


def f(t, n=1):
    for _ in range(n):
        t = app("f", t)
    return t


def m(s, t):
    return app("m", s, t)


# -- monoids ---------------------------------------------------------------------


def cyclic(n: int) -> FiniteMonoid:
    return FiniteMonoid.from_function(range(n), lambda p, q: (p + q) % n, 0, f"Z{n}")


def monoids() -> list[FiniteMonoid]:
    out = [
        FiniteMonoid.from_function([0], lambda p, q: 0, 0, "trivial"),
        cyclic(2),
        cyclic(3),
        cyclic(4),
        FiniteMonoid.from_function([0, 1], lambda p, q: p & q, 1, "and"),
        FiniteMonoid.from_function([0, 1], lambda p, q: p | q, 0, "or"),
        FiniteMonoid.from_function(range(3), lambda p, q: min(p + q, 2), 0, "capped-sum3"),
        FiniteMonoid.from_function(range(4), lambda p, q: p ^ q, 0, "klein"),
        # left-zero band {1, 2} with an identity 0 adjoined
        FiniteMonoid.from_function(range(3), lambda p, q: q if p == 0 else p, 0, "left-zero+1"),
        # all maps {0,1} -> {0,1}, encoded as (f(0), f(1)), composed right to left
        FiniteMonoid.from_function(
            list(itertools.product((0, 1), repeat=2)), lambda p, q: (p[q[0]], p[q[1]]), (0, 1), "T2"
        ),
        cyclic(5),
        FiniteMonoid.from_function(range(5), lambda p, q: max(p, q), 0, "max5"),
    ]
    return out


def monoid_algebra(M: FiniteMonoid) -> FiniteAlgebra:
    return FiniteAlgebra(MONOID_SIG, M.carrier, {"m": dict(M.mult), "e": {(): M.unit}})


# -- finite algebras -------------------------------------------------------------


def successor(n: int) -> FiniteAlgebra:
    return FiniteAlgebra.from_functions(UNARY, range(n), {"f": lambda v: (v + 1) % n})


def algebras() -> dict[str, FiniteAlgebra]:
    out = {
        "succ4": successor(4),
        "succ6": successor(6),
        "succ1": successor(1),
        "and": FiniteAlgebra.from_functions(BINARY, [0, 1], {"g": lambda p, q: p & q}),
        "left-proj": FiniteAlgebra.from_functions(BINARY, [0, 1], {"g": lambda p, q: p}),
        "min4": FiniteAlgebra.from_functions(BINARY, range(4), {"g": min}),
        "rho5": FiniteAlgebra.from_functions(UNARY, range(5), {"f": lambda v: v + 1 if v < 4 else 2}),
        "const3": FiniteAlgebra.from_functions(UNARY, range(3), {"f": lambda v: 0}),
        "retract4": FiniteAlgebra.from_functions(UNARY, range(4), {"f": lambda v: v % 2}),
        "succ-neg6": FiniteAlgebra.from_functions(
            TWO_UNARY, range(6), {"f": lambda v: (v + 1) % 6, "g": lambda v: (-v) % 6}
        ),
        "pair-swap4": FiniteAlgebra.from_functions(
            TWO_UNARY, range(4), {"f": lambda v: v ^ 1, "g": lambda v: v ^ 2}
        ),
    }
    for M in monoids():
        out["monoid-" + M.name] = monoid_algebra(M)
    return out


# -- equational presentations ----------------------------------------------------


def monoid_equations():
    return [
        equation("xyz", m(m(x, y), z), m(x, m(y, z))),
        equation("x", m(E, x), x),
        equation("x", m(x, E), x),
    ]


def idempotent_monoid_equations():
    return monoid_equations() + [equation("x", m(x, x), x)]


def idempotence_equations():
    return [equation("x", f(x, 2), f(x))]


def equational_presentations() -> dict[str, tuple[Signature, list]]:
    return {
        "monoid": (MONOID_SIG, monoid_equations()),
        "idempotent-monoid": (MONOID_SIG, idempotent_monoid_equations()),
        "idempotence": (UNARY, idempotence_equations()),
    }


# -- ground presentations that saturate -----------------------------------------


def saturating_presentations() -> dict[str, GroundPresentation]:
    """Presentations with relations of depth <= 2 whose quotient is finite."""
    A, AB = FinSet(["a"]), FinSet(["a", "b"])
    ga = lambda s, t: app("g", s, t)
    return {
        "p1": GroundPresentation(UNARY, A, ((f(a, 2), a),)),
        "fixed": GroundPresentation(UNARY, A, ((f(a), a),)),
        "idem": GroundPresentation(UNARY, A, ((f(a, 2), f(a)),)),
        "swap": GroundPresentation(UNARY, AB, ((f(a), b), (f(b), a))),
        "two-ops": GroundPresentation(
            TWO_UNARY, A, ((f(a, 2), a), (app("g", a), f(a)), (app("g", f(a)), a))
        ),
        "two-ops-ab": GroundPresentation(
            TWO_UNARY, AB, ((f(a), b), (f(b), b), (app("g", a), a), (app("g", b), a))
        ),
        "g-idem": GroundPresentation(BINARY, A, ((ga(a, a), a),)),
        "z2-group": GroundPresentation(
            MONOID_SIG, A, ((m(a, a), E), (m(E, a), a), (m(a, E), a), (m(E, E), E))
        ),
    }


def deep_saturating_presentations() -> dict[str, GroundPresentation]:
    """Finite quotients whose kernel has no nontrivial pair of depth <= 2."""
    A = FinSet(["a"])
    return {
        "cycle3": GroundPresentation(UNARY, A, ((f(a, 3), a),)),
        "tail": GroundPresentation(UNARY, A, ((f(a, 4), f(a, 2)),)),
    }


# -- chains ------------------------------------------------------------------------


def chains() -> dict:
    from .algebra import saturate
    from .terms import enumerate_terms

    sat = saturate(deep_saturating_presentations()["tail"])
    e = sat.quotient
    P = sat.presentation

    def met(d):
        hit = {e(t) for t in enumerate_terms(P.signature, P.generators, d)}
        return [v for v in sat.algebra.carrier if v in hit]

    return {
        "constant": constant_chain(FinSet(range(3))),
        "inclusions": inclusion_chain(),
        "merge-at-1": merging_chain(1),
        "merge-at-3": merging_chain(3),
        "grow-merge-at-2": growing_merging_chain(2),
        "grow-merge-at-4": growing_merging_chain(4),
        "truncations-tail": truncation_chain(met),
    }
