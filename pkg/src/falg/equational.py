"""Equations with variables: satisfaction in finite algebras and bounded,
sound approximations of the congruence an equational theory induces on terms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .algebra import FiniteAlgebra, evaluate
from .congruence import CongruenceIndex, enumerate_classes
from .errors import ArityMismatch, SizeCapExceeded
from .signature import FinSet, Signature
from .terms import Term, Var, check_term, enumerate_terms, substitute, subterms


@dataclass(frozen=True)
class Equation:
    vars: FinSet
    lhs: Term
    rhs: Term

    def __str__(self):
        return f"{self.lhs} = {self.rhs}"


@dataclass(frozen=True)
class EquationalPresentation:
    signature: Signature
    equations: tuple[Equation, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "equations", tuple(self.equations))
        assert self.signature.is_super_finitary()
        for eq in self.equations:
            check_term(eq.lhs, self.signature, eq.vars)
            check_term(eq.rhs, self.signature, eq.vars)


def equation(vars: Iterable[str], lhs: Term, rhs: Term) -> Equation:
    return Equation(FinSet(vars), lhs, rhs)


def _check_ops(A: FiniteAlgebra, eq: Equation) -> None:
    arities = A.signature.arities
    for t in (eq.lhs, eq.rhs):
        for u in subterms(t):
            if type(u) is not Var and arities.get(u.op) != len(u.args):
                raise ArityMismatch(u.op, arities.get(u.op), len(u.args))


def satisfies(A: FiniteAlgebra, eq: Equation) -> bool:
    _check_ops(A, eq)
    names = eq.vars.elements
    for values in itertools.product(A.carrier.elements, repeat=len(names)):
        rho = dict(zip(names, values))
        if evaluate(A, eq.lhs, rho) != evaluate(A, eq.rhs, rho):
            return False
    return True


def counterexample(A: FiniteAlgebra, eq: Equation) -> dict | None:
    """First assignment separating the two sides, or None."""
    _check_ops(A, eq)
    names = eq.vars.elements
    for values in itertools.product(A.carrier.elements, repeat=len(names)):
        rho = dict(zip(names, values))
        if evaluate(A, eq.lhs, rho) != evaluate(A, eq.rhs, rho):
            return rho
    return None


def variety_membership(A: FiniteAlgebra, P: EquationalPresentation) -> bool:
    return all(satisfies(A, eq) for eq in P.equations)


def instance_relations(P: EquationalPresentation, X: FinSet, depth: int, cap: int | None = None) -> list[tuple[Term, Term]]:
    """``(s(lhs), s(rhs))`` for every substitution ``s`` of terms of depth <= ``depth``."""
    terms = enumerate_terms(P.signature, X, depth, cap=cap)
    out = []
    for eq in P.equations:
        names = eq.vars.elements
        for choice in itertools.product(terms, repeat=len(names)):
            sigma = dict(zip(names, choice))
            out.append((substitute(eq.lhs, sigma), substitute(eq.rhs, sigma)))
    return out


def _instantiate(idx: CongruenceIndex, pattern: Term, sigma: dict) -> int:
    ids: dict = {}
    for u in subterms(pattern):
        if type(u) is Var:
            ids[u] = sigma[u.gen]
        else:
            ids[u] = idx.add_app(u.op, tuple(ids[a] for a in u.args))
    return ids[pattern]


def bounded_theory_congruence(
    signature: Signature,
    equations: Iterable[Equation],
    X: FinSet,
    inst_depth: int,
    query_depth: int,
    relations: Iterable[tuple[Term, Term]] = (),
    cap: int | None = None,
    exhaustive: bool = False,
) -> CongruenceIndex:
    """Ground closure of all equation instances with substitution depth <= ``inst_depth``,
    seeded with every term of depth <= ``query_depth``.

    Merged pairs are provably equal in the theory; unmerged pairs are unknown.

    By default only one substitution term per current congruence class is
    instantiated: any other instance follows from it by the congruence rule, so
    the resulting congruence is the same.  ``exhaustive=True`` instantiates every
    substitution literally.
    """
    equations = list(equations)
    idx = CongruenceIndex(signature, X, cap=cap)
    for l, r in relations:
        idx.merge(l, r)
    for t in enumerate_terms(signature, X, query_depth, cap=idx.store.cap):
        idx.add(t)
    subst_terms = enumerate_terms(signature, X, inst_depth, cap=idx.store.cap)
    subst_ids = [idx.add(t) for t in subst_terms]
    if exhaustive:
        for eq in equations:
            names = eq.vars.elements
            if len(subst_ids) ** len(names) > idx.store.cap:
                raise SizeCapExceeded(f"{len(subst_ids)}^{len(names)} instances of {eq} exceed cap {idx.store.cap}")
            for choice in itertools.product(subst_ids, repeat=len(names)):
                _merge_instance(idx, eq, choice)
        return idx

    done: set = set()
    for d in range(inst_depth + 1):
        pool = [i for i, t in zip(subst_ids, subst_terms) if t.depth <= d]
        while True:
            reps: dict[int, int] = {}
            for i in pool:
                reps.setdefault(idx.find(i), i)
            fresh = False
            for k, eq in enumerate(equations):
                for choice in itertools.product(list(reps.values()), repeat=len(eq.vars)):
                    key = (k, tuple(idx.find(c) for c in choice))
                    if key in done:
                        continue
                    done.add(key)
                    fresh = True
                    _merge_instance(idx, eq, choice)
            if not fresh:
                break
    return idx


def _merge_instance(idx: CongruenceIndex, eq: Equation, choice) -> None:
    sigma = dict(zip(eq.vars.elements, choice))
    l = _instantiate(idx, eq.lhs, sigma)
    r = _instantiate(idx, eq.rhs, sigma)
    if l != r:
        idx.merge_ids(l, r)


def provably_equal(idx: CongruenceIndex, t: Term, u: Term) -> bool:
    """True means equal in the theory; False means unknown, never unequal."""
    return idx.equal(t, u)


def presented_monad_stage(
    signature: Signature,
    equations: Iterable[Equation],
    X: FinSet,
    depth: int,
    inst_depth: int | None = None,
    cap: int | None = None,
) -> list[tuple[Term, list[Term]]]:
    """Classes of depth-bounded terms under the bounded theory congruence."""
    inst_depth = depth if inst_depth is None else inst_depth
    idx = bounded_theory_congruence(signature, equations, X, inst_depth, depth, cap=cap)
    return enumerate_classes(idx, depth)
