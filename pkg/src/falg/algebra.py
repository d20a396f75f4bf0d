"""Finite algebras over a signature, evaluation of terms, generation, kernels,
image factorization and saturation of ground presentations into finite quotients.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping

from .congruence import CongruenceIndex, GroundPresentation, closure_build
from .errors import ArityMismatch, Inconclusive, NotGenerating, NotHomomorphism, UnknownElement, UnknownGenerator
from .signature import FinSet, Signature
from .terms import App, Term, Var, enumerate_terms, subterms, term_key


@dataclass(frozen=True)
class FiniteAlgebra:
    signature: Signature
    carrier: FinSet
    tables: Mapping[str, Mapping[tuple, Hashable]]

    def __post_init__(self):
        tables = {}
        for op, arity in self.signature.ops:
            if op not in self.tables:
                raise ArityMismatch(op)
            table = dict(self.tables[op])
            for args in itertools.product(self.carrier.elements, repeat=arity):
                if args not in table:
                    raise UnknownElement(f"{op}{args} has no table entry")
                if table[args] not in self.carrier:
                    raise UnknownElement(table[args])
            for args in table:
                if len(args) != arity:
                    raise ArityMismatch(op, arity, len(args))
            tables[op] = table
        extra = set(self.tables) - set(tables)
        if extra:
            raise ArityMismatch(sorted(extra)[0])
        object.__setattr__(self, "tables", tables)

    def __len__(self) -> int:
        return len(self.carrier)

    def apply(self, op: str, *args):
        return self.tables[op][args]

    @classmethod
    def from_functions(cls, signature: Signature, carrier: Iterable, funcs: Mapping[str, callable]) -> "FiniteAlgebra":
        carrier = FinSet(carrier)
        tables = {
            op: {args: funcs[op](*args) for args in itertools.product(carrier.elements, repeat=arity)}
            for op, arity in signature.ops
        }
        return cls(signature, carrier, tables)


def evaluate(A: FiniteAlgebra, t: Term, env: Mapping) -> Hashable:
    """Fold ``t`` through the operation tables, reading generators from ``env``."""
    val: dict[Term, Hashable] = {}
    tables = A.tables
    for u in subterms(t):
        if type(u) is Var:
            try:
                val[u] = env[u.gen]
            except KeyError:
                raise UnknownGenerator(u.gen) from None
        else:
            val[u] = tables[u.op][tuple(val[a] for a in u.args)]
    return val[t]


@dataclass(frozen=True)
class EvaluationMorphism:
    """The algebra morphism from terms over ``generators`` into ``algebra`` extending ``env``."""

    algebra: FiniteAlgebra
    generators: FinSet
    env: Mapping
    witnesses: Mapping = field(default_factory=dict)  # element -> some term evaluating to it

    def __call__(self, t: Term):
        return evaluate(self.algebra, t, self.env)

    def is_surjective(self) -> bool:
        return set(self.witnesses) == set(self.algebra.carrier)


@dataclass(frozen=True)
class AlgebraMorphism:
    source: FiniteAlgebra
    target: FiniteAlgebra
    mapping: Mapping

    def __call__(self, x):
        return self.mapping[x]

    def is_injective(self) -> bool:
        return len(set(self.mapping.values())) == len(self.source.carrier)

    def is_surjective(self) -> bool:
        return set(self.mapping.values()) == set(self.target.carrier)


def check_homomorphism(h: AlgebraMorphism) -> bool:
    S, T = h.source, h.target
    if S.signature != T.signature:
        return False
    for x in S.carrier:
        if x not in h.mapping or h.mapping[x] not in T.carrier:
            return False
    for op, arity in S.signature.ops:
        for args in itertools.product(S.carrier.elements, repeat=arity):
            if h.mapping[S.tables[op][args]] != T.tables[op][tuple(h.mapping[a] for a in args)]:
                return False
    return True


def subalgebra_closure(A: FiniteAlgebra, M: Iterable) -> frozenset:
    closed = set(M)
    for m in closed:
        if m not in A.carrier:
            raise UnknownElement(m)
    while True:
        new = set()
        for op, arity in A.signature.ops:
            table = A.tables[op]
            for args in itertools.product(sorted(closed, key=A.carrier.index), repeat=arity):
                v = table[args]
                if v not in closed:
                    new.add(v)
        if not new:
            return frozenset(closed)
        closed |= new


def is_generated_by(A: FiniteAlgebra, M: Iterable) -> bool:
    return subalgebra_closure(A, M) == frozenset(A.carrier)


def ffp_quotient_witness(A: FiniteAlgebra, M: Iterable) -> EvaluationMorphism:
    """The evaluation ``T(M) -> A`` extending the inclusion, checked surjective.

    Terms are built breadth-first by depth and kept as witnesses; ``|A|`` rounds
    suffice because every round that adds nothing is a fixpoint.
    """
    M = [m for m in A.carrier if m in set(M)]
    X = FinSet(M)
    env = {m: m for m in M}
    witness: dict = {m: Var(m) for m in M}
    for _ in range(len(A.carrier) + 1):
        found = list(witness.items())
        fresh = {}
        for op, arity in A.signature.ops:
            for combo in itertools.product(found, repeat=arity):
                t = App(op, tuple(w for _, w in combo))
                v = evaluate(A, t, env)
                if v not in witness and v not in fresh:
                    fresh[v] = t
        if not fresh:
            break
        witness.update(fresh)
    image = {evaluate(A, t, env) for t in witness.values()}
    if image != set(A.carrier):
        missing = [x for x in A.carrier if x not in image]
        raise NotGenerating(f"{M!r} does not generate the algebra; unreached: {missing!r}")
    return EvaluationMorphism(A, X, env, dict(sorted(witness.items(), key=lambda kv: A.carrier.index(kv[0]))))


@dataclass(frozen=True)
class KernelRelation:
    """Pairs of terms identified by an evaluation morphism."""

    morphism: EvaluationMorphism

    def contains(self, t: Term, u: Term) -> bool:
        return self.morphism(t) == self.morphism(u)

    def pairs(self, depth: int) -> list[tuple[Term, Term]]:
        return kernel_pairs_to_depth(self.morphism, depth)


def kernel_pairs_to_depth(e: EvaluationMorphism, depth: int, cap: int | None = None) -> list[tuple[Term, Term]]:
    """All pairs ``(t, u)`` with ``t <= u`` in term order, depth <= ``depth`` and ``e(t) == e(u)``."""
    terms = enumerate_terms(e.algebra.signature, e.generators, depth, cap=cap)
    terms.sort(key=term_key)
    by_value: dict = {}
    for t in terms:
        by_value.setdefault(e(t), []).append(t)
    pairs = []
    for group in by_value.values():
        for i, t in enumerate(group):
            for u in group[i:]:
                pairs.append((t, u))
    pairs.sort(key=lambda p: (term_key(p[0]), term_key(p[1])))
    return pairs


def image_factorization(h: AlgebraMorphism) -> tuple[AlgebraMorphism, AlgebraMorphism]:
    """``h = m . e`` with ``e`` onto the image subalgebra and ``m`` its inclusion."""
    if not check_homomorphism(h):
        raise NotHomomorphism("map does not commute with the operation tables")
    T = h.target
    hit = set(h.mapping.values())
    carrier = FinSet(x for x in T.carrier if x in hit)
    tables = {
        op: {args: T.tables[op][args] for args in itertools.product(carrier.elements, repeat=arity)}
        for op, arity in T.signature.ops
    }
    image = FiniteAlgebra(T.signature, carrier, tables)
    e = AlgebraMorphism(h.source, image, dict(h.mapping))
    m = AlgebraMorphism(image, T, {x: x for x in carrier})
    return e, m


# -- saturation ------------------------------------------------------------------


@dataclass
class Saturation:
    """A finite quotient of the term algebra by a ground presentation.

    Carrier elements are ``0..n-1`` in order of discovery; ``representatives[i]`` is
    the least known term of class ``i``.
    """

    presentation: GroundPresentation
    algebra: FiniteAlgebra
    representatives: list[Term]
    env: dict
    index: CongruenceIndex

    @property
    def quotient(self) -> EvaluationMorphism:
        return EvaluationMorphism(self.algebra, self.presentation.generators, self.env)


def saturate(P: GroundPresentation, max_classes: int = 1000, cap: int | None = None) -> Saturation:
    """Close operation tables over discovered congruence classes, breadth-first.

    Succeeds exactly when every operation applied to known classes lands in a known
    class, at which point the classes form the whole quotient.  Raises
    ``Inconclusive`` once more than ``max_classes`` classes have been found.
    """
    if max_classes < 1:
        raise ValueError("max_classes must be at least 1")
    idx = closure_build(P, cap=cap)
    reps: list[int] = []  # node ids
    label_of_root: dict[int, int] = {}

    def classify(nid: int) -> int:
        root = idx.find(nid)
        label = label_of_root.get(root)
        if label is None:
            label = len(reps)
            if label >= max_classes:
                raise Inconclusive(f"more than {max_classes} classes; quotient may be infinite")
            reps.append(nid)
            label_of_root[root] = label
        return label

    env = {x: classify(idx.add_var(x)) for x in P.generators}
    tables: dict[str, dict] = {op: {} for op, _ in P.signature.ops}
    done = 0
    while True:
        n = len(reps)
        if n == done and all(len(tables[op]) == n**arity for op, arity in P.signature.ops):
            break
        for op, arity in P.signature.ops:
            table = tables[op]
            for args in itertools.product(range(n), repeat=arity):
                if args in table:
                    continue
                nid = idx.add_app(op, tuple(reps[a] for a in args))
                table[args] = classify(nid)
        done = n
    # merges never happen between existing classes once R is closed, so labels are stable
    assert len({idx.find(r) for r in reps}) == len(reps)
    carrier = FinSet(range(len(reps)))
    algebra = FiniteAlgebra(P.signature, carrier, tables)
    rep_terms = [idx.store.term(idx.canonical_id(r)) for r in reps]
    return Saturation(P, algebra, rep_terms, env, idx)
