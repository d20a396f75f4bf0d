"""Ground congruence closure: the least congruence on the term algebra containing
a finite relation, plus an independent naive fixpoint oracle and a bounded search
for finite generating relations.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import FalgError, NotFoundWithinBound
from .signature import FinSet, Signature
from .terms import VAR, Term, TermStore, Var, check_term, enumerate_terms, subterms, term_key


@dataclass(frozen=True)
class GroundPresentation:
    signature: Signature
    generators: FinSet
    relations: tuple[tuple[Term, Term], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "relations", tuple((l, r) for l, r in self.relations))
        for l, r in self.relations:
            check_term(l, self.signature, self.generators)
            check_term(r, self.signature, self.generators)

    def relation_depth(self) -> int:
        return max((max(l.depth, r.depth) for l, r in self.relations), default=0)


class CongruenceIndex:
    """Union-find over a hash-consed term DAG, closed under the congruence rule.

    Canonical representatives are the least interned member of each class in
    ``term_key`` order, independent of the order merges happened in.
    """

    def __init__(self, signature: Signature, generators: FinSet | None = None, cap: int | None = None):
        self.signature = signature
        self.generators = generators
        self.store = TermStore(cap)
        self.parent: list[int] = []
        self.rank: list[int] = []
        self.best: list[int] = []
        self.uses: list[list[int]] = []
        self.sigtable: dict[tuple, int] = {}
        self.pending: list[tuple[int, int]] = []
        self.relations: list[tuple[int, int]] = []
        self.frozen = False

    def __len__(self) -> int:
        return len(self.store)

    # -- union-find ------------------------------------------------------------

    def find(self, a: int) -> int:
        parent = self.parent
        if self.frozen:
            while parent[a] != a:
                a = parent[a]
            return a
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def _register(self, nid: int) -> None:
        # called once per freshly created store node
        self.parent.append(nid)
        self.rank.append(0)
        self.best.append(nid)
        self.uses.append([])
        op, rest = self.store.nodes[nid]
        if op is VAR:
            return
        roots = tuple(self.find(k) for k in rest)
        for r in set(roots):
            self.uses[r].append(nid)
        key = (op, roots)
        q = self.sigtable.get(key)
        if q is None:
            self.sigtable[key] = nid
        else:
            self.pending.append((nid, q))

    def _propagate(self) -> None:
        pending = self.pending
        find = self.find
        nodes = self.store.nodes
        sigtable = self.sigtable
        while pending:
            a, b = pending.pop()
            ra, rb = find(a), find(b)
            if ra == rb:
                continue
            if self.rank[ra] < self.rank[rb]:
                ra, rb = rb, ra
            elif self.rank[ra] == self.rank[rb]:
                self.rank[ra] += 1
            self.parent[rb] = ra
            if self.store.less(self.best[rb], self.best[ra]):
                self.best[ra] = self.best[rb]
            moved = self.uses[rb]
            self.uses[rb] = []
            for p in moved:
                op, kids = nodes[p]
                key = (op, tuple(find(k) for k in kids))
                q = sigtable.get(key)
                if q is None:
                    sigtable[key] = p
                elif find(q) != find(p):
                    pending.append((p, q))
            self.uses[ra].extend(moved)

    # -- interning ---------------------------------------------------------------

    def _check_mutable(self):
        if self.frozen:
            raise FalgError("congruence index is frozen")

    def add_var(self, gen) -> int:
        self._check_mutable()
        before = len(self.store)
        nid = self.store.var(gen)
        if len(self.store) > before:
            self._register(nid)
        return nid

    def add_app(self, op: str, kids: tuple[int, ...]) -> int:
        """Intern ``op(kids)`` by child ids and propagate."""
        self._check_mutable()
        before = len(self.store)
        nid = self.store.app(op, kids)
        if len(self.store) > before:
            self._register(nid)
            self._propagate()
        return nid

    def add(self, t: Term) -> int:
        self._check_mutable()
        store = self.store
        cache = store._term_cache
        nid = cache.get(t)
        if nid is not None:
            return nid
        for u in subterms(t):
            if u in cache:
                continue
            before = len(store)
            if type(u) is Var:
                n = store.var(u.gen)
            else:
                n = store.app(u.op, tuple(cache[a] for a in u.args))
            cache[u] = n
            if len(store) > before:
                self._register(n)
        self._propagate()
        return cache[t]

    def merge_ids(self, a: int, b: int) -> None:
        self._check_mutable()
        self.relations.append((a, b))
        self.pending.append((a, b))
        self._propagate()

    def merge(self, t: Term, u: Term) -> None:
        self.merge_ids(self.add(t), self.add(u))

    def freeze(self) -> "CongruenceIndex":
        self.frozen = True
        return self

    # -- queries -------------------------------------------------------------------

    def class_key(self, t: Term):
        """Class of ``t`` without interning: a root id, or a structural key for a fresh class."""
        nid = self.store.find_term(t)
        if nid is not None:
            return self.find(nid)
        if type(t) is Var:
            return ("fresh-var", t.gen)
        kids = tuple(self.class_key(a) for a in t.args)
        if all(isinstance(k, int) for k in kids):
            q = self.sigtable.get((t.op, kids))
            if q is not None:
                return self.find(q)
        return ("fresh", t.op, kids)

    def equal(self, t: Term, u: Term) -> bool:
        if self.frozen:
            return t == u or self.class_key(t) == self.class_key(u)
        # intern both first: adding u may merge t's class into another root
        i, j = self.add(t), self.add(u)
        return self.find(i) == self.find(j)

    def canonical(self, t: Term) -> Term:
        if self.frozen:
            k = self.class_key(t)
            return self.store.term(self.best[k]) if isinstance(k, int) else t
        return self.store.term(self.best[self.find(self.add(t))])

    def canonical_id(self, nid: int) -> int:
        return self.best[self.find(nid)]

    def class_count(self) -> int:
        return sum(1 for i, p in enumerate(self.parent) if i == p)


def closure_build(P: GroundPresentation, seed_terms: Iterable[Term] = (), cap: int | None = None) -> CongruenceIndex:
    idx = CongruenceIndex(P.signature, P.generators, cap=cap)
    for t in seed_terms:
        idx.add(t)
    for l, r in P.relations:
        idx.merge(l, r)
    return idx


def word_equal(idx: CongruenceIndex, t: Term, u: Term) -> bool:
    return idx.equal(t, u)


def enumerate_classes(idx: CongruenceIndex, depth: int) -> list[tuple[Term, list[Term]]]:
    """Partition all terms of depth <= ``depth`` into classes, least member first."""
    if idx.generators is None:
        raise FalgError("index has no generator set to enumerate over")
    terms = enumerate_terms(idx.signature, idx.generators, depth, cap=idx.store.cap)
    groups: dict = {}
    for t, k in zip(terms, _labels(idx, terms)):
        groups.setdefault(k, []).append(t)
    out = []
    for members in groups.values():
        members.sort(key=term_key)
        out.append((members[0], members))
    out.sort(key=lambda c: term_key(c[0]))
    return out


def partition_labels(idx: CongruenceIndex, terms: Sequence[Term]) -> list[int]:
    """Class labels for ``terms``, normalized by first occurrence."""
    seen: dict = {}
    return [seen.setdefault(k, len(seen)) for k in _labels(idx, terms)]


def _labels(idx: CongruenceIndex, terms: Sequence[Term]) -> list:
    if idx.frozen:
        return [idx.class_key(t) for t in terms]
    # roots are read only after every term is interned, since later additions can merge
    ids = [idx.add(t) for t in terms]
    return [idx.find(i) for i in ids]


# -- independent oracle ----------------------------------------------------------


@dataclass
class OracleRelation:
    """The least congruence containing R, restricted to a depth-bounded universe."""

    terms: list[Term]
    labels: list[int]
    _pos: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._pos = {t: i for i, t in enumerate(self.terms)}

    def related(self, t: Term, u: Term) -> bool:
        return self.labels[self._pos[t]] == self.labels[self._pos[u]]

    def pairs(self) -> list[tuple[Term, Term]]:
        return [
            (self.terms[i], self.terms[j])
            for i in range(len(self.terms))
            for j in range(i, len(self.terms))
            if self.labels[i] == self.labels[j]
        ]

    def normalized(self) -> list[int]:
        seen: dict = {}
        return [seen.setdefault(l, len(seen)) for l in self.labels]

    def classes(self) -> list[list[Term]]:
        groups: dict = {}
        for t, l in zip(self.terms, self.labels):
            groups.setdefault(l, []).append(t)
        return list(groups.values())


def naive_closure_oracle(P: GroundPresentation, depth: int, cap: int | None = 50_000) -> OracleRelation:
    """Iterate the equivalence and congruence rules to a fixpoint over all terms of
    depth <= max(depth, depth of R).  Ground closure is complete on any subterm-closed
    universe containing R, so restricting afterwards gives E exactly.
    """
    universe_depth = max(depth, P.relation_depth())
    terms = enumerate_terms(P.signature, P.generators, universe_depth, cap=cap)
    pos = {t: i for i, t in enumerate(terms)}
    label = list(range(len(terms)))
    members = [[i] for i in range(len(terms))]

    def relabel(a: int, b: int) -> bool:
        la, lb = label[a], label[b]
        if la == lb:
            return False
        if len(members[la]) < len(members[lb]):
            la, lb = lb, la
        for i in members[lb]:
            label[i] = la
        members[la].extend(members[lb])
        members[lb] = []
        return True

    for l, r in P.relations:
        relabel(pos[l], pos[r])
    apps = [(i, t.op, tuple(pos[a] for a in t.args)) for i, t in enumerate(terms) if type(t) is not Var]
    changed = True
    while changed:
        changed = False
        first: dict = {}
        for i, op, kids in apps:
            key = (op, tuple(label[k] for k in kids))
            j = first.setdefault(key, i)
            if j != i and relabel(i, j):
                changed = True
    keep = [i for i, t in enumerate(terms) if t.depth <= depth]
    return OracleRelation([terms[i] for i in keep], [label[i] for i in keep])


# -- finite generation ---------------------------------------------------------


def _normalized_pair(t: Term, u: Term) -> tuple[Term, Term]:
    return (t, u) if term_key(t) <= term_key(u) else (u, t)


def finite_generation_witness(
    idx_target: CongruenceIndex,
    candidate_pairs: Iterable[tuple[Term, Term]],
    depth: int,
    budget: int = 20_000,
) -> list[tuple[Term, Term]]:
    """Breadth-first search for a finite ``R0`` among the candidates whose closure
    agrees with the target congruence on all terms of depth <= ``depth``.

    Subsets are tried by increasing cardinality, then increasing total size, so the
    first hit has minimum cardinality.  Raises ``NotFoundWithinBound`` when the
    budget of closure computations runs out.
    """
    sig, X = idx_target.signature, idx_target.generators
    cap = idx_target.store.cap

    pool = []
    seen = set()
    for t, u in candidate_pairs:
        if t == u:
            continue
        pair = _normalized_pair(t, u)
        if pair in seen or not idx_target.equal(t, u):
            continue
        seen.add(pair)
        pool.append(pair)
    pool.sort(key=lambda p: (p[0].size + p[1].size, term_key(p[0]), term_key(p[1])))

    # Closure is exact on any subterm-closed universe holding R0, so a subset that
    # already disagrees on a shallow universe is rejected before the full check.
    first = min(max((max(t.depth, u.depth) for t, u in pool), default=0), depth)
    levels: dict[int, tuple[list[Term], list[int]]] = {}

    def level(d):
        if d not in levels:
            universe = enumerate_terms(sig, X, d, cap=cap)
            levels[d] = (universe, partition_labels(idx_target, universe))
        return levels[d]

    def generates(R0) -> bool:
        for d in range(first, depth + 1):
            universe, target = level(d)
            idx = closure_build(GroundPresentation(sig, X, R0), universe, cap=cap)
            if partition_labels(idx, universe) != target:
                return False
        return True

    tried = 0
    for k in range(len(pool) + 1):
        combos = itertools.combinations(range(len(pool)), k)
        if math.comb(len(pool), k) <= budget - tried + 1:
            combos = sorted(combos, key=lambda c: (sum(pool[i][0].size + pool[i][1].size for i in c), c))
        for combo in combos:
            tried += 1
            if tried > budget:
                raise NotFoundWithinBound(f"no generating relation found within {budget} subsets")
            R0 = tuple(pool[i] for i in combo)
            if generates(R0):
                return list(R0)
    raise NotFoundWithinBound("no subset of the candidates generates the target congruence")
