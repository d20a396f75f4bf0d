"""Colimits of omega-chains of finite sets, computed on finite prefixes, and the
factorization searches that make "finitely presentable" concrete for finite sets.

An element ``(n, x)`` (x in stage n) and ``(m, y)`` name the same colimit
element iff they are identified at some later evaluated stage.  A colimit
computed up to stage N therefore has one class per element of stage N.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Mapping, Sequence

from .errors import BudgetExceeded, MonoFlagViolation, NotFoundWithinBound
from .signature import FinSet

DEFAULT_STAGE_BUDGET = 10_000


class OmegaChain:
    """Lazily evaluated chain ``D0 -> D1 -> ...`` with memoized stages and links."""

    def __init__(
        self,
        stage: Callable[[int], FinSet],
        link: Callable[[int], Mapping],
        mono_flag: bool = False,
        name: str = "chain",
    ):
        self._stage = stage
        self._link = link
        self.mono_flag = mono_flag
        self.name = name
        self._stages: dict[int, FinSet] = {}
        self._links: dict[int, Mapping] = {}

    def stage(self, n: int) -> FinSet:
        if n not in self._stages:
            self._stages[n] = FinSet(self._stage(n))
        return self._stages[n]

    def link(self, n: int) -> Mapping:
        """``stage(n) -> stage(n + 1)``"""
        if n not in self._links:
            f = dict(self._link(n))
            src, dst = self.stage(n), self.stage(n + 1)
            for x in src:
                if x not in f or f[x] not in dst:
                    raise ValueError(f"{self.name}: link {n} is not a total map into stage {n + 1} at {x!r}")
            self._links[n] = f
        return self._links[n]

    def push(self, n: int, x, m: int):
        """Image of ``x`` in stage ``m >= n``."""
        for i in range(n, m):
            x = self.link(i)[x]
        return x

    def link_is_injective(self, n: int) -> bool:
        f = self.link(n)
        return len(set(f.values())) == len(f)

    def __repr__(self):
        return f"<OmegaChain {self.name}>"


@dataclass
class ColimitPresentation:
    chain: OmegaChain
    upto: int
    classes: list  # elements of stage ``upto``, one per class, ordered by (birth, stage order)
    birth: dict  # class -> first stage with an element in it
    members: dict = field(repr=False)  # class -> [(n, x), ...]

    def class_of(self, n: int, x) -> Hashable:
        if n > self.upto:
            raise BudgetExceeded(f"stage {n} is past the evaluated prefix {self.upto}")
        return self.chain.push(n, x, self.upto)

    def injection(self, n: int) -> dict:
        return {x: self.class_of(n, x) for x in self.chain.stage(n)}

    def is_jointly_surjective(self) -> bool:
        hit = set()
        for n in range(self.upto + 1):
            hit.update(self.injection(n).values())
        return hit == set(self.classes)

    def merged_by_link(self, n: int, x, y) -> int | None:
        """Least stage ``m`` where ``x, y`` in stage n are identified, if any by ``upto``."""
        for m in range(n, self.upto + 1):
            if self.chain.push(n, x, m) == self.chain.push(n, y, m):
                return m
        return None

    def factor(self, cocone: Sequence[Mapping]) -> dict:
        """Mediating map from the colimit to a cocone ``c'_n: D_n -> C'`` (n <= upto):
        pick a member of each class and read off its cocone value."""
        if len(cocone) < self.upto + 1:
            raise ValueError("cocone must have a leg for every evaluated stage")
        out = {}
        for c in self.classes:
            n, x = self.members[c][0]
            out[c] = cocone[n][x]
        for n in range(self.upto + 1):
            for x in self.chain.stage(n):
                if out[self.class_of(n, x)] != cocone[n][x]:
                    raise ValueError(f"legs are not compatible at stage {n}, element {x!r}")
        return out


def chain_colimit(chain: OmegaChain, upto: int, budget: int = DEFAULT_STAGE_BUDGET) -> ColimitPresentation:
    total = 0
    members: dict = {}
    for n in range(upto + 1):
        D = chain.stage(n)
        total += len(D)
        if total > budget:
            raise BudgetExceeded(f"more than {budget} elements in stages 0..{upto}")
        for x in D:
            members.setdefault(chain.push(n, x, upto), []).append((n, x))
    top = chain.stage(upto)
    birth = {c: members[c][0][0] for c in top}
    order = {c: i for i, c in enumerate(top)}
    classes = sorted(top, key=lambda c: (birth[c], order[c]))
    return ColimitPresentation(chain, upto, classes, birth, members)


def fp_witness(
    A: FinSet, f: Mapping, chain: OmegaChain, bound: int, colimit: ColimitPresentation | None = None
) -> tuple[int, dict]:
    """Least stage ``n <= bound`` with a lift ``g: A -> D_n`` of ``f: A -> colim``.

    Classes in ``f`` are those of ``chain_colimit(chain, bound)`` (pass it as
    ``colimit`` to reuse it).  A class has a member in every stage from its birth
    on, so the least stage is the latest birth among the classes hit.  Exhaustion
    is reported as ``NotFoundWithinBound``, never as a failure of finite
    presentability.
    """
    colim = colimit if colimit is not None and colimit.upto == bound else chain_colimit(chain, bound)
    for a in A:
        if f[a] not in colim.birth:
            raise NotFoundWithinBound(f"{f[a]!r} is not a class of the colimit evaluated to stage {bound}")
    n = max((colim.birth[f[a]] for a in A), default=0)
    lift = {}
    for a in A:
        lift[a] = next(x for m, x in colim.members[f[a]] if m == n)
    return n, lift


def check_mono(chain: OmegaChain, upto: int) -> None:
    """Raise ``MonoFlagViolation`` unless the flag is set and links ``0..upto`` are injective."""
    if not chain.mono_flag:
        raise MonoFlagViolation(f"{chain.name} is not declared a chain of monomorphisms")
    for n in range(upto):
        if not chain.link_is_injective(n):
            raise MonoFlagViolation(f"{chain.name}: link {n} -> {n + 1} is not injective")


def fg_witness_mono(
    A: FinSet, f: Mapping, chain: OmegaChain, bound: int, colimit: ColimitPresentation | None = None
) -> tuple[int, dict]:
    check_mono(chain, bound)
    return fp_witness(A, f, chain, bound, colimit)


def essential_uniqueness_check(A: FinSet, chain: OmegaChain, lift1: Mapping, lift2: Mapping, n: int, bound: int) -> int:
    """Least ``m`` in ``n..bound`` where two lifts through stage n agree after pushing to stage m."""
    for m in range(n, bound + 1):
        if all(chain.push(n, lift1[a], m) == chain.push(n, lift2[a], m) for a in A):
            return m
    raise NotFoundWithinBound(f"lifts stay distinct through stage {bound}")


# -- stock chains ------------------------------------------------------------------


def constant_chain(S: FinSet) -> OmegaChain:
    return OmegaChain(lambda n: S, lambda n: {x: x for x in S}, mono_flag=True, name="constant")


def inclusion_chain() -> OmegaChain:
    """``{0} -> {0,1} -> {0,1,2} -> ...``"""
    return OmegaChain(lambda n: FinSet(range(n + 1)), lambda n: {i: i for i in range(n + 1)}, True, "inclusions")


def growing_merging_chain(merge_at: int) -> OmegaChain:
    """``{0..n}`` with inclusions, except that 1 is sent to 0 on entering stage ``merge_at``."""

    def stage(n):
        return FinSet(x for x in range(n + 1) if not (n >= merge_at and x == 1))

    def link(n):
        return {x: (0 if x == 1 and n + 1 == merge_at else x) for x in stage(n)}

    return OmegaChain(stage, link, mono_flag=False, name=f"grow-merge-at-{merge_at}")


def merging_chain(merge_at: int, size: int = 3) -> OmegaChain:
    """Stages ``{0..size-1}`` with identity links, except that the link into
    stage ``merge_at`` sends 1 to 0; 1 is absent from later stages."""

    def stage(n):
        return FinSet(range(size)) if n < merge_at else FinSet(x for x in range(size) if x != 1)

    def link(n):
        if n + 1 == merge_at:
            return {x: (0 if x == 1 else x) for x in range(size)}
        return {x: x for x in stage(n)}

    return OmegaChain(stage, link, mono_flag=False, name=f"merge-at-{merge_at}")


def truncation_chain(classes_at_depth: Callable[[int], Sequence]) -> OmegaChain:
    """Stage ``d`` is the set of classes met by terms of depth <= d; links are inclusions."""
    return OmegaChain(lambda d: FinSet(classes_at_depth(d)), lambda d: {c: c for c in classes_at_depth(d)}, True, "truncations")
