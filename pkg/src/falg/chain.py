"""Stages of the free-monad chain ``W0 = X``, ``W(n+1) = H(Wn) + X`` evaluated on a finite set."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .config import DEFAULT_MAX_DEPTH
from .errors import DepthBudgetExceeded
from .signature import FinSet, Signature
from .terms import App, Var, chain_sizes, enumerate_terms


@dataclass(frozen=True)
class ChainStage:
    depth: int
    carrier: FinSet
    injection: dict  # previous stage -> this stage (an inclusion)


def chain_stage(
    sig: Signature, X: FinSet, n: int, *, max_depth: int = DEFAULT_MAX_DEPTH, cap: int | None = None
) -> ChainStage:
    if n < 0:
        raise ValueError("stage index must be non-negative")
    if n > max_depth:
        raise DepthBudgetExceeded(f"stage {n} exceeds max depth {max_depth}")
    terms = enumerate_terms(sig, X, n, cap=cap)
    carrier = FinSet(terms)
    injection = {t: t for t in terms if t.depth < n} if n > 0 else {}
    return ChainStage(n, carrier, injection)


def chain_stage_recursive(sig: Signature, X: FinSet, n: int) -> FinSet:
    """The same carrier built literally as ``H(W(n-1)) + X``, for cross-checking."""
    stage = FinSet(Var(x) for x in X)
    for _ in range(n):
        flat = []
        for op, arity in sig.ops:
            flat.extend(App(op, args) for args in itertools.product(stage.elements, repeat=arity))
        stage = FinSet([Var(x) for x in X] + flat)
    return stage


__all__ = ["ChainStage", "chain_stage", "chain_stage_recursive", "chain_sizes"]
