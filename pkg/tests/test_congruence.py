import itertools
import random
import time

import pytest
from hypothesis import given
from hypothesis import strategies as st

from falg.algebra import FiniteAlgebra, evaluate, kernel_pairs_to_depth, saturate
from falg.congruence import (
    CongruenceIndex,
    GroundPresentation,
    closure_build,
    enumerate_classes,
    finite_generation_witness,
    naive_closure_oracle,
    partition_labels,
    word_equal,
)
from falg.corpus import UNARY, a, f
from falg.errors import FalgError, NotFoundWithinBound
from falg.signature import FinSet, Signature
from falg.terms import App, Var, enumerate_terms, term_key

from .strategies import generator_sets, signatures, terms

P1 = GroundPresentation(UNARY, FinSet("a"), ((f(a, 2), a),))


def test_p1_classes_by_parity():
    idx = closure_build(P1, enumerate_terms(UNARY, FinSet("a"), 4))
    classes = enumerate_classes(idx, 4)
    assert [members for _, members in classes] == [[a, f(a, 2), f(a, 4)], [f(a), f(a, 3)]]
    assert word_equal(idx, f(a, 4), a)
    assert not word_equal(idx, f(a, 3), a)


def test_empty_relation_is_identity():
    P = GroundPresentation(UNARY, FinSet("a"), ())
    idx = closure_build(P)
    assert not word_equal(idx, f(a), a)
    assert word_equal(idx, f(a, 2), f(a, 2))


def test_congruence_rule_propagates_upward():
    sig = Signature((("g", 2),))
    b = Var("b")
    P = GroundPresentation(sig, FinSet("ab"), ((a, b),))
    idx = closure_build(P)
    assert word_equal(idx, App("g", (a, App("g", (a, b)))), App("g", (b, App("g", (b, a)))))


@st.composite
def ground_presentations(draw, max_relations=3, rel_depth=2):
    sig = draw(signatures(max_ops=2, max_arity=2, constants=False))
    X = draw(generator_sets(max_size=2))
    n = draw(st.integers(0, max_relations))
    rels = tuple((draw(terms(sig, X, rel_depth)), draw(terms(sig, X, rel_depth))) for _ in range(n))
    return GroundPresentation(sig, X, rels)


@given(ground_presentations())
def test_closure_matches_naive_oracle(P):
    depth = 2
    oracle = naive_closure_oracle(P, depth)
    idx = closure_build(P, oracle.terms)
    assert partition_labels(idx, oracle.terms) == oracle.normalized()


@given(st.data())
def test_unseeded_closure_then_queries_matches_oracle(data):
    """Query terms interned after the relations are merged land in the right classes."""
    sig = data.draw(signatures(max_ops=3, max_arity=2))
    X = data.draw(generator_sets(max_size=2))
    n = data.draw(st.integers(1, 3))
    P = GroundPresentation(sig, X, tuple((data.draw(terms(sig, X, 1)), data.draw(terms(sig, X, 1))) for _ in range(n)))
    oracle = naive_closure_oracle(P, 2)
    idx = closure_build(P)
    assert partition_labels(idx, oracle.terms) == oracle.normalized()


def test_late_query_sees_merge_of_constants():
    sig = Signature((("f", 2), ("g", 0), ("h", 0)))
    g, h = App("g", ()), App("h", ())
    idx = closure_build(GroundPresentation(sig, FinSet(["a"]), ((g, h),)))
    assert word_equal(idx, App("f", (a, h)), App("f", (a, g)))


@given(ground_presentations(), st.randoms(use_true_random=False))
def test_result_independent_of_relation_order(P, rng):
    universe = enumerate_terms(P.signature, P.generators, 2)
    rels = list(P.relations)
    rng.shuffle(rels)
    Q = GroundPresentation(P.signature, P.generators, tuple((r, l) for l, r in rels))
    i1, i2 = closure_build(P, universe), closure_build(Q, list(reversed(universe)))
    assert partition_labels(i1, universe) == partition_labels(i2, universe)
    assert [i1.canonical(t) for t in universe] == [i2.canonical(t) for t in universe]


@given(ground_presentations())
def test_canonical_is_least_member(P):
    universe = enumerate_terms(P.signature, P.generators, 2)
    idx = closure_build(P, universe)
    for rep, members in enumerate_classes(idx, 2):
        assert rep == min(members, key=term_key)
        assert all(idx.canonical(t) == rep for t in members)


@given(ground_presentations(), st.lists(st.integers(0, 10**6), max_size=5))
def test_incremental_additions_are_conservative(P, picks):
    universe = enumerate_terms(P.signature, P.generators, 1)
    idx = closure_build(P, universe)
    before = partition_labels(idx, universe)
    deeper = enumerate_terms(P.signature, P.generators, 3, cap=None)
    for p in picks:
        idx.add(deeper[p % len(deeper)])
    assert partition_labels(idx, universe) == before


@given(ground_presentations(max_relations=2), st.data())
def test_closure_is_least_among_algebra_kernels(P, data):
    """Every algebra satisfying R under some assignment identifies at least what the closure does."""
    universe = enumerate_terms(P.signature, P.generators, 2)
    idx = closure_build(P, universe)
    n = data.draw(st.integers(1, 3))
    tables = {
        op: {args: data.draw(st.integers(0, n - 1)) for args in itertools.product(range(n), repeat=k)}
        for op, k in P.signature.ops
    }
    A = FiniteAlgebra(P.signature, FinSet(range(n)), tables)
    for values in itertools.product(range(n), repeat=len(P.generators)):
        env = dict(zip(P.generators, values))
        if not all(evaluate(A, l, env) == evaluate(A, r, env) for l, r in P.relations):
            continue
        for _, members in enumerate_classes(idx, 2):
            assert len({evaluate(A, t, env) for t in members}) == 1


def test_frozen_queries_do_not_intern():
    idx = closure_build(P1).freeze()
    size = len(idx.store)
    assert idx.equal(f(a, 6), f(a, 6))
    assert idx.equal(f(f(a, 2)), f(a))
    assert not idx.equal(f(a, 5), a)  # unseen terms are only known up to the interned part
    assert len(idx.store) == size
    with pytest.raises(FalgError):
        idx.add(f(a, 3))


def test_union_find_scales():
    sig = Signature((("f", 1),))
    gens = [f"x{i}" for i in range(100)]
    idx = CongruenceIndex(sig, FinSet(gens))
    ids = []
    for g in gens:
        nid = idx.add_var(g)
        ids.append(nid)
        for _ in range(99):
            nid = idx.add_app("f", (nid,))
            ids.append(nid)
    assert len(ids) == 10_000
    rng = random.Random(1)
    start = time.perf_counter()
    for _ in range(100_000):
        idx.merge_ids(rng.choice(ids), rng.choice(ids))
    assert time.perf_counter() - start < 5.0
    assert idx.class_count() >= 1


def test_finite_generation_witness_p1():
    sat = saturate(P1)
    cands = kernel_pairs_to_depth(sat.quotient, 2)
    target = closure_build(P1, enumerate_terms(UNARY, FinSet("a"), 4))
    assert finite_generation_witness(target, cands, 4) == [(a, f(a, 2))]


def test_finite_generation_witness_reports_exhaustion():
    target = closure_build(P1, enumerate_terms(UNARY, FinSet("a"), 4))
    with pytest.raises(NotFoundWithinBound):
        finite_generation_witness(target, [(f(a, 2), f(a, 4))], 4)
