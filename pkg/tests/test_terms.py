import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from falg.chain import chain_stage, chain_stage_recursive
from falg.errors import ArityMismatch, BudgetExceeded, ParseError, SizeCapExceeded, UnknownSymbol
from falg.signature import FinSet, Signature
from falg.terms import (
    App,
    TermStore,
    Var,
    app,
    chain_sizes,
    enumerate_terms,
    flatten,
    format_term,
    map_vars,
    parse_term,
    strength,
    substitute,
    term_key,
    unit,
)

from .strategies import sig_gens_term, signatures, terms

G = Signature((("g", 2),))
FC = Signature((("f", 1), ("c", 0)))


def test_depth_and_size_conventions():
    a = Var("a")
    assert a.depth == 0 and a.size == 1
    c = App("c", ())
    assert c.depth == 1 and c.size == 1
    t = app("g", a, app("g", a, a))
    assert t.depth == 2 and t.size == 5


def test_free_chain_counts_binary_one_generator():
    assert chain_sizes(G, 1, 4) == [1, 2, 5, 26, 677]
    for n, size in enumerate([1, 2, 5, 26, 677]):
        assert len(enumerate_terms(G, FinSet("a"), n)) == size
        assert len(chain_stage(G, FinSet("a"), n).carrier) == size


@pytest.mark.parametrize("sig", [G, FC, Signature((("f", 1), ("g", 2), ("c", 0)))])
@pytest.mark.parametrize("n_gens", [0, 1, 2])
def test_chain_stage_matches_literal_recursion(sig, n_gens):
    X = FinSet("ab"[:n_gens])
    for n in range(4):
        if chain_sizes(sig, n_gens, n)[-1] > 20_000:
            break
        stage = chain_stage(sig, X, n)
        assert set(stage.carrier) == set(chain_stage_recursive(sig, X, n))
        if n:
            prev = chain_stage(sig, X, n - 1).carrier
            assert set(stage.injection) == set(prev)
            assert all(stage.injection[t] == t for t in prev)


def test_enumeration_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_terms(G, FinSet("abc"), 4, cap=1000)
    store = TermStore(cap=2)
    store.var("a")
    store.var("b")
    with pytest.raises(SizeCapExceeded):
        store.var("c")


@given(sig_gens_term())
def test_monad_unit_laws(data):
    sig, X, t = data
    assert flatten(unit(t)) == t
    assert flatten(map_vars(unit, t)) == t


@given(signatures(), st.data())
def test_monad_associativity(sig, data):
    X = FinSet("ab")
    inner = [data.draw(terms(sig, X, 2)) for _ in range(3)]
    middle = [map_vars(lambda j: Var(inner[j]), data.draw(terms(sig, FinSet(range(3)), 2))) for _ in range(3)]
    # a term over terms over terms
    ttt = map_vars(lambda i: middle[i], data.draw(terms(sig, FinSet(range(3)), 2)))
    assert flatten(flatten(ttt)) == flatten(map_vars(flatten, ttt))


@given(sig_gens_term(), st.data())
def test_substitution_is_flatten_after_map(data, d):
    sig, X, t = data
    images = {x: d.draw(terms(sig, X, 2)) for x in X}
    assert substitute(t, images) == flatten(map_vars(images, t))


@given(sig_gens_term(), st.data())
def test_map_vars_functorial(data, d):
    sig, X, t = data
    f = {x: d.draw(st.sampled_from([0, 1])) for x in X}
    g = {0: "p", 1: "q"}
    assert map_vars(lambda x: g[f[x]], t) == map_vars(g, map_vars(f, t))
    assert map_vars(lambda x: x, t) == t


@given(sig_gens_term())
def test_strength_pairs_every_leaf(data):
    sig, X, t = data
    s = strength(t, "y")
    assert map_vars(lambda p: p[0], s) == t
    assert all(p[1] == "y" for p in _leaves(s))


def _leaves(t):
    if type(t) is Var:
        return [t.gen]
    return [g for a in t.args for g in _leaves(a)]


def _structure(t):
    # independent structural oracle: a nested tuple built without the store
    if type(t) is Var:
        return ("var", t.gen)
    return (t.op,) + tuple(_structure(a) for a in t.args)


def test_hash_consing_on_random_pairs():
    rng = random.Random(7)
    sig = Signature((("f", 1), ("g", 2), ("c", 0)))
    store = TermStore()

    def rand(d):
        if d == 0 or rng.random() < 0.25:
            return rng.choice([Var("a"), Var("b"), App("c", ())])
        op, n = rng.choice(sig.ops)
        return App(op, tuple(rand(d - 1) for _ in range(n)))

    for _ in range(10_000):
        t, u = rand(rng.randint(0, 4)), rand(rng.randint(0, 4))
        it, iu = store.intern(t), store.intern(u)
        assert (it == iu) == (_structure(t) == _structure(u))
        assert store.term(it) == t


@given(sig_gens_term())
def test_parse_format_round_trip(data):
    sig, X, t = data
    gens = [str(x) for x in X if str(x) not in sig.arities]
    assert parse_term(format_term(t), sig, gens) == t


def test_parse_errors_carry_positions():
    sig = Signature((("f", 1), ("g", 2)))
    with pytest.raises(ArityMismatch) as e:
        parse_term("g(a)", sig, ["a"])
    assert e.value.symbol == "g"
    with pytest.raises(UnknownSymbol) as e:
        parse_term("f(zz)", sig, ["a"], line=4)
    assert (e.value.name, e.value.line, e.value.col) == ("zz", 4, 3)
    with pytest.raises(ParseError) as e:
        parse_term("f(a", sig, ["a"])
    assert e.value.line == 1 and e.value.col >= 1


@given(sig_gens_term(), sig_gens_term())
def test_term_order_is_total_and_consistent(p, q):
    t, u = p[2], q[2]
    assert (term_key(t) == term_key(u)) == (t == u)
    assert (t < u) == (term_key(t) < term_key(u))
