import pytest
from hypothesis import given
from hypothesis import strategies as st

from falg.errors import DuplicateElement, DuplicateSymbol, UndefinedOnElement
from falg.signature import ONE, FinSet, Signature, eval_polynomial, eval_polynomial_on_map, polynomial_size, standard_set


def test_finset_basics():
    S = FinSet("abc")
    assert len(S) == 3 and "b" in S and S.index("c") == 2 and S[0] == "a"
    assert list(S.product(FinSet([0, 1]))) == [("a", 0), ("a", 1), ("b", 0), ("b", 1), ("c", 0), ("c", 1)]
    assert list(ONE) == ["*"]
    assert list(standard_set(3)) == ["a", "b", "c"]
    with pytest.raises(DuplicateElement):
        FinSet("aa")


def test_signature_validation():
    sig = Signature((("f", 1), ("c", 0), ("g", 2)))
    assert sig.arity("g") == 2 and sig.constants() == ["c"] and sig.is_super_finitary()
    with pytest.raises(DuplicateSymbol):
        Signature((("f", 1), ("f", 2)))


def test_polynomial_functor_on_sets_and_maps():
    sig = Signature((("f", 1), ("g", 2)))
    X = FinSet([0, 1])
    HX = eval_polynomial(sig, X)
    assert len(HX) == 2 + 4 == polynomial_size(sig, 2)
    h = eval_polynomial_on_map(sig, {0: 1, 1: 1}, X)
    assert h[("g", (0, 1))] == ("g", (1, 1))
    with pytest.raises(UndefinedOnElement):
        eval_polynomial_on_map(sig, {0: 1}, X)


@given(st.lists(st.integers(0, 3), min_size=0, max_size=3), st.integers(0, 4))
def test_polynomial_size_formula(arities, n):
    sig = Signature(tuple((f"o{i}", k) for i, k in enumerate(arities)))
    assert polynomial_size(sig, n) == sum(n**k for k in arities) == len(eval_polynomial(sig, standard_set(n)))
