import pytest

from falg.corpus import cyclic, monoids
from falg.laws import all_maps, check_counit_morphism, check_monad_laws, check_strength_axioms
from falg.monads import FinitePowerset, FreeMSet, IdentityMonad, TermMonad
from falg.signature import FinSet, Signature


def test_all_maps_count():
    assert len(list(all_maps(FinSet("ab"), FinSet("xyz")))) == 9
    assert list(all_maps(FinSet(), FinSet("x"))) == [{}]


@pytest.mark.parametrize(
    "T",
    [IdentityMonad(), FreeMSet(cyclic(3)), FreeMSet(monoids()[9]), TermMonad(Signature((("f", 1), ("c", 0))), 2)],
    ids=lambda T: T.name,
)
def test_laws_hold(T):
    for report in check_monad_laws(T) + check_strength_axioms(T) + check_counit_morphism(T):
        assert report.ok, (report.law, report.violations)
        assert report.checked > 0


def test_powerset_laws_with_sampled_associativity():
    reports = {r.law: r for r in check_monad_laws(FinitePowerset())}
    assert all(r.ok for r in reports.values())
    assert not reports["associativity"].exhaustive
    assert reports["left unit"].exhaustive


class ForgetfulMult(FreeMSet):
    """Drops the inner scalar: breaks the unit law."""

    def mult_at(self, tt):
        n, (_, x) = tt
        return (n, x)


class LeakyAction(FreeMSet):
    """Acts on maps but also rescales: breaks functoriality."""

    def action_on(self, f, t):
        k, v = t
        return (self.monoid(k, 1), f(v))


def test_sweeps_catch_broken_structures():
    broken = {r.law: r for r in check_monad_laws(ForgetfulMult(cyclic(2)))}
    assert not broken["left unit"].ok
    leaky = {r.law: r for r in check_monad_laws(LeakyAction(cyclic(3)))}
    assert not leaky["functor identity"].ok
    strength = {r.law: r for r in check_strength_axioms(LeakyAction(cyclic(3)))}
    assert not strength["strength unit object"].ok


def test_presented_mismatches_are_not_refutations():
    from falg.corpus import MONOID_SIG, monoid_equations
    from falg.monads import PresentedMonad

    T = PresentedMonad(MONOID_SIG, monoid_equations(), 1, 0)
    reports = check_monad_laws(T, k=2, max_points=500)
    assert all(not r.decisive for r in reports)
    assert not any(r.refuted for r in reports)
    # instantiation depth 0 misses identifications, and the sweep notices
    assert not all(r.ok for r in reports)
