"""Monads give monoids, monoids give monads.

Run: python demos/boolean_monoid.py

The finite powerset monad, fed the one-point set, yields a two-element monoid.
Going the other way, a finite monoid M gives the monad X -> M x X, and the unit
of the adjunction recovers M up to isomorphism.
"""

from falg import (
    FinitePowerset,
    TermMonad,
    Signature,
    check_triangle_identities,
    is_monoid_isomorphism,
    monad_from_monoid,
    monoid_from_monad,
    unit_nu,
)
from falg.corpus import cyclic


def show_table(R):
    for (a, b), c in sorted(R.table.items(), key=repr):
        print(f"    {set(a) or '{}'} * {set(b) or '{}'} = {set(c) or '{}'}")


print("1. Powerset monad on the one-point set")
R = monoid_from_monad(FinitePowerset())
print(f"   carrier has {len(R.carrier)} elements, unit is {set(R.unit)}")
show_table(R)
print("   Reading {} as 0 and {*} as 1, this is ({0,1}, and, 1).\n")

print("2. A unary term monad, truncated to depth 3")
T = TermMonad(Signature((("f", 1),)))
R = monoid_from_monad(T, bound=3)
print(f"   T1 holds {len(R.carrier)} terms: {', '.join(map(str, R.carrier))}")
print(f"   f(*) * f(f(*)) = {R.table[(R.carrier[1], R.carrier[2])]}")
print(f"   products are complete within the bound: {R.complete}")
print("   Substituting one chain of f's into another adds their lengths,")
print("   so the bounded table drops every product that overflows depth 3.\n")

print("3. Round trip through free M-sets for Z3")
M = cyclic(3)
LM = monad_from_monoid(M)
back = monoid_from_monad(LM)
print(f"   R(L(Z3)) carrier: {list(back.carrier)}")
print(f"   unit m -> (m, *) is a monoid isomorphism: {is_monoid_isomorphism(unit_nu(M), M, back)}")
rep = check_triangle_identities(M, LM)
print(f"   triangle identities: {rep.first_checked} + {rep.second_checked} points, ok={rep.ok}")
