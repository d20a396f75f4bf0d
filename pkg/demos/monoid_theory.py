"""The monad presented by the monoid equations, seen one depth at a time.

Run: python demos/monoid_theory.py

Terms over m/2 and e/0 in one generator a are identified by associativity and
the unit laws.  Up to depth d >= 1 every class is either e or a power a^k with
1 <= k <= 2^d, so there are 2^d + 1 classes.
"""

from falg import PresentedMonad, format_term, monoid_from_monad
from falg.corpus import MONOID_SIG, monoid_equations
from falg.equational import presented_monad_stage
from falg.signature import FinSet


def power(t):
    """Number of a's in a term, which is invariant under the equations."""
    return 1 if getattr(t, "gen", None) is not None else sum(map(power, getattr(t, "args", ())))


print("Classes of the free monoid on {a}, truncated by term depth")
for d in range(5):
    classes = presented_monad_stage(MONOID_SIG, monoid_equations(), FinSet(["a"]), d, inst_depth=min(d, 3))
    powers = sorted(power(rep) for rep, _ in classes)
    print(f"  depth {d}: {len(classes):>2} classes, powers of a present: {powers}")

print("\nThe monoid T1 for this theory, with the one-point set as generator")
T = PresentedMonad(MONOID_SIG, monoid_equations(), depth=2, inst_depth=2)
R = monoid_from_monad(T)
print(f"  {len(R.carrier)} elements: {', '.join(format_term(c) for c in R.carrier)}")
by_power = {power(c): c for c in R.carrier}
print("  products by exponent (. where the product leaves the depth bound):")
print("      " + " ".join(str(k) for k in sorted(by_power)))
for j in sorted(by_power):
    row = [R.table.get((by_power[j], by_power[k])) for k in sorted(by_power)]
    print(f"    {j} " + " ".join("." if z is None else str(power(z)) for z in row))
print("  Substituting a^k for the generator inside a^j gives a^(j*k):")
print("  the exponents multiply, with e acting as the power 0.")
