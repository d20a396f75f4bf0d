"""Deciding equality of ground terms, and finding finite quotients.

Run: python demos/word_problem.py

One unary operation f and one generator a, subject to f(f(a)) = a.
"""

from falg import GroundPresentation, closure_build, enumerate_classes, finite_generation_witness, format_term, saturate, word_equal
from falg.algebra import kernel_pairs_to_depth
from falg.corpus import UNARY, a, deep_saturating_presentations, f
from falg.errors import NotFoundWithinBound
from falg.signature import FinSet

P = GroundPresentation(UNARY, FinSet(["a"]), ((f(a, 2), a),))
idx = closure_build(P)

print("Word problem by congruence closure")
for n, k in [(3, 1), (4, 0), (5, 2)]:
    s, t = f(a, n), f(a, k)
    print(f"  {format_term(s):<17} = {format_term(t):<8} ? {word_equal(idx, s, t)}")

print("\nClasses of terms up to depth 4")
for rep, members in enumerate_classes(idx, 4):
    print(f"  {format_term(rep)}: {', '.join(map(format_term, members))}")

print("\nSaturation closes the operation table over the classes found so far")
sat = saturate(P)
A = sat.algebra
print(f"  carrier {list(A.carrier)}, f = {dict((k[0], v) for k, v in A.tables['f'].items())}")
for i, rep in enumerate(sat.representatives):
    print(f"  {i} is the class of {format_term(rep)}")

print("\nThe kernel of the quotient map is generated by finitely many pairs")
R0 = finite_generation_witness(closure_build(P, ()), kernel_pairs_to_depth(sat.quotient, 2), 4)
print("  R0 =", [f"{format_term(l)} = {format_term(r)}" for l, r in R0])

print("\nWith f(f(f(a))) = a, every pair of depth <= 2 is trivial, so depth-2")
print("candidates cannot generate the kernel; depth-3 candidates can.")
Q = deep_saturating_presentations()["cycle3"]
sat3 = saturate(Q)
for d in (2, 3):
    try:
        R0 = finite_generation_witness(closure_build(Q), kernel_pairs_to_depth(sat3.quotient, d), 4)
        print(f"  depth {d}: R0 =", [f"{format_term(l)} = {format_term(r)}" for l, r in R0])
    except NotFoundWithinBound as exc:
        print(f"  depth {d}: none ({exc})")
