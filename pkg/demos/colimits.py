"""Maps out of a finite set into a colimit of a chain factor through a stage.

Run: python demos/colimits.py
"""

from falg import FinSet, chain_colimit, essential_uniqueness_check, fp_witness
from falg.corpus import chains
from falg.colimits import merging_chain

print("Colimits of the stock chains, evaluated up to stage 6")
for name, chain in chains().items():
    C = chain_colimit(chain, 6)
    births = ", ".join(f"{c!r}@{C.birth[c]}" for c in C.classes)
    print(f"  {name:<18} {len(C.classes)} classes: {births}")

print("\nLifting f: {p, q} -> colim along the inclusions 0 -> 01 -> 012 -> ...")
chain = chains()["inclusions"]
C = chain_colimit(chain, 10)
A = FinSet(["p", "q"])
f = {"p": 1, "q": 4}
n, g = fp_witness(A, f, chain, 10, C)
print(f"  least stage is {n}, lift {g}")

print("\nWhen a link merges elements, two lifts through the same stage can differ")
print("and still become equal a few stages later.")
chain = merging_chain(3)
C = chain_colimit(chain, 10)
A = FinSet(["p"])
lift1, lift2 = {"p": 0}, {"p": 1}
same = {C.class_of(0, lift1["p"]), C.class_of(0, lift2["p"])}
print(f"  both lifts through stage 0 land in colimit class {same}")
m = essential_uniqueness_check(A, chain, lift1, lift2, 0, 10)
print(f"  they agree from stage {m} on")

print("\nA cocone out of the chain factors uniquely through the colimit")
# 1 is sent to 0 at stage 3, so a compatible cocone must give them the same value
legs = [{x: "low" if x < 2 else "high" for x in chain.stage(k)} for k in range(11)]
print(f"  mediating map: {C.factor(legs)}")
