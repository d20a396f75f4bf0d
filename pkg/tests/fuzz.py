"""Seeded generator of random presentation files, and byte-level mutations of them."""

import itertools
import random

from falg.algebra import FiniteAlgebra
from falg.fileformat import MonadDecl, NamedAlgebra, PresentationFile, print_file
from falg.monads import FiniteMonoid
from falg.signature import FinSet, Signature
from falg.terms import App, Var

OPS = ["f", "g", "h", "op", "k2", "c"]
GENS = ["a", "b", "c0", "u_1"]
VARS = ["x", "y", "z"]
ELEMS = [0, 1, 2, "p", "q"]


def random_term(rng, sig, names, depth):
    consts = [s for s, n in sig.ops if n == 0]
    if depth == 0 or not sig.ops or rng.random() < 0.3:
        leaves = [Var(v) for v in names] + [App(c, ()) for c in consts]
        if leaves:
            return rng.choice(leaves)
    op, n = rng.choice(sig.ops)
    return App(op, tuple(random_term(rng, sig, names, depth - 1) for _ in range(n)))


def random_monoid(rng, name):
    k = rng.randint(1, 3)
    kind = rng.choice(["cyclic", "max", "left-zero"])
    if kind == "cyclic":
        op, unit = (lambda p, q: (p + q) % k), 0
    elif kind == "max":
        op, unit = max, 0
    else:
        op, unit = (lambda p, q: q if p == 0 else p), 0
    return FiniteMonoid(FinSet(range(k)), {(p, q): op(p, q) for p in range(k) for q in range(k)}, unit, name)


def random_file(rng) -> PresentationFile:
    sig = Signature(tuple((s, rng.randint(0, 2)) for s in rng.sample(OPS, rng.randint(0, 3))))
    gens = tuple(g for g in rng.sample(GENS, rng.randint(0, 3)) if g not in sig.arities)
    can_build = bool(gens) or bool(sig.constants())
    rels = tuple(
        (random_term(rng, sig, gens, 3), random_term(rng, sig, gens, 3)) for _ in range(rng.randint(0, 3) if can_build else 0)
    )
    vs = tuple(rng.sample(VARS, rng.randint(0, 3)))
    eqs = tuple(
        (random_term(rng, sig, vs, 2), random_term(rng, sig, vs, 2))
        for _ in range(rng.randint(0, 2) if (vs or sig.constants()) else 0)
    )
    algebras = []
    for i in range(rng.randint(0, 2)):
        carrier = rng.sample(ELEMS, rng.randint(1, 3))
        tables = {
            s: {args: rng.choice(carrier) for args in itertools.product(carrier, repeat=n)} for s, n in sig.ops
        }
        env = tuple((g, rng.choice(carrier)) for g in gens if rng.random() < 0.6)
        algebras.append(NamedAlgebra(f"A{i}", FiniteAlgebra(sig, FinSet(carrier), tables), env))
    monoids = [random_monoid(rng, f"M{i}") for i in range(rng.randint(0, 2))]
    monads = []
    for _ in range(rng.randint(0, 2)):
        kind = rng.choice(["identity", "powerset", "free-mset", "terms", "presented"])
        if kind == "free-mset":
            if not monoids:
                continue
            monads.append(MonadDecl(kind, rng.choice(monoids).name))
        elif kind in ("terms", "presented") and rng.random() < 0.5:
            monads.append(MonadDecl(kind, rng.randint(0, 3)))
        else:
            monads.append(MonadDecl(kind))
    return PresentationFile(sig, gens, rels, vs, eqs, tuple(algebras), tuple(monoids), tuple(monads))


def mutate(rng, data: bytes) -> bytes:
    data = bytearray(data)
    for _ in range(rng.randint(1, 4)):
        choice = rng.random()
        pos = rng.randrange(len(data) + 1)
        if choice < 0.3 and data:
            del data[min(pos, len(data) - 1)]
        elif choice < 0.6:
            data.insert(pos, rng.choice(b"()=,;:#->\n \t0aZ\xff\xc3"))
        elif data:
            data[min(pos, len(data) - 1)] = rng.randrange(256)
    return bytes(data)


def corpus(n=1000, seed=2024):
    rng = random.Random(seed)
    return [random_file(rng) for _ in range(n)]


def reformat(text: str, rng) -> str:
    """Same content with scrambled layout: indentation, blank lines, comments and ``;`` joins."""
    out, notes = [], []
    for line in text.splitlines():
        pad = " " * rng.randint(0, 4)
        if out and rng.random() < 0.25 and not line.startswith(("signature", "generators", "relations", "equations")):
            out[-1] += " ; " + line.strip()
        else:
            out.append(pad + line.strip())
            notes.append(rng.random() < 0.2)
        if rng.random() < 0.1:
            out.append("")
            notes.append(False)
    out = [line + (" # note" if note else "") for line, note in zip(out, notes)]
    return "\r\n".join(out) if rng.random() < 0.2 else "\n".join(out)

__all__ = ["corpus", "mutate", "random_file", "reformat", "print_file"]
