"""``falg`` command line.

Exit codes: 0 success or a true verdict, 1 a false verdict, 2 inconclusive or a
budget was hit, 3 bad input.  Every report is deterministic.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys

from . import algebra as alg
from .adjunction import check_triangle_identities, is_monoid_isomorphism, monad_from_monoid, monoid_from_monad, unit_nu
from .colimits import chain_colimit, fp_witness, truncation_chain
from .config import node_cap
from .congruence import closure_build, enumerate_classes, finite_generation_witness, word_equal
from .equational import bounded_theory_congruence, presented_monad_stage, satisfies
from .errors import BudgetExceeded, FalgError, Inconclusive, ParseError
from .fileformat import MonadDecl, load
from .laws import check_counit_morphism, check_monad_laws, check_strength_axioms
from .monads import FreeMSet
from .signature import FinSet
from .terms import Term, _format_atom, chain_sizes, enumerate_terms, format_term, map_vars, parse_term

OK, FALSE, INCONCLUSIVE, INPUT_ERROR = 0, 1, 2, 3


class Report:
    """Collects text lines and a JSON payload for one command."""

    def __init__(self, command: str, path: str):
        self.command = command
        self.path = path
        self.lines: list[str] = []
        self.data: dict = {}
        self.status = "ok"
        self.code = OK

    def say(self, text: str = "") -> None:
        self.lines.append(text)

    def verdict(self, status: str, code: int) -> None:
        self.status, self.code = status, code

    def render(self, as_json: bool) -> str:
        if as_json:
            doc = {"command": self.command, "file": self.path, "status": self.status,
                   "exit_code": self.code, "data": self.data}
            return json.dumps(doc, indent=2, sort_keys=True) + "\n"
        return "".join(line + "\n" for line in self.lines)


def _elem(e) -> str:
    return str(e)


def _table_text(table: dict, carrier, arity: int) -> str:
    return " ".join(
        "(" + ",".join(map(_elem, args)) + ")->" + _elem(table[args])
        for args in itertools.product(carrier, repeat=arity)
    )


def _json_table(table: dict, carrier, arity: int) -> list:
    return [[list(args), table[args]] for args in itertools.product(carrier, repeat=arity)]


def _named_witness(t):
    return format_term(map_vars(lambda m: f"x{m}", t))


# -- commands --------------------------------------------------------------------


def cmd_check(f, args, r: Report) -> None:
    sig = f.signature
    r.say("signature: " + (", ".join(f"{s}/{n}" for s, n in sig.ops) or "(empty)"))
    r.say("generators: " + (" ".join(f.generators) or "(none)"))
    r.say(f"relations: {len(f.relations)}")
    r.say(f"equations: {len(f.equations)}")
    r.data.update(signature=[[s, n] for s, n in sig.ops], generators=list(f.generators),
                  relations=len(f.relations), equations=len(f.equations), algebras=[], monoids=[],
                  monads=[[d.kind, d.arg] for d in f.monads])
    eqs = f.equation_objects()
    for na in f.algebras:
        A = na.algebra
        sat = all(satisfies(A, e) for e in eqs)
        entry = {"name": na.name, "size": len(A.carrier), "satisfies_equations": sat}
        line = f"algebra {na.name}: {len(A.carrier)} elements, equations {'hold' if sat else 'fail'}"
        env = dict(na.env)
        if env and set(env) == set(f.generators):
            rel = all(alg.evaluate(A, l, env) == alg.evaluate(A, u, env) for l, u in f.relations)
            entry["satisfies_relations"] = rel
            line += f", relations {'hold' if rel else 'fail'} under env"
        r.data["algebras"].append(entry)
        r.say(line)
    for M in f.monoids:
        r.data["monoids"].append({"name": M.name, "size": len(M.carrier)})
        r.say(f"monoid {M.name}: {len(M.carrier)} elements")
    for d in f.monads:
        r.say("monad " + d.kind + ("" if d.arg is None else f" {d.arg}"))


def _separating_algebra(f, t, u):
    """A file algebra satisfying the equations and relations in which t and u differ."""
    eqs = f.equation_objects()
    gens = list(f.generators)
    for na in f.algebras:
        A = na.algebra
        if not all(satisfies(A, e) for e in eqs):
            continue
        if len(A.carrier) ** len(gens) > 100_000:
            continue
        for values in itertools.product(A.carrier.elements, repeat=len(gens)):
            env = dict(zip(gens, values))
            if all(alg.evaluate(A, l, env) == alg.evaluate(A, v, env) for l, v in f.relations):
                if alg.evaluate(A, t, env) != alg.evaluate(A, u, env):
                    return na.name, env
    return None


def cmd_word(f, args, r: Report) -> None:
    t = parse_term(args.lhs, f.signature, f.generators)
    u = parse_term(args.rhs, f.signature, f.generators)
    r.data.update(lhs=format_term(t), rhs=format_term(u))
    if not f.equations:
        idx = closure_build(f.ground, seed_terms=(t, u), cap=node_cap())
        if word_equal(idx, t, u):
            r.verdict("equal", OK)
        else:
            r.verdict("unequal", FALSE)
        r.say(r.status)
        return
    X = FinSet(f.generators)
    idx = bounded_theory_congruence(f.signature, f.equation_objects(), X, args.inst_depth, 0,
                                    relations=f.relations, cap=node_cap())
    idx.add(t)
    idx.add(u)
    if idx.equal(t, u):
        r.verdict("equal", OK)
        r.say("equal")
        return
    sep = _separating_algebra(f, t, u)
    if sep:
        name, env = sep
        r.verdict("unequal", FALSE)
        r.data["separated_by"] = {"algebra": name, "env": {g: env[g] for g in f.generators}}
        r.say("unequal")
        r.say(f"separated by algebra {name} at " + " ".join(f"{g}->{_elem(env[g])}" for g in f.generators))
    else:
        r.verdict("unknown", INCONCLUSIVE)
        r.data["inst_depth"] = args.inst_depth
        r.say("unknown")
        r.say(f"not provable with instances of depth <= {args.inst_depth}")


def cmd_classes(f, args, r: Report) -> None:
    X = FinSet(f.generators)
    if f.equations:
        classes = presented_monad_stage(f.signature, f.equation_objects(), X, args.depth, args.inst_depth, cap=node_cap())
    else:
        seeds = enumerate_terms(f.signature, X, args.depth, cap=node_cap())
        idx = closure_build(f.ground, seed_terms=seeds, cap=node_cap())
        classes = enumerate_classes(idx, args.depth)
    r.say(f"classes of terms up to depth {args.depth}: {len(classes)}")
    r.data.update(depth=args.depth, count=len(classes), classes=[])
    for rep, members in classes:
        r.say(f"  {format_term(rep)}  [{len(members)}]")
        r.data["classes"].append({"representative": format_term(rep), "size": len(members)})


def cmd_saturate(f, args, r: Report) -> None:
    if f.equations:
        raise ParseError("saturate works on ground presentations; this file has equations", 1, 1)
    sat = alg.saturate(f.ground, max_classes=args.max_classes, cap=node_cap())
    A = sat.algebra
    n = len(A.carrier)
    r.say(f"finite quotient with {n} elements")
    r.say("algebra Q")
    r.say("  carrier " + " ".join(map(_elem, A.carrier)))
    for op, arity in f.signature.ops:
        r.say(f"  op {op}: " + _table_text(A.tables[op], A.carrier.elements, arity))
    if sat.env:
        r.say("  env " + " ".join(f"{g}->{sat.env[g]}" for g in f.generators))
    for i, t in enumerate(sat.representatives):
        r.say(f"# {i} = {format_term(t)}")
    r.data.update(
        size=n,
        carrier=list(A.carrier),
        tables={op: _json_table(A.tables[op], A.carrier.elements, arity) for op, arity in f.signature.ops},
        env={g: sat.env[g] for g in f.generators},
        representatives=[format_term(t) for t in sat.representatives],
    )


_NAMED_TABLES = {
    "conjunction": {(0, 0): 0, (0, 1): 0, (1, 0): 0, (1, 1): 1},
    "disjunction": {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 1},
    "exclusive or": {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 0},
}


def _monads(f, args) -> list:
    decls = list(f.monads)
    for M in f.monoids:
        d = MonadDecl("free-mset", M.name)
        if d not in decls:
            decls.append(d)
    return decls


def cmd_monoid(f, args, r: Report) -> None:
    if not f.monads:
        raise ParseError("no monad declared", 1, 1, "monad declaration")
    r.data["monoids"] = []
    for d in f.monads:
        T = f.monad_oracle(d, args.depth, args.inst_depth)
        R = monoid_from_monad(T)
        entry = {"monad": T.name, "complete": R.complete, "elements": [_display(x) for x in R.carrier]}
        r.say(f"monad {T.name}")
        r.say("  elements " + "  ".join(f"{i}={_display(x)}" for i, x in enumerate(R.carrier)))
        if R.complete:
            M = R.labelled()
            n = len(M.carrier)
            r.say("  carrier {" + ",".join(map(str, range(n))) + "}")
            r.say(f"  unit {M.unit}")
            r.say("  mult " + _table_text(M.mult, M.carrier.elements, 2))
            named = next((k for k, v in _NAMED_TABLES.items() if v == M.mult), None)
            if named:
                r.say(f"  mult is {named}")
            entry.update(carrier=list(range(n)), unit=M.unit, mult=_json_table(M.mult, M.carrier.elements, 2),
                         named=named)
        else:
            r.say(f"  carrier has {len(R.carrier)} elements within the bound; "
                  f"{len(R.table)} of {len(R.carrier) ** 2} products stay inside it")
            label = {x: i for i, x in enumerate(R.carrier)}
            r.say(f"  unit {label[R.unit]}")
            known = sorted((label[a], label[b], label[c]) for (a, b), c in R.table.items())
            r.say("  mult " + " ".join(f"({i},{j})->{k}" for i, j, k in known))
            entry.update(products_inside=len(R.table), unit=label[R.unit],
                         mult=[[[i, j], k] for i, j, k in known])
            r.verdict("partial", INCONCLUSIVE)
        r.data["monoids"].append(entry)


def _display(x) -> str:
    return format_term(x) if isinstance(x, Term) else _format_atom(x)


def cmd_laws(f, args, r: Report) -> None:
    decls = _monads(f, args)
    if not decls:
        raise ParseError("no monad or monoid declared", 1, 1, "monad or monoid declaration")
    r.data["monads"] = []
    failed = unknown = False
    for d in decls:
        T = f.monad_oracle(d, args.depth, args.inst_depth)
        reports = check_monad_laws(T) + check_strength_axioms(T) + check_counit_morphism(T)
        entry = {"monad": T.name, "laws": []}
        r.say(f"monad {T.name}")
        for rep in reports:
            r.say(f"  {rep}")
            entry["laws"].append({"law": rep.law, "ok": rep.ok, "checked": rep.checked, "exhaustive": rep.exhaustive,
                                  "decisive": rep.decisive})
            failed |= rep.refuted
            unknown |= not rep.ok and not rep.decisive
        if isinstance(T, FreeMSet):
            M = T.monoid
            tri = check_triangle_identities(M, T)
            iso = is_monoid_isomorphism(unit_nu(M), M, monoid_from_monad(monad_from_monoid(M)))
            r.say(f"  {'ok ' if tri.ok else 'FAIL'} triangle identities: {tri.first_checked + tri.second_checked} points")
            r.say(f"  {'ok ' if iso else 'FAIL'} unit is a monoid isomorphism")
            entry["triangle_identities"] = tri.ok
            entry["unit_isomorphism"] = iso
            failed |= not (tri.ok and iso)
        r.data["monads"].append(entry)
    if failed:
        r.verdict("violated", FALSE)
    elif unknown:
        # mismatches between canonical forms that bounded instantiation may not identify
        r.verdict("unknown", INCONCLUSIVE)


def cmd_chain(f, args, r: Report) -> None:
    X = FinSet(f.generators)
    sizes = chain_sizes(f.signature, len(X), args.depth)
    r.say(f"free chain over {len(X)} generators")
    r.data["stages"] = []
    for n, size in enumerate(sizes):
        stage = {"stage": n, "terms": size}
        line = f"  W{n}: {size}"
        if f.equations:
            try:
                classes = presented_monad_stage(f.signature, f.equation_objects(), X, n,
                                                min(n, args.inst_depth), cap=node_cap())
            except BudgetExceeded:
                stage["classes"] = None
                line += "  classes: budget exceeded"
                r.verdict("partial", INCONCLUSIVE)
            else:
                stage["classes"] = len(classes)
                line += f"  classes: {len(classes)}"
        r.data["stages"].append(stage)
        r.say(line)
    if f.relations and not f.equations:
        _truncation_colimit(f, args, r)


def _truncation_colimit(f, args, r: Report) -> None:
    """Classes met by depth-truncated terms form a chain whose colimit is the quotient."""
    try:
        sat = alg.saturate(f.ground, max_classes=args.max_classes, cap=node_cap())
    except (Inconclusive, BudgetExceeded):
        r.say("quotient does not saturate within the class budget; no colimit check")
        r.data["colimit"] = None
        return
    e = sat.quotient
    X = FinSet(f.generators)

    def met(d):
        hit = {e(t) for t in enumerate_terms(f.signature, X, d, cap=node_cap())}
        return [x for x in sat.algebra.carrier if x in hit]

    chain = truncation_chain(met)
    colim = chain_colimit(chain, args.bound)
    carrier = list(sat.algebra.carrier)
    bij = sorted(colim.classes) == carrier
    r.say(f"truncation chain to stage {args.bound}: " + " ".join(str(len(chain.stage(n))) for n in range(args.bound + 1)))
    r.say(f"colimit classes: {len(colim.classes)}; quotient elements: {len(carrier)}; bijective: {'yes' if bij else 'no'}")
    identity = {x: x for x in carrier}
    if bij:
        n, _ = fp_witness(FinSet(carrier), identity, chain, args.bound)
        r.say(f"the whole quotient factors through truncation stage {n}")
    else:
        n = None
        r.verdict("partial", INCONCLUSIVE)
    r.data["colimit"] = {"stages": [len(chain.stage(k)) for k in range(args.bound + 1)],
                         "classes": len(colim.classes), "quotient": len(carrier), "bijective": bij, "factor_stage": n}


def _subsets_by_size(carrier, max_size):
    for k in range(min(max_size, len(carrier)) + 1):
        yield from itertools.combinations(carrier, k)


def cmd_witness(f, args, r: Report) -> None:
    r.data["algebras"] = []
    any_work = False
    for na in f.algebras:
        any_work = True
        A = na.algebra
        found = next((M for M in _subsets_by_size(A.carrier.elements, args.bound) if alg.is_generated_by(A, M)), None)
        entry = {"name": na.name, "generators": None, "witnesses": None}
        if found is None:
            r.say(f"algebra {na.name}: no generating subset with at most {args.bound} elements")
            r.verdict("not found", INCONCLUSIVE)
        else:
            e = alg.ffp_quotient_witness(A, found)
            r.say(f"algebra {na.name}: generated by {{" + ",".join(map(_elem, found)) + "}")
            for x, t in e.witnesses.items():
                r.say(f"  {_elem(x)} = {_named_witness(t)}")
            entry.update(generators=list(found), witnesses={_elem(x): _named_witness(t) for x, t in e.witnesses.items()})
        if na.env:
            gen = alg.is_generated_by(A, [x for _, x in na.env])
            entry["env_generates"] = gen
            r.say(f"  env image generates: {'yes' if gen else 'no'}")
        r.data["algebras"].append(entry)
    if f.relations and not f.equations:
        any_work = True
        _relation_witness(f, args, r)
    if not any_work:
        raise ParseError("nothing to witness: no algebra and no relations", 1, 1)


def _relation_witness(f, args, r: Report) -> None:
    """A finite sub-relation among depth-2 kernel pairs generating the kernel of the saturated quotient."""
    sat = alg.saturate(f.ground, max_classes=args.max_classes, cap=node_cap())
    e = sat.quotient
    X = FinSet(f.generators)
    candidates = alg.kernel_pairs_to_depth(e, 2, cap=node_cap())
    seeds = enumerate_terms(f.signature, X, args.depth, cap=node_cap())
    target = closure_build(f.ground, seeds, cap=node_cap())
    R0 = finite_generation_witness(target, candidates, args.depth)
    r.say(f"kernel of the quotient is generated to depth {args.depth} by {len(R0)} relation(s):")
    for t, u in R0:
        r.say(f"  {format_term(t)} = {format_term(u)}")
    r.data["relations"] = [[format_term(t), format_term(u)] for t, u in R0]


COMMANDS = {
    "check": (cmd_check, "validate a file and summarize it"),
    "word": (cmd_word, "decide or semi-decide equality of two terms"),
    "classes": (cmd_classes, "list congruence classes of bounded-depth terms"),
    "saturate": (cmd_saturate, "compute a finite quotient algebra"),
    "monoid": (cmd_monoid, "the monoid of unary operations of each declared monad"),
    "laws": (cmd_laws, "sweep monad laws, strength axioms and adjunction identities"),
    "chain": (cmd_chain, "stage sizes of the free chain and the truncation colimit"),
    "witness": (cmd_witness, "generating sets and finite generating relations"),
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="falg", description="Finitary algebra engine.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("file")
        if name == "word":
            sp.add_argument("lhs")
            sp.add_argument("rhs")
        sp.add_argument("--depth", type=_natural, default=4)
        sp.add_argument("--inst-depth", type=_natural, default=3)
        sp.add_argument("--max-classes", type=_positive, default=1000)
        sp.add_argument("--bound", type=_natural, default=6)
        sp.add_argument("--json", action="store_true")
    return p


def _natural(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return n


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def run(argv: list[str], out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    r = Report(args.command, args.file)
    try:
        f = load(args.file)
        COMMANDS[args.command][0](f, args, r)
    except OSError as exc:
        return _fail(r, args, out, err, "input-error", INPUT_ERROR, f"{args.file}: {exc.strerror}")
    except (Inconclusive, BudgetExceeded) as exc:
        return _fail(r, args, out, err, "inconclusive", INCONCLUSIVE, str(exc))
    except FalgError as exc:
        if isinstance(exc, ParseError):
            r.data["position"] = {"line": exc.line, "col": exc.col}
        return _fail(r, args, out, err, "input-error", INPUT_ERROR, f"{args.file}: {exc}")
    out.write(r.render(args.json))
    return r.code


def _fail(r: Report, args, out, err, status: str, code: int, message: str) -> int:
    r.verdict(status, code)
    r.data["error"] = message
    if args.json:
        out.write(r.render(True))
    else:
        out.write(r.render(False))
        err.write(f"{status}: {message}\n")
    return code


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
