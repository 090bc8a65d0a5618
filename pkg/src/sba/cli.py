"""``sba``: command-line front end.

Inputs name an algebra or a bialgebra:

    catalog:NAME          catalog algebra (algebra commands) or dual row (pair commands)
    catalog-pair:rowN     coboundary pair with its r-matrices
    path.salg | path.sbia | path.rpair

Exit status: 0 all checks pass, 1 some check fails, 2 bad input.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from . import acceptance
from .automorphism import is_automorphism, solve_automorphism_family
from .bialgebra import (DualStructure, SuperBialgebra, THEOREM1_CASES, check_bialgebra,
                        check_double, check_mixed_jacobi, cocommutator, drinfeld_double,
                        mixed_jacobi_tensor, verify_theorem1)
from .catalog import (UnknownCatalogEntry, algebra_from_text, catalog_load, load_pair,
                      load_rpair, pair_from_texts)
from .equivalence import FOUND, INCONCLUSIVE, equivalence_search
from .expr import ExprError, parse_value
from .formats import (FormatError, parse_automorphism, parse_rmatrix, parse_rpair, parse_salg,
                      parse_sbia, read_text)
from .graded import format_coeff
from .hopf import check_casimir_central, check_cocommutator_match, check_hopf_axioms_by_order, deformation
from .params import ParameterError
from .phasespace import (casimir_realized, check_canonical_brackets, check_involution,
                         check_printed_h, check_realization_closure, hamiltonian, realization)
from .poly import Poly
from .report import Report, failed, passed
from .rmatrix import (RMatrixElement, classify_triangularity, coboundary_matrix_form,
                      format_wedge3, schouten_bracket, skew_part, solve_coboundary,
                      solve_coboundary_dual)
from .superalgebra import SuperAlgebra, adjoint_reps, check_antisymmetry, check_super_jacobi

__all__ = ["main", "build_parser", "InputError"]


class InputError(Exception):
    """Bad command-line input; reported with exit status 2."""


# ----------------------------------------------------------------------
# input resolution

def _bindings(items: Sequence[str]) -> Dict[str, object]:
    out = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise InputError(f"--set expects name=value, got {item!r}")
        try:
            out[name.strip()] = parse_value(value)
        except ExprError as exc:
            raise InputError(f"--set {name.strip()}: {exc}") from None
    return out


def _file(ref: str) -> Path:
    path = Path(ref)
    if not path.exists():
        raise InputError(f"no such file: {ref}")
    return path


def load_algebra(ref: str, sets: Dict[str, object]) -> SuperAlgebra:
    if ref.startswith("catalog:"):
        alg = catalog_load(ref[len("catalog:"):])
    elif ref.startswith("catalog-pair:"):
        alg = load_rpair(ref[len("catalog-pair:"):]).bialgebra.base
        return alg
    else:
        path = _file(ref)
        if path.suffix == ".sbia":
            base, _ = parse_sbia(read_text(path), str(path))
            alg = algebra_from_text(base)
        elif path.suffix == ".rpair":
            alg = algebra_from_text(parse_rpair(read_text(path), str(path)).base)
        else:
            alg = algebra_from_text(parse_salg(read_text(path), str(path)))
    return alg.bind(sets) if sets else alg


def load_bialgebra(ref: str, sets: Dict[str, object]):
    """(bialgebra, r-matrices or None)."""
    if ref.startswith("catalog:"):
        return load_pair(ref[len("catalog:"):], **sets), None
    if ref.startswith("catalog-pair:"):
        pair = load_rpair(ref[len("catalog-pair:"):], **sets)
        return pair.bialgebra, pair
    path = _file(ref)
    if path.suffix == ".rpair":
        t = parse_rpair(read_text(path), str(path))
        bi = pair_from_texts(t.base, t.dual)
        if sets:
            bi = SuperBialgebra(bi.base, bi.dual.bind(sets))
        return bi, None
    bi = pair_from_texts(*parse_sbia(read_text(path), str(path)))
    if sets:
        bi = SuperBialgebra(bi.base, bi.dual.bind(sets))
    return bi, None


def _points(alg: SuperAlgebra, args) -> List[SuperAlgebra]:
    if alg.free_parameters():
        return alg.sample(random.Random(args.seed), args.samples)
    return [alg]


def _bialgebra_points(bi: SuperBialgebra, args) -> List[SuperBialgebra]:
    if bi.dual.alg.free_parameters():
        return [SuperBialgebra(bi.base, d) for d in bi.dual.sample(random.Random(args.seed), args.samples)]
    return [bi]


def _params_text(alg: SuperAlgebra) -> str:
    if not alg.params:
        return ""
    return " [" + ", ".join(f"{k}={v}" for k, v in sorted(alg.params.items())) + "]"


def format_brackets(alg: SuperAlgebra) -> List[str]:
    lines = []
    g = alg.grading
    for (i, j), vec in sorted(alg.brackets().items()):
        if i > j or not vec:
            continue
        op = ("{", "}") if g(i) and g(j) else ("[", "]")
        rhs = " + ".join(f"({format_coeff(c)}) {alg.label(k)}" for k, c in sorted(vec.items()))
        lines.append(f"  {op[0]}{alg.label(i)}, {alg.label(j)}{op[1]} = {rhs}")
    return lines or ["  (abelian)"]


def _matrix_lines(m) -> List[str]:
    return ["  [" + ", ".join(format_coeff(x) for x in row) + "]" for row in m]


# ----------------------------------------------------------------------
# commands

def cmd_check_jacobi(args, rep: Report) -> None:
    alg = load_algebra(args.algebra, _bindings(args.set))
    for a in _points(alg, args):
        rep.say(f"{a.name}{_params_text(a)}")
        rep.add(check_super_jacobi(a), check_antisymmetry(a.f, a.name))


def cmd_adjoint(args, rep: Report) -> None:
    alg = load_algebra(args.algebra, _bindings(args.set))
    alg.require_bound()
    for i, m in enumerate(adjoint_reps(alg), start=1):
        rep.say(f"Y^{i}:")
        for line in _matrix_lines(m):
            rep.say(line)


def cmd_automorphism_family(args, rep: Report) -> None:
    fam = solve_automorphism_family(load_algebra(args.algebra, _bindings(args.set)))
    rep.say(fam.format())
    rng = random.Random(args.seed)
    alg = load_algebra(args.algebra, _bindings(args.set))
    for _ in range(args.samples):
        values, A = fam.sample(rng)
        r = is_automorphism(A, alg)
        r.name = f"member at {', '.join(f'{k}={v}' for k, v in values.items())}"
        rep.add(r)


def cmd_check_automorphism(args, rep: Report) -> None:
    alg = load_algebra(args.algebra, _bindings(args.set))
    path = _file(args.matrix)
    A, _ = parse_automorphism(read_text(path), str(path))
    rep.add(is_automorphism(A, alg))


def cmd_mixed_sji(args, rep: Report) -> None:
    bi, _ = load_bialgebra(args.pair, _bindings(args.set))
    for b in _bialgebra_points(bi, args):
        rep.say(f"{b.name}{_params_text(b.dual.alg)}: {len(mixed_jacobi_tensor(b))} nonzero residuals")
        rep.add(check_mixed_jacobi(b))


def cmd_verify_theorem1(args, rep: Report) -> None:
    base = catalog_load("(C3+A)")
    rng = random.Random(args.seed)
    cases = [args.case] if args.case else sorted(THEOREM1_CASES)
    for case in cases:
        rep.add(verify_theorem1(case, base, samples=args.samples, rng=rng))


def cmd_check_bialgebra(args, rep: Report) -> None:
    bi, _ = load_bialgebra(args.pair, _bindings(args.set))
    for b in _bialgebra_points(bi, args):
        rep.say(f"{b.name}{_params_text(b.dual.alg)}")
        rep.add(*check_bialgebra(b))


def _single_dual(ref: str, sets, args) -> DualStructure:
    bi, _ = load_bialgebra(ref, sets)
    d = bi.dual
    if d.is_symbolic():
        d = d.sample(random.Random(args.seed), 1)[0]
    return d


def cmd_classify(args, rep: Report) -> None:
    sets = _bindings(args.set)
    fam = solve_automorphism_family(catalog_load("(C3+A)"))
    d1 = _single_dual(args.dual, sets, args)
    rep.say(f"{d1.name}{_params_text(d1.alg)}")
    if args.other:
        d2 = _single_dual(args.other, sets, args)
        r = equivalence_search(d1, d2, fam)
        rep.say(f"vs {d2.name}{_params_text(d2.alg)}: {r.outcome} ({r.detail})")
        if r.witness is not None:
            rep.say("witness:")
            for line in _matrix_lines(r.witness):
                rep.say(line)
        name = f"equivalence {d1.name} ~ {d2.name}"
        if r.outcome == INCONCLUSIVE:
            rep.add(acceptance.CheckResult(name, "automorphism transport", "inconclusive", detail=r.detail))
        else:
            rep.add(passed(name, "automorphism transport", detail=r.outcome))
        return
    matches, unclear = [], []
    for name, params, bi in acceptance.resolved_duals(random.Random(args.seed)):
        if name == d1.name and set(params) == set(d1.alg.params):
            # same family: compare at the input's own point, not a sampled one
            if params != d1.alg.params and not any(
                    k in bi.dual.alg.spec.choices and params[k] != d1.alg.params[k] for k in params):
                params = dict(d1.alg.params)
                bi = SuperBialgebra(bi.base, d1)
        r = equivalence_search(d1, bi.dual, fam)
        label = acceptance._label(name, params)
        if r.outcome == FOUND:
            matches.append(label)
        elif r.outcome == INCONCLUSIVE:
            unclear.append(label)
    for m in matches:
        rep.say(f"equivalent to {m}")
    if unclear:
        rep.say("inconclusive against: " + "; ".join(unclear))
    rep.say("rows with continuous parameters are compared at one sampled point (see --seed)")
    check = "classification against the dual catalog"
    if matches:
        rep.add(passed(check, "automorphism transport", detail=f"{len(matches)} match(es)"))
    elif unclear:
        rep.add(acceptance.CheckResult(check, "automorphism transport", "inconclusive",
                                       detail=f"{len(unclear)} undecided"))
    else:
        rep.add(passed(check, "automorphism transport", detail="no catalog row matches"))


def cmd_double(args, rep: Report) -> None:
    bi, _ = load_bialgebra(args.pair, _bindings(args.set))
    for b in _bialgebra_points(bi, args)[:1]:
        D, form = drinfeld_double(b)
        rep.say(f"double of {b.name}{_params_text(b.dual.alg)}, basis {', '.join(D.label(i) for i in D.grading.indices())}:")
        for line in format_brackets(D):
            rep.say(line)
        rep.add(*check_double(b))


def cmd_cocomm(args, rep: Report) -> None:
    bi, _ = load_bialgebra(args.pair, _bindings(args.set))
    for b in _bialgebra_points(bi, args)[:1]:
        for i in b.grading.indices():
            t = cocommutator(b, i)
            terms = [f"({format_coeff(c)}) X{j} (x) X{k}" for (j, k), c in sorted(t.items())]
            rep.say(f"delta(X{i}) = " + (" + ".join(terms) if terms else "0"))


def _r_for(args, bi, pair, default: str) -> RMatrixElement:
    if args.r:
        path = _file(args.r)
        grades = bi.grading.grades
        coeffs, _, _ = parse_rmatrix(read_text(path), len(grades), str(path), grades)
        return RMatrixElement(bi.grading, coeffs, path.stem)
    if pair is None:
        raise InputError("this input carries no r-matrix; pass --r FILE or use catalog-pair:rowN")
    key = default if not args.dual else "r" + "dual" + default[1:]
    if key not in pair.r:
        raise InputError(f"{pair.name} has no [{key}] section")
    return pair.r[key]


def _reduce(t, alg: SuperAlgebra):
    signs = [n for n, opts in alg.spec.choices.items()
             if all(o.is_real() for o in opts) and sorted(o.re for o in opts) == [-1, 1]]
    if not signs:
        return t
    return t.map(lambda c: (lambda p: p.constant_value() if p.is_constant() else p)(
        Poly.lift(c).reduce_signs(signs)))


def cmd_schouten(args, rep: Report) -> None:
    sets = _bindings(args.set)
    if args.pair.startswith("catalog-pair:") and not args.r:
        pair = load_rpair(args.pair[len("catalog-pair:"):], symbolic=args.symbolic, **sets)
        bi = pair.bialgebra
        if pair.params:
            rep.say("at " + ", ".join(f"{k}={v}" for k, v in sorted(pair.params.items())))
    else:
        bi, pair = load_bialgebra(args.pair, sets)
    r = _r_for(args, bi, pair, "r" if args.skew else "rfamily")
    if args.skew and not r.is_skew():
        r = skew_part(r)
    alg = bi.dual.alg if args.dual else bi.base
    symbol = "X~" if args.dual else "X"
    rep.say(f"r = {r.format(symbol, args.dual)}")
    omega = _reduce(schouten_bracket(r, alg), bi.dual.alg)
    rep.say(f"[[r, r]] = {format_wedge3(omega, symbol, args.dual)}")


def cmd_solve_r(args, rep: Report, dual: bool = False) -> None:
    bi, _ = load_bialgebra(args.pair, _bindings(args.set))
    bi.dual.alg.require_bound()
    fam = (solve_coboundary_dual if dual else solve_coboundary)(bi)
    side = "r~" if dual else "r"
    if fam is None:
        rep.say(f"{bi.name}: no {side} solves the coboundary equation")
        return
    rep.say(f"{side} = {fam.format('X~' if dual else 'X', dual)}")
    rep.say(f"dimension {fam.dimension}")
    if not dual:
        mismatches = 0
        member = fam.member({p: 0 for p in fam.params})
        tensor_form = {}
        for i in bi.grading.indices():
            from .rmatrix import coboundary_tensor
            tensor_form[i] = coboundary_tensor(member, bi.base, i)
        for i, m in enumerate(coboundary_matrix_form(member, bi.base), start=1):
            for a, row in enumerate(m, start=1):
                for b, c in enumerate(row, start=1):
                    if c != tensor_form[i].get(a, b):
                        mismatches += 1
        name = "matrix and tensor forms of delta_r agree"
        rep.add(passed(name, "coboundary equation") if not mismatches
                else failed(name, "coboundary equation", mismatches))


def cmd_triangularity(args, rep: Report) -> None:
    bi, pair = load_bialgebra(args.pair, _bindings(args.set))
    r = _r_for(args, bi, pair, "r")
    if not r.is_skew():
        r = skew_part(r)
    alg = bi.dual.alg if args.dual else bi.base
    verdict = classify_triangularity(r, alg)
    rep.say(f"r = {r.format('X~' if args.dual else 'X', args.dual)}")
    rep.say(f"verdict: {verdict}")


def cmd_hopf_verify(args, rep: Report) -> None:
    d = deformation(args.name)
    for note in d.notes:
        rep.say(note)
    rep.add(*check_hopf_axioms_by_order(d, args.order))
    rep.add(*check_casimir_central(d, args.order))
    rep.add(*check_cocommutator_match(d))


def cmd_phase_verify(args, rep: Report) -> None:
    R = realization(args.deformed, args.order, printed=args.printed)
    rep.add(*check_canonical_brackets())
    rep.add(*check_realization_closure(R))
    if args.deformed:
        rep.add(*check_printed_h(args.order))
    C = casimir_realized(R)
    rep.say(f"S(C) = {C.format()}")
    labelled = {f"S({g})": f for g, f in R.images.items()}
    rep.add(*check_involution(C, labelled, "S(C)"))
    rep.add(*check_involution(hamiltonian(R), labelled, "S(C) + S(H)^2"))


def cmd_phase_show(args, rep: Report) -> None:
    R = realization(args.deformed, args.order, printed=args.printed)
    for line in R.format().splitlines():
        rep.say(line)
    rep.say(f"S(C) = {casimir_realized(R).format()}")


def cmd_verify_all(args, rep: Report) -> None:
    for n, (title, _) in acceptance.CRITERIA.items():
        t0 = time.perf_counter()
        results = acceptance.run_criterion(n, order=args.order, samples=args.samples, seed=args.seed)
        bad = sum(1 for r in results if r.verdict == "fail")
        rep.say(f"criterion {n} ({title}): {len(results) - bad}/{len(results)} pass "
                f"[{time.perf_counter() - t0:.1f} s]")
        for r in results:
            r.name = f"{n}: {r.name}"
        rep.add(*results)


COMMANDS = {
    "check-jacobi": (cmd_check_jacobi, "super Jacobi and graded antisymmetry", ["algebra"]),
    "adjoint": (cmd_adjoint, "adjoint representation matrices", ["algebra"]),
    "automorphism-family": (cmd_automorphism_family, "solve for the automorphism family", ["algebra"]),
    "check-automorphism": (cmd_check_automorphism, "test an automorphism matrix file", ["algebra", "matrix"]),
    "mixed-sji": (cmd_mixed_sji, "mixed super Jacobi identity", ["pair"]),
    "verify-theorem1": (cmd_verify_theorem1, "the four-case classification of duals", []),
    "check-bialgebra": (cmd_check_bialgebra, "all bialgebra identities", ["pair"]),
    "classify": (cmd_classify, "equivalence against the dual catalog or another dual", ["dual"]),
    "double": (cmd_double, "Drinfeld double and its invariant pairing", ["pair"]),
    "cocomm": (cmd_cocomm, "cocommutator on the generators", ["pair"]),
    "schouten": (cmd_schouten, "graded Schouten bracket of an r-matrix", ["pair"]),
    "solve-r": (cmd_solve_r, "r-matrices inducing the cocommutator", ["pair"]),
    "solve-r-dual": (lambda a, r: cmd_solve_r(a, r, dual=True), "r~ on the dual side", ["pair"]),
    "triangularity": (cmd_triangularity, "triangular / quasi-triangular verdict", ["pair"]),
    "hopf-verify": (cmd_hopf_verify, "Hopf axioms of a quantization", []),
    "phase-verify": (cmd_phase_verify, "phase-superspace realization checks", []),
    "phase-show": (cmd_phase_show, "print the realization", []),
    "verify-all": (cmd_verify_all, "the acceptance suite", []),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=int, default=6, help="lambda truncation order (default 6)")
    common.add_argument("--samples", type=int, default=10, help="parameter samples (default 10)")
    common.add_argument("--seed", type=int, default=0, help="sampling seed (default 0)")
    common.add_argument("--json", action="store_true", help="JSON-lines report")
    common.add_argument("--set", action="append", metavar="NAME=VALUE", help="bind a parameter")
    parser = argparse.ArgumentParser(prog="sba", description="Lie superbialgebra verifier")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (_, help_text, positional) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        for pos in positional:
            p.add_argument(pos)
        if name == "classify":
            p.add_argument("other", nargs="?")
        if name == "verify-theorem1":
            p.add_argument("--case", type=int, choices=sorted(THEOREM1_CASES))
        if name in ("schouten", "triangularity"):
            p.add_argument("--skew", action="store_true", help="use the super skew-symmetric r")
            p.add_argument("--dual", action="store_true", help="the r~ of the dual side")
            p.add_argument("--r", metavar="FILE", help="r-matrix file (r/w lines)")
        if name == "schouten":
            p.add_argument("--symbolic", action="store_true",
                           help="keep unset dual parameters as letters")
        if name == "hopf-verify":
            p.add_argument("name", choices=["prop4", "prop5", "prop6", "prop5-printed"])
        if name in ("phase-verify", "phase-show"):
            p.add_argument("--deformed", action="store_true")
            p.add_argument("--printed", action="store_true",
                           help="with --deformed: the printed image of H instead of h")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    rep = Report("sba " + " ".join(argv), seed=args.seed)
    fn = COMMANDS[args.command][0]
    try:
        fn(args, rep)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InputError, ParameterError, UnknownCatalogEntry, ExprError) as exc:
        msg = exc.args[0] if isinstance(exc, UnknownCatalogEntry) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2
    print(rep.render_json() if args.json else rep.render_text())
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
