"""effmod command line: scenario runner, closure stages and the injectivity checker."""

from __future__ import annotations

import argparse
import sys

from .action import BadParameter
from .algebra import Presentation, UnknownGenerator, format_element, from_vector, parse_element
from .dvr import RElem, is_prime
from .hopf import OddPrimeRequired
from .pid import PidMatrix, saturate_t_torsion
from .scenarios import SCENARIOS, ScenarioReport, run_scenario
from .stages import ZeroDivisor, closure_stage, family_condition, transition, universal_injectivity_check


def _prime(text: str) -> int:
    p = int(text)
    if not is_prime(p):
        raise argparse.ArgumentTypeError("%s is not prime" % text)
    return p


def _base_algebra(p: int, gens: str, rules: list[str]) -> Presentation:
    names = [g.strip() for g in gens.split(",") if g.strip()] if gens else []
    free = Presentation(p, names)
    parsed = {}
    for r in rules:
        if "=" not in r:
            raise BadParameter("rules look like 'y=t*y' (meaning y^p = t*y), got %r" % r)
        g, rhs = r.split("=", 1)
        parsed[g.strip()] = parse_element(rhs.strip(), free)
    return Presentation(p, names, parsed)


def closure_stage_report(p: int, gens: str, rules: list[str], f: str, n: int,
                         degree_bound: int) -> ScenarioReport:
    A = _base_algebra(p, gens, rules)
    fe = parse_element(f, A)
    params = {"gens": list(A.gens), "f": format_element(fe), "n": n, "degree_bound": degree_bound,
              "rules": sorted(rules)}
    rep = ScenarioReport("closure-stage", p, params)
    stage = closure_stage(A, fe, n, degree_bound)
    upper = closure_stage(A, fe, n + 1, degree_bound)
    rels = [format_element(from_vector(stage.ring, r)) for r in stage.saturated.rows]

    rel = stage.x * stage.embed(fe) - RElem.t_pow(n, p)
    if stage.in_bound(rel):
        rep.check("x%d * f = t^%d in the stage ring" % (n, n), stage.is_zero(rel))
    resat = saturate_t_torsion(stage.saturated.rows, p)
    rep.check("stage module is t-torsion free", resat == stage.saturated,
              relations=rels, module_rank=stage.module_rank, torsion_killed=stage.torsion_killed)
    try:
        phi = transition(upper, stage)
        ok = not phi.check_well_defined()
        images = [format_element(x) for x in phi.images]
    except AssertionError:
        ok, images = False, []
    rep.check("transition x%d -> t*x%d is well defined" % (n + 1, n), ok, images=images)
    return rep


def univ_inj_report(p: int, matrix: str, family: list[str]) -> ScenarioReport:
    M = PidMatrix.parse(matrix, p)
    rep = ScenarioReport("univ-inj", p, {"matrix": matrix, "family": list(family)})
    try:
        r = universal_injectivity_check(M)
        rep.check("(2) <=> (3)", True, smith=r.smith, conditions=r.conditions,
                  cokernel_free_rank=r.cokernel_free_rank)
        rep.check("(1) agrees with (2) and (3)", r.consistent, injective=r.injective,
                  injective_mod_t=r.injective_mod_t, cokernel_flat=r.cokernel_flat)
    except AssertionError as exc:
        rep.check("(2) <=> (3)", False, error=str(exc))
    if family:
        cond = family_condition([PidMatrix.parse(m, p) for m in family])
        rep.check("(4) evaluated for the family", True, **cond)
    return rep


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="effmod", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, with_n1=False):
        sp.add_argument("--p", type=_prime, default=3, help="characteristic (default 3)")
        sp.add_argument("--degree-bound", type=int, default=None)
        sp.add_argument("--format", choices=("json", "text"), default="text")
        sp.add_argument("--out", default=None, help="write the report here instead of stdout")
        sp.add_argument("--timing", action="store_true",
                        help="include wall-clock duration (breaks byte-identical output)")
        if with_n1:
            sp.add_argument("--n1", type=int, default=1)

    run = sub.add_parser("run", help="run a named scenario")
    run.add_argument("scenario", choices=SCENARIOS)
    common(run, with_n1=True)

    cs = sub.add_parser("closure-stage", help="n-th stage of the schematic closure of A[1/f]")
    common(cs)
    cs.add_argument("--gens", default="", help="comma-separated generators of A (default: A = R)")
    cs.add_argument("--rule", action="append", default=[], metavar="G=RHS",
                    help="p-shape rule G^p = RHS (repeatable)")
    cs.add_argument("--f", required=True, help="the element f of A")
    cs.add_argument("--n", type=int, required=True)

    ui = sub.add_parser("univ-inj", help="universal injectivity of R^a -> R^b")
    common(ui)
    ui.add_argument("--matrix", required=True, help="b x a matrix, rows ';'-separated, e.g. '1,0;0,t'")
    ui.add_argument("--family", action="append", default=[],
                    help="matrix of a further map out of R^a, for condition (4) (repeatable)")
    return ap


def _emit(rep: ScenarioReport, args) -> None:
    text = rep.to_json(args.timing) if args.format == "json" else rep.to_text(args.timing)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            rep = run_scenario(args.scenario, p=args.p, n1=args.n1, degree_bound=args.degree_bound)
        elif args.command == "closure-stage":
            if args.n < 0:
                raise BadParameter("--n must be nonnegative")
            rep = closure_stage_report(args.p, args.gens, args.rule, args.f, args.n,
                                       4 if args.degree_bound is None else args.degree_bound)
        else:
            rep = univ_inj_report(args.p, args.matrix, args.family)
    except (BadParameter, OddPrimeRequired, ZeroDivisor, UnknownGenerator, ValueError) as exc:
        print("effmod: error: %s" % exc, file=sys.stderr)
        return 2
    _emit(rep, args)
    return 0 if rep.passed else 1


if __name__ == "__main__":
    sys.exit(main())
