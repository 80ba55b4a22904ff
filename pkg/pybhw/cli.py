"""
Command Line Module

The ``bhw`` command. Every subcommand prints either one token or one line of
JSON on stdout; logging and warnings go to stderr.

Usage::

    bhw ord cmp "p(0)" W                  # LT
    bhw fml rank "(ex x (in x a))"        # W
    bhw proof check pair.json
    bhw rs pipeline pair.json --sigma 0 --seed 3
    bhw rs builders pair --level w
    bhw tree mem n*:2 n*:5                # true
    bhw eval "(in a b)" --assign assign.json --budget 10
    bhw selftest --quick

Exit codes: 0 on success, 1 on a domain error (``error: <Class>: <reason>``
on stderr) or a failed check, 2 on a usage error.
"""

import argparse
import json
import logging
import sys
from typing import Any, Callable, Dict, Optional, Sequence

from . import builders
from .certificate import Certificate, cert_check
from .config import Settings
from .exceptions import BHWError, NotSuitable
from .formulas import (
    bound_exists,
    class_of,
    length,
    level,
    negate,
    rank,
    relativize,
)
from .loader import ProofFileLoader, read_assignment, read_family, read_tree
from .ordinals import (
    compare,
    in_C,
    natural_sum,
    nf_sum,
    omega_pow,
    omega_tower,
    parse,
    psi,
    render,
)
from .pipeline import pipeline
from .selftest import SUITES, run_suites
from .sexpr import read_formula, read_term, render_formula
from .taitkp import check_proof
from .trees import alpha_tree, eq_star, is_suitable, mem_star, merge_family
from .truth import Budget, eval_truth

log = logging.getLogger(__name__)

_LOG_LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)


def _emit(value: Any) -> None:
    if isinstance(value, bool):
        print("true" if value else "false")
    elif isinstance(value, str):
        print(value)
    else:
        print(json.dumps(value, sort_keys=True))


# ord


def _ordinal(text: str) -> Any:
    return parse(text, allow_natural=True)


def _run_ord(args: argparse.Namespace) -> int:
    a = [_ordinal(t) for t in args.terms] if args.op != "tower" else []
    if args.op == "cmp":
        _emit(compare(a[0], a[1]).value)
    elif args.op == "nf":
        _emit(render(a[0]))
    elif args.op == "add":
        _emit(render(nf_sum(a[0], a[1])))
    elif args.op == "nsum":
        _emit(render(natural_sum(a[0], a[1])))
    elif args.op == "wpow":
        _emit(render(omega_pow(a[0])))
    elif args.op == "psi":
        _emit(render(psi(a[0])))
    elif args.op == "inC":
        _emit(in_C(a[0], a[1]))
    else:
        n, xi = args.terms
        if not n.isdigit():
            raise argparse.ArgumentTypeError(f"tower height must be a natural number, got {n!r}")
        _emit(render(omega_tower(int(n), _ordinal(xi))))
    return 0


_ORD_ARITY = {"cmp": 2, "nf": 1, "add": 2, "nsum": 2, "wpow": 1, "psi": 1, "inC": 2, "tower": 2}


# fml


def _run_fml(args: argparse.Namespace) -> int:
    f = read_formula(args.formula)
    if args.op == "rank":
        _emit(render(rank(f)))
    elif args.op == "level":
        _emit(render(level(f)))
    elif args.op == "len":
        _emit(str(length(f)))
    elif args.op == "class":
        _emit(class_of(f).to_dict())
    elif args.op == "neg":
        _emit(render_formula(negate(f)))
    elif args.op == "bound":
        _emit(render_formula(bound_exists(f, _ordinal(args.arg))))
    else:
        _emit(render_formula(relativize(f, read_term(args.arg))))
    return 0


# proof


def _run_proof(args: argparse.Namespace) -> int:
    report = check_proof(ProofFileLoader(args.file).load())
    _emit(report.to_dict())
    return 0 if report.ok else 1


# rs


def _certificate_dict(c: Certificate, settings: Settings) -> Dict[str, Any]:
    check = cert_check(c, depth=settings.depth, samples=settings.samples, seed=settings.seed)
    return {
        "conclusion": sorted(render_formula(f) for f in c.conclusion),
        "alpha": render(c.alpha),
        "rho": render(c.rho),
        "rule": c.rule.value,
        "check": check.to_dict(),
    }


def _builder(args: argparse.Namespace) -> Certificate:
    a = read_term(args.term)
    b = read_term(args.term2)
    lvl = _ordinal(args.level)
    f = read_formula(args.formula) if args.formula else None
    context = ((lvl, a),)
    table: Dict[str, Callable[[], Certificate]] = {
        "tnd": lambda: builders.derive_tnd(f or read_formula("(ex x (in x a))")),
        "lifting": lambda: builders.derive_lifting(f or read_formula("(ex x (in x a))"), lvl),
        "eps_ind": lambda: builders.derive_eps_ind(f or read_formula("(bex y x (in y a))"), args.var),
        "empty": builders.derive_empty,
        "empty_set": builders.derive_empty_set,
        "omega": builders.derive_omega,
        "infinity": lambda: builders.derive_infinity_eq(a, lvl),
        "pair": lambda: builders.derive_pair(a, lvl, b, lvl),
        "union": lambda: builders.derive_union(a, lvl),
        "sep": lambda: builders.derive_sep(a, lvl, args.var, f or read_formula("(in x b)")),
        "ca": lambda: builders.derive_ca(f or read_formula("(rel Y x)"), args.var, args.rel),
        "s0_ref": lambda: builders.derive_s0_ref(f or read_formula("(ex x (in x a))"), context),
    }
    return table[args.name]()


def _run_rs(args: argparse.Namespace) -> int:
    if args.op == "builders":
        settings = Settings.from_env(seed=args.seed, depth=args.depth, samples=args.samples)
        result = _certificate_dict(_builder(args), settings)
        _emit(result)
        return 0 if result["check"]["ok"] else 1
    settings = Settings.from_env(seed=args.seed, depth=args.depth, samples=args.samples, sigma=args.sigma)
    report = pipeline(
        ProofFileLoader(args.file).load(),
        sigma=_ordinal(settings.sigma),
        depth=settings.depth,
        samples=settings.samples,
        seed=settings.seed,
        tower_max=settings.tower_max,
    )
    _emit(report.to_dict())
    return 0 if report.check.ok else 1


# tree


def _run_tree(args: argparse.Namespace) -> int:
    settings = Settings.from_env()
    limit = settings.materialize_max
    if args.op == "suitable":
        try:
            tree = read_tree(args.trees[0])
        except NotSuitable as e:
            log.info("not suitable: %s", e)
            _emit(False)
            return 0
        _emit(is_suitable(tree))
    elif args.op in ("eq", "mem"):
        s, t = (read_tree(x) for x in args.trees)
        _emit(eq_star(s, t, limit) if args.op == "eq" else mem_star(s, t, limit))
    elif args.op == "alpha":
        tree, alpha = read_tree(args.trees[0]), _ordinal(args.trees[1])
        ranking = alpha_tree(tree, alpha, method=args.method, limit=limit)
        _emit(
            {
                "alphaTree": ranking is not None,
                "root": render(ranking.root) if ranking is not None else None,
                "ranking": ranking.to_dict() if ranking is not None else {},
            }
        )
    else:
        family, alpha, l0 = read_family(args.trees[0])
        merged, ranking = merge_family(family, alpha, l0, limit=limit)
        _emit(
            {
                "nodes": len(merged.nodes),
                "root": render(ranking.root),
                "ranking": ranking.to_dict(),
            }
        )
    return 0


_TREE_ARITY = {"eq": 2, "mem": 2, "alpha": 2, "merge": 1, "suitable": 1}


# eval and selftest


def _run_eval(args: argparse.Namespace) -> int:
    settings = Settings.from_env(tree_size_max=args.budget)
    assign = read_assignment(args.assign) if args.assign else {}
    _emit(eval_truth(read_formula(args.formula), assign, Budget.from_settings(settings)).value)
    return 0


def _run_selftest(args: argparse.Namespace) -> int:
    settings = Settings.from_env(seed=args.seed)
    results = run_suites(quick=args.quick, seed=settings.seed, only=args.only)
    ok = all(r.ok for r in results)
    _emit({"ok": ok, "suites": [r.to_dict() for r in results]})
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bhw", description="Ordinal analysis workbench for KPl + Pi11-CA*")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ord", help="ordinal notation calculator")
    p.add_argument("op", choices=sorted(_ORD_ARITY))
    p.add_argument("terms", nargs="+", help="ordinal terms")
    p.set_defaults(run=_run_ord)

    p = sub.add_parser("fml", help="formula measures and transformations")
    p.add_argument("op", choices=["rank", "level", "len", "class", "neg", "bound", "relativize"])
    p.add_argument("formula")
    p.add_argument("arg", nargs="?", help="ordinal for bound, set term for relativize")
    p.set_defaults(run=_run_fml)

    p = sub.add_parser("proof", help="Tait proof checker")
    p.add_argument("op", choices=["check"])
    p.add_argument("file")
    p.set_defaults(run=_run_proof)

    p = sub.add_parser("rs", help="RS* certificates")
    rs = p.add_subparsers(dest="op", required=True)
    q = rs.add_parser("pipeline", help="embed, eliminate cuts, collapse and check a proof")
    q.add_argument("file")
    q.add_argument("--sigma", default=None, help="collapsing parameter (default 0)")
    q.add_argument("--samples", type=int, default=None)
    q.add_argument("--depth", type=int, default=None)
    q.add_argument("--seed", type=int, default=None)
    q.set_defaults(run=_run_rs)
    q = rs.add_parser("builders", help="build and check one of the derivation builders")
    q.add_argument("name", choices=sorted(builders.BUILDERS))
    q.add_argument("--formula", default=None)
    q.add_argument("--term", default="a")
    q.add_argument("--term2", default="b")
    q.add_argument("--var", default="x")
    q.add_argument("--rel", default="Y")
    q.add_argument("--level", default="1")
    q.add_argument("--samples", type=int, default=None)
    q.add_argument("--depth", type=int, default=None)
    q.add_argument("--seed", type=int, default=None)
    q.set_defaults(run=_run_rs)

    p = sub.add_parser("tree", help="tree sets, bisimulation and alpha-trees")
    p.add_argument("op", choices=sorted(_TREE_ARITY))
    p.add_argument("trees", nargs="+", help="tree literals or files (alpha takes a tree and an ordinal)")
    p.add_argument("--method", choices=["height", "stages"], default="height")
    p.set_defaults(run=_run_tree)

    p = sub.add_parser("eval", help="truth of a class B formula in the tree model")
    p.add_argument("formula")
    p.add_argument("--assign", default=None, help="JSON file mapping names to trees")
    p.add_argument("--budget", type=int, default=None, help="largest candidate tree")
    p.set_defaults(run=_run_eval)

    p = sub.add_parser("selftest", help="run the property suites")
    p.add_argument("--quick", action="store_true", help="reduced budgets")
    p.add_argument("--only", nargs="+", choices=SUITES, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(run=_run_selftest)
    return parser


def _check_arity(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    arity = {"ord": _ORD_ARITY, "tree": _TREE_ARITY}.get(args.command)
    if arity is not None:
        given = args.terms if args.command == "ord" else args.trees
        if len(given) != arity[args.op]:
            parser.error(f"{args.command} {args.op} takes {arity[args.op]} argument(s), got {len(given)}")
    if args.command == "fml" and args.op in ("bound", "relativize") and args.arg is None:
        parser.error(f"fml {args.op} needs a second argument")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _check_arity(parser, args)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(
        level=_LOG_LEVELS[min(args.verbose, 2)],
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.run(args)
    except BHWError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    except (ValueError, argparse.ArgumentTypeError) as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
