"""Command-line front end: ``gitmilnor <command> ...``.

Exit status: 0 when a result was computed (including ``unknown`` verdicts),
1 when a theorem harness found violations, 2 on bad input.
"""
from __future__ import annotations

import argparse
import sys
import time

from .corpus import FAMILIES, CorpusSpec
from .errors import DegenerateGradient, GitMilnorError
from .harness import HarnessConfig, run_harness
from .linalg import pivot_set, reduce_under_order
from .milnor import (
    associated_form,
    gradient_point,
    hilbert_function,
    hilbert_point,
    is_regular_sequence,
    socle_degree,
    socle_monomial_report,
)
from .oneps import OnePS
from .polycore import Poly, format_poly, gradient, parse_poly
from .report import dumps, encode
from .stability import (
    SearchConfig,
    binary_oracle,
    disjoint_decomposition,
    find_destabilizer,
    find_gradient_destabilizer,
    form_state,
    torus_verdict,
)


def default_oneps(n: int) -> OnePS:
    """Evenly spaced ascending weights: (-1, 1), (-1, 0, 1), (-3, -1, 1, 3), ..."""
    return OnePS.from_rationals([2 * i - (n - 1) for i in range(n)])


def _int_list(text):
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _count(text):
    if text == "all":
        return None
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'all', got {text!r}") from None


def _form(args, homogeneous=True):
    if not args.form:
        raise GitMilnorError("--form is required")
    return parse_poly(args.form, args.n, homogeneous=homogeneous)


def _generators(args):
    if args.gens:
        texts = [t for t in args.gens.split(";") if t.strip()]
        if not texts:
            raise GitMilnorError("--gens is empty")
        n = args.n or max(parse_poly(t).n for t in texts)
        return [parse_poly(t, n, homogeneous=True) for t in texts], None
    F = _form(args)
    return gradient(F), F


def _oneps(args, n):
    if args.oneps is None:
        return default_oneps(n)
    lam = OnePS.parse(args.oneps)
    if lam.n != n:
        raise GitMilnorError(f"1-PS has {lam.n} entries for {n} variables")
    return lam


def _search(args):
    return SearchConfig(seed=args.seed, frame_budget=args.frames, entry_bound=args.entry_bound)


def cmd_gradient(args) -> dict:
    F = _form(args)
    lam = _oneps(args, F.n)
    echo = {"form": format_poly(F), "n": F.n, "degree": F.homogeneous_degree()}
    try:
        W = gradient_point(F)
    except DegenerateGradient as exc:
        return {"input": echo, "result": {"status": "degenerate", "rank": exc.rank,
                                          "message": str(exc)},
                "certificate": encode(exc.certificate)}
    pivots, basis = reduce_under_order(W, lam)
    return {"input": echo, "result": {
        "status": "ok", "partials": [format_poly(p) for p in gradient(F)],
        "rank": W.rank, "oneps": list(lam.weights),
        "reduced_basis": [format_poly(b) for b in basis],
        "pivots": [format_poly(Poly.monomial(a)) for a in pivots.monomials],
        "pluecker_weight": pivots.weight}}


def cmd_assoc(args) -> dict:
    gens, F = _generators(args)
    A = associated_form(form=F) if F is not None else associated_form(gens)
    echo = {"generators": [format_poly(g) for g in gens], "n": gens[0].n}
    if F is not None:
        echo["form"] = format_poly(F)
    return {"input": echo, "result": {"dual_form": format_poly(A.dual_form),
                                      "degree": A.degree, "normalization": A.normalization}}


def cmd_hilbert(args) -> dict:
    gens, F = _generators(args)
    n = gens[0].n
    lam = _oneps(args, n)
    d = gens[0].homogeneous_degree()
    reg = is_regular_sequence(gens) if len(gens) == n else None
    top = socle_degree(n, d) + 1
    m = args.m if args.m is not None else d
    hp = hilbert_point(gens, m, require_regular=False)
    piv = pivot_set(hp.ideal_piece, lam)
    result = {"m": m, "dim": hp.ideal_piece.rank, "codim": hp.codim,
              "oneps": list(lam.weights),
              "pivots": [format_poly(Poly.monomial(a)) for a in piv.monomials],
              "pluecker_weight": piv.weight,
              "hilbert_function": hilbert_function(gens, max(top, m)),
              "regular": None if reg is None else reg.regular}
    if reg and m == socle_degree(n, d) and lam.is_sorted:
        rep = socle_monomial_report(gens, lam, hp.ideal_piece)
        result["socle_monomial"] = {"m0": format_poly(Poly.monomial(rep.m0)), "dominates": rep.dominates}
    return {"input": {"generators": [format_poly(g) for g in gens], "n": n}, "result": result}


def cmd_stability(args) -> dict:
    F = _form(args)
    cfg = _search(args)
    torus = torus_verdict(form_state(F))
    form = find_destabilizer(F, cfg)
    grad = find_gradient_destabilizer(F, cfg)
    result = {"status": form.status, "torus": torus.status, "gradient_status": grad.status,
              "decomposition": [list(b) for b in disjoint_decomposition(F).blocks]}
    if F.n == 2:
        oracle = binary_oracle(F)
        result["binary_oracle"] = {"status": oracle.status, "max_multiplicity": oracle.max_multiplicity}
    return {"input": {"form": format_poly(F), "n": F.n, "degree": F.homogeneous_degree()},
            "result": result,
            "certificate": encode(form.certificate),
            "gradient_certificate": encode(grad.certificate),
            "torus_certificate": encode(torus.certificate)}


def _corpus(args):
    return CorpusSpec(args.family, args.n_values, args.degree_values, args.count, args.seed)


def cmd_verify(kind):
    def run(args):
        cfg = HarnessConfig(_search(args), args.lambda_bound)
        return run_harness(kind, _corpus(args), cfg)
    return run


def _text(report: dict) -> str:
    lines = [f"{report['operation']}"]
    for key in ("input", "result", "summary", "certificate"):
        val = report.get(key)
        if val is None:
            continue
        if isinstance(val, dict):
            for k, v in val.items():
                lines.append(f"  {key}.{k}: {v}")
        else:
            lines.append(f"  {key}: {val}")
    for v in report.get("violations", [])[:20]:
        lines.append(f"  violation: {v}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gitmilnor", description="Gradient points, associated forms and GIT stability.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, single=True):
        if single:
            sp.add_argument("--n", type=int, default=None, help="number of variables (default: inferred)")
            sp.add_argument("--lambda", dest="oneps", default=None, help="1-PS weights, e.g. -1,0,1")
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--budget", "--frames", dest="frames", type=int, default=20,
                        help="number of random coordinate frames to try")
        sp.add_argument("--entry-bound", type=int, default=3)
        return sp

    sp = common(sub.add_parser("gradient", help="gradient point and its initial monomials"))
    sp.add_argument("--form", required=True)
    sp.set_defaults(func=cmd_gradient)

    sp = common(sub.add_parser("assoc", help="associated form of a form or generator list"))
    sp.add_argument("--form")
    sp.add_argument("--gens", help="generators separated by ';'")
    sp.set_defaults(func=cmd_assoc)

    sp = common(sub.add_parser("hilbert", help="Hilbert point and Hilbert function"))
    sp.add_argument("--form")
    sp.add_argument("--gens")
    sp.add_argument("--m", type=int, default=None)
    sp.set_defaults(func=cmd_hilbert)

    sp = common(sub.add_parser("stability", help="destabilizer search for a form and its gradient point"))
    sp.add_argument("--form", required=True)
    sp.set_defaults(func=cmd_stability)

    for name, kind, fam in (("verify-gradient-theorem", "gradient", "random-smooth"),
                            ("verify-assoc-theorem", "assoc", "random-regular")):
        sp = common(sub.add_parser(name, help=f"check the {kind} theorem on a generated corpus"), single=False)
        sp.add_argument("--family", choices=FAMILIES, default=fam)
        sp.add_argument("--n", dest="n_values", type=_int_list, default=(2,), help="variable counts, e.g. 2,3")
        sp.add_argument("--degree", dest="degree_values", type=_int_list, default=(3,),
                        help="form degrees d+1, e.g. 3,4")
        sp.add_argument("--count", type=_count, default=10, help="items to generate, or 'all' for the whole catalog")
        sp.add_argument("--lambda-bound", type=int, default=6)
        sp.set_defaults(func=cmd_verify(kind))
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        report = args.func(args)
    except (GitMilnorError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report.setdefault("operation", args.command)
    report["seed"] = args.seed
    report.setdefault("timing", {"seconds": round(time.perf_counter() - t0, 3)})
    print(dumps(report) if args.format == "json" else _text(report))
    return 1 if report.get("violations") else 0


if __name__ == "__main__":
    sys.exit(main())
