"""Corpus-wide checks of the gradient-point and associated-form theorems.

Each item is processed independently and yields a plain dict; violations are
collected as strings rather than raised so a run always completes.
"""
from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .corpus import CorpusItem, CorpusSpec, generate
from .errors import DegenerateGradient, GitMilnorError
from .linalg import hm_weight, span_of_multiples
from .milnor import apolar_dual_form, gradient_point, socle_degree, socle_monomial_report
from .oneps import sorted_onepss
from .polycore import format_poly, linear_substitution
from .report import encode
from .stability import (
    SearchConfig,
    binary_oracle,
    boundary_analysis,
    candidate_frames,
    disjoint_decomposition,
    form_state,
    gradient_torus_verdict,
    random_frames,
    torus_verdict,
    transfer_form_to_grad,
    transfer_grad_to_form,
)


@dataclass(frozen=True)
class HarnessConfig:
    search: SearchConfig = SearchConfig()
    lambda_bound: int = 6


def _transform(F, M):
    return F if all(M[i][j] == int(i == j) for i in range(F.n) for j in range(F.n)) else linear_substitution(F, M)


def _backward(G, lam, where, out):
    try:
        cert = transfer_grad_to_form(G, lam)
    except (AssertionError, GitMilnorError) as exc:
        out["violations"].append(f"{where}: backward transfer failed for {lam}: {exc}")
        return
    if cert.mode == "aligned" and cert.min_value <= 0:
        out["violations"].append(f"{where}: functional not positive for {lam}")
    elif not cert.destabilizer.certifies(G):
        out["violations"].append(f"{where}: emitted 1-PS does not destabilize the form")
    else:
        out["backward"] += 1


def check_gradient_item(item: CorpusItem, cfg: HarnessConfig) -> dict:
    """Both transfer directions in every searched frame, plus family checks."""
    F = item.form
    out = {"index": item.index, "form": format_poly(F), "forward": 0, "backward": 0,
           "degenerate": 0, "form_unstable_frames": 0, "gradient_unstable_frames": 0,
           "violations": []}
    grad_found = False
    for k, M in enumerate(candidate_frames(F, cfg.search)):
        where = f"frame {k}"
        G = _transform(F, M)
        v = torus_verdict(form_state(G))
        lam = v.certificate.oneps if v.status == "unstable" else None
        if lam is not None:
            out["form_unstable_frames"] += 1
            try:
                transfer_form_to_grad(G, lam)
                out["forward"] += 1
            except DegenerateGradient as exc:
                out["degenerate"] += 1
                if not exc.certificate.certifies(G):
                    out["violations"].append(f"{where}: degenerate-gradient certificate fails")
            except (AssertionError, GitMilnorError) as exc:
                out["violations"].append(f"{where}: forward transfer failed for {lam}: {exc}")
            _backward(G, lam, where, out)
        try:
            W = gradient_point(G)
        except DegenerateGradient:
            grad_found = True
            continue
        mu = gradient_torus_verdict(W, cfg.search, item.degree)
        if mu is None:
            if lam is not None:
                out["violations"].append(f"{where}: form unstable via {lam} but gradient torus-semistable")
            continue
        grad_found = True
        out["gradient_unstable_frames"] += 1
        _backward(G, mu, where, out)
    if item.n == 2:
        status = binary_oracle(F).status
        out["binary_status"] = status
        if (status == "unstable") != grad_found:
            out["violations"].append(f"binary oracle says {status} but gradient destabilizer found: {grad_found}")
    if item.family == "disjoint-sums":
        _check_disjoint(F, out)
    if item.family == "fermat":
        _check_fermat_gradient(F, cfg.lambda_bound, out)
    return out


def _check_disjoint(F, out):
    dec = disjoint_decomposition(F)
    if not dec.nontrivial:
        out["violations"].append("disjoint sum not detected as decomposable")
        return
    W = gradient_point(F)
    for lam in (dec.fixing, -dec.fixing):
        if hm_weight(W, lam) != 0:
            out["violations"].append(f"decomposition 1-PS {lam} has nonzero gradient weight")
    rep = boundary_analysis(F, dec.fixing)
    rest = tuple(sorted(i for b in dec.blocks[1:] for i in b))
    if not rep.functional_is_zero or rep.blocks != (dec.blocks[0], rest):
        out["violations"].append("boundary analysis does not recover the decomposition")
    out["decomposition"] = [list(b) for b in dec.blocks]


def _check_fermat_gradient(F, bound, out):
    W = gradient_point(F)
    bad = [lam for lam in sorted_onepss(F.n, bound, include_trivial=False) if hm_weight(W, lam) != 0]
    if bad:
        out["violations"].append(f"Fermat gradient weight nonzero for {bad[0]}")


def check_assoc_item(item: CorpusItem, cfg: HarnessConfig) -> dict:
    """Socle-monomial dominance for every sorted 1-PS, in the given and random
    frames, and torus semistability of the associated form in each frame."""
    gens = item.generator_list()
    n = item.n
    nu = socle_degree(n, item.degree - 1)
    lams = list(sorted_onepss(n, cfg.lambda_bound, include_trivial=False))
    out = {"index": item.index, "generators": [format_poly(g) for g in gens],
           "lambdas": len(lams), "frames": 0, "checks": 0, "m0": None, "violations": []}
    m0s = set()
    for k, M in enumerate(random_frames(n, cfg.search)):
        frame_gens = [_transform(g, M) for g in gens]
        piece = span_of_multiples(frame_gens, nu)
        if piece.codim != 1:
            out["violations"].append(f"frame {k}: socle piece has codimension {piece.codim}")
            continue
        out["frames"] += 1
        A = apolar_dual_form(piece)
        if torus_verdict(form_state(A)).status == "unstable":
            out["violations"].append(f"frame {k}: associated form torus-unstable")
        for lam in lams:
            rep = socle_monomial_report(frame_gens, lam, piece)
            out["checks"] += 1
            if k == 0:
                m0s.add(rep.m0)
            if not rep.dominates:
                out["violations"].append(f"frame {k}: m0 = {rep.m0} not dominating under {lam}")
    out["m0"] = [list(m) for m in sorted(m0s)]
    return out


def _run(args):
    kind, item, cfg = args
    return (check_gradient_item if kind == "gradient" else check_assoc_item)(item, cfg)


def threads() -> int:
    try:
        return max(1, int(os.environ.get("GITMILNOR_THREADS", "1")))
    except ValueError:
        return 1


def run_harness(kind: str, spec: CorpusSpec, cfg: HarnessConfig = HarnessConfig(), items=None) -> dict:
    """Run a theorem check over a corpus; results are sorted by item index."""
    if kind not in ("gradient", "assoc"):
        raise ValueError(kind)
    items = generate(spec) if items is None else items
    jobs = [(kind, it, cfg) for it in items]
    t0 = time.perf_counter()
    workers = min(threads(), max(1, len(jobs)))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run, jobs, chunksize=8))
    else:
        results = [_run(j) for j in jobs]
    results.sort(key=lambda r: r["index"])
    violations = [f"item {r['index']}: {v}" for r in results for v in r["violations"]]
    summary = {"items": len(results), "violations": len(violations)}
    for key in ("forward", "backward", "degenerate", "checks", "frames"):
        if any(key in r for r in results):
            summary[key] = sum(r.get(key, 0) for r in results)
    return {
        "operation": f"verify-{kind}-theorem",
        "corpus": encode(spec),
        "config": {"seed": cfg.search.seed, "frames": cfg.search.frame_budget,
                   "entry_bound": cfg.search.entry_bound, "lambda_bound": cfg.lambda_bound,
                   "strategy": cfg.search.strategy},
        "summary": summary,
        "violations": violations,
        "reproduce": None if not violations else {"seed": spec.seed, "family": spec.family,
                                                  "items": sorted({r["index"] for r in results if r["violations"]})},
        "items": results,
        "timing": {"seconds": round(time.perf_counter() - t0, 3)},
    }
