"""Command line: analyze, verify, search, corpus."""
from __future__ import annotations

import argparse
import os
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from noether_forge import __version__
from noether_forge.corpus import _minimal_generators, iter_gap_sets
from noether_forge.curve import CurveSpec, curve_invariants, local_value_semigroup
from noether_forge.errors import Inconclusive, InputError, NoetherForgeError
from noether_forge.koszul import ir_hat_record, ir_record, koszul_dimension, star_semigroup
from noether_forge.linear_systems import (
    clifford_classify,
    clifford_upper,
    curve_gonality_bounds,
    gonality_upper,
    is_hyperelliptic_like,
)
from noether_forge.noether import find_lemma_witness, max_noether_level, verify_theorem1
from noether_forge.semigroup import classify, from_gaps, validate
from noether_forge.serialize import (
    curve_from_doc,
    dumps,
    is_semigroup_doc,
    load_document,
    semigroup_from_doc,
    semigroup_to_doc,
    sheaves_from_doc,
)

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
THEOREMS = ("noether", "lemma", "quadrics", "gonality-bounds", "equivalences")


def threads() -> int:
    try:
        return max(1, int(os.environ.get("NOETHER_FORGE_THREADS", "1")))
    except ValueError:
        return 1


def curve_for_semigroup(S) -> CurveSpec:
    """The monomial curve whose point at t = 0 has value semigroup S (numerical S only)."""
    gaps = frozenset(S.gaps())
    gens = _minimal_generators(gaps, S.conductor[0]) if gaps else [1]
    return CurveSpec.monomial(gens)


def _semigroup_of(doc):
    if is_semigroup_doc(doc):
        return semigroup_from_doc(doc), None
    curve = curve_from_doc(doc)
    if not curve.singular_fibers:
        return None, curve
    if len(curve.singular_fibers) > 1:
        return None, curve
    return local_value_semigroup(curve), curve


def _require_numerical(S):
    if S is None or S.s != 1:
        raise InputError("this check needs a single unibranch singular point")
    return S


# ---------------------------------------------------------------- analyze


def analyze_doc(doc) -> dict:
    if is_semigroup_doc(doc):
        S = semigroup_from_doc(doc)
        out = {"semigroup": semigroup_to_doc(S), "axioms": validate(S).passed, "classification": classify(S).as_dict()}
        if S.s == 1:
            curve = curve_for_semigroup(S)
            out["curve"] = curve.to_dict()
            out["invariants"] = curve_invariants(curve).as_dict()
        return out
    curve = curve_from_doc(doc)
    inv = curve_invariants(curve)
    out = {"curve": curve.to_dict(), "invariants": inv.as_dict()}
    sems = []
    for fib in curve.singular_fibers:
        S = local_value_semigroup(curve, fib)
        sems.append({"semigroup": semigroup_to_doc(S), "axioms": validate(S).passed})
    out["points"] = sems
    if inv.genus > 0 and not inv.gorenstein:
        out["gonality_bounds"] = curve_gonality_bounds(curve).as_dict()
    return out


# ---------------------------------------------------------------- checks


def check_lemma(S) -> tuple:
    c = classify(S)
    if c.gorenstein:
        return True, None
    w = find_lemma_witness(S)
    return True, w.as_dict()


def check_noether(S, level: int = 2) -> tuple:
    c = classify(S)
    payload = {}
    ok = True
    if not c.gorenstein:
        good, cert = verify_theorem1(S)
        ok &= good
        payload["certificate"] = cert.as_dict()
    if S.s == 1 and c.delta >= 2 and _nonhyperelliptic(S):
        for n in range(1, level + 1):
            rep = max_noether_level(S, n)
            ok &= rep.surjective and rep.riemann_roch_ok
        payload["level"] = rep.as_dict()
    return bool(ok), payload


def _nonhyperelliptic(S) -> bool:
    return is_hyperelliptic_like(curve_for_semigroup(S)).reason != "hyperelliptic"


def check_quadrics(S, r: int = 2) -> tuple:
    c = classify(S)
    if c.gorenstein:
        return True, None
    hat = ir_hat_record(S, r)
    low = ir_record(S, r)
    star = star_semigroup(S)
    ok = hat.agrees and low.agrees and star.blowup_matches and star.closed_forms_match
    if r == 2:
        ok &= hat.closed_form == hat.formula_value and low.closed_form == low.formula_value
    return bool(ok), {"I_r_blowup": hat.as_dict(), "I_r": low.as_dict(), "star": star.as_dict()}


def check_gonality_bounds_curve(curve: CurveSpec) -> tuple:
    inv = curve_invariants(curve)
    gon = gonality_upper(curve)
    payload = {"gonality": gon.as_dict(), "genus": inv.genus}
    if inv.genus == 0:
        return gon.bound == 1, payload
    bounds = curve_gonality_bounds(curve)
    payload["bounds"] = bounds.as_dict()
    ok = gon.bound >= 2 or not gon.exact
    if not inv.gorenstein:
        ok &= gon.bound <= bounds.upper_general and gon.bound <= bounds.upper_refined
        if bounds.upper_rational_unibranch is not None:
            ok &= gon.bound <= bounds.upper_rational_unibranch
        if gon.exact and gon.bound == inv.genus:
            non_gor = [p for p in inv.points if not p.gorenstein]
            ok &= inv.eta == 1 and len(non_gor) == 1
    return bool(ok), payload


def check_gonality_bounds(S) -> tuple:
    return check_gonality_bounds_curve(curve_for_semigroup(S))


def check_equivalences_curve(curve: CurveSpec, S) -> tuple:
    inv = curve_invariants(curve)
    # in genus 2 the level-2 map is onto even for hyperelliptic curves
    if inv.genus < 3:
        return True, {"skipped": "genus below 3"}
    hyp = is_hyperelliptic_like(curve)
    gon = gonality_upper(curve)
    flags = {
        "nonhyperelliptic": hyp.reason != "hyperelliptic",
        "max_noether_levels_2_3": all(max_noether_level(S, n).surjective for n in (2, 3)),
        "K02_vanishes": koszul_dimension(curve, 0, 2).dim_Kpq == 0,
        "clifford_positive_or_rational_nearly_normal": gon.bound > 2 or inv.nearly_normal,
    }
    return len(set(flags.values())) == 1, flags


def check_equivalences(S) -> tuple:
    return check_equivalences_curve(curve_for_semigroup(S), S)


def _run_gaps(job):
    name, gaps, opt = job
    S = from_gaps(gaps)
    fn = {
        "lemma": check_lemma,
        "noether": lambda X: check_noether(X, opt),
        "quadrics": lambda X: check_quadrics(X, opt),
        "gonality-bounds": check_gonality_bounds,
        "equivalences": check_equivalences,
    }[name]
    ok, payload = fn(S)
    return ok, list(gaps), payload


def run_corpus(name: str, genus_max: int, opt: int) -> dict:
    jobs = [(name, tuple(g), opt) for g in iter_gap_sets(genus_max)]
    n = threads()
    if n > 1:
        with ProcessPoolExecutor(max_workers=n) as pool:
            results = list(pool.map(_run_gaps, jobs, chunksize=8))
    else:
        results = [_run_gaps(j) for j in jobs]
    failures = [(gaps, payload) for ok, gaps, payload in results if not ok]
    out = {"checked": len(results), "failures": len(failures)}
    if failures:
        # smallest genus first, then lexicographic gaps
        gaps, payload = min(failures, key=lambda f: (len(f[0]), f[0]))
        out["counterexample"] = {"gaps": gaps, "detail": payload}
    return out


def _parse_corpus(text: str) -> int:
    m = re.fullmatch(r"\s*genus\s*<=\s*(\d+)\s*", text)
    if not m:
        raise InputError(f"corpus selector {text!r} should look like 'genus<=8'")
    return int(m.group(1))


def verify(args) -> dict:
    opt = args.level if args.theorem == "noether" else args.r
    if args.corpus:
        res = run_corpus(args.theorem, _parse_corpus(args.corpus), opt)
        status = "pass" if res["failures"] == 0 else "fail"
        return {"target": args.theorem, "input": {"corpus": args.corpus}, "status": status, "witnesses": res}
    if not args.input:
        raise InputError("give an input document or --corpus")
    doc = load_document(args.input)
    S, curve = _semigroup_of(doc)
    if args.theorem == "lemma":
        if S is None:
            raise InputError("the lemma needs a singular point")
        ok, payload = check_lemma(S)
    elif args.theorem == "noether":
        if S is None:
            raise InputError("the noether check needs a singular point")
        ok, payload = check_noether(S, args.level)
    elif args.theorem == "quadrics":
        ok, payload = check_quadrics(_require_numerical(S), args.r)
    elif args.theorem == "gonality-bounds":
        ok, payload = check_gonality_bounds_curve(curve or curve_for_semigroup(_require_numerical(S)))
    else:
        S = _require_numerical(S)
        ok, payload = check_equivalences_curve(curve or curve_for_semigroup(S), S)
    return {"target": args.theorem, "input": doc, "status": "pass" if ok else "fail", "witnesses": payload}


# ----------------------------------------------------------------- search


def search(args) -> dict:
    doc = load_document(args.input)
    S, curve = _semigroup_of(doc)
    if curve is None:
        curve = curve_for_semigroup(_require_numerical(S))
    out = {"input": doc}
    sheaves = []
    if args.candidate_sheaf:
        sheaves = sheaves_from_doc(curve, load_document(args.candidate_sheaf))
    elif isinstance(doc, dict) and "candidate_sheaves" in doc:
        sheaves = sheaves_from_doc(curve, doc)
    if args.gonality:
        out["gonality"] = gonality_upper(curve, args.budget, sheaves).as_dict()
    if args.clifford:
        out["clifford"] = clifford_upper(curve, args.budget, sheaves).as_dict()
        try:
            out["clifford_classification"] = clifford_classify(curve, args.budget, sheaves).as_dict()
        except Inconclusive as exc:
            out["clifford_classification"] = {"clifford": None, "reason": str(exc)}
    if args.koszul:
        p, q = args.koszul
        out["koszul"] = koszul_dimension(curve, p, q).as_dict()
    if len(out) == 1:
        raise InputError("choose at least one of --gonality, --clifford, --koszul")
    return out


# ------------------------------------------------------------------ output


def _text(obj, indent: int = 0) -> list:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {dumps(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {dumps(v)}")
    else:
        lines.append(f"{pad}{dumps(obj)}")
    return lines


def emit(obj, fmt: str) -> None:
    if fmt == "json":
        print(dumps(obj))
    else:
        print("\n".join(_text(obj)))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="noether-forge", description=__doc__)
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--timing", action="store_true", help="add wall-clock seconds to the report")

    a = sub.add_parser("analyze", help="invariants of a curve or semigroup document")
    a.add_argument("input")
    common(a)

    v = sub.add_parser("verify", help="run a theorem check on an input or the corpus")
    v.add_argument("input", nargs="?")
    v.add_argument("--theorem", choices=THEOREMS, required=True)
    v.add_argument("--corpus", help="e.g. 'genus<=8'")
    v.add_argument("--level", type=int, default=2)
    v.add_argument("--r", type=int, default=2)
    common(v)

    s = sub.add_parser("search", help="gonality, Clifford and Koszul searches")
    s.add_argument("input")
    s.add_argument("--gonality", action="store_true")
    s.add_argument("--clifford", action="store_true")
    s.add_argument("--koszul", nargs=2, type=int, metavar=("P", "Q"))
    s.add_argument("--budget", type=int)
    s.add_argument("--candidate-sheaf")
    common(s)

    c = sub.add_parser("corpus", help="numerical semigroups of genus <= N")
    c.add_argument("--genus-max", type=int, required=True)
    c.add_argument("--branches", type=int, default=1)
    c.add_argument("--format", choices=("json", "text"), default="json")
    return ap


def corpus_cmd(args) -> int:
    if args.branches != 1:
        raise InputError("corpus enumeration is available for one branch only")
    count = 0
    for gaps in iter_gap_sets(args.genus_max):
        S = from_gaps(gaps)
        if args.format == "json":
            print(dumps(semigroup_to_doc(S)))
        else:
            gens = _minimal_generators(frozenset(gaps), S.conductor[0]) if gaps else [1]
            print(f"<{', '.join(map(str, gens))}>  genus {len(gaps)}")
        count += 1
    if args.format == "text":
        print(f"count: {count}")
    return EXIT_PASS


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "corpus":
            return corpus_cmd(args)
        start = time.perf_counter()
        if args.command == "analyze":
            report = analyze_doc(load_document(args.input))
            code = EXIT_PASS
        elif args.command == "verify":
            report = verify(args)
            code = EXIT_PASS if report["status"] == "pass" else EXIT_FAIL
        else:
            report = search(args)
            code = EXIT_PASS
        if args.timing:
            report["timing_s"] = round(time.perf_counter() - start, 3)
        emit(report, args.format)
        return code
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NoetherForgeError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
