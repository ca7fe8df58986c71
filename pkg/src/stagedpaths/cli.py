"""Command-line interface.

Commands: validate, principal, strength, multiplicity, hausdorff, examples.
Exit codes: 0 success, 1 analysis refusal (e.g. non-principal graph where a
certificate was required), 2 input error (syntax/resolution/bounds).
"""

import argparse
import sys
from importlib import resources

from . import analysis, dsl, fixtures, report
from .analysis import INF
from .errors import AnalysisRefused, InputError
from .graph import is_principal
from .groupoid import Budget
from .report import edge_text, path_text


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _parse_window(text):
    try:
        a, b = text.split("..")
        return int(a), int(b)
    except ValueError as exc:
        raise InputError(f"window must look like A..B, got {text!r}") from exc


def _budget(args):
    return Budget(periods=args.budget_periods, length=args.budget_length)


def _document(args):
    return dsl.parse_document(_read(args.file))


def _pick(mapping, name, what):
    if name not in mapping:
        raise InputError(
            f"no {what} named {name!r}; available: {sorted(mapping)}")
    return mapping[name]


def _fmt(v):
    return "infinity" if v is INF else str(v)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_validate(args):
    from .graph import validate_graph
    status = 0
    for path in args.files:
        try:
            doc = dsl.parse_document(_read(path))
            problems = validate_graph(doc.graph)
            if problems:
                status = 2
                for p in problems:
                    print(f"{path}: {p}", file=sys.stderr)
            else:
                print(f"{path}: ok ({doc.graph.name}, period "
                      f"{doc.graph.period}, {len(doc.paths)} paths, "
                      f"{len(doc.families)} families)")
        except InputError as exc:
            status = 2
            print(f"{path}: {exc}", file=sys.stderr)
    return status


def cmd_principal(args):
    doc = _document(args)
    rep = is_principal(doc.graph)
    if args.json:
        out = {"graph": doc.graph.name, "principal": rep.principal,
               "cycle": [edge_text(e) for e in rep.certificate]}
        sys.stdout.write(report.to_json(out))
    elif rep.principal:
        print(f"{doc.graph.name}: principal")
    else:
        cyc = ", ".join(edge_text(e) for e in rep.certificate)
        print(f"{doc.graph.name}: not principal, cycle: [{cyc}]")
    return 0


def _strength_payload(doc, family_name, limit_name, M, window, budget):
    g = doc.graph
    F = _pick(doc.families, family_name, "family")
    z = _pick(doc.paths, limit_name, "path")
    profile = analysis.measure_profile(g, F, z, M, window, budget)
    low = analysis.lower_strength(g, F, z, M, window, budget, profile=profile)
    up = analysis.upper_strength(g, F, z, M, window, budget, profile=profile)
    mb = analysis.multiplicity_bounds(g, F, z, M, window, budget)
    witnesses = ()
    if low.k_certified is not INF and low.k_certified >= 1:
        try:
            witnesses = analysis.construct_witnesses(
                g, F, z, low.k_certified, M, window, budget)
        except AnalysisRefused:
            witnesses = ()
    audit_k = 1 if low.k_certified is INF else max(low.k_certified, 1)
    audit = analysis.consistency_audit(g, F, z, audit_k, M, window, budget)
    return g, F, z, profile, low, up, mb, witnesses, audit


def _print_strength_text(g, F, z, profile, low, up, mb, witnesses, audit):
    lo, hi = profile.window
    print(f"graph {g.name}, family {F.name}, limit: {path_text(z)}")
    print(f"ladder depth M={profile.ladder_depth}, window n={lo}..{hi}")
    for r in profile.rows:
        counts = " ".join(_fmt(c) for c in r.counts)
        extra = f" (from n={r.threshold})" if r.threshold is not None else ""
        print(f"  m={r.m}: lambda_z={r.lambda_z} counts=[{counts}] "
              f"liminf={_fmt(r.liminf)} limsup={_fmt(r.limsup)} "
              f"{r.stabilization}{extra}")
    print(f"k_lower = {_fmt(low.k_certified)}  "
          f"[liminf criterion item (5), depths m=1..{profile.ladder_depth}, "
          f"{low.status}]")
    print(f"k_upper = {_fmt(up.k_certified)}  "
          f"[limsup criterion item (5), subsequence: {up.subsequence_text}]")
    print(f"M_L in [{_fmt(mb.ml_lower)}, {_fmt(mb.ml_upper)}]"
          + (" (pinched)" if mb.ml_pinched else ""))
    print(f"M_U in [{_fmt(mb.mu_lower)}, {_fmt(mb.mu_upper)}]"
          + (" (pinched)" if mb.mu_pinched else ""))
    for w in witnesses:
        for rho, (items, tail) in enumerate(w.descriptors):
            dev = ", ".join(f"{it[0]} {it[1]} at n-{it[2]}" for it in items)
            where = f" [n ≡ {rho} (mod {profile.period})]" \
                if len(w.descriptors) > 1 else ""
            print(f"witness {w.index}: deviation [{dev}], ray {tail[1]} at "
                  f"stage n-{tail[2]}{where}")
    routes = audit["routes"]
    verdict = "agree" if audit["agreement"] else "DISAGREE"
    print(f"audit k={audit['k']}: witness={routes['witness']} "
          f"liminf={routes['liminf']} ratio={routes['ratio']} -> {verdict}")


def _report_doc(g, F, z, profile, low, up, mb, witnesses, audit):
    return report.analysis_report(
        g, F.name, z, profile, low.k_certified, up.k_certified,
        (mb.ml_lower, mb.ml_upper), (mb.mu_lower, mb.mu_upper),
        witnesses, {"routes": audit["routes"], "agreement": audit["agreement"]})


def cmd_strength(args):
    payload = _strength_payload(_document(args), args.family, args.limit,
                                args.ladder, _parse_window(args.window),
                                _budget(args))
    if args.json:
        sys.stdout.write(report.to_json(_report_doc(*payload)))
    else:
        _print_strength_text(*payload)
    return 0


def cmd_multiplicity(args):
    doc = _document(args)
    g = doc.graph
    F = _pick(doc.families, args.family, "family")
    z = _pick(doc.paths, args.limit, "path")
    window = _parse_window(args.window)
    budget = _budget(args)
    mb = analysis.multiplicity_bounds(g, F, z, args.ladder, window, budget)
    probe = analysis.infinite_multiplicity_probe(g, F, z, args.ladder, window,
                                                budget)
    if args.json:
        out = {
            "graph": g.name,
            "family": F.name,
            "limit": path_text(z),
            "ml": [report.encode_number(mb.ml_lower),
                   report.encode_number(mb.ml_upper)],
            "mu": [report.encode_number(mb.mu_lower),
                   report.encode_number(mb.mu_upper)],
            "status": mb.status,
            "evidence": list(mb.evidence),
            "probe": probe["verdict"],
        }
        sys.stdout.write(report.to_json(out))
    else:
        print(f"graph {g.name}, family {F.name}, limit: {path_text(z)}")
        print(f"M_L in [{_fmt(mb.ml_lower)}, {_fmt(mb.ml_upper)}]"
              + (" (pinched)" if mb.ml_pinched else ""))
        print(f"M_U in [{_fmt(mb.mu_lower)}, {_fmt(mb.mu_upper)}]"
              + (" (pinched)" if mb.mu_pinched else ""))
        for line in mb.evidence:
            print(f"  {line}")
        print(f"infinite-multiplicity probe: {probe['verdict']}"
              + (f" (bound {_fmt(probe['bound'])})" if "bound" in probe else ""))
    return 0


def cmd_hausdorff(args):
    doc = _document(args)
    g = doc.graph
    F = _pick(doc.families, args.family, "family")
    names = args.limits.split(",")
    limits = [_pick(doc.paths, nm.strip(), "path") for nm in names]
    window = _parse_window(args.window)
    probe = analysis.hausdorff_probe(g, F, limits, args.ladder, window,
                                     _budget(args))
    per = [{"limit": nm.strip(), "k": report.encode_number(d["k"]),
            "status": d["status"]}
           for nm, d in zip(names, probe["per_limit"])]
    out = {"graph": g.name, "family": F.name, "limits": per,
           "non_hausdorff": probe["non_hausdorff"],
           "violating_pairs": [list(pair) for pair in probe["violating_pairs"]]}
    if args.json:
        sys.stdout.write(report.to_json(out))
    else:
        print(f"graph {g.name}, family {F.name}")
        for d in per:
            print(f"  limit {d['limit']}: k={_fmt(d['k'])} ({d['status']})")
        if out["non_hausdorff"]:
            pairs = ", ".join(
                f"({names[i].strip()}, {names[j].strip()})"
                for i, j in probe["violating_pairs"])
            print(f"non-Hausdorff orbit space: certified convergence to "
                  f"non-equivalent limits {pairs}")
        else:
            print("no Hausdorff violation detected among the supplied limits")
    return 0


# ---------------------------------------------------------------------------
# Bundled example corpus with golden reports
# ---------------------------------------------------------------------------

def build_fixture_report(name, M=5, window=(1, 12), budget=None):
    doc = fixtures.load(name)
    g = doc.graph
    if name == "loop1":
        rep = is_principal(g)
        return {"graph": g.name, "principal": rep.principal,
                "cycle": [edge_text(e) for e in rep.certificate]}
    if name == "fork":
        F = doc.families["xs"]
        per_limit = []
        for nm in ("x", "y"):
            payload = _payload_for(doc, "xs", nm, M, window, budget)
            per_limit.append(_report_doc(*payload))
        probe = analysis.hausdorff_probe(
            g, F, [doc.paths["x"], doc.paths["y"]], M, window, budget)
        return {"graph": g.name, "family": F.name,
                "limits": ["x", "y"],
                "per_limit": per_limit,
                "non_hausdorff": probe["non_hausdorff"]}
    payload = _payload_for(doc, "xs", "z", M, window, budget)
    out = _report_doc(*payload)
    probe = analysis.infinite_multiplicity_probe(
        g, doc.families["xs"], doc.paths["z"], M, window, budget)
    out["probe"] = probe["verdict"]
    return out


def _payload_for(doc, family_name, limit_name, M, window, budget):
    return _strength_payload(doc, family_name, limit_name, M, window,
                             budget or Budget())


def _golden_text(name):
    return resources.files("stagedpaths.golden").joinpath(f"{name}.json") \
        .read_text(encoding="utf-8")


def cmd_examples(args):
    results = {}
    failures = []
    for name in fixtures.FIXTURE_NAMES:
        got = report.to_json(build_fixture_report(name))
        results[name] = got
        if args.update_golden:
            continue
        try:
            want = _golden_text(name)
        except FileNotFoundError:
            failures.append(f"{name}: golden file missing")
            continue
        if got != want:
            failures.append(f"{name}: report differs from golden")
    if args.update_golden:
        import pathlib
        golden_dir = pathlib.Path(__file__).parent / "golden"
        golden_dir.mkdir(exist_ok=True)
        for name, got in results.items():
            (golden_dir / f"{name}.json").write_text(got, encoding="utf-8")
        print(f"wrote {len(results)} golden reports to {golden_dir}")
        return 0
    if args.json:
        out = {"fixtures": list(fixtures.FIXTURE_NAMES),
               "passed": [n for n in results if not any(n in f for f in failures)],
               "failures": failures}
        sys.stdout.write(report.to_json(out))
    else:
        for name in fixtures.FIXTURE_NAMES:
            status = "ok" if not any(f.startswith(name + ":") for f in failures) \
                else "FAIL"
            print(f"{name}: {status}")
        for f in failures:
            print(f, file=sys.stderr)
    return 1 if failures else 0


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def _add_common(sub):
    sub.add_argument("--ladder", type=int, default=5, metavar="M")
    sub.add_argument("--window", default="1..12", metavar="A..B")
    sub.add_argument("--budget-periods", type=int, default=3)
    sub.add_argument("--budget-length", type=int, default=64)
    sub.add_argument("--json", action="store_true")
    sub.add_argument("--seed", type=int, default=0)


def build_parser():
    ap = argparse.ArgumentParser(
        prog="stagedpaths",
        description="Path-groupoid convergence and multiplicity certificates "
                    "for staged graphs with rays.")
    subs = ap.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("validate", help="parse and validate graph files")
    sp.add_argument("files", nargs="+")
    sp.set_defaults(fn=cmd_validate)

    sp = subs.add_parser("principal", help="cycle/principality report")
    sp.add_argument("file")
    _add_common(sp)
    sp.set_defaults(fn=cmd_principal)

    sp = subs.add_parser("strength", help="certify k-times convergence")
    sp.add_argument("file")
    sp.add_argument("--family", required=True)
    sp.add_argument("--limit", required=True)
    _add_common(sp)
    sp.set_defaults(fn=cmd_strength)

    sp = subs.add_parser("multiplicity", help="certify M_L/M_U bounds")
    sp.add_argument("file")
    sp.add_argument("--family", required=True)
    sp.add_argument("--limit", required=True)
    _add_common(sp)
    sp.set_defaults(fn=cmd_multiplicity)

    sp = subs.add_parser("hausdorff", help="multi-limit convergence probe")
    sp.add_argument("file")
    sp.add_argument("--family", required=True)
    sp.add_argument("--limits", required=True, metavar="NAME,NAME,...")
    _add_common(sp)
    sp.set_defaults(fn=cmd_hausdorff)

    sp = subs.add_parser("examples", help="run the bundled corpus against "
                                          "golden reports")
    _add_common(sp)
    sp.add_argument("--update-golden", action="store_true",
                    help=argparse.SUPPRESS)
    sp.set_defaults(fn=cmd_examples)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AnalysisRefused as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
