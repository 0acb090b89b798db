"""loctool: catalog listing, single checks and the acceptance suite."""
import argparse
import json
import os
import sys

from . import acceptance
from . import catalog as cat
from .config import CapExceeded, parse_caps, set_caps
from .fus import (
    FusionError, cr_agrees_with_classical, cr_inclusions, cr_set, critical_set, classical_cr_set,
    is_saturated, saturation_by_criterion, saturation_report,
)
from .grp import GroupError, is_prime, sylow
from .kern import (
    KernelError, KernelTriple, frattini_report, linking_kernel_quotient, product_nh,
    product_report, quotient_report, theorem_b_report, theorem_c_report,
)
from .ploc import LocalityError, fusion_of_locality, validate_locality
from .report import FAIL, NA, PASS, Report, exit_code

EXIT_INPUT = 3

CHECKS = ("validate-locality", "saturation", "classify-cr", "theorem-a", "theorem-b",
          "theorem-c", "theta-quotient", "product-nh", "frattini", "quotient-iso")

# instance kinds each check accepts
ACCEPTS = {
    "validate-locality": ("locality", "kernel-instance", "product-instance"),
    "saturation": ("fusion", "locality", "kernel-instance", "product-instance"),
    "classify-cr": ("fusion", "locality", "kernel-instance", "product-instance"),
    "theorem-a": ("kernel-instance", "product-instance"),
    "theorem-b": ("kernel-instance", "product-instance"),
    "theorem-c": ("kernel-instance", "product-instance"),
    "theta-quotient": ("kernel-instance", "product-instance"),
    "product-nh": ("product-instance",),
    "frattini": ("kernel-instance", "product-instance"),
    "quotient-iso": ("kernel-instance", "product-instance"),
}


class UsageError(Exception):
    pass


def _fusion_of(kind, obj):
    if kind == "fusion":
        return obj
    L = obj if kind == "locality" else obj.L
    return fusion_of_locality(L)


def _classify_cr(F):
    rep = Report("classify-cr")
    rep.add("crSet", True, _sets(F, cr_set(F)), required=False)
    rep.add("criticalSet", True, _sets(F, critical_set(F)), required=False)
    rep.add("classical set", True, _sets(F, classical_cr_set(F)), required=False)
    rep.add("classical within critical within crSet", cr_inclusions(F))
    if is_saturated(F):
        rep.merge(cr_agrees_with_classical(F))
    else:
        rep.add("saturated", False, "equalities need saturation", required=False)
    return rep.finish()


def _sets(F, fam):
    from .grp import members
    return sorted(members(P) for P in fam)


def run_check(inst, check, depth=None):
    """Dispatch one named check; raises UsageError on a kind mismatch."""
    if check not in CHECKS:
        raise UsageError(f"unknown check {check!r}; choose from {', '.join(CHECKS)}")
    if inst.kind not in ACCEPTS[check]:
        raise UsageError(f"check {check} does not apply to a {inst.kind} instance")
    obj = inst.materialize()
    if check == "validate-locality":
        L = obj if inst.kind == "locality" else obj.L
        return validate_locality(L, depth=depth)
    if check == "saturation":
        return saturation_report(_fusion_of(inst.kind, obj))
    if check == "classify-cr":
        return _classify_cr(_fusion_of(inst.kind, obj))
    L, N = obj.L, obj.N
    if check == "theorem-a":
        if inst.kind == "product-instance":
            pi, rep = product_nh(L, N, obj.H, obj.Tstar, obj.GammaN)
            if pi is None:
                return rep
            return saturation_by_criterion(pi.F0, pi.kernel.E, pi.locality.Delta)
        K = KernelTriple(L, N)
        return saturation_by_criterion(K.F, K.E, L.Delta)
    if check == "theorem-b":
        return theorem_b_report(L, N)
    if check == "theorem-c":
        return theorem_c_report(L, N)
    if check == "theta-quotient":
        return linking_kernel_quotient(L, N)[1]
    if check == "frattini":
        return frattini_report(L, N)
    if check == "quotient-iso":
        return quotient_report(L, N)
    return product_report(product_nh(L, N, obj.H, obj.Tstar, obj.GammaN))


def _with_prime(inst, p):
    """Re-derive a group-based instance at another prime."""
    if p is None:
        return inst
    if not is_prime(p):
        raise UsageError(f"--p {p} is not prime")
    pay = inst.payload
    cur = pay.get("p", pay.get("locality", {}).get("p"))
    if cur == p:
        return inst
    if inst.kind == "fusion" and "from_group" in pay:
        from .grp import build_group, members
        G = build_group(pay["from_group"]["G"])
        S = sylow(G, p)[0].mask
        new = {"p": p, "from_group": {"G": pay["from_group"]["G"], "S": members(S)}}
        return cat.Instance(inst.name, inst.kind, new, inst.notes, inst.provenance)
    raise UsageError(f"instance {inst.name} is fixed at p = {cur}")


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_catalog(args):
    kinds = cat.KINDS
    if args.kind:
        if args.kind not in kinds:
            raise UsageError(f"unknown kind {args.kind!r}; choose from {', '.join(kinds)}")
        kinds = (args.kind,)
    rows = [(n, i.kind, i.notes) for n, i in cat.catalog().items() if i.kind in kinds]
    if args.json:
        print(json.dumps([{"name": n, "kind": k, "notes": t} for n, k, t in rows], indent=2))
    else:
        w = max(len(n) for n, _, _ in rows)
        for n, k, t in rows:
            print(f"{n:<{w}}  {k:<17}  {t}")
    return 0


def _load_instance(ref):
    if os.path.exists(ref):
        return cat.load_file(ref)
    return cat.get(ref)


def cmd_check(args):
    inst = _with_prime(_load_instance(args.instance), args.p)
    rep = run_check(inst, args.run, depth=args.depth)
    _emit(rep.to_json(timing=not args.no_timing), args.out)
    return exit_code(rep)


def cmd_save(args):
    inst = _load_instance(args.instance)
    _emit(json.dumps(inst.to_json(), indent=2, sort_keys=True), args.out)
    return 0


def _select(filt):
    if not filt:
        return None
    picked = set()
    for part in filt.split(","):
        part = part.strip()
        if part.isdigit() and 1 <= int(part) <= len(acceptance.CRITERIA):
            picked.add(int(part))
        else:
            hits = [i for i, t in enumerate(acceptance.TITLES, 1) if part and part in t]
            if not hits:
                raise UsageError(f"no acceptance criterion matches {part!r}")
            picked.update(hits)
    return picked


def cmd_suite(args):
    select = _select(args.filter)
    results = []
    worst = 0
    for i, rep, secs in acceptance.run(select, on_error=True):
        results.append({"criterion": i, "title": acceptance.TITLES[i - 1], "verdict": rep.verdict,
                        "seconds": round(secs, 2), "budget_s": acceptance.BUDGET_S[i - 1],
                        "report": rep.to_dict(timing=False),
                        "error": getattr(rep, "error", None)})
    for r in results:
        line = (f"criterion {r['criterion']:>2}  {r['title']:<22} {r['verdict']:<5} "
                f"{r['seconds']:>7.2f}s  (budget {r['budget_s']} s)")
        if r["error"]:
            line += f"  {r['error']}"
        print(line)
    verdicts = [r["verdict"] for r in results]
    if "error" in verdicts:
        worst = EXIT_INPUT
    elif FAIL in verdicts:
        worst = 1
    elif NA in verdicts:
        worst = 2
    agg = {"criteria": results, "verdict": {0: PASS, 1: FAIL, 2: NA, 3: "error"}[worst]}
    if args.out:
        _emit(json.dumps(agg, indent=2), args.out)
    print(f"aggregate: {agg['verdict']}")
    return worst


def build_parser():
    ap = argparse.ArgumentParser(prog="loctool", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)
    c = sub.add_parser("catalog", help="list built-in instances")
    c.add_argument("--kind", help="only instances of this kind")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_catalog)
    k = sub.add_parser("check", help="run one check on an instance")
    k.add_argument("--instance", required=True, help="catalog name or path to an instance file")
    k.add_argument("--run", required=True, choices=CHECKS)
    k.add_argument("--p", type=int, help="prime (re-derives group-based fusion instances)")
    k.add_argument("--out", help="write the report here instead of stdout")
    k.add_argument("--depth", type=int, help="word length for validate-locality")
    k.add_argument("--no-timing", action="store_true", help="omit timing_ms for byte-stable output")
    k.set_defaults(func=cmd_check)
    s = sub.add_parser("save", help="write an instance in its canonical JSON form")
    s.add_argument("--instance", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_save)
    u = sub.add_parser("suite", help="run the acceptance criteria")
    u.add_argument("--filter", help="comma separated criterion numbers or name fragments")
    u.add_argument("--out", help="write the aggregate JSON here")
    u.set_defaults(func=cmd_suite)
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else 0
    try:
        set_caps(parse_caps(os.environ.get("LOCTOOL_CAPS", "")))
    except ValueError as e:
        print(f"loctool: {e}", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (UsageError, cat.InstanceError, GroupError, FusionError, LocalityError,
            KernelError, CapExceeded, OSError, json.JSONDecodeError) as e:
        print(f"loctool: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
