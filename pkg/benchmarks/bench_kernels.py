"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Each kernel runs on the same inputs under both backends; results are
compared before timings are reported.
"""
import argparse
import statistics
import time

from loctool import catalog as cat
from loctool.fus import _max_subgroup_table, conj_map
from loctool.grp import perm_from_cycles, perm_group
from loctool.kernels import backends
from loctool.ploc import _transitions, conj_maps


def _closure_case():
    G = perm_group([perm_from_cycles([(1, 2, 3, 4, 5, 6, 7)], 7),
                    perm_from_cycles([(2, 3), (4, 7)], 7)], 7)
    gens = [[g] for g in range(1, G.n, 7)]
    return lambda k: [k.closure(k.native(G.rows), g) for g in gens]


def _morphism_case():
    L = cat.get("S4xS3:A4*S3").materialize().L
    S = L.Sgroup
    seeds = [conj_map(S, s, S.full) for s in range(S.n)] + sorted(set(conj_maps(L)))
    maxsubs = _max_subgroup_table(S)
    return lambda k: k.close_morphisms(seeds, maxsubs, 10 ** 7)


def _scan_case():
    L = cat.get("S4|all").materialize()
    subs = L.subgroups_S
    trans = _transitions(L, subs)
    idx = {P: i for i, P in enumerate(subs)}
    indelta = [P in L.Delta for P in subs]
    leq = [[1 if a & ~b == 0 else 0 for b in subs] for a in subs]
    sfstate = [idx[L.Sf(f)] for f in range(L.n)]
    start = idx[L.Sgroup.full]

    def run(k):
        return k.scan_words(k.native(L.prod), L.inv, L.unit, k.native(trans), indelta, leq,
                            sfstate, start, 4, 1 << 62)
    return run


CASES = [("subgroup closure (PSL(2,7))", _closure_case),
         ("morphism closure (S4xS3 locality)", _morphism_case),
         ("word scan depth 4 (S4, all objects)", _scan_case)]


def _normalize(x):
    if isinstance(x, dict):
        return {k: frozenset(v) for k, v in x.items()}
    return x


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    impls = backends()
    if "cython" not in impls:
        print("compiled extension not built; only the Python backend is available")
    print(f"{'kernel':<40}" + "".join(f"{n:>12}" for n in impls) + "   speedup")
    for title, make in CASES:
        fn = make()
        times, results = {}, {}
        for name, k in impls.items():
            runs = []
            for _ in range(args.repeat):
                t = time.perf_counter()
                results[name] = fn(k)
                runs.append(time.perf_counter() - t)
            times[name] = statistics.median(runs)
        vals = list(results.values())
        if any(_normalize(v) != _normalize(vals[0]) for v in vals[1:]):
            raise SystemExit(f"backends disagree on {title}")
        speed = times["python"] / times["cython"] if "cython" in times else float("nan")
        print(f"{title:<40}" + "".join(f"{times[n]:>11.4f}s" for n in impls) + f"   {speed:6.1f}x")


if __name__ == "__main__":
    main()
