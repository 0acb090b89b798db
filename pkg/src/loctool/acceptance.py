"""The ten acceptance criteria as reports over the built-in catalog."""
import time

from . import catalog as cat
from .fus import (
    classify, cr_agrees_with_classical, cr_inclusions, cr_set, critical_set, classical_cr_set,
    is_saturated, respects_saturation, saturation_by_criterion,
)
from .grp import members
from .kern import (
    KernelTriple, frattini_report, linking_kernel_quotient, product_nh, product_report,
    quotient_report, theorem_b_report, theorem_c_report,
)
from .ploc import Locality, validate_locality
from .report import Report

KERNELS = ["S4:A4", "C3xS4:C3xA4", "C3xS4:A4", "C2xS4:A4", "S4xS4:neg"]
PRODUCTS = ["S4:A4*<(13)>", "S4xS3:A4*S3", "C2xS4:A4*<z,(13)>"]


def _names(kind):
    return [n for n, i in cat.catalog().items() if i.kind == kind]


def _obj(name):
    return cat.get(name).materialize()


def _fails(rep):
    return [c["name"] for c, req in zip(rep.clauses, rep.required) if req and c["verdict"] != "pass"]


def criterion_1():
    rep = Report("1 saturation modes agree")
    small = [n for n in _names("fusion") if len(members(_obj(n).top)) <= 16]
    rep.add("at least six systems with |S| <= 16", len(small) >= 6, len(small))
    for n in small:
        F = _obj(n)
        bad = [members(r.representative) for r in classify(F)
               if respects_saturation(F, r, "direct") != respects_saturation(F, r, "axioms")]
        rep.add(f"{n}: {len(classify(F))} classes", not bad, bad)
    return rep.finish()


def criterion_2():
    rep = Report("2 cr, critical and classical sets")
    for n in _names("fusion"):
        F = _obj(n)
        if is_saturated(F):
            r = cr_agrees_with_classical(F)
            rep.add(f"{n}: crSet = criticalSet = classical", r.consistent,
                    {"crSet": len(cr_set(F)), "critical": len(critical_set(F)),
                     "classical": len(classical_cr_set(F))})
        else:
            rep.add(f"{n} (not saturated): inclusions", cr_inclusions(F))
    rep.add("an unsaturated system was checked",
            any(not is_saturated(_obj(n)) for n in _names("fusion")))
    return rep.finish()


def _theorem_a_inputs():
    out = []
    for n in KERNELS[:4]:
        k = _obj(n)
        K = KernelTriple(k.L, k.N)
        out.append((n, K.F, K.E, k.L.Delta))
    for n in PRODUCTS:
        pc = _obj(n)
        pi, _ = product_nh(pc.L, pc.N, pc.H, pc.Tstar, pc.GammaN)
        if pi is not None:
            out.append((n, pi.F0, pi.kernel.E, pi.locality.Delta))
    return out


def criterion_3():
    rep = Report("3 saturation criterion on kernel instances")
    count = 0
    for n, F, E, delta in _theorem_a_inputs():
        r = saturation_by_criterion(F, E, delta)
        hyp = all(c["verdict"] == "pass" for c in r.clauses)
        count += hyp
        rep.add(f"{n}: hypotheses hold and F saturated", hyp and r.consistent and is_saturated(F),
                [c["name"] for c in r.clauses if c["verdict"] != "pass"])
    rep.add("at least three instances", count >= 3, count)
    return rep.finish()


def _localities():
    out = [(n, _obj(n)) for n in _names("locality")]
    out += [(n, _obj(n).L) for n in KERNELS + PRODUCTS]
    return out


def mutate_delete_pair(L):
    """Drop one defined product between non-units, choosing a pair that
    conjugation on S does not pass through."""
    for f in range(L.n):
        for g in range(L.n):
            if f != L.unit and g != L.unit and g != L.inv[f] and L.prod[f][g] >= 0:
                prod = [row[:] for row in L.prod]
                prod[f][g] = -1
                M = Locality(L.p, L.inv, prod, L.unit, L.S, L.Delta, name="deleted-pair")
                if M._conjS() == L._conjS():
                    return M, [f, g]
    raise ValueError("no pair to delete")


def mutate_break_closure(L):
    """Drop an object that has a proper subgroup in Delta."""
    for P in sorted(L.Delta, key=lambda m: -bin(m).count("1")):
        if any(Q != P and Q & ~P == 0 for Q in L.Delta):
            return Locality(L.p, L.inv, L.prod, L.unit, L.S, L.Delta - {P}, name="broken-closure"), \
                L.s_mask_to_elems(P)
    raise ValueError("no object to drop")


def mutate_shrink_s(L, Q):
    """Keep the table but declare the proper subgroup Q of S to be S."""
    elems = L.s_mask_to_elems(Q)
    pos = {x: i for i, x in enumerate(elems)}
    subs = [P for P in L.subgroups_S if P & ~Q == 0]
    delta = [sum(1 << pos[x] for x in L.s_mask_to_elems(P)) for P in subs]
    return Locality(L.p, L.inv, L.prod, L.unit, elems, delta, name="small-S"), elems


def criterion_4():
    rep = Report("4 locality axioms and mutations")
    for n, L in _localities():
        r = validate_locality(L)
        rep.add(f"{n} validates", r.consistent, _fails(r) or r.clause("word axioms")["witness"])
    L = _obj("S4|all")
    M, pair = mutate_delete_pair(L)
    r = validate_locality(M)
    c = r.clause("pairs defined exactly on D_Delta")
    rep.add("deleted pair is caught", c["verdict"] == "fail" and c["witness"] == pair,
            {"deleted": pair, "witness": c["witness"]})
    M, P = mutate_break_closure(L)
    r = validate_locality(M)
    c = r.clause("Delta overgroup-closed")
    rep.add("broken closure is caught", c["verdict"] == "fail" and c["witness"] == [P],
            {"dropped": P, "witness": c["witness"]})
    V4 = next(P for P in L.subgroups_S if bin(P).count("1") == 4
              and len(L.normalizer_of_s(P)) == L.n)
    M, elems = mutate_shrink_s(L, V4)
    r = validate_locality(M)
    c = r.clause("S maximal p-subgroup")
    rep.add("non-maximal S is caught", c["verdict"] == "fail" and c["witness"]["|S|"] == 4
            and c["witness"]["|N_L(S)|"] == 24, c["witness"])
    return rep.finish()


def criterion_5():
    rep = Report("5 quotient identity")
    for n in KERNELS:
        k = _obj(n)
        r = quotient_report(k.L, k.N)
        rep.add(f"{n}", r.consistent, {"fails": _fails(r), "|L/N|": r.clause("quotient is a group")["witness"]})
    return rep.finish()


def criterion_6():
    rep = Report("6 cr-completeness of L and of the kernel")
    neg = pos = 0
    for n in KERNELS:
        k = _obj(n)
        r = theorem_b_report(k.L, k.N)
        both = r.value("L cr-complete")
        rep.add(f"{n}: equal verdicts ({'both true' if both else 'both false'})", r.consistent, _fails(r))
        if both:
            pos += 1
            rep.add(f"{n}: F_T(N) normal in F_S(L)", r.value("E normal in F: normal"))
        else:
            neg += 1
    rep.add("at least three instances", pos + neg >= 3, pos + neg)
    rep.add("a negative instance", neg >= 1, neg)
    return rep.finish()


def criterion_7():
    rep = Report("7 objective characteristic p")
    allfalse = 0
    for n in KERNELS[:4]:
        k = _obj(n)
        r = theorem_c_report(k.L, k.N)
        vals = [r.value(c["name"]) for c in r.clauses if c["name"][:4] in ("(i) ", "(ii)", "(iii", "(iv)")]
        rep.add(f"{n}: clauses agree {vals}", r.consistent, _fails(r))
        allfalse += not any(vals)
    rep.add("engineered all-false instance present", allfalse >= 1, allfalse)
    return rep.finish()


def criterion_8():
    rep = Report("8 p'-core quotient to a linking kernel")
    sizes = []
    for n in ("S4:A4", "C3xS4:C3xA4"):
        k = _obj(n)
        Q, r = linking_kernel_quotient(k.L, k.N)
        t = r.clause("(b) Theta partial subgroup")["witness"]["|Theta|"]
        sizes.append(t)
        rep.add(f"{n}: |Theta| = {t}", r.consistent and Q is not None, _fails(r))
    rep.add("one trivial and one non-trivial Theta", min(sizes) == 1 and max(sizes) > 1, sizes)
    return rep.finish()


def criterion_9():
    rep = Report("9 products NH")
    for n in PRODUCTS:
        pc = _obj(n)
        r = product_report(product_nh(pc.L, pc.N, pc.H, pc.Tstar, pc.GammaN))
        rep.add(f"{n}", r.consistent and r.applicable, _fails(r))
    big = [n for n in PRODUCTS if _obj(n).L.origin["G"].n > 24 and _obj(n).L.origin["G"].n <= 400]
    rep.add("a larger instance with |G| <= 400", bool(big), big)
    return rep.finish()


def criterion_10():
    rep = Report("10 Frattini generation")
    for n in KERNELS:
        k = _obj(n)
        r = frattini_report(k.L, k.N)
        rep.add(f"{n}", r.consistent, r.clause("F_S(L) = <F_S(NS), N_F(T)>")["witness"])
    return rep.finish()


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]
TITLES = ["saturation modes", "cr sets", "saturation criterion", "locality axioms",
          "quotient identity", "cr-completeness", "characteristic p", "theta quotient",
          "products", "frattini"]
BUDGET_S = [30, 10, 60, 30, 30, 60, 60, 60, 120, 60]


class CriterionError:
    """Stands in for a report when a criterion stopped on a cap or bad input."""

    verdict = "error"

    def __init__(self, exc):
        self.error = f"{type(exc).__name__}: {exc}"

    def to_dict(self, timing=True):
        return None


def run(select=None, on_error=False):
    """[(number, report, seconds)] for the selected criteria (1-based).

    With ``on_error`` a cap or input error becomes a CriterionError entry
    instead of propagating.
    """
    from .config import CapExceeded
    out = []
    for i, fn in enumerate(CRITERIA, 1):
        if select and i not in select:
            continue
        t = time.perf_counter()
        try:
            r = fn()
        except (CapExceeded, ValueError) as e:
            if not on_error:
                raise
            r = CriterionError(e)
        out.append((i, r, time.perf_counter() - t))
    return out
