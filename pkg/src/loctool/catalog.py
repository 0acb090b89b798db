"""Built-in instances and their JSON forms.

Every instance is stored as a JSON payload and materialized on load, so the
catalog exercises the same code path as user files.  Element references in
group-derived payloads are element indices of the ambient group G; explicit
locality tables use their own indices.
"""
import json

from .config import Caps, caps, set_caps
from .fus import fusion_closure, fusion_from_group, fusion_to_json, maps_from_json
from .grp import (
    GroupError, build_group, generated, group_to_json, mask_of, members,
    p_core, perm_from_cycles, perm_group, subgroup_group, subgroup_masks, sylow,
)
from .ploc import (
    LocalityError, build_locality_from_group, locality_from_table, locality_pairs,
)

KINDS = ("group", "fusion", "locality", "kernel-instance", "product-instance")


class InstanceError(ValueError):
    """A payload does not match its kind's schema."""


def canonical(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


# -- small group recipes ----------------------------------------------------------

def _perm(gens, degree, name):
    return perm_group([perm_from_cycles(c, degree) for c in gens], degree, name=name)


def _elt(G, cycles):
    return G.perms.index(perm_from_cycles(cycles, len(G.perms[0])))


def _sub(G, *gens):
    return generated(G, [_elt(G, c) for c in gens])


def _matrix_group(mats, name):
    """Matrices over F_3 acting on the eight nonzero vectors."""
    vecs = [(a, b) for a in range(3) for b in range(3) if (a, b) != (0, 0)]

    def act(M):
        return tuple(vecs.index(((M[0][0] * a + M[0][1] * b) % 3, (M[1][0] * a + M[1][1] * b) % 3))
                     for a, b in vecs)
    return perm_group([act(M) for M in mats], 8, name=name)


def _sylow_containing(G, p, mask):
    for P in sylow(G, p):
        if mask & ~P.mask == 0:
            return P.mask
    raise GroupError("no Sylow subgroup contains the given subgroup")


def _overgroups(G, S, bases):
    subs = _subs_of(G, S)
    return [Q for Q in subs if any(B & ~Q == 0 for B in bases)]


def _subs_of(G, S):
    H, emb = subgroup_group(G, S)
    return [mask_of(emb[i] for i in members(Q)) for Q in subgroup_masks(H)]


def _all_subs(G, S):
    return _overgroups(G, S, [1])


def _els(mask):
    return members(mask)


def _loc_payload(G, p, S, delta):
    return {"p": p, "from_group": {"G": group_to_json(G), "S": _els(S)},
            "Delta": sorted(_els(P) for P in delta)}


def _fus_payload(G, p, S):
    return {"p": p, "from_group": {"G": group_to_json(G), "S": _els(S)}}


# -- recipes ----------------------------------------------------------------------------

def _s4():
    return _perm([[(1, 2, 3, 4)], [(1, 2)]], 4, "S4")


def _recipes():
    out = []

    def add(name, kind, build, notes=""):
        out.append((name, kind, build, notes))

    def s4_d8():
        G = _s4()
        return _fus_payload(G, 2, _sylow_containing(G, 2, _sub(G, [(1, 3)], [(1, 2, 3, 4)])))

    def a4_v4():
        G = _perm([[(1, 2, 3)], [(1, 2), (3, 4)]], 4, "A4")
        return _fus_payload(G, 2, p_core(G, 2).mask)

    def s3_c3():
        G = _perm([[(1, 2, 3)], [(1, 2)]], 3, "S3")
        return _fus_payload(G, 3, sylow(G, 3)[0].mask)

    def d8():
        G = _perm([[(1, 2, 3, 4)], [(1, 3)]], 4, "D8")
        return _fus_payload(G, 2, G.full)

    def gl23():
        G = _matrix_group([[[1, 1], [0, 1]], [[0, 1], [2, 0]], [[2, 0], [0, 1]]], "GL(2,3)")
        return _fus_payload(G, 2, sylow(G, 2)[0].mask)

    def sl23():
        G = _matrix_group([[[1, 1], [0, 1]], [[1, 0], [1, 1]]], "SL(2,3)")
        return _fus_payload(G, 2, sylow(G, 2)[0].mask)

    def s4c2():
        G = _perm([[(1, 2, 3, 4)], [(1, 2)], [(5, 6)]], 6, "S4xC2")
        return _fus_payload(G, 2, sylow(G, 2)[0].mask)

    def v4_unsat():
        # V4 = {1, a, b, ab}; the only extra map sends <b> onto <a>
        mult = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]
        return {"p": 2, "S": {"name": "V4", "order": 4, "mult": mult},
                "generators": [{"domain": [0, 2], "images": [0, 1]}]}

    add("S4/D8", "fusion", s4_d8, "F_{D8}(S4), p = 2")
    add("A4/V4", "fusion", a4_v4, "F_{V4}(A4), p = 2")
    add("S3/C3", "fusion", s3_c3, "F_{C3}(S3), p = 3")
    add("D8", "fusion", d8, "D8 alone, inner fusion")
    add("GL23/SD16", "fusion", gl23, "F_{SD16}(GL(2,3)), p = 2")
    add("SL23/Q8", "fusion", sl23, "F_{Q8}(SL(2,3)), p = 2")
    add("S4xC2/D8xC2", "fusion", s4c2, "F_{D8xC2}(S4xC2), p = 2")
    add("V4-unsaturated", "fusion", v4_unsat,
        "closure of one map <b> -> <a> on V4: not saturated (engineered negative)")

    def loc_s4_v4():
        G = _s4()
        S = _sylow_containing(G, 2, _sub(G, [(1, 3)], [(1, 2, 3, 4)]))
        return _loc_payload(G, 2, S, _overgroups(G, S, [p_core(G, 2).mask]))

    def loc_s4_all():
        G = _s4()
        S = _sylow_containing(G, 2, _sub(G, [(1, 3)], [(1, 2, 3, 4)]))
        return _loc_payload(G, 2, S, _all_subs(G, S))

    def loc_a4():
        G = _perm([[(1, 2, 3)], [(1, 2), (3, 4)]], 4, "A4")
        S = p_core(G, 2).mask
        return _loc_payload(G, 2, S, _all_subs(G, S))

    def loc_s3():
        G = _perm([[(1, 2, 3)], [(1, 2)]], 3, "S3")
        S = sylow(G, 3)[0].mask
        return _loc_payload(G, 3, S, [S])

    def loc_d8():
        G = _perm([[(1, 2, 3, 4)], [(1, 3)]], 4, "D8")
        return _loc_payload(G, 2, G.full, _all_subs(G, G.full))

    add("S4|V4", "locality", loc_s4_v4, "S4 with objects the overgroups of V4 = O_2(S4)")
    add("S4|all", "locality", loc_s4_all, "S4 with all subgroups of D8 as objects")
    add("A4|all", "locality", loc_a4, "A4 at p = 2")
    add("S3|C3", "locality", loc_s3, "S3 at p = 3 with Delta = {C3}")
    add("D8|all", "locality", loc_d8, "D8 as a locality over itself")

    def kern(Gfun, gens_S, gens_V, gens_N, p=2):
        def build():
            G = Gfun()
            V = _sub(G, *gens_V)
            S = _sylow_containing(G, p, _sub(G, *gens_S))
            return {"locality": _loc_payload(G, p, S, _overgroups(G, S, [V])),
                    "N": _els(_sub(G, *gens_N))}
        return build

    V4 = ([(1, 2), (3, 4)], [(1, 3), (2, 4)])
    A4 = ([(1, 2, 3)], [(1, 2), (3, 4)])
    D8 = ([(1, 3)], [(1, 2, 3, 4)])

    def c3s4():
        return _perm([[(1, 2, 3, 4)], [(1, 2)], [(5, 6, 7)]], 7, "C3xS4")

    def c2s4():
        return _perm([[(1, 2, 3, 4)], [(1, 2)], [(5, 6)]], 6, "C2xS4")

    def s4s3():
        return _perm([[(1, 2, 3, 4)], [(1, 2)], [(5, 6, 7)], [(5, 6)]], 7, "S4xS3")

    add("S4:A4", "kernel-instance", kern(_s4, D8, V4, A4),
        "N = A4 in S4 with Delta = overgroups of V4; T = V4, L/N = C2")
    add("C3xS4:C3xA4", "kernel-instance", kern(c3s4, D8, V4, A4 + ([(5, 6, 7)],)),
        "non-trivial Theta: O_2'(N_N(V4)) = C3")
    add("C3xS4:A4", "kernel-instance", kern(c3s4, D8, V4, A4),
        "engineered all-false instance: C3 centralizes every object")
    add("C2xS4:A4", "kernel-instance", kern(c2s4, D8 + ([(5, 6)],), V4, A4),
        "S = C2xD8, T = V4")

    def s4s4_neg():
        # Delta = overgroups of V4xD8 and D8xV4: V4xV4 is centric radical in
        # F_S(L) but not an object, so neither L nor its kernel L is cr-complete
        G = _perm([[(1, 2, 3, 4)], [(1, 2)], [(5, 6, 7, 8)], [(5, 6)]], 8, "S4xS4")
        S = _sub(G, [(1, 3)], [(1, 2, 3, 4)], [(5, 7)], [(5, 6, 7, 8)])
        v1 = _sub(G, [(1, 2), (3, 4)], [(1, 3), (2, 4)])
        v2 = _sub(G, [(5, 6), (7, 8)], [(5, 7), (6, 8)])
        d1 = _sub(G, [(1, 3)], [(1, 2, 3, 4)])
        d2 = _sub(G, [(5, 7)], [(5, 6, 7, 8)])
        bases = [generated(G, members(v1 | d2)), generated(G, members(d1 | v2))]
        delta = _overgroups(G, S, bases)
        elems = [g for g in range(G.n) if _s_g(G, S, g) in set(delta)]
        return {"locality": _loc_payload(G, 2, S, delta), "N": elems}

    add("S4xS4:neg", "kernel-instance", s4s4_neg,
        "cr-completeness negative: objects are the overgroups of V4xD8 and D8xV4, N = L; |G| = 576")

    def prod(Gfun, gens_S, gens_V, gens_N, gens_H, gens_T, p=2):
        def build():
            base = kern(Gfun, gens_S, gens_V, gens_N, p)()
            G = Gfun()
            base["H"] = _els(_sub(G, *gens_H))
            base["Tstar"] = _els(_sub(G, *gens_T))
            return base
        return build

    add("S4:A4*<(13)>", "product-instance", prod(_s4, D8, V4, A4, ([(1, 3)],), V4),
        "Tstar supplied as O_2(S4) = V4; H = <(1 3)>; NH = S4")
    add("S4xS3:A4*S3", "product-instance",
        prod(s4s3, D8 + ([(5, 6)],), V4, A4, ([(5, 6, 7)], [(5, 6)]), V4),
        "Tstar supplied as V4 = O_2(S4); H = S3 on the second factor; H~ = A4xS3 is not of characteristic 2")
    add("C2xS4:A4*<z,(13)>", "product-instance",
        prod(c2s4, D8 + ([(5, 6)],), V4, A4, ([(5, 6)], [(1, 3)]), V4),
        "Tstar supplied as V4; H = <z, (1 3)> is a 2-group")
    return out


def _s_g(G, S, g):
    return mask_of(x for x in members(S) if (S >> G.conj(x, g)) & 1)


# -- instances ------------------------------------------------------------------------

class Instance:
    """A named payload of one kind; group-derived catalog payloads are built
    on first access."""

    def __init__(self, name, kind, payload=None, notes="", provenance="catalog", build=None):
        self.name = name
        self.kind = kind
        self.notes = notes
        self.provenance = provenance
        self._payload = payload
        self._build = build
        self._obj = None

    @property
    def payload(self):
        if self._payload is None:
            with caps_for(self.name):
                self._payload = self._build()
        return self._payload

    def materialize(self):
        if self._obj is None:
            with caps_for(self.name):
                self._obj = load_payload(self.kind, self.payload)
        return self._obj

    def to_json(self):
        return {"name": self.name, "kind": self.kind, "payload": self.payload,
                "notes": self.notes, "provenance": self.provenance}

    def __repr__(self):
        return f"<Instance {self.name} ({self.kind})>"


# instances whose ambient group exceeds the default order cap
LARGE = {"S4xS4:neg": 600}
_CATALOG = None


def catalog():
    """name -> Instance, in listing order."""
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = {name: Instance(name, kind, notes=notes, build=build)
                    for name, kind, build, notes in _recipes()}
    return _CATALOG


class caps_for:
    """Raise the group order cap while a listed large instance is built."""

    def __init__(self, name):
        self.order = LARGE.get(name, 0)

    def __enter__(self):
        self.old = caps()
        if self.order > self.old.group_order:
            set_caps(Caps(self.order, self.old.morphisms, self.old.depth, self.old.words))

    def __exit__(self, *exc):
        set_caps(self.old)


def get(name):
    cat = catalog()
    if name not in cat:
        raise InstanceError(f"unknown instance {name!r}")
    return cat[name]


def load_file(path):
    with open(path) as fh:
        data = json.load(fh)
    return instance_from_json(data, provenance="file")


def instance_from_json(data, provenance="file"):
    if not isinstance(data, dict) or "kind" not in data or "payload" not in data:
        raise InstanceError("instance file needs 'kind' and 'payload'")
    if data["kind"] not in KINDS:
        raise InstanceError(f"unknown kind {data['kind']!r}")
    return Instance(data.get("name", "file"), data["kind"], data["payload"],
                    data.get("notes", ""), provenance)


# -- materialization -------------------------------------------------------------------

class KernelCase:
    def __init__(self, L, N):
        self.L = L
        self.N = N


class ProductCase(KernelCase):
    def __init__(self, L, N, H, Tstar, GammaN=None):
        super().__init__(L, N)
        self.H = H
        self.Tstar = Tstar
        self.GammaN = GammaN


def _need(d, *keys):
    for k in keys:
        if k not in d:
            raise InstanceError(f"missing field {k!r}")


def _int_list(x, what):
    if not isinstance(x, list) or not all(isinstance(v, int) for v in x):
        raise InstanceError(f"{what} must be a list of integers")
    return x


def load_payload(kind, d):
    try:
        if kind == "group":
            return build_group(d)
        if kind == "fusion":
            return _load_fusion(d)
        if kind == "locality":
            return _load_locality(d)
        if kind == "kernel-instance":
            _need(d, "locality", "N")
            L = _load_locality(d["locality"])
            return KernelCase(L, _to_local(L, _int_list(d["N"], "N")))
        if kind == "product-instance":
            _need(d, "locality", "N", "H", "Tstar")
            L = _load_locality(d["locality"])
            T = _to_local(L, _int_list(d["Tstar"], "Tstar"))
            if any(x not in L.pos for x in T):
                raise InstanceError("Tstar is not inside S")
            gam = None
            if "GammaN" in d:
                gam = [L.elems_to_s_mask(_to_local(L, P)) for P in d["GammaN"]]
            return ProductCase(L, _to_local(L, d["N"]), _to_local(L, _int_list(d["H"], "H")),
                               L.elems_to_s_mask(T), gam)
    except (GroupError, LocalityError, KeyError, TypeError, IndexError) as e:
        raise InstanceError(f"{kind} payload: {e}") from e
    raise InstanceError(f"unknown kind {kind!r}")


def _load_fusion(d):
    _need(d, "p")
    p = d["p"]
    if "from_group" in d:
        fg = d["from_group"]
        G = build_group(fg["G"])
        return fusion_from_group(G, mask_of(_int_list(fg["S"], "S")), p)
    _need(d, "S", "generators")
    S = build_group(d["S"])
    top = mask_of(d["top"]) if "top" in d else None
    F = fusion_closure(S, p, maps_from_json(S, d["generators"]), top=top,
                       name=d["S"].get("name", ""))
    F.origin = {"S_json": d["S"]}
    return F


def _load_locality(d):
    _need(d, "p")
    if "from_group" in d:
        fg = d["from_group"]
        G = build_group(fg["G"])
        S = mask_of(_int_list(fg["S"], "S"))
        delta = [mask_of(_int_list(P, "Delta member")) for P in d["Delta"]]
        return build_locality_from_group(G, S, delta, d["p"], name=fg["G"].get("name", ""))
    _need(d, "elements", "inv", "unit", "pairs", "S", "Delta")
    return locality_from_table(d["p"], d["inv"], d["pairs"], d["unit"], d["S"], d["Delta"],
                               n=d["elements"], name=d.get("name", ""))


def _to_local(L, elems):
    """Translate payload element references into locality indices."""
    el = L.origin.get("elements")
    if el is None:
        if any(not 0 <= x < L.n for x in elems):
            raise InstanceError("element index out of range")
        return sorted(elems)
    pos = {g: i for i, g in enumerate(el)}
    missing = [x for x in elems if x not in pos]
    if missing:
        raise InstanceError(f"elements {missing[:4]} are not in the locality")
    return sorted(pos[x] for x in elems)


def _from_local(L, elems):
    el = L.origin.get("elements")
    return sorted(elems) if el is None else sorted(el[i] for i in elems)


# -- saving -------------------------------------------------------------------------------

def save_object(kind, obj):
    """JSON payload of a materialized object."""
    if kind == "group":
        return group_to_json(obj)
    if kind == "fusion":
        if "G" in obj.origin:
            return {"p": obj.p, "from_group": {"G": group_to_json(obj.origin["G"]),
                                               "S": members(obj.origin["S"])}}
        return fusion_to_json(obj, obj.origin.get("S_json") or group_to_json(obj.S))
    if kind == "locality":
        return _save_locality(obj)
    if kind == "kernel-instance":
        return {"locality": _save_locality(obj.L), "N": _from_local(obj.L, obj.N)}
    if kind == "product-instance":
        L = obj.L
        out = {"locality": _save_locality(L), "N": _from_local(L, obj.N),
               "H": _from_local(L, obj.H), "Tstar": _from_local(L, L.s_mask_to_elems(obj.Tstar))}
        if obj.GammaN is not None:
            out["GammaN"] = sorted(_from_local(L, L.s_mask_to_elems(P)) for P in obj.GammaN)
        return out
    raise InstanceError(f"unknown kind {kind!r}")


def _save_locality(L):
    o = L.origin
    if "G" in o:
        return {"p": L.p, "from_group": {"G": group_to_json(o["G"]), "S": members(o["S"])},
                "Delta": sorted(members(P) for P in o["Delta"])}
    return {"p": L.p, "elements": L.n, "inv": L.inv, "unit": L.unit,
            "pairs": locality_pairs(L), "S": L.S,
            "Delta": sorted(L.s_mask_to_elems(P) for P in L.Delta)}


def round_trip(inst):
    """canonical(payload) == canonical(save(load(payload)))."""
    return canonical(inst.payload) == canonical(save_object(inst.kind, inst.materialize()))
