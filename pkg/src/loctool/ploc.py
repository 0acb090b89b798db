"""Finite partial groups and localities.

A locality holds its partial product as a dense ``n x n`` table with -1 for
undefined pairs.  ``S`` is a sorted list of element indices; subgroups of S
(including the objects in ``Delta``) are bitmasks over positions in that
list, so bit i stands for the element ``S[i]``.  Word products are left
folds through the pair table.
"""
import itertools

from . import kernels
from .config import caps
from .fus import fusion_closure, is_delta_generated, is_delta_saturated
from .fus import cr_set, is_saturated
from .grp import (
    FiniteGroup, GroupError, is_characteristic_p, is_p_power, is_subgroup, mask_of,
    members, p_part, popcount, subgroup_group, subgroup_masks, sylow, _m,
)
from .report import Report


class LocalityError(ValueError):
    """Input that is not a partial group or locality, or a failed precondition."""


_CODES = {
    1: "fold of a word in D is undefined",
    2: "a subword of a word in D is not in D",
    3: "contracting a subword leaves D",
    4: "contracting a subword changes the product",
    5: "w^-1 w is not in D",
    6: "product of w^-1 w is not the unit",
    7: "S_w is not contained in S_Pi(w)",
    8: "conjugation by Pi(w) disagrees with the chain on S_w",
}


class Locality:
    """A finite partial group (L, Delta, S) with its pair table."""

    def __init__(self, p, inv, prod, unit, S, Delta, name="", origin=None):
        self.p = p
        self.n = len(inv)
        self.inv = list(inv)
        self.prod = [list(r) for r in prod]
        self.unit = unit
        self.S = sorted(S)
        self.pos = {x: i for i, x in enumerate(self.S)}
        self.Delta = frozenset(Delta)
        self.name = name
        self.origin = origin or {}
        self._cache = {}

    # -- S as a group ------------------------------------------------------
    @property
    def Sgroup(self):
        """S as a FiniteGroup on local indices (position in ``self.S``)."""
        if "Sg" not in self._cache:
            if self.S[0] != self.unit:
                raise LocalityError("S must contain the unit as its least element")
            mult = []
            for a in self.S:
                row = []
                for b in self.S:
                    c = self.prod[a][b]
                    if c not in self.pos:
                        raise LocalityError(f"S is not closed: ({a}, {b})")
                    row.append(self.pos[c])
                mult.append(row)
            self._cache["Sg"] = FiniteGroup(mult, name=f"S({self.name})")
        return self._cache["Sg"]

    @property
    def subgroups_S(self):
        return subgroup_masks(self.Sgroup)

    def s_mask_to_elems(self, P):
        return [self.S[i] for i in members(P)]

    def elems_to_s_mask(self, elems):
        return mask_of(self.pos[x] for x in elems)

    # -- conjugation ---------------------------------------------------------
    def conj(self, x, f):
        """x^f through the pair table, or -1 when a step is undefined."""
        a = self.prod[self.inv[f]][x]
        if a < 0:
            return -1
        return self.prod[a][f]

    def _conjS(self):
        """For each f: dict S-position -> S-position of x^f, over S_f."""
        if "conjS" not in self._cache:
            tab = []
            for f in range(self.n):
                d = {}
                for i, x in enumerate(self.S):
                    y = self.conj(x, f)
                    if y in self.pos:
                        d[i] = self.pos[y]
                tab.append(d)
            self._cache["conjS"] = tab
        return self._cache["conjS"]

    def Sf(self, f):
        return mask_of(self._conjS()[f])

    def conj_mask(self, P, f):
        """P^f for P inside S_f (S-position masks)."""
        c = self._conjS()[f]
        return mask_of(c[i] for i in members(P))

    def compute_Sw(self, w):
        """S_w by chasing each element of S through the word."""
        cs = self._conjS()
        out = 0
        for i in range(len(self.S)):
            y = i
            for f in w:
                y = cs[f].get(y)
                if y is None:
                    break
            else:
                out |= 1 << i
        return out

    def word_in_domain(self, w):
        return self.compute_Sw(w) in self.Delta

    def eval_product(self, w):
        if not self.word_in_domain(w):
            raise LocalityError(f"word {list(w)} is not in D")
        x = self.unit
        for f in w:
            x = self.prod[x][f]
            if x < 0:
                raise LocalityError(f"fold of {list(w)} is undefined")
        return x

    def conjugate_elt(self, x, f):
        if not self.word_in_domain((self.inv[f], x, f)):
            raise LocalityError(f"conjugate of {x} by {f} is undefined")
        return self.eval_product((self.inv[f], x, f))

    def in_Df(self, x, f):
        """(f^-1, x, f) is in D."""
        c = self._cache.setdefault("Df", {})
        k = (x, f)
        if k not in c:
            c[k] = self.word_in_domain((self.inv[f], x, f))
        return c[k]

    # -- subsets -------------------------------------------------------------
    def normalizer(self, X):
        """N_L(X) for a set X of elements."""
        X = set(X)
        out = []
        for f in range(self.n):
            if all(self.in_Df(x, f) for x in X):
                if {self.prod[self.prod[self.inv[f]][x]][f] for x in X} == X:
                    out.append(f)
        return out

    def centralizer(self, X):
        out = []
        for f in range(self.n):
            if all(self.in_Df(x, f) and self.prod[self.prod[self.inv[f]][x]][f] == x for x in X):
                out.append(f)
        return out

    def normalizer_of_s(self, P):
        """N_L(P) for P a subgroup of S given as a position mask."""
        c = self._cache.setdefault("NL", {})
        if P not in c:
            out = []
            for f in range(self.n):
                sf = self.Sf(f)
                if P & ~sf == 0 and self.conj_mask(P, f) == P:
                    out.append(f)
            c[P] = out
        return c[P]

    def centralizer_of_s(self, P):
        out = []
        cs = self._conjS()
        for f in range(self.n):
            if all(cs[f].get(i) == i for i in members(P)):
                out.append(f)
        return out

    def group_of(self, elems, name=""):
        """A subset closed under the product, as a FiniteGroup with the
        unit first; returns (group, element list)."""
        el = sorted(set(elems))
        if el[0] != self.unit:
            el.remove(self.unit)
            el = [self.unit] + el
        pos = {x: i for i, x in enumerate(el)}
        mult = []
        for a in el:
            row = []
            for b in el:
                c = self.prod[a][b]
                if c not in pos:
                    raise LocalityError(f"subset is not a subgroup: ({a}, {b}) -> {c}")
                row.append(pos[c])
            mult.append(row)
        return FiniteGroup(mult, name=name), el

    def __repr__(self):
        return f"<Locality {self.name or '?'}: |L|={self.n}, |S|={len(self.S)}, |Delta|={len(self.Delta)}>"


# -- construction -----------------------------------------------------------

def _group_S_g(G, S, g):
    return mask_of(x for x in members(S) if (S >> G.conj(x, g)) & 1)


def is_delta_f_closed(G, S, delta):
    """Overgroup-closed in S and closed under G-conjugation into S."""
    H, emb = subgroup_group(G, S)
    subs = [mask_of(emb[i] for i in members(Q)) for Q in subgroup_masks(H)]
    for P in delta:
        if not is_subgroup(G, P) or P & ~S:
            return False
        for Q in subs:
            if P & ~Q == 0 and Q not in delta:
                return False
    for g in range(G.n):
        Sg = _group_S_g(G, S, g)
        for P in delta:
            if P & ~Sg == 0:
                Pg = mask_of(G.conj(x, g) for x in members(P))
                if Pg not in delta:
                    return False
    return True


def build_locality_from_group(G, S, delta, p, name="", check=True):
    """The locality {g : S_g in Delta} with products along Delta-chains.

    ``S`` and the members of ``delta`` are masks over the elements of G.
    """
    S = _m(S)
    delta = frozenset(_m(P) for P in delta)
    if S not in {P.mask for P in sylow(G, p)}:
        raise LocalityError("S is not a Sylow p-subgroup of G")
    if check and not is_delta_f_closed(G, S, delta):
        raise LocalityError("Delta is not closed under overgroups and conjugation")
    Sg = [_group_S_g(G, S, g) for g in range(G.n)]
    L = [g for g in range(G.n) if Sg[g] in delta]
    pos = {g: i for i, g in enumerate(L)}
    n = len(L)
    prod = [[-1] * n for _ in range(n)]
    for i, f in enumerate(L):
        for j, g in enumerate(L):
            # S_(f,g): elements of S_f whose f-conjugate lies in S_g
            sfg = mask_of(x for x in members(Sg[f]) if (Sg[g] >> G.conj(x, f)) & 1)
            if sfg in delta:
                prod[i][j] = pos[G.mul(f, g)]
    inv = [pos[G.inv[g]] for g in L]
    Spos = [pos[x] for x in members(S)]
    Sl = {x: i for i, x in enumerate(members(S))}
    D = [mask_of(Sl[x] for x in members(P)) for P in delta]
    origin = {"G": G, "S": S, "Delta": sorted(delta), "elements": L}
    return Locality(p, inv, prod, pos[0], Spos, D, name=name or f"{G.name}|Delta", origin=origin)


def locality_from_table(p, inv, pairs, unit, S, delta, n=None, name=""):
    """Locality from the JSON-style sparse description; Delta entries are
    lists of element indices."""
    n = len(inv) if n is None else n
    prod = [[-1] * n for _ in range(n)]
    for f, g, h in pairs:
        for v in (f, g, h):
            if not 0 <= v < n:
                raise LocalityError(f"pair entry {v} out of range")
        prod[f][g] = h
    Ssorted = sorted(S)
    pos = {x: i for i, x in enumerate(Ssorted)}
    D = []
    for P in delta:
        if any(x not in pos for x in P):
            raise LocalityError("object is not contained in S")
        D.append(mask_of(pos[x] for x in P))
    return Locality(p, inv, prod, unit, Ssorted, D, name=name)


def locality_pairs(L):
    return [[f, g, L.prod[f][g]] for f in range(L.n) for g in range(L.n) if L.prod[f][g] >= 0]


# -- validation ---------------------------------------------------------------

def _transitions(L, subs):
    """trans[f][k] = index of (X_k meet S_f)^f."""
    idx = {P: k for k, P in enumerate(subs)}
    cs = L._conjS()
    trans = []
    for f in range(L.n):
        row = []
        c = cs[f]
        for P in subs:
            img = mask_of(c[i] for i in members(P) if i in c)
            if img not in idx:
                raise LocalityError(f"conjugation by {f} does not send subgroups to subgroups")
            row.append(idx[img])
        trans.append(row)
    return trans


def word_counts(trans, indelta, start, depth):
    """Number of words of each length 1..depth whose prefixes all lie in D."""
    cnt = {start: 1}
    out = []
    for _ in range(depth):
        nxt = {}
        for s, c in cnt.items():
            for row in trans:
                t = row[s]
                if indelta[t]:
                    nxt[t] = nxt.get(t, 0) + c
        out.append(sum(nxt.values()))
        cnt = nxt
    return out


def validate_locality(L, depth=None, exhaustive=False, budget=None):
    """Partial-group and locality axioms, clause by clause with witnesses."""
    rep = Report("validate-locality")
    n = L.n
    inv, prod, u = L.inv, L.prod, L.unit

    bad = [f for f in range(n) if not (0 <= inv[f] < n) or inv[inv[f]] != f]
    rep.add("inversion is an involution", not bad, bad[:1])
    bad = [f for f in range(n) if prod[u][f] != f or prod[f][u] != f]
    rep.add("unit is two-sided", not bad, bad[:1])
    bad = [f for f in range(n) if prod[f][inv[f]] != u]
    rep.add("f f^-1 is the unit", not bad, bad[:1])
    if not rep.consistent:
        return rep.finish()

    try:
        Sg = L.Sgroup
        sgroup_ok = is_p_power(Sg.n, L.p)
    except (LocalityError, GroupError) as e:
        rep.add("S is a p-subgroup", False, str(e))
        return rep.finish()
    rep.add("S is a p-subgroup", sgroup_ok, len(L.S))
    subs = L.subgroups_S
    subset = set(subs)
    full = Sg.full
    delta = L.Delta
    bad = [P for P in delta if P not in subset]
    rep.add("objects are subgroups of S", not bad, [L.s_mask_to_elems(P) for P in bad[:1]])
    rep.add("S is an object", full in delta)
    bad = [(P, Q) for P in delta for Q in subs if P & ~Q == 0 and Q not in delta]
    rep.add("Delta overgroup-closed", not bad,
            [L.s_mask_to_elems(Q) for _, Q in bad[:1]])

    cs = L._conjS()
    sf = [L.Sf(f) for f in range(n)]
    bad = [f for f in range(n) if sf[f] not in delta]
    rep.add("S_f is an object for every f", not bad, bad[:1])
    bad = []
    for f in range(n):
        c = cs[f]
        if sf[f] not in subset:
            bad.append(f)
            continue
        for i in c:
            for j in c:
                k = Sg.rows[i][j]
                if c.get(k) != Sg.rows[c[i]][c[j]]:
                    bad.append(f)
                    break
            if bad and bad[-1] == f:
                break
    rep.add("c_f is a homomorphism on S_f", not bad, bad[:1])
    if bad:
        return rep.finish()
    bad = [f for f in range(n) if L.conj_mask(sf[f], f) != sf[inv[f]]]
    rep.add("S_f^f = S_(f^-1)", not bad, bad[:1])
    bad = []
    for P in delta:
        for f in range(n):
            if P & ~sf[f] == 0 and L.conj_mask(P, f) not in delta:
                bad.append((P, f))
                break
    rep.add("Delta closed under conjugation", not bad,
            [[L.s_mask_to_elems(P), f] for P, f in bad[:1]])

    # D = D_Delta on pairs
    bad = None
    for f in range(n):
        cf = cs[f]
        for g in range(n):
            sfg = mask_of(i for i, j in cf.items() if (sf[g] >> j) & 1)
            if (prod[f][g] >= 0) != (sfg in delta):
                bad = [f, g]
                break
        if bad:
            break
    rep.add("pairs defined exactly on D_Delta", bad is None, bad)

    bad = None
    for f in range(n):
        for g in range(n):
            h = prod[f][g]
            if h < 0:
                continue
            for i, j in cs[f].items():
                k = cs[g].get(j)
                if k is not None and cs[h].get(i) != k:
                    bad = [f, g, L.S[i]]
                    break
            if bad:
                break
        if bad:
            break
    rep.add("conjugation composes along pairs", bad is None, bad)

    if rep.consistent:
        trans = _transitions(L, subs)
        indelta = [P in delta for P in subs]
        idx = {P: k for k, P in enumerate(subs)}
        leq = [[1 if a & ~b == 0 else 0 for b in subs] for a in subs]
        sfstate = [idx[sf[f]] for f in range(n)]
        start = idx[full]
        want = n if exhaustive else (depth or caps().depth)
        if budget is None:
            budget = caps().words or kernels.WORD_BUDGET
        counts = word_counts(trans, indelta, start, min(want, 64))
        eff = want
        if not exhaustive:
            while eff > 2 and sum(counts[:eff]) > budget:
                eff -= 1
        eff = min(eff, 60)
        nat = kernels.native
        code, word, checked = kernels.scan_words(
            nat(prod), inv, u, nat(trans), indelta, leq, sfstate, start, eff, 1 << 62)
        wit = {"depth": eff, "requested_depth": want, "words": checked}
        if code > 0:
            wit.update(word=list(word), reason=_CODES[code])
        rep.add("word axioms", code == 0, wit)

    # maximality: S is a Sylow subgroup of the group N_L(S)
    if full in delta:
        NS = L.normalizer_of_s(full)
        try:
            H, _ = L.group_of(NS)
            ok = p_part(H.n, L.p) == len(L.S)
        except (LocalityError, GroupError):
            ok = False
        rep.add("S maximal p-subgroup", ok, {"|N_L(S)|": len(NS), "|S|": len(L.S)})
    return rep.finish()


# -- partial subgroups ---------------------------------------------------------

def is_partial_subgroup(L, X):
    X = set(X)
    if L.unit not in X:
        return False
    for f in X:
        if L.inv[f] not in X:
            return False
        row = L.prod[f]
        for g in X:
            h = row[g]
            if h >= 0 and h not in X:
                return False
    return True


def is_partial_normal(L, X):
    X = set(X)
    if not is_partial_subgroup(L, X):
        return False
    for f in range(L.n):
        for x in X:
            if L.in_Df(x, f) and L.conj(x, f) not in X:
                return False
    return True


def op_core_locality(L):
    """Largest P <= S with N_L(P) = L, cross-checked by the fixpoint of
    intersecting S_w over all words."""
    best = 0
    for P in L.subgroups_S:
        if len(L.normalizer_of_s(P)) == L.n and popcount(P) > popcount(best):
            best = P
    cs = L._conjS()
    X = L.Sgroup.full
    while True:
        Y = X
        for f in range(L.n):
            c = cs[f]
            Y &= mask_of(i for i in members(Y) if i in c and (X >> c[i]) & 1)
        if Y == X:
            break
        X = Y
    assert X == best, "O_p(L) characterizations disagree"
    return best


# -- fusion systems -----------------------------------------------------------

def conj_maps(L, elems=None, within=None):
    """c_f restricted to S_f (meet ``within``) as maps on S positions."""
    cs = L._conjS()
    m = len(L.S)
    out = []
    for f in (range(L.n) if elems is None else elems):
        phi = [-1] * m
        for i, j in cs[f].items():
            if within is None or ((within >> i) & 1 and (within >> j) & 1):
                phi[i] = j
        out.append(tuple(phi))
    return out


def fusion_of_locality(L):
    if "F" not in L._cache:
        L._cache["F"] = fusion_closure(L.Sgroup, L.p, sorted(set(conj_maps(L))), name=f"F_S({L.name})")
    return L._cache["F"]


def fusion_of_partial_subgroup(L, H):
    """F_{S meet H}(H): generated by c_h on S_h meet H for h in H."""
    H = set(H)
    top = mask_of(i for i, x in enumerate(L.S) if x in H)
    return fusion_closure(L.Sgroup, L.p, sorted(set(conj_maps(L, sorted(H), within=top))), top=top)


# -- restriction ----------------------------------------------------------------

def restrict_locality(L, delta0, name=""):
    """L restricted to the F-closed subfamily delta0 of Delta."""
    delta0 = frozenset(delta0)
    if not delta0 or not delta0 <= L.Delta:
        raise LocalityError("restricted object set must be a non-empty subset of Delta")
    F = fusion_of_locality(L)
    if not _f_closed_local(L, F, delta0):
        raise LocalityError("restricted object set is not F_S(L)-closed")
    keep = [f for f in range(L.n) if L.Sf(f) in delta0]
    pos = {f: i for i, f in enumerate(keep)}
    cs = L._conjS()
    m = len(keep)
    prod = [[-1] * m for _ in range(m)]
    for i, f in enumerate(keep):
        for j, g in enumerate(keep):
            h = L.prod[f][g]
            if h < 0:
                continue
            sg = L.Sf(g)
            sfg = mask_of(a for a, b in cs[f].items() if (sg >> b) & 1)
            if sfg in delta0:
                prod[i][j] = pos[h]
    out = Locality(L.p, [pos[L.inv[f]] for f in keep], prod, pos[L.unit],
                   [pos[x] for x in L.S], delta0, name=name or f"{L.name}|res",
                   origin={"parent": L, "elements": keep})
    return out


def _f_closed_local(L, F, delta):
    subs = L.subgroups_S
    for P in delta:
        if any(P & ~Q == 0 and Q not in delta for Q in subs):
            return False
        if not set(F.conjugates(P)) <= delta:
            return False
    return True


# -- Frattini splitting ----------------------------------------------------

def frattini_split(L, N, g):
    """n in N and f in N_L(T) with (n, f) in D, nf = g and S_g = S_(n,f)."""
    N = sorted(set(N))
    T = mask_of(i for i, x in enumerate(L.S) if x in set(N))
    NT = L.normalizer_of_s(T)
    Sg = L.Sf(g)
    for n in N:
        for f in NT:
            if L.prod[n][f] == g and L.compute_Sw((n, f)) == Sg and L.word_in_domain((n, f)):
                return n, f
    raise AssertionError(f"no Frattini splitting for {g}: input is not a locality with partial normal N")


# -- cosets and quotients ------------------------------------------------------

class CosetPartition:
    def __init__(self, N, blocks):
        self.N = N
        self.blocks = blocks
        self.rep_map = {}
        for b, block in enumerate(blocks):
            for x in block:
                self.rep_map[x] = b

    def __len__(self):
        return len(self.blocks)


def cosets(L, N):
    N = sorted(set(N))
    cos = {}
    for f in range(L.n):
        cos[f] = frozenset(L.prod[n][f] for n in N if L.prod[n][f] >= 0 and L.word_in_domain((n, f)))
    distinct = set(cos.values())
    maximal = [c for c in distinct if not any(c < d for d in distinct)]
    maximal.sort(key=min)
    return CosetPartition(N, [sorted(c) for c in maximal])


def is_partition(L, part):
    seen = []
    for b in part.blocks:
        seen.extend(b)
    return sorted(seen) == list(range(L.n))


def quotient_locality(L, N, name=""):
    """L/N with the induced product; returns (quotient, projection list)."""
    part = cosets(L, N)
    if not is_partition(L, part):
        raise LocalityError("maximal cosets do not partition L")
    proj = [part.rep_map[f] for f in range(L.n)]
    m = len(part.blocks)
    prod = [[-1] * m for _ in range(m)]
    for f in range(L.n):
        for g in range(L.n):
            h = L.prod[f][g]
            if h < 0:
                continue
            a, b, c = proj[f], proj[g], proj[h]
            if prod[a][b] not in (-1, c):
                raise AssertionError(f"quotient product is not well defined at ({f}, {g})")
            prod[a][b] = c
    inv = [proj[L.inv[part.blocks[b][0]]] for b in range(m)]
    Sbar = sorted({proj[x] for x in L.S})
    Spos = {x: i for i, x in enumerate(Sbar)}
    delta = set()
    for P in L.Delta:
        delta.add(mask_of(Spos[proj[x]] for x in L.s_mask_to_elems(P)))
    Q = Locality(L.p, inv, prod, proj[L.unit], Sbar, delta, name=name or f"{L.name}/N",
                 origin={"parent": L, "projection": proj})
    return Q, proj


def check_projection(Lsrc, Ldst, mp):
    """Homomorphism of partial groups, projection onto the domain, and the
    object condition; also reports the kernel."""
    rep = Report("projection")
    bad = None
    for f in range(Lsrc.n):
        if mp[Lsrc.inv[f]] != Ldst.inv[mp[f]]:
            bad = ["inverse", f]
            break
    hom_bad = None
    image_pairs = set()
    for f in range(Lsrc.n):
        for g in range(Lsrc.n):
            h = Lsrc.prod[f][g]
            if h < 0:
                continue
            if Ldst.prod[mp[f]][mp[g]] != mp[h]:
                hom_bad = [f, g]
                break
            image_pairs.add((mp[f], mp[g]))
        if hom_bad:
            break
    rep.add("homomorphism", bad is None and hom_bad is None, bad or hom_bad)
    dst_pairs = {(a, b) for a in range(Ldst.n) for b in range(Ldst.n) if Ldst.prod[a][b] >= 0}
    surj = set(mp) == set(range(Ldst.n)) and image_pairs == dst_pairs
    rep.add("projection of partial groups", surj and hom_bad is None,
            sorted(dst_pairs - image_pairs)[:1])
    objs = set()
    for P in Lsrc.Delta:
        objs.add(Ldst.elems_to_s_mask({mp[x] for x in Lsrc.s_mask_to_elems(P)} & set(Ldst.S))
                 if all(mp[x] in Ldst.pos for x in Lsrc.s_mask_to_elems(P)) else -1)
    rep.add("object sets correspond", objs == set(Ldst.Delta))
    ker = [f for f in range(Lsrc.n) if mp[f] == Ldst.unit]
    rep.add("kernel is partial normal", is_partial_normal(Lsrc, ker), {"|kernel|": len(ker)})
    return rep.finish()


# -- flags ----------------------------------------------------------------------

def normalizer_group(L, P):
    """N_L(P) for an object P, as (FiniteGroup, elements)."""
    c = L._cache.setdefault("NLgroup", {})
    if P not in c:
        c[P] = L.group_of(L.normalizer_of_s(P))
    return c[P]


def is_cr_complete(L):
    return cr_set(fusion_of_locality(L)) <= L.Delta


def is_objective_char_p(L, objects=None):
    for P in (L.Delta if objects is None else objects):
        H, _ = normalizer_group(L, P)
        if not is_characteristic_p(H, L.p):
            return False
    return True


def locality_flags(L):
    rep = Report("locality flags")
    F = fusion_of_locality(L)
    cr = is_cr_complete(L)
    oc = is_objective_char_p(L)
    rep.add("cr-complete", cr, sorted(L.s_mask_to_elems(P) for P in cr_set(F) - L.Delta), required=False)
    rep.add("objective characteristic p", oc, required=False)
    rep.add("linking", cr and oc, required=False)
    rep.add("F_S(L) Delta-generated", is_delta_generated(F, L.Delta))
    rep.add("F_S(L) Delta-saturated", is_delta_saturated(F, L.Delta))
    if cr:
        rep.add("cr-complete implies saturated", is_saturated(F))
    return rep.finish()


# -- groups and quotients -------------------------------------------------------

def quotient_group(G, N):
    """G/N for a normal subgroup (mask) of a FiniteGroup, as a FiniteGroup."""
    N = _m(N)
    blocks, index = [], {}
    for g in range(G.n):
        if g in index:
            continue
        coset = sorted(G.mul(n, g) for n in members(N))
        for x in coset:
            index[x] = len(blocks)
        blocks.append(coset)
    mult = [[index[G.mul(a[0], b[0])] for b in blocks] for a in blocks]
    return FiniteGroup(mult)


def locality_as_group(L):
    """The locality as a FiniteGroup when every pair is defined, else None."""
    if any(v < 0 for row in L.prod for v in row):
        return None
    mult = [row[:] for row in L.prod]
    if L.unit != 0:
        perm = [L.unit] + [x for x in range(L.n) if x != L.unit]
        pos = {x: i for i, x in enumerate(perm)}
        mult = [[pos[L.prod[a][b]] for b in perm] for a in perm]
    try:
        return FiniteGroup(mult)
    except GroupError:
        return None


def isomorphic_groups(A, B):
    """Exhaustive search for a table isomorphism (small groups only)."""
    if A.n != B.n:
        return None
    n = A.n
    oa = [A.elem_order(x) for x in range(n)]
    ob = [B.elem_order(x) for x in range(n)]
    if sorted(oa) != sorted(ob):
        return None
    for perm in itertools.permutations(range(1, n)):
        phi = (0,) + perm
        if any(oa[x] != ob[phi[x]] for x in range(n)):
            continue
        if all(phi[A.rows[x][y]] == B.rows[phi[x]][phi[y]] for x in range(n) for y in range(n)):
            return phi
    return None
