"""Kernels of localities: the cr-completeness and characteristic-p
equivalences, the quotient by p'-cores, and products NH.

Subgroups of S are position masks over ``L.S`` as in :mod:`ploc`; element
sets of a locality are sorted lists of its element indices.
"""
from .fus import (
    FusionSystem, centric_set, cr_set, fusion_closure, image_of,
    is_saturated, normalizer_subsystem, restrict, subsystem_relations,
)
from .grp import (
    is_characteristic_p, mask_of, members, p_part, p_prime_core, popcount,
)
from .ploc import (
    Locality, LocalityError, _transitions, check_projection, cosets, fusion_of_locality,
    fusion_of_partial_subgroup, is_cr_complete, is_objective_char_p, is_partial_normal,
    is_partial_subgroup, isomorphic_groups, locality_as_group, normalizer_group,
    op_core_locality, quotient_group, quotient_locality, restrict_locality, validate_locality,
)
from .report import Report


class KernelError(LocalityError):
    """A kernel precondition failed."""


def _s_mask(L, elems):
    es = set(elems)
    return mask_of(i for i, x in enumerate(L.S) if x in es)


def _compress(mask, within):
    """Re-index the bits of ``mask`` (inside ``within``) by rank in ``within``."""
    out = 0
    for k, i in enumerate(members(within)):
        if (mask >> i) & 1:
            out |= 1 << k
    return out


def sub_partial_group(L, elems, S_elems, delta_elems, name="", check_closed=True):
    """Restrict the pair table of L to ``elems``; objects are given as lists
    of elements of L."""
    elems = sorted(set(elems))
    pos = {x: i for i, x in enumerate(elems)}
    m = len(elems)
    prod = [[-1] * m for _ in range(m)]
    for i, f in enumerate(elems):
        row = L.prod[f]
        for j, g in enumerate(elems):
            h = row[g]
            if h >= 0:
                if h not in pos:
                    if check_closed:
                        raise KernelError(f"subset is not closed under the product: ({f}, {g})")
                    continue
                prod[i][j] = pos[h]
    inv = [pos[L.inv[f]] for f in elems]
    Spos = sorted(pos[x] for x in S_elems)
    sl = {x: k for k, x in enumerate(Spos)}
    delta = [mask_of(sl[pos[x]] for x in P) for P in delta_elems]
    return Locality(L.p, inv, prod, pos[L.unit], Spos, delta, name=name,
                    origin={"parent": L, "elements": elems})


# -- kernels -------------------------------------------------------------------

def is_kernel(L, N):
    N = sorted(set(N))
    if not is_partial_normal(L, N):
        raise KernelError("N is not a partial normal subgroup")
    T = _s_mask(L, N)
    return all((P & T) in L.Delta for P in L.Delta)


class KernelTriple:
    """(N, Gamma, T) for a kernel N of L, with its locality and fusion data."""

    def __init__(self, L, N):
        self.L = L
        self.N = sorted(set(N))
        self.T = _s_mask(L, self.N)
        self.Gamma = frozenset(P & self.T for P in L.Delta)
        self.K = sub_partial_group(
            L, self.N, L.s_mask_to_elems(self.T),
            [L.s_mask_to_elems(P) for P in self.Gamma], name=f"kernel({L.name})")
        self.F = fusion_of_locality(L)
        whole = len(self.N) == L.n
        self.E = self.F if whole else fusion_of_partial_subgroup(L, self.N)

    def kernel_cr_complete(self):
        return cr_set(self.E) <= self.Gamma

    def kernel_objective_char_p(self):
        for P in self.Gamma:
            if not is_characteristic_p(self.n_group(P)[0], self.L.p):
                return False
        return True

    def n_group(self, P):
        """N_N(P) as a group, for P in Gamma."""
        Ns = set(self.N)
        return self.L.group_of([f for f in self.L.normalizer_of_s(P) if f in Ns])


def kernel_triple(L, N, check=True):
    """Build and certify (N, Gamma, T); raises KernelError with the failing
    clause."""
    if not is_kernel(L, N):
        raise KernelError("N is not a kernel: some P meet N is not an object")
    K = KernelTriple(L, N)
    if check:
        rep = kernel_report(K)
        if not rep.consistent:
            bad = [c["name"] for c in rep.clauses if c["verdict"] == "fail"]
            raise KernelError(f"kernel invariant violated: {bad}")
        K.report = rep
    return K


def kernel_report(K):
    L = K.L
    rep = Report("kernel")
    v = validate_locality(K.K)
    rep.add("(N, Gamma, T) is a locality", v.consistent,
            [c["name"] for c in v.clauses if c["verdict"] == "fail"])
    rep.add("Gamma = objects inside T", K.Gamma == frozenset(P for P in L.Delta if P & ~K.T == 0))
    rep.add("Gamma closed under F-conjugacy",
            all(set(K.F.conjugates(P)) <= K.Gamma for P in K.Gamma))
    opL = op_core_locality(L)
    opN = op_core_locality(K.K)
    rep.add("O_p(N) = O_p(L) meet N", _compress(opL & K.T, K.T) == opN)
    rel = subsystem_relations(K.F, K.E)
    rep.add("E is F-invariant", rel.value("invariant"))
    same = fusion_of_locality(K.K)
    rep.add("F_T(N) agrees with the kernel locality", _same_store(K.E, same, K.T))
    return rep.finish()


def _transport(F, perm, Snew, top):
    """Rewrite the store of F along ``perm`` (old position -> new position)."""
    m = Snew.n
    store = {}
    for maps in F.store.values():
        for phi in maps:
            psi = [-1] * m
            for x, y in enumerate(phi):
                if y >= 0:
                    psi[perm[x]] = perm[y]
            psi = tuple(psi)
            d = mask_of(perm[x] for x, y in enumerate(phi) if y >= 0)
            store.setdefault((d, image_of(psi)), set()).add(psi)
    return FusionSystem(Snew, F.p, store, top=top)


def _same_store(E, G, within):
    """E lives in a larger ambient group over ``within``; G lives over its own
    S whose positions are the ranks inside ``within``."""
    perm = {i: k for k, i in enumerate(members(within))}
    if E.top != within:
        return False
    out = {}
    for maps in E.store.values():
        for phi in maps:
            psi = [-1] * G.S.n
            for x, y in enumerate(phi):
                if y >= 0:
                    psi[perm[x]] = perm[y]
            psi = tuple(psi)
            out.setdefault((mask_of(perm[x] for x, y in enumerate(phi) if y >= 0), image_of(psi)), set()).add(psi)
    return {k: frozenset(v) for k, v in out.items()} == G.store


# -- domain reduction -------------------------------------------------------------

def domains_agree(L, T, gamma):
    """D_Gamma = D_Delta for all words, by exploring the product of the two
    chain automata (one over subgroups of S, one over subgroups of T)."""
    subs = L.subgroups_S
    trans = _transitions(L, subs)
    idx = {P: k for k, P in enumerate(subs)}
    tsubs = [P for P in subs if P & ~T == 0]
    tidx = {P: k for k, P in enumerate(tsubs)}
    cs = L._conjS()
    ttrans = []
    for f in range(L.n):
        c = cs[f]
        ttrans.append([tidx[mask_of(c[i] for i in members(Y) if i in c) & T] for Y in tsubs])
    start = (idx[L.Sgroup.full], tidx[T])
    seen = {start}
    stack = [(start, ())]
    while stack:
        (a, b), w = stack.pop()
        ind = subs[a] in L.Delta
        if ind != (tsubs[b] in gamma):
            return False, list(w)
        if not ind:
            continue
        for f in range(L.n):
            st = (trans[f][a], ttrans[f][b])
            if st not in seen:
                seen.add(st)
                stack.append((st, w + (f,)))
    return True, None


def construct_with_kernel(L, elems, S_elems, N, gamma, name=""):
    """Locality on ``elems`` (a subset of L closed under its pairs) with
    objects {P <= S : P meet T in Gamma}.

    ``gamma`` holds subgroups of T as element lists.  Returns
    (locality, report); the locality is None when a hypothesis fails.
    """
    rep = Report("construct-with-kernel")
    elems = sorted(set(elems))
    S_elems = sorted(S_elems)
    Nset = set(N)
    T_elems = [x for x in S_elems if x in Nset]
    # work in the partial group with all objects first, to read off S-data
    try:
        full = sub_partial_group(L, elems, S_elems, [S_elems], name=name)
    except KernelError as e:
        rep.na("elements closed under the product", str(e))
        return None, rep.finish()
    pos = {x: i for i, x in enumerate(elems)}
    try:
        full.Sgroup
    except Exception as e:
        rep.na("S is a subgroup", str(e))
        return None, rep.finish()
    T = full.elems_to_s_mask(pos[x] for x in T_elems)
    gam = frozenset(full.elems_to_s_mask(pos[x] for x in P) for P in gamma)
    subs = full.subgroups_S
    tsubs = [P for P in subs if P & ~T == 0]
    if not gam <= set(tsubs):
        rep.na("Gamma consists of subgroups of T")
        return None, rep.finish()
    up = all(Q in gam for P in gam for Q in tsubs if P & ~Q == 0)
    conj_ok = True
    for P in gam:
        for f in range(full.n):
            if P & ~full.Sf(f) == 0:
                img = full.conj_mask(P, f)
                if img & ~T == 0 and img not in gam:
                    conj_ok = False
    delta = frozenset(P for P in subs if (P & T) in gam)
    Lnew = Locality(L.p, full.inv, full.prod, full.unit, full.S, delta, name=name,
                    origin={"parent": L, "elements": elems})
    Nl = sorted(pos[x] for x in N if x in pos)
    normal = is_partial_normal(Lnew, Nl)
    agree, wit = domains_agree(Lnew, T, gam) if up and conj_ok else (False, None)
    for cname, ok, w in (("Gamma overgroup-closed in T", up, None),
                         ("Gamma closed under conjugates in T", conj_ok, None),
                         ("N partial normal", normal, None),
                         ("D = D_Gamma", agree, wit)):
        if not ok:
            rep.na(cname, w)
    if not rep.applicable:
        return None, rep.finish()
    v = validate_locality(Lnew)
    rep.add("locality axioms", v.consistent, [c["name"] for c in v.clauses if c["verdict"] == "fail"])
    K = KernelTriple(Lnew, Nl)
    rep.add("kernel is (N, Gamma, T)", is_kernel(Lnew, Nl) and K.Gamma == gam and K.T == T)
    return Lnew, rep.finish()


# -- the equivalences ---------------------------------------------------------------

def theorem_b_report(L, N):
    rep = Report("theorem-b")
    try:
        if not is_kernel(L, N):
            rep.na("N is a kernel")
            return rep.finish()
    except KernelError as e:
        rep.na("N is partial normal", str(e))
        return rep.finish()
    K = KernelTriple(L, N)
    a = is_cr_complete(L)
    b = K.kernel_cr_complete()
    rep.add("L cr-complete", a, sorted(L.s_mask_to_elems(P) for P in cr_set(K.F) - L.Delta), required=False)
    rep.add("kernel cr-complete", b, sorted(L.s_mask_to_elems(P) for P in cr_set(K.E) - K.Gamma), required=False)
    rep.add("equivalence", a == b, [a, b])
    if a and b:
        rel = subsystem_relations(K.F, K.E)
        for name in ("stronglyClosed", "Aut_F(T)-invariant", "Frattini condition", "invariant",
                     "E saturated", "weaklyNormal", "extension condition", "normal"):
            rep.add(f"E normal in F: {name}", rel.value(name))
    return rep.finish()


def theorem_c_report(L, N):
    rep = Report("theorem-c")
    try:
        if not is_kernel(L, N):
            rep.na("N is a kernel")
            return rep.finish()
    except KernelError as e:
        rep.na("N is partial normal", str(e))
        return rep.finish()
    K = KernelTriple(L, N)
    p = L.p
    c1 = is_objective_char_p(L)
    kobj = K.kernel_objective_char_p()
    NT, _ = normalizer_group(L, K.T)
    nt = is_characteristic_p(NT, p)
    CT, _ = L.group_of(L.centralizer_of_s(K.T))
    ct = is_characteristic_p(CT, p)
    c4 = all(is_characteristic_p(normalizer_group(L, P)[0], p) for P in K.Gamma)
    c2, c3 = kobj and nt, kobj and ct
    rep.add("(i) L objective char p", c1, required=False)
    rep.add("(ii) kernel objective char p and N_L(T) char p", c2, {"kernel": kobj, "N_L(T)": nt}, required=False)
    rep.add("(iii) kernel objective char p and C_L(T) char p", c3, {"kernel": kobj, "C_L(T)": ct}, required=False)
    rep.add("(iv) N_L(P) char p for P in Gamma", c4, required=False)
    rep.add("all four agree", c1 == c2 == c3 == c4, [c1, c2, c3, c4])
    crL = is_cr_complete(L)
    crK = K.kernel_cr_complete()
    linkL = crL and c1
    linkK = crK and kobj
    rep.add("L linking", linkL, required=False)
    rep.add("kernel linking", linkK, required=False)
    rep.add("linking equivalence", linkL == (linkK and nt) == (linkK and ct), [linkL, linkK and nt, linkK and ct])
    return rep.finish()


# -- quotient identities -------------------------------------------------------------

def quotient_report(L, N):
    """Maximal cosets partition L and L/N is a group isomorphic to
    N_L(T)/N_N(T)."""
    rep = Report("quotient-iso")
    K = KernelTriple(L, N)
    part = cosets(L, K.N)
    seen = sorted(x for b in part.blocks for x in b)
    rep.add("cosets partition L", seen == list(range(L.n)), {"blocks": len(part.blocks)})
    Q, proj = quotient_locality(L, K.N)
    G = locality_as_group(Q)
    rep.add("quotient is a group", G is not None, {"order": Q.n})
    NT, el = normalizer_group(L, K.T)
    Ns = set(K.N)
    NNT = mask_of(i for i, x in enumerate(el) if x in Ns)
    H = quotient_group(NT, NNT)
    iso = isomorphic_groups(G, H) if G is not None and G.n <= 8 else None
    if G is not None and G.n > 8:
        rep.add("isomorphic to N_L(T)/N_N(T)", G.n == H.n and _same_orders(G, H), "orders only")
    else:
        rep.add("isomorphic to N_L(T)/N_N(T)", iso is not None, list(iso) if iso else None)
    pr = check_projection(L, Q, proj)
    rep.add("natural projection", pr.consistent)
    ker = [f for f in range(L.n) if proj[f] == Q.unit]
    rep.add("projection kernel is N", ker == K.N)
    return rep.finish()


def _same_orders(A, B):
    return sorted(A.elem_order(x) for x in range(A.n)) == sorted(B.elem_order(x) for x in range(B.n))


# -- the p'-core quotient -------------------------------------------------------------

def theta_subgroup(L0, N0, gamma0):
    """Union of O_p'(N_N(P)) over P in gamma0, as sorted element list."""
    Ns = set(N0)
    out = set()
    for P in gamma0:
        el = [f for f in L0.normalizer_of_s(P) if f in Ns]
        G, el = L0.group_of(el)
        out.update(el[i] for i in members(p_prime_core(G, L0.p).mask))
    return sorted(out)


def linking_kernel_quotient(L, N, gamma0=None):
    """Restrict to overgroups of gamma0, divide by Theta, and certify the
    resulting kernel as a linking locality over the same fusion systems.
    Returns (quotient locality or None, report)."""
    rep = Report("theta-quotient")
    K = kernel_triple(L, N)
    E, F = K.E, K.F
    if not K.kernel_cr_complete():
        rep.na("kernel cr-complete")
        return None, rep.finish()
    Ec = centric_set(E)
    if gamma0 is None:
        gamma0 = frozenset(P for P in K.Gamma if P in Ec)
    gamma0 = frozenset(gamma0)
    ok_cr = cr_set(E) <= gamma0
    ok_sub = gamma0 <= (K.Gamma & Ec)
    ok_closed = all(set(E.conjugates(P)) <= gamma0 for P in gamma0) and all(
        Q in gamma0 for P in gamma0 for Q in E.subgroups if P & ~Q == 0)
    ok_inv = True
    for alpha in F.aut(K.T):
        for P in gamma0:
            if image_of(restrict(alpha, P)) not in gamma0:
                ok_inv = False
    for cname, ok in (("E^cr in Gamma0", ok_cr), ("Gamma0 in Gamma meet E^c", ok_sub),
                      ("Gamma0 E-closed", ok_closed), ("Gamma0 Aut_F(T)-invariant", ok_inv)):
        if not ok:
            rep.na(cname)
    if not rep.applicable:
        return None, rep.finish()
    delta0 = frozenset(P for P in L.subgroups_S if any(Q & ~P == 0 for Q in gamma0))
    L0 = restrict_locality(L, delta0, name=f"{L.name}|0")
    keep = L0.origin["elements"]
    pos = {f: i for i, f in enumerate(keep)}
    Ns = set(K.N)
    N0 = [pos[f] for f in keep if f in Ns]
    # (a)
    v0 = validate_locality(L0)
    rep.add("(a) L0 is a locality", v0.consistent)
    K0 = kernel_triple(L0, N0)
    rep.add("(a) kernel objects are Gamma0", K0.Gamma == gamma0)
    rep.add("(a) L0 cr-complete", is_cr_complete(L0))
    rep.add("(a) kernel of L0 cr-complete", K0.kernel_cr_complete())
    F0 = fusion_of_locality(L0)
    rep.add("(a) F_S(L0) = F", F0.store == F.store)
    rep.add("(a) F_T(N0) = E", K0.E.store == E.store)
    # (b)
    theta = theta_subgroup(L0, N0, gamma0)
    rep.add("(b) Theta partial subgroup", is_partial_subgroup(L0, theta), {"|Theta|": len(theta)})
    rep.add("(b) Theta partial normal", is_partial_normal(L0, theta))
    rep.add("(b) Theta meet S = 1", set(theta) & set(L0.S) == {L0.unit})
    if not rep.consistent:
        return None, rep.finish()
    # (c)
    Q, proj = quotient_locality(L0, theta, name=f"{L.name}/Theta")
    rep.add("(c) projection injective on S", len({proj[x] for x in L0.S}) == len(L0.S))
    perm = {i: Q.pos[proj[L0.S[i]]] for i in range(len(L0.S))}
    dq = frozenset(mask_of(perm[i] for i in members(P)) for P in delta0)
    rep.add("(c) objects of the quotient are Delta0", dq == Q.Delta)
    vq = validate_locality(Q)
    rep.add("(c) quotient is a locality", vq.consistent,
            [c["name"] for c in vq.clauses if c["verdict"] == "fail"])
    FQ = fusion_of_locality(Q)
    rep.add("(c) F_S unchanged", _transport(F, perm, FQ.S, FQ.top).store == FQ.store)
    Nbar = sorted({proj[f] for f in N0})
    KQ = kernel_triple(Q, Nbar)
    Tq = mask_of(perm[i] for i in members(K.T))
    rep.add("(c) kernel over T with objects Gamma0",
            KQ.T == Tq and KQ.Gamma == frozenset(mask_of(perm[i] for i in members(P)) for P in gamma0))
    rep.add("(c) kernel cr-complete", KQ.kernel_cr_complete())
    rep.add("(c) kernel objective char p", KQ.kernel_objective_char_p())
    rep.add("(c) E unchanged", _transport(E, perm, FQ.S, Tq).store == KQ.E.store)
    rep.add("quotient is a projection", check_projection(L0, Q, proj).consistent)
    return Q, rep.finish()


# -- products NH ----------------------------------------------------------------------

class ProductInstance:
    def __init__(self, **kw):
        self.__dict__.update(kw)


def object_law(L, Tstar):
    """P in Delta iff P meet T* in Delta, for every subgroup P of S."""
    for P in L.subgroups_S:
        if (P in L.Delta) != ((P & Tstar) in L.Delta):
            return False, L.s_mask_to_elems(P)
    return True, None


def product_nh(L, N, H, Tstar, gamma_n=None):
    """Products NH for H inside N_L(T*).  ``Tstar`` is a position mask in S;
    ``H`` a list of elements.  Returns (ProductInstance or None, report)."""
    rep = Report("product-nh")
    N = sorted(set(N))
    H = sorted(set(H))
    Ns, Hs = set(N), set(H)
    p = L.p
    if Tstar not in L.Delta:
        rep.na("T* is an object")
        return None, rep.finish()
    law, wit = object_law(L, Tstar)
    if not law:
        rep.na("object law P in Delta iff P meet T* in Delta", wit)
        return None, rep.finish()
    try:
        if not is_kernel(L, N):
            rep.na("N is a kernel")
            return None, rep.finish()
    except KernelError as e:
        rep.na("N partial normal", str(e))
        return None, rep.finish()
    NLT = L.normalizer_of_s(Tstar)
    NLTs = set(NLT)
    G, el = L.group_of(NLT)
    gpos = {x: i for i, x in enumerate(el)}
    Hm = mask_of(gpos[x] for x in H) if Hs <= NLTs else None
    from .grp import is_subgroup, generated
    if Hm is None or not is_subgroup(G, Hm):
        rep.na("H is a subgroup of N_L(T*)")
        return None, rep.finish()
    T = _s_mask(L, N)
    K = KernelTriple(L, N)
    gamma = K.Gamma if gamma_n is None else frozenset(gamma_n)
    Sset = set(L.S)
    SH = [x for x in H if x in Sset]
    if popcount(mask_of(gpos[x] for x in SH)) != p_part(len(H), p):
        rep.na("S meet H is Sylow in H")
        return None, rep.finish()

    # (a)
    NH = sorted({L.prod[n][h] for n in N for h in H if L.prod[n][h] >= 0})
    HN = sorted({L.prod[h][n] for h in H for n in N if L.prod[h][n] >= 0})
    rep.add("(a) NH = HN", NH == HN, {"|NH|": len(NH), "|HN|": len(HN)})
    rep.add("(a) NH partial subgroup", is_partial_subgroup(L, NH))
    # (b)
    NNT = [x for x in NLT if x in Ns]
    Ht_mask = generated(G, [gpos[x] for x in NNT + H])
    Ht = sorted(el[i] for i in members(Ht_mask))
    prodset = sorted({L.prod[a][b] for a in NNT for b in H})
    rep.add("(b) N_N(T*)H is a subgroup", prodset == Ht)
    NHs = set(NH)
    NNH_T = [x for x in NLT if x in NHs]
    rep.add("(b) H~ = N_NH(T*)", Ht == NNH_T, {"|H~|": len(Ht)})
    # Sylow data
    S0 = sorted({L.prod[t][s] for t in L.s_mask_to_elems(T) for s in SH})
    rep.add("S0 = T(S meet H) = S meet NH", S0 == sorted(x for x in NH if x in Sset))
    S0g = mask_of(gpos[x] for x in S0)
    rep.add("S0 Sylow in H~", is_subgroup(G, S0g) and popcount(S0g) == p_part(len(Ht), p)
            and S0g & ~Ht_mask == 0)
    rep.add("Sylow product (S meet N)(S meet H) in Syl_p(NH)",
            len(S0) == p_part(len(Ht), p) and set(S0) <= NHs)
    # (c)
    gam_el = [L.s_mask_to_elems(P) for P in gamma]
    L0, crep = construct_with_kernel(L, NH, S0, N, gam_el, name=f"{L.name}:NH")
    rep.merge(crep, "(c) ")
    if L0 is None:
        return None, rep.finish()
    pos = {x: i for i, x in enumerate(NH)}
    N0 = [pos[x] for x in N]
    rep.add("(c) cr-complete", is_cr_complete(L0))
    K0 = kernel_triple(L0, N0)
    # (e)
    F0 = fusion_of_locality(L0)
    rep.add("(e) F0 saturated", is_saturated(F0))
    rel = subsystem_relations(F0, K0.E)
    rep.add("(e) E normal in F0", rel.value("normal"))
    # (d)
    hchar = is_characteristic_p(G, p, within=Ht_mask)
    linking = is_cr_complete(L0) and is_objective_char_p(L0)
    rep.add("(d) H~ char p", hchar, required=False)
    rep.add("(d) (NH, Delta0, S0) linking", linking, required=False)
    rep.add("(d) equivalence", hchar == linking, [hchar, linking])
    rep.add("(d) regular clause", None, "out of scope", required=False)
    rep.add("(b),(e) T0 clauses", None, "out of scope", required=False)
    pi = ProductInstance(ambient=L, N=N, H=H, Tstar=Tstar, GammaN=gamma, S0=S0, Delta0=L0.Delta,
                         NH=NH, Htilde=Ht, locality=L0, kernel=K0, F0=F0)
    return pi, rep.finish()


def frattini_report(L, N):
    """F_S(L) = <F_S(N S), N_F(T)> as morphism stores."""
    rep = Report("frattini")
    K = KernelTriple(L, N)
    F = K.F
    NS = sorted({L.prod[n][s] for n in K.N for s in L.S if L.prod[n][s] >= 0})
    rep.add("NS partial subgroup", is_partial_subgroup(L, NS), {"|NS|": len(NS)})
    FNS = fusion_of_partial_subgroup(L, NS)
    NFT = normalizer_subsystem(F, K.T)
    gens = sorted({phi for maps in FNS.store.values() for phi in maps}
                  | {phi for maps in NFT.store.values() for phi in maps})
    G = fusion_closure(F.S, F.p, gens, top=F.top)
    rep.add("F_S(L) = <F_S(NS), N_F(T)>", G.store == F.store,
            {"|F|": F.morphism_count, "|generated|": G.morphism_count})
    return rep.finish()


def product_report(pi_rep):
    """Consolidated verdict of a product instance (adds the Frattini
    generation of F0 inside NH)."""
    pi, rep = pi_rep
    out = Report("product-report")
    out.merge(rep)
    if pi is None:
        return out.finish()
    out.merge(frattini_report(pi.locality, pi.kernel.N), "F0 ")
    return out.finish()


def normalizer_containment(L, N):
    """When C_N(T) <= T: N_N(T) lies in N_N(T C_S(T))."""
    K = KernelTriple(L, N)
    Ns = set(K.N)
    T = K.T
    CN = [f for f in L.centralizer_of_s(T) if f in Ns]
    if not set(CN) <= set(L.s_mask_to_elems(T)):
        return None
    CS = _s_mask(L, [x for x in L.centralizer_of_s(T) if x in set(L.S)])
    from .grp import generated
    TC = generated(L.Sgroup, members(T | CS))
    NNT = [f for f in L.normalizer_of_s(T) if f in Ns]
    NTC = set(L.normalizer_of_s(TC))
    return all(f in NTC for f in NNT)
