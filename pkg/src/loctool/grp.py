"""Finite groups given by multiplication tables, and their subgroups.

Elements are the integers 0..n-1 with 0 the identity.  A subgroup (indeed
any subset) is stored as a Python int used as a bitmask over those indices.
Conjugation is on the right: ``x^g = g^-1 x g``.
"""
import numpy as np

from . import kernels
from .config import CapExceeded, caps
from .report import Report


class GroupError(ValueError):
    """Malformed group input."""


def members(mask):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(elems):
    m = 0
    for x in elems:
        m |= 1 << x
    return m


def popcount(mask):
    return mask.bit_count()


def is_prime(p):
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def is_p_power(n, p):
    while n > 1 and n % p == 0:
        n //= p
    return n == 1


def p_part(n, p):
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


class FiniteGroup:
    """Small interface for finite groups with elements 0..|G|-1."""

    def __init__(self, mult, name="", perm_gens=None, perms=None, check=True):
        table = np.asarray(mult, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise GroupError("multiplication table must be a non-empty square array")
        n = table.shape[0]
        if n > caps().group_order:
            raise CapExceeded(f"group order {n} exceeds cap {caps().group_order}")
        if table.min() < 0 or table.max() >= n:
            raise GroupError("table entry out of range")
        self.n = n
        self.name = name
        self.perm_gens = perm_gens
        self.perms = perms
        self.table = table.astype(np.int32)
        self.rows = self.table.tolist()
        if check:
            self._check()
        self.inv = [0] * n
        for x in range(n):
            self.inv[x] = self.rows[x].index(0)
        self.native = kernels.native(self.rows)
        self.full = (1 << n) - 1
        self._cache = {}

    def _check(self):
        t = self.table
        n = self.n
        ident = np.arange(n)
        if not (np.array_equal(t[0], ident) and np.array_equal(t[:, 0], ident)):
            raise GroupError("element 0 is not a two-sided identity")
        for x in range(n):
            if 0 not in self.rows[x]:
                raise GroupError(f"element {x} has no right inverse")
            y = self.rows[x].index(0)
            if self.rows[y][x] != 0:
                raise GroupError(f"element {x} has no two-sided inverse")
        for a in range(n):
            lhs = t[t[a]]
            rhs = t[a][t]
            if not np.array_equal(lhs, rhs):
                b, c = np.argwhere(lhs != rhs)[0]
                raise GroupError(f"table is not associative at ({a}, {int(b)}, {int(c)})")

    @property
    def order(self):
        return self.n

    def mul(self, a, b):
        return self.rows[a][b]

    def conj(self, x, g):
        return self.rows[self.rows[self.inv[g]][x]][g]

    def prod(self, word):
        x = 0
        for g in word:
            x = self.rows[x][g]
        return x

    def power(self, x, k):
        y = 0
        for _ in range(k):
            y = self.rows[y][x]
        return y

    def elem_order(self, x):
        k, y = 1, x
        while y:
            y = self.rows[y][x]
            k += 1
        return k

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"<FiniteGroup {self.name or '?'} of order {self.n}>"


class Subgroup:
    """A subgroup of ``group`` held as a bitmask."""

    __slots__ = ("group", "mask")

    def __init__(self, group, mask):
        self.group = group
        self.mask = mask

    @property
    def order(self):
        return popcount(self.mask)

    @property
    def elements(self):
        return members(self.mask)

    def __contains__(self, x):
        return (self.mask >> x) & 1 == 1

    def __le__(self, other):
        return self.mask & ~_m(other) == 0

    def __eq__(self, other):
        if isinstance(other, Subgroup):
            return self.group is other.group and self.mask == other.mask
        return NotImplemented

    def __hash__(self):
        return hash(self.mask)

    def __repr__(self):
        return f"<Subgroup of order {self.order} in {self.group.name or '?'}>"


class GroupHom:
    """Homomorphism from a subgroup into a group, given pointwise."""

    def __init__(self, domain, codomain, mapping):
        self.domain = domain
        self.codomain = codomain
        self.map = dict(mapping)
        G = domain.group
        for x in domain.elements:
            for y in domain.elements:
                if self.map[G.mul(x, y)] != codomain.mul(self.map[x], self.map[y]):
                    raise GroupError(f"not a homomorphism at ({x}, {y})")
        self.injective = len(set(self.map.values())) == len(self.map)

    def __call__(self, x):
        return self.map[x]

    def image(self):
        return mask_of(self.map.values())


def _m(h):
    return h.mask if isinstance(h, Subgroup) else h


# -- construction ---------------------------------------------------------

def perm_from_cycles(cycles, degree):
    """Permutation tuple (0-based) from 1-based cycle notation."""
    p = list(range(degree))
    for cyc in cycles:
        for i, a in enumerate(cyc):
            p[a - 1] = cyc[(i + 1) % len(cyc)] - 1
    return tuple(p)


def perm_group(gens, degree=None, name=""):
    """Close permutation generators by breadth-first products.

    The product ``g*h`` applies g first: ``(g*h)[i] = h[g[i]]``.
    """
    gens = [tuple(g) for g in gens]
    if degree is None:
        degree = len(gens[0]) if gens else 1
    for g in gens:
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise GroupError(f"not a permutation of degree {degree}: {g}")
    cap = caps().group_order
    ident = tuple(range(degree))
    elems = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(g[i] for i in x)
                if y not in index:
                    index[y] = len(elems)
                    elems.append(y)
                    nxt.append(y)
                    if len(elems) > cap:
                        raise CapExceeded(f"permutation closure exceeds group order cap {cap}")
        frontier = nxt
    mult = [[index[tuple(h[i] for i in g)] for h in elems] for g in elems]
    return FiniteGroup(mult, name=name, perm_gens=[list(g) for g in gens], perms=elems, check=False)


def build_group(spec):
    """FiniteGroup from its JSON form (table or permutation generators)."""
    name = spec.get("name", "")
    if "mult" in spec:
        mult = spec["mult"]
        if "order" in spec and spec["order"] != len(mult):
            raise GroupError("order does not match table size")
        if any(len(r) != len(mult) for r in mult):
            raise GroupError("table is not square")
        return FiniteGroup(mult, name=name)
    if "perm_gens" in spec:
        return perm_group(spec["perm_gens"], spec.get("degree"), name=name)
    raise GroupError("group spec needs 'mult' or 'perm_gens'")


def group_to_json(G):
    if G.perm_gens is not None:
        return {"name": G.name, "perm_gens": [list(g) for g in G.perm_gens], "degree": len(G.perms[0])}
    return {"name": G.name, "order": G.n, "mult": G.rows}


def direct_product(G, H, name=""):
    n, m = G.n, H.n
    mult = [[G.rows[a // m][b // m] * m + H.rows[a % m][b % m] for b in range(n * m)] for a in range(n * m)]
    return FiniteGroup(mult, name=name or f"{G.name}x{H.name}", check=False)


def cyclic(n, name=""):
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)], name=name or f"C{n}", check=False)


# -- subgroups ------------------------------------------------------------

def generated(G, gens):
    return mask_of(kernels.closure(G.native, list(gens)))


def is_subgroup(G, mask):
    if not mask & 1:
        return False
    el = members(mask)
    for x in el:
        if not (mask >> G.inv[x]) & 1:
            return False
        row = G.rows[x]
        for y in el:
            if not (mask >> row[y]) & 1:
                return False
    return True


def conjugate(G, H, g):
    return mask_of(kernels.conj_images(G.native, G.inv, members(_m(H)), g))


def normalizer(G, H, within=None):
    H = _m(H)
    el = members(H)
    out = 0
    for g in members(G.full if within is None else _m(within)):
        if mask_of(kernels.conj_images(G.native, G.inv, el, g)) == H:
            out |= 1 << g
    return Subgroup(G, out)


def centralizer(G, H, within=None):
    el = members(_m(H))
    out = 0
    for g in members(G.full if within is None else _m(within)):
        row = G.rows[g]
        if all(row[x] == G.rows[x][g] for x in el):
            out |= 1 << g
    return Subgroup(G, out)


def normal_closure(G, X, within=None):
    """Smallest normal subgroup of ``within`` containing the set X."""
    K = G.full if within is None else _m(within)
    gens = set()
    el = members(_m(X))
    for g in members(K):
        gens.update(kernels.conj_images(G.native, G.inv, el, g))
    return generated(G, gens)


def is_normal(G, H, within=None):
    H = _m(H)
    el = members(H)
    for g in members(G.full if within is None else _m(within)):
        if mask_of(kernels.conj_images(G.native, G.inv, el, g)) != H:
            return False
    return True


def subgroup_masks(G):
    """All subgroups as masks, ordered by (order, mask)."""
    if "subs" in G._cache:
        return G._cache["subs"]
    cyc = {}
    for x in range(G.n):
        cyc.setdefault(generated(G, [x]), x)
    found = {1: []}
    for C, x in cyc.items():
        found[C] = [x] if x else []
    layer = list(found)
    while layer:
        nxt = []
        for H in layer:
            for C, x in cyc.items():
                if C & ~H:
                    gens = found[H] + [x]
                    K = generated(G, gens)
                    if K not in found:
                        found[K] = gens
                        nxt.append(K)
        layer = nxt
    subs = sorted(found, key=lambda m: (popcount(m), m))
    G._cache["subs"] = subs
    return subs


def enumerate_subgroups(G):
    return [Subgroup(G, m) for m in subgroup_masks(G)]


def _sub_generators(G, H):
    """A small generating set of H (greedy)."""
    gens, cur = [], 1
    for x in members(H):
        if not (cur >> x) & 1:
            gens.append(x)
            cur = generated(G, gens)
    return gens


def is_p_group(mask, p):
    return is_p_power(popcount(mask), p)


def sylow(G, p, within=None):
    """All Sylow p-subgroups of ``within`` (default G)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    K = G.full if within is None else _m(within)
    P = 1
    while True:
        N = normalizer(G, P, within=K).mask
        step = None
        for x in members(N & ~P):
            if (P >> G.power(x, p)) & 1:
                step = x
                break
        if step is None:
            break
        P = generated(G, members(P) + [step])
    out = {P}
    for g in members(K):
        out.add(conjugate(G, P, g))
    return [Subgroup(G, m) for m in sorted(out)]


def _core_by_closure(G, pred, within=None):
    K = G.full if within is None else _m(within)
    out = 0
    for x in members(K):
        if (out >> x) & 1:
            continue
        C = normal_closure(G, 1 << x, within=K)
        if pred(popcount(C)):
            out |= C
    return out


def p_core(G, p, within=None):
    """Largest normal p-subgroup, computed as the intersection of Sylows and
    cross-checked against the union of p-group normal closures."""
    inter = G.full if within is None else _m(within)
    for P in sylow(G, p, within):
        inter &= P.mask
    alt = _core_by_closure(G, lambda k: is_p_power(k, p), within)
    assert alt == inter, "p-core computations disagree"
    return Subgroup(G, inter)


def p_prime_core(G, p, within=None):
    """Largest normal p'-subgroup."""
    m = _core_by_closure(G, lambda k: k % p != 0, within)
    return Subgroup(G, generated(G, members(m)))


def is_characteristic_p(G, p, within=None):
    K = G.full if within is None else _m(within)
    Q = p_core(G, p, K).mask
    C = centralizer(G, Q, within=K).mask
    return C & ~Q == 0


def is_subnormal(G, H, within=None):
    K = G.full if within is None else _m(within)
    H = _m(H)
    while True:
        C = normal_closure(G, H, within=K)
        if C == K:
            return K == H
        K = C


def subgroup_group(G, H, name=""):
    """The subgroup H as a FiniteGroup of its own, plus the embedding list
    (local index -> index in G)."""
    el = members(_m(H))
    pos = {x: i for i, x in enumerate(el)}
    mult = [[pos[G.rows[a][b]] for b in el] for a in el]
    return FiniteGroup(mult, name=name, check=False), el


def subset_group(elems, mul, name=""):
    """FiniteGroup on a list of elements (identity first) with product mul."""
    pos = {x: i for i, x in enumerate(elems)}
    mult = []
    for a in elems:
        row = []
        for b in elems:
            c = mul(a, b)
            if c not in pos:
                raise GroupError(f"subset is not closed: {a}*{b}")
            row.append(pos[c])
        mult.append(row)
    return FiniteGroup(mult, name=name)


def char_p_equiv_group(G, N, p):
    """Evaluate the three characteristic-p conditions for N normal in G."""
    N = _m(N)
    rep = Report("char-p-equivalence (group)")
    if not (is_subgroup(G, N) and is_normal(G, N)):
        raise GroupError("N is not a normal subgroup")
    T = sylow(G, p, within=N)[0].mask
    c1 = is_characteristic_p(G, p)
    nN = is_characteristic_p(G, p, within=N)
    NT = normalizer(G, T).mask
    CN = centralizer(G, N).mask
    c2 = nN and is_characteristic_p(G, p, within=NT)
    c3 = nN and is_characteristic_p(G, p, within=CN)
    rep.add("(i) G char p", c1, required=False)
    rep.add("(ii) N and N_G(T) char p", c2, {"T": members(T)}, required=False)
    rep.add("(iii) N and C_G(N) char p", c3, required=False)
    rep.add("all equal", c1 == c2 == c3, [c1, c2, c3])
    return rep.finish()


def sylow_product_check(G, N, H, S, p):
    """(S meet N)(S meet H) is Sylow in <N, H>, assuming S meet H is Sylow in H."""
    N, H, S = _m(N), _m(H), _m(S)
    A, B = S & N, S & H
    prodset = mask_of(G.rows[a][b] for a in members(A) for b in members(B))
    NH = generated(G, members(N | H))
    return (is_subgroup(G, prodset) and prodset & ~NH == 0
            and popcount(prodset) == p_part(popcount(NH), p))
