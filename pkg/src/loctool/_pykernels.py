"""Pure-Python versions of the hot loops.

Every function here has a twin in ``_ckernels.pyx`` with the same signature
and the same results; ``kernels`` picks one at import time.  Tables arrive in
the form returned by :func:`native`.
"""

BACKEND = "python"


def native(rows):
    return [list(r) for r in rows]


def closure(tab, gens):
    """Elements of the subgroup generated by ``gens`` (identity is 0)."""
    n = len(tab)
    seen = bytearray(n)
    seen[0] = 1
    out = [0]
    gens = [g for g in set(gens) if g]
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            row = tab[x]
            for g in gens:
                y = row[g]
                if not seen[y]:
                    seen[y] = 1
                    nxt.append(y)
        out.extend(nxt)
        frontier = nxt
    out.sort()
    return out


def conj_images(tab, inv, elems, g):
    """[g^-1 x g for x in elems]."""
    left = tab[inv[g]]
    return [tab[left[x]][g] for x in elems]


def _run(trans, start, letters):
    s = start
    for f in letters:
        s = trans[f][s]
    return s


def _fold(prod, unit, letters):
    x = unit
    for f in letters:
        x = prod[x][f]
        if x < 0:
            return -1
    return x


def scan_words(prod, inv, unit, trans, indelta, leq, sfstate, start, depth, limit):
    """Depth-first check of the partial group axioms on words in D.

    ``trans[f][s]`` is the subgroup index of (X_s meet S_f)^f, ``indelta``
    flags object subgroups, ``leq[a][b]`` is subgroup containment and
    ``sfstate[f]`` the index of S_f.  Words are extended only while every
    prefix stays in D.  Returns (code, word, checked); code 0 means no
    violation, -1 means ``limit`` words were checked before finishing.
    """
    n = len(prod)
    word = [0] * (depth + 1)
    prods = [0] * (depth + 1)
    states = [0] * (depth + 1)
    prods[0] = unit
    states[0] = start
    checked = 0

    def check(m):
        w = word[:m]
        pi = prods[m]
        for i in range(1, m):
            if not indelta[_run(trans, start, w[i:])]:
                return 2
        for i in range(m):
            for j in range(i + 1, m):
                if i == 0 and j == m - 1:
                    continue
                v = _fold(prod, unit, w[i:j + 1])
                if v < 0:
                    return 1
                c = w[:i] + [v] + w[j + 1:]
                if not indelta[_run(trans, start, c)]:
                    return 3
                if _fold(prod, unit, c) != pi:
                    return 4
        back = [inv[f] for f in reversed(w)]
        if not indelta[_run(trans, start, back + w)]:
            return 5
        if _fold(prod, unit, back + w) != unit:
            return 6
        sw = states[m]
        for f in back:
            sw = trans[f][sw]
        if not leq[sw][sfstate[pi]]:
            return 7
        if trans[pi][sw] != states[m]:
            return 8
        return 0

    stack = [(0, 0)]
    while stack:
        k, f = stack.pop()
        if f >= n:
            continue
        stack.append((k, f + 1))
        s = trans[f][states[k]]
        if not indelta[s]:
            continue
        word[k] = f
        states[k + 1] = s
        pi = prod[prods[k]][f]
        if pi < 0:
            return 1, tuple(word[:k + 1]), checked
        prods[k + 1] = pi
        checked += 1
        code = check(k + 1)
        if code:
            return code, tuple(word[:k + 1]), checked
        if checked >= limit:
            return -1, (), checked
        if k + 1 < depth:
            stack.append((k + 1, 0))
    return 0, (), checked


def close_morphisms(seeds, maxsubs, cap):
    """Closure of a set of injective maps under inverse, restriction and
    composition.

    Maps are tuples over the ambient p-group with -1 off the domain.
    ``maxsubs[mask]`` lists the maximal subgroups of the subgroup ``mask``.
    Returns ``{(domain, image): set(maps)}`` or None when more than ``cap``
    maps would be stored.
    """
    store = {}
    out = {}
    into = {}
    total = 0
    work = []

    def key(phi):
        d = 0
        e = 0
        for x, y in enumerate(phi):
            if y >= 0:
                d |= 1 << x
                e |= 1 << y
        return d, e

    def push(phi):
        nonlocal total
        k = key(phi)
        bucket = store.get(k)
        if bucket is None:
            bucket = store[k] = set()
        if phi in bucket:
            return True
        bucket.add(phi)
        out.setdefault(k[0], []).append(phi)
        into.setdefault(k[1], []).append(phi)
        total += 1
        if total > cap:
            return False
        work.append(phi)
        return True

    for phi in seeds:
        if not push(tuple(phi)):
            return None
    m = len(seeds[0]) if seeds else 0
    while work:
        phi = work.pop()
        d, e = key(phi)
        inv = [-1] * m
        for x, y in enumerate(phi):
            if y >= 0:
                inv[y] = x
        if not push(tuple(inv)):
            return None
        for sub in maxsubs.get(d, ()):
            if not push(tuple(y if (sub >> x) & 1 else -1 for x, y in enumerate(phi))):
                return None
        for psi in list(out.get(e, ())):
            if not push(tuple(psi[y] if y >= 0 else -1 for y in phi)):
                return None
        for chi in list(into.get(d, ())):
            if not push(tuple(phi[y] if y >= 0 else -1 for y in chi)):
                return None
    return store
