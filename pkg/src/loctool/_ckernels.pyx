# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the functions in ``_pykernels``."""
import numpy as np
cimport numpy as cnp

BACKEND = "cython"


def native(rows):
    return np.ascontiguousarray(np.asarray(rows, dtype=np.int32))


def closure(const int[:, ::1] tab, gens):
    cdef Py_ssize_t n = tab.shape[0]
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] seen = np.zeros(n, dtype=np.uint8)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] queue = np.zeros(n, dtype=np.int32)
    cdef list gl = [g for g in set(gens) if g]
    cdef Py_ssize_t ng = len(gl)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] ga = np.asarray(gl, dtype=np.int32) if ng else np.zeros(1, dtype=np.int32)
    cdef Py_ssize_t head = 0, tail = 1, i
    cdef int x, y
    seen[0] = 1
    queue[0] = 0
    while head < tail:
        x = queue[head]
        head += 1
        for i in range(ng):
            y = tab[x, ga[i]]
            if not seen[y]:
                seen[y] = 1
                queue[tail] = y
                tail += 1
    return sorted(queue[:tail].tolist())


def conj_images(const int[:, ::1] tab, inv, elems, int g):
    cdef int gi = inv[g]
    cdef int x
    return [tab[tab[gi, x], g] for x in elems]


cdef inline int _run(const int[:, ::1] trans, int start, int* w, int m) nogil:
    cdef int s = start
    cdef int i
    for i in range(m):
        s = trans[w[i], s]
    return s


cdef inline int _fold(const int[:, ::1] prod, int unit, int* w, int m) nogil:
    cdef int x = unit
    cdef int i
    for i in range(m):
        x = prod[x, w[i]]
        if x < 0:
            return -1
    return x


cdef int _check(const int[:, ::1] prod, const int[::1] inv, int unit,
                const int[:, ::1] trans, const unsigned char[::1] indelta,
                const unsigned char[:, ::1] leq, const int[::1] sfstate,
                int start, int* word, int* states, int pi, int m) nogil:
    cdef int buf[128]
    cdef int i, j, t, c, v, sw
    for i in range(1, m):
        if not indelta[_run(trans, start, word + i, m - i)]:
            return 2
    for i in range(m):
        for j in range(i + 1, m):
            if i == 0 and j == m - 1:
                continue
            v = _fold(prod, unit, word + i, j - i + 1)
            if v < 0:
                return 1
            c = 0
            for t in range(i):
                buf[c] = word[t]
                c += 1
            buf[c] = v
            c += 1
            for t in range(j + 1, m):
                buf[c] = word[t]
                c += 1
            if not indelta[_run(trans, start, buf, c)]:
                return 3
            if _fold(prod, unit, buf, c) != pi:
                return 4
    for t in range(m):
        buf[t] = inv[word[m - 1 - t]]
        buf[m + t] = word[t]
    if not indelta[_run(trans, start, buf, 2 * m)]:
        return 5
    if _fold(prod, unit, buf, 2 * m) != unit:
        return 6
    sw = states[m]
    for t in range(m):
        sw = trans[buf[t], sw]
    if not leq[sw, sfstate[pi]]:
        return 7
    if trans[pi, sw] != states[m]:
        return 8
    return 0


def scan_words(const int[:, ::1] prod, inv, int unit, const int[:, ::1] trans,
               indelta, leq, sfstate, int start, int depth, long long limit):
    cdef int n = prod.shape[0]
    if depth > 60:
        depth = 60
    cdef const int[::1] inv_v = np.ascontiguousarray(inv, dtype=np.int32)
    cdef const unsigned char[::1] ind_v = np.ascontiguousarray(indelta, dtype=np.uint8)
    cdef const unsigned char[:, ::1] leq_v = np.ascontiguousarray(leq, dtype=np.uint8)
    cdef const int[::1] sf_v = np.ascontiguousarray(sfstate, dtype=np.int32)
    cdef int word[64]
    cdef int prods[64]
    cdef int states[64]
    cdef int nextf[64]
    cdef int k = 0, f, s, pi, code
    cdef long long checked = 0
    prods[0] = unit
    states[0] = start
    nextf[0] = 0
    with nogil:
        while k >= 0:
            f = nextf[k]
            if f >= n:
                k -= 1
                continue
            nextf[k] = f + 1
            s = trans[f, states[k]]
            if not ind_v[s]:
                continue
            word[k] = f
            states[k + 1] = s
            pi = prod[prods[k], f]
            if pi < 0:
                code = 1
                k += 1
                break
            prods[k + 1] = pi
            checked += 1
            code = _check(prod, inv_v, unit, trans, ind_v, leq_v, sf_v, start,
                          word, states, pi, k + 1)
            if code:
                k += 1
                break
            if checked >= limit:
                code = -1
                k = 0
                break
            if k + 1 < depth:
                k += 1
                nextf[k] = 0
        else:
            code = 0
            k = 0
    if code > 0:
        return code, tuple([word[i] for i in range(k)]), checked
    return code, (), checked


def close_morphisms(list seeds, dict maxsubs, long long cap):
    cdef dict store = {}
    cdef dict out = {}
    cdef dict into = {}
    cdef long long total = 0
    cdef list work = []
    cdef Py_ssize_t m = len(seeds[0]) if seeds else 0
    cdef Py_ssize_t x
    cdef int y
    cdef object d, e, sub

    def key(tuple phi):
        cdef object dd = 0, ee = 0
        cdef Py_ssize_t i
        cdef int v
        for i in range(len(phi)):
            v = phi[i]
            if v >= 0:
                dd |= (<object>1) << i
                ee |= (<object>1) << v
        return dd, ee

    def push(tuple phi):
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
    cdef tuple phi_t, psi, chi
    cdef list invl
    while work:
        phi_t = work.pop()
        d, e = key(phi_t)
        invl = [-1] * m
        for x in range(m):
            y = phi_t[x]
            if y >= 0:
                invl[y] = x
        if not push(tuple(invl)):
            return None
        for sub in maxsubs.get(d, ()):
            if not push(tuple([phi_t[x] if (sub >> x) & 1 else -1 for x in range(m)])):
                return None
        for psi in list(out.get(e, ())):
            if not push(tuple([psi[y] if y >= 0 else -1 for y in phi_t])):
                return None
        for chi in list(into.get(d, ())):
            if not push(tuple([phi_t[y] if y >= 0 else -1 for y in chi])):
                return None
    return store
