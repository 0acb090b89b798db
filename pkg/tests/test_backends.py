import pytest
from hypothesis import given, settings, strategies as st

from loctool import catalog as cat
from loctool.fus import _max_subgroup_table, conj_map
from loctool.grp import cyclic, direct_product, perm_group
from loctool.kernels import backends
from loctool.ploc import _transitions

IMPLS = backends()
needs_both = pytest.mark.skipif("cython" not in IMPLS, reason="compiled extension not built")


def _norm(store):
    return {k: frozenset(v) for k, v in store.items()} if store is not None else None


def test_selected_backend_is_known():
    from loctool import kernels
    assert kernels.BACKEND in IMPLS


@needs_both
@settings(max_examples=40, deadline=None)
@given(st.lists(st.permutations(range(5)).map(tuple), min_size=1, max_size=2), st.data())
def test_closure_and_conjugation_parity(gens, data):
    G = perm_group(gens, 5)
    sub = data.draw(st.lists(st.integers(0, G.n - 1), max_size=3))
    g = data.draw(st.integers(0, G.n - 1))
    py, cy = IMPLS["python"], IMPLS["cython"]
    assert py.closure(py.native(G.rows), sub) == cy.closure(cy.native(G.rows), sub)
    el = py.closure(py.native(G.rows), sub)
    assert py.conj_images(py.native(G.rows), G.inv, el, g) == \
        list(cy.conj_images(cy.native(G.rows), G.inv, el, g))


@needs_both
@pytest.mark.parametrize("name", ["S4/D8", "GL23/SD16", "S4xC2/D8xC2"])
def test_close_morphisms_parity(name):
    F = cat.get(name).materialize()
    S = F.S
    seeds = sorted(m for v in F.store.values() for m in v)[::3]
    maxsubs = _max_subgroup_table(S)
    py = IMPLS["python"].close_morphisms(seeds, maxsubs, 10 ** 6)
    cy = IMPLS["cython"].close_morphisms(seeds, maxsubs, 10 ** 6)
    assert _norm(py) == _norm(cy)
    assert IMPLS["python"].close_morphisms(seeds, maxsubs, 2) is None
    assert IMPLS["cython"].close_morphisms(seeds, maxsubs, 2) is None


@needs_both
@pytest.mark.parametrize("S", [cyclic(64), direct_product(cyclic(32), cyclic(2))],
                         ids=["C64", "C32xC2"])
def test_close_morphisms_on_64_elements(S):
    """Masks reach bit 63 here; both backends must agree and see every
    subgroup as a domain."""
    n = S.n
    # a non-trivial power map x -> x^3 (an automorphism of odd order on C64
    # and of C32xC2 componentwise)
    phi = tuple(S.power(x, 3) for x in range(n))
    seeds = [phi] + [conj_map(S, s, S.full) for s in range(n)]
    maxsubs = _max_subgroup_table(S)
    py = IMPLS["python"].close_morphisms(seeds, maxsubs, 10 ** 6)
    cy = IMPLS["cython"].close_morphisms(seeds, maxsubs, 10 ** 6)
    assert _norm(py) == _norm(cy)
    assert (S.full, S.full) in py
    assert max(k[0] for k in py).bit_length() == 64


@needs_both
@pytest.mark.parametrize("name,depth", [("S4|all", 3), ("S4|V4", 3), ("D8|all", 3)])
def test_scan_words_parity(name, depth):
    L = cat.get(name).materialize()
    subs = L.subgroups_S
    trans = _transitions(L, subs)
    idx = {P: i for i, P in enumerate(subs)}
    args = ([P in L.Delta for P in subs], [[1 if a & ~b == 0 else 0 for b in subs] for a in subs],
            [idx[L.Sf(f)] for f in range(L.n)], idx[L.Sgroup.full], depth)
    out = []
    for k in IMPLS.values():
        out.append(tuple(k.scan_words(k.native(L.prod), L.inv, L.unit, k.native(trans), *args, 1 << 40)))
    assert out[0] == out[1]
    assert out[0][0] == 0


@needs_both
def test_scan_words_finds_same_violation():
    from loctool.acceptance import mutate_delete_pair
    L = cat.get("S4|all").materialize()
    M, _ = mutate_delete_pair(L)
    subs = M.subgroups_S
    trans = _transitions(M, subs)
    idx = {P: i for i, P in enumerate(subs)}
    args = ([P in M.Delta for P in subs], [[1 if a & ~b == 0 else 0 for b in subs] for a in subs],
            [idx[M.Sf(f)] for f in range(M.n)], idx[M.Sgroup.full], 3)
    out = [tuple(map(lambda v: list(v) if isinstance(v, (list, tuple)) else v,
                     k.scan_words(k.native(M.prod), M.inv, M.unit, k.native(trans), *args, 1 << 40)))
           for k in IMPLS.values()]
    assert out[0] == out[1]
    assert out[0][0] > 0


def test_pure_fallback_runs_a_check():
    import os
    import subprocess
    import sys
    env = dict(os.environ, LOCTOOL_PURE="1")
    code = ("import json, loctool.kernels as k; from loctool.cli import main; "
            "assert k.BACKEND == 'python'; "
            "raise SystemExit(main(['check', '--instance', 'S4|all', '--run', 'validate-locality', '--depth', '3']))")
    r = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, timeout=300)
    assert r.returncode == 0, r.stderr
    assert '"verdict": "pass"' in r.stdout
