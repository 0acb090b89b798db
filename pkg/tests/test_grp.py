import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from loctool.config import CapExceeded, Caps, set_caps
from loctool.grp import (
    GroupError, build_group, centralizer, cyclic, direct_product, generated, group_to_json,
    is_normal, is_p_power, is_prime, is_subgroup, mask_of, members, normal_closure, normalizer,
    p_core, p_part, p_prime_core, perm_from_cycles, perm_group, popcount, subgroup_masks, sylow,
)


def _s4():
    return perm_group([perm_from_cycles([(1, 2, 3, 4)], 4), perm_from_cycles([(1, 2)], 4)], 4, "S4")


def _two_generated(perms):
    """Every subgroup of S4 is generated by two elements, so closing all
    pairs by composing permutations finds the whole lattice."""
    idx = {p: i for i, p in enumerate(perms)}
    out = set()
    for a in perms:
        for b in perms:
            seen = {tuple(range(len(a)))}
            frontier = list(seen)
            while frontier:
                nxt = []
                for x in frontier:
                    for g in (a, b):
                        y = tuple(g[i] for i in x)
                        if y not in seen:
                            seen.add(y)
                            nxt.append(y)
                frontier = nxt
            out.add(sum(1 << idx[x] for x in seen))
    return out


def test_small_helpers():
    assert members(0b1011) == [0, 1, 3]
    assert mask_of([0, 1, 3]) == 0b1011
    assert popcount(0b1011) == 3
    assert [q for q in range(2, 20) if is_prime(q)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert is_p_power(16, 2) and is_p_power(1, 3) and not is_p_power(12, 2)
    assert p_part(48, 2) == 16 and p_part(48, 3) == 3 and p_part(48, 5) == 1


def test_product_applies_left_factor_first():
    G = _s4()
    a = G.perms.index(perm_from_cycles([(1, 2)], 4))
    b = G.perms.index(perm_from_cycles([(2, 3)], 4))
    ab = G.perms[G.mul(a, b)]
    # 1 -> 2 under (1 2), then 2 -> 3 under (2 3)
    assert ab[0] == 2


def test_s4_subgroup_lattice_matches_pair_closures():
    G = _s4()
    subs = subgroup_masks(G)
    assert len(subs) == 30
    assert set(subs) == _two_generated(G.perms)
    assert all(is_subgroup(G, H) for H in subs)


def test_sylow_counts():
    G = _s4()
    assert len(sylow(G, 2)) == 3
    assert len(sylow(G, 3)) == 4
    assert all(popcount(P.mask) == 8 for P in sylow(G, 2))
    with pytest.raises(ValueError):
        sylow(G, 4)


def test_cores_of_s4():
    G = _s4()
    V4 = p_core(G, 2)
    assert popcount(V4.mask) == 4 and is_normal(G, V4)
    assert popcount(p_core(G, 3).mask) == 1
    assert popcount(p_prime_core(G, 2).mask) == 1


def test_normalizer_and_centralizer():
    G = _s4()
    t = G.perms.index(perm_from_cycles([(1, 2)], 4))
    H = generated(G, [t])
    assert popcount(normalizer(G, H).mask) == 4
    assert popcount(centralizer(G, H).mask) == 4
    assert popcount(normal_closure(G, H)) == 24


def test_direct_product_and_cyclic():
    C = cyclic(6)
    assert C.n == 6 and C.elem_order(1) == 6
    D = direct_product(cyclic(2), cyclic(3))
    assert D.n == 6 and max(D.elem_order(x) for x in range(6)) == 6


def test_json_round_trip():
    G = _s4()
    H = build_group(group_to_json(G))
    assert H.n == 24 and H.rows == G.rows
    T = build_group({"mult": cyclic(4).rows})
    assert T.n == 4
    with pytest.raises(GroupError):
        build_group({"mult": [[0, 1], [1]]})
    with pytest.raises(GroupError):
        build_group({})
    with pytest.raises(GroupError):
        perm_group([(0, 0, 1)])


def test_group_order_cap():
    set_caps(Caps(group_order=10))
    with pytest.raises(CapExceeded):
        _s4()


perm5 = st.permutations(range(5)).map(tuple)


@settings(max_examples=40, deadline=None)
@given(st.lists(perm5, min_size=1, max_size=2))
def test_lagrange_and_sylow_theorems(gens):
    G = perm_group(gens, 5)
    for H in subgroup_masks(G):
        assert G.n % popcount(H) == 0
    for p in (2, 3, 5):
        syl = sylow(G, p)
        assert len(syl) % p == 1 % p
        assert G.n % len(syl) == 0
        assert all(popcount(P.mask) == p_part(G.n, p) for P in syl)


@settings(max_examples=40, deadline=None)
@given(st.lists(perm5, min_size=1, max_size=2), st.data())
def test_normalizer_contains_subgroup_and_centralizer(gens, data):
    G = perm_group(gens, 5)
    H = data.draw(st.sampled_from(subgroup_masks(G)))
    N = normalizer(G, H).mask
    C = centralizer(G, H).mask
    assert H & ~N == 0
    assert C & ~N == 0
    assert is_normal(G, H, within=N)


@settings(max_examples=60, deadline=None)
@given(st.lists(perm5, min_size=1, max_size=3))
def test_multiplication_is_associative(gens):
    G = perm_group(gens, 5)
    for a, b, c in itertools.islice(itertools.product(range(G.n), repeat=3), 500):
        assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))
    assert all(G.mul(x, G.inv[x]) == 0 for x in range(G.n))
    assert all(G.n % G.elem_order(x) == 0 for x in range(G.n))
    assert math.lcm(*(G.elem_order(x) for x in range(G.n))) <= G.n
