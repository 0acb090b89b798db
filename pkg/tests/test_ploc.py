import pytest
from hypothesis import given, settings, strategies as st

from loctool.grp import members, perm_from_cycles, perm_group, popcount, sylow
from loctool.ploc import (
    LocalityError, build_locality_from_group, check_projection, fusion_of_locality, is_cr_complete,
    is_objective_char_p, is_partial_normal, is_partial_subgroup, locality_as_group, locality_from_table,
    locality_pairs, op_core_locality, quotient_locality, restrict_locality, validate_locality,
)

LOCALITIES = ["S4|V4", "S4|all", "A4|all", "S3|C3", "D8|all"]


def _s4():
    return perm_group([perm_from_cycles([(1, 2, 3, 4)], 4), perm_from_cycles([(1, 2)], 4)], 4, "S4")


def _sg(G, S, g):
    """S_g straight from the definition: x in S with x^g in S."""
    return sum(1 << x for x in members(S) if (S >> G.conj(x, g)) & 1)


@pytest.mark.parametrize("name", LOCALITIES)
def test_catalog_localities_validate(inst, name):
    L = inst(name)
    r = validate_locality(L)
    assert r.verdict == "pass", [c for c in r.clauses if c["verdict"] != "pass"]


@pytest.mark.parametrize("name", LOCALITIES)
def test_products_come_from_the_group(inst, name):
    L = inst(name)
    G, el = L.origin["G"], L.origin["elements"]
    S = sum(1 << el[x] for x in L.S)
    delta = {sum(1 << el[x] for x in L.s_mask_to_elems(P)) for P in L.Delta}
    # L is exactly the set of g with S_g an object
    assert sorted(el) == [g for g in range(G.n) if _sg(G, S, g) in delta]
    for f in range(L.n):
        for g in range(L.n):
            h = L.prod[f][g]
            sfg = sum(1 << x for x in members(_sg(G, S, el[f]))
                      if (_sg(G, S, el[g]) >> G.conj(x, el[f])) & 1)
            if sfg in delta:
                assert h >= 0 and el[h] == G.mul(el[f], el[g])
            else:
                assert h == -1


def test_objects_and_flags(inst):
    L = inst("S4|V4")
    assert L.n == 24 and len(L.S) == 8 and len(L.Delta) == 2
    assert popcount(op_core_locality(L)) == 4
    assert is_cr_complete(L) and is_objective_char_p(L)
    assert locality_as_group(L).n == 24
    S3 = inst("S3|C3")
    assert is_cr_complete(S3)


def test_partial_subgroups(inst):
    L = inst("S4|V4")
    S = list(L.S)
    assert is_partial_subgroup(L, S)
    assert not is_partial_normal(L, S)
    V = L.s_mask_to_elems(op_core_locality(L))
    assert is_partial_normal(L, V)
    f = next(f for f in range(L.n) if L.inv[f] != f)
    assert not is_partial_subgroup(L, [L.unit, f])


def test_quotient_by_core(inst):
    L = inst("S4|V4")
    V = L.s_mask_to_elems(op_core_locality(L))
    Q, proj = quotient_locality(L, V)
    assert Q.n == 6
    assert validate_locality(Q).verdict == "pass"
    assert check_projection(L, Q, proj).consistent


def test_restriction_to_overgroups(inst):
    L = inst("S4|all")
    V = op_core_locality(L)
    sub = {P for P in L.Delta if V & ~P == 0}
    R = restrict_locality(L, sub)
    assert R.n == 24 and validate_locality(R).verdict == "pass"
    bad = {P for P in L.Delta if popcount(P) == 2}
    with pytest.raises(LocalityError):
        restrict_locality(L, bad)


def test_table_round_trip(inst):
    L = inst("A4|all")
    M = locality_from_table(L.p, L.inv, locality_pairs(L), L.unit, L.S,
                            [L.s_mask_to_elems(P) for P in L.Delta])
    assert M.prod == L.prod and M.Delta == L.Delta
    with pytest.raises(LocalityError):
        locality_from_table(L.p, L.inv, [[0, 0, 99]], L.unit, L.S, [L.S])
    outside = next(f for f in range(L.n) if f not in L.S)
    with pytest.raises(LocalityError):
        locality_from_table(L.p, L.inv, [], L.unit, L.S, [[L.unit, outside]])


def test_non_sylow_rejected():
    G = _s4()
    t = G.perms.index(perm_from_cycles([(1, 2)], 4))
    C2 = 1 | (1 << t)
    with pytest.raises(LocalityError):
        build_locality_from_group(G, C2, [C2], 2)
    S = sylow(G, 2)[0].mask
    # an object set that is not overgroup-closed
    with pytest.raises(LocalityError):
        build_locality_from_group(G, S, [C2 if C2 & ~S == 0 else 1], 2)


def test_fusion_of_locality_matches_group(inst):
    from loctool.fus import fusion_from_group
    L = inst("S4|all")
    F = fusion_of_locality(L)
    G = L.origin["G"]
    E = fusion_from_group(G, sylow(G, 2)[0], 2)
    assert F.morphism_count == E.morphism_count


@st.composite
def words_in_d(draw, L, maxlen=5):
    w = []
    for _ in range(draw(st.integers(0, maxlen))):
        ok = [f for f in range(L.n) if L.word_in_domain(w + [f])]
        w.append(draw(st.sampled_from(ok)))
    return w


@pytest.mark.parametrize("name", ["S4|all", "S4|V4", "D8|all"])
@settings(max_examples=80, deadline=None)
@given(data=st.data())
def test_partial_group_axioms_on_random_words(inst, name, data):
    L = inst(name)
    G, el = L.origin["G"], L.origin["elements"]
    w = data.draw(words_in_d(L))
    x = L.eval_product(w)
    assert el[x] == G.prod([el[f] for f in w])
    # associativity: contracting any subword keeps the word in D and the value
    for i in range(len(w)):
        for j in range(i + 1, len(w) + 1):
            v = L.eval_product(w[i:j])
            u = w[:i] + [v] + w[j:]
            assert L.word_in_domain(u) and L.eval_product(u) == x
    back = [L.inv[f] for f in reversed(w)]
    assert L.word_in_domain(back + w)
    assert L.eval_product(back + w) == L.unit
    # S_w lies in S_(Pi w) and conjugates into S
    assert L.compute_Sw(w) & ~L.Sf(x) == 0


def test_s5_locality_over_cr_overgroups_is_proper():
    from loctool.fus import cr_set, fusion_from_group
    G = perm_group([perm_from_cycles([(1, 2, 3, 4, 5)], 5), perm_from_cycles([(1, 2)], 5)], 5)
    S = sylow(G, 2)[0].mask
    F = fusion_from_group(G, S, 2)
    emb = F.origin["emb"]
    cr = [sum(1 << emb[i] for i in members(R)) for R in cr_set(F)]
    subs = [sum(1 << emb[i] for i in members(P)) for P in F.subgroups]
    delta = [P for P in subs if any(R & ~P == 0 for R in cr)]
    L = build_locality_from_group(G, S, delta, 2)
    assert 8 < L.n < 120
    assert validate_locality(L).verdict == "pass"
    # S_g in Delta exactly for the elements kept
    kept = set(L.origin["elements"])
    assert kept == {g for g in range(G.n) if _sg(G, S, g) in set(delta)}
    assert fusion_of_locality(L).morphism_count == F.morphism_count
