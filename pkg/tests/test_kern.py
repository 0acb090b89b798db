import pytest

from loctool.grp import popcount
from loctool.kern import (
    KernelError, KernelTriple, construct_with_kernel, domains_agree, frattini_report, is_kernel,
    kernel_report, kernel_triple, linking_kernel_quotient, normalizer_containment, object_law,
    product_nh, product_report, quotient_report, theorem_b_report, theorem_c_report, theta_subgroup,
)
from loctool.ploc import quotient_locality

SMALL = ["S4:A4", "C3xS4:C3xA4", "C3xS4:A4", "C2xS4:A4"]


@pytest.mark.parametrize("name,order,index", [
    ("S4:A4", 24, 2), ("C3xS4:C3xA4", 72, 2), ("C3xS4:A4", 72, 6), ("C2xS4:A4", 48, 4),
])
def test_kernel_data(inst, name, order, index):
    k = inst(name)
    L, N = k.L, k.N
    assert L.n == order
    assert is_kernel(L, N)
    K = kernel_triple(L, N)
    assert popcount(K.T) == 4
    assert kernel_report(K).consistent
    # every pair is defined here, so |L/N| is the group index
    Q, _ = quotient_locality(L, N)
    assert Q.n == index == L.n // len(N)
    assert quotient_report(L, N).verdict == "pass"


def test_non_normal_subset_is_rejected(inst):
    k = inst("S4:A4")
    with pytest.raises(KernelError):
        is_kernel(k.L, k.L.S)


@pytest.mark.parametrize("name", SMALL)
def test_cr_completeness_transfers(inst, name):
    k = inst(name)
    r = theorem_b_report(k.L, k.N)
    assert r.verdict == "pass"
    assert r.value("L cr-complete") == r.value("kernel cr-complete")


@pytest.mark.parametrize("name,expected", [
    ("S4:A4", True), ("C2xS4:A4", True), ("C3xS4:C3xA4", False), ("C3xS4:A4", False),
])
def test_characteristic_p_clauses(inst, name, expected):
    k = inst(name)
    r = theorem_c_report(k.L, k.N)
    assert r.verdict == "pass"
    vals = {r.value(c["name"]) for c in r.clauses if c["name"].startswith("(")}
    assert vals == {expected}


@pytest.mark.parametrize("name,theta", [("S4:A4", 1), ("C3xS4:C3xA4", 3)])
def test_theta_quotient(inst, name, theta):
    k = inst(name)
    Q, r = linking_kernel_quotient(k.L, k.N)
    assert r.verdict == "pass"
    assert r.clause("(b) Theta partial subgroup")["witness"]["|Theta|"] == theta
    assert Q.n == k.L.n // theta
    K = KernelTriple(k.L, k.N)
    assert len(theta_subgroup(k.L, K.N, K.Gamma)) == theta


@pytest.mark.parametrize("name", SMALL)
def test_frattini(inst, name):
    k = inst(name)
    assert frattini_report(k.L, k.N).verdict == "pass"


def test_normalizer_containment(inst):
    k = inst("S4:A4")
    # C_N(V4) = V4 in A4, so the containment applies and holds
    assert normalizer_containment(k.L, k.N) is True
    c = inst("C3xS4:C3xA4")
    # here C_N(T) has a central C3 outside T and the statement does not apply
    assert normalizer_containment(c.L, c.N) is None


def test_domains_agree_and_reconstruction(inst):
    k = inst("S4:A4")
    L, N = k.L, k.N
    K = KernelTriple(L, N)
    ok, wit = domains_agree(L, K.T, K.Gamma)
    assert ok and wit is None
    gamma = [L.s_mask_to_elems(P) for P in K.Gamma]
    M, rep = construct_with_kernel(L, list(range(L.n)), L.S, N, gamma)
    assert rep.consistent and M is not None
    assert M.Delta == L.Delta


def test_object_law(inst):
    k = inst("S4:A4*<(13)>")
    assert object_law(k.L, k.Tstar)[0]
    L = inst("S4:A4").L
    # objects are the overgroups of V4, which all meet the trivial group trivially
    ok, wit = object_law(L, 1)
    assert not ok and len(wit) == 4


@pytest.mark.parametrize("name,char_p", [
    ("S4:A4*<(13)>", True), ("C2xS4:A4*<z,(13)>", True), ("S4xS3:A4*S3", False),
])
def test_products(inst, name, char_p):
    pc = inst(name)
    pi, rep = product_nh(pc.L, pc.N, pc.H, pc.Tstar, pc.GammaN)
    assert pi is not None
    r = product_report((pi, rep))
    assert r.verdict == "pass"
    assert r.value("(d) H~ char p") is char_p
    assert r.value("(d) (NH, Delta0, S0) linking") is char_p
    assert r.value("(e) F0 saturated")
    assert r.clause("(d) regular clause")["verdict"] == "na"
