import pytest
from hypothesis import given, settings, strategies as st

from holocount.catalog import build_group, catalog
from holocount.groups import GroupError, closure, find_isomorphism
from holocount.holomorph import (HolElement, Holomorph, build_holomorph, canonical_rho_lambda,
                                 hol_act, hol_subgroup, is_regular_subset)
from holocount.suites import c4xc4_witness

SPECS = [s for n in range(1, 13) for s in catalog(n)[n][0]]
LARGER = [s for n in (16, 18, 20, 21, 24, 27) for s in catalog(n)[n][0]]


@pytest.mark.parametrize("spec,order", [("cyclic:6", 12), ("abelian:4,4", 1536),
                                        ("sym:3", 36), ("abelian:2,2", 24)])
def test_holomorph_orders(spec, order):
    assert build_holomorph(build_group(spec)).order == order


@pytest.mark.parametrize("spec", [s for s in SPECS if build_holomorph(build_group(s)).order <= 200])
def test_pair_law_associative(spec):
    hol = Holomorph(build_group(spec))
    n = hol.order
    for x in range(n):
        for y in range(n):
            xy = hol.mul(x, y)
            for z in range(0, n, max(1, n // 25)):
                assert hol.mul(xy, z) == hol.mul(x, hol.mul(y, z))
    for x in range(n):
        assert hol.mul(x, hol.inverse(x)) == 0


def test_dense_table_validates():
    hol = Holomorph(build_group("dihedral:4"))
    assert hol.as_group().order == 64
    with pytest.raises(GroupError):
        Holomorph(build_group("abelian:4,4")).as_group()


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(SPECS + LARGER), st.data())
def test_action_respects_products(spec, data):
    hol = Holomorph(build_group(spec))
    codes = st.integers(0, hol.order - 1)
    h1, h2 = data.draw(codes), data.draw(codes)
    prod = hol.mul(h1, h2)
    for x in range(hol.base.order):
        assert hol.act(prod, x) == hol.act(h1, hol.act(h2, x))


@pytest.mark.parametrize("spec", ["cyclic:6", "sym:3", "quaternion:8", "abelian:2,2"])
def test_action_exhaustive_and_faithful(spec):
    hol = Holomorph(build_group(spec))
    perms = [hol.as_permutation(x) for x in range(hol.order)]
    assert len(set(perms)) == hol.order
    for x in range(hol.order):
        for y in range(hol.order):
            p = perms[hol.mul(x, y)]
            assert p == tuple(perms[x][perms[y][t]] for t in range(hol.base.order))


def test_hol_act_examples():
    N = build_group("sym:3")
    hol = Holomorph(N)
    for a in range(6):
        for x in range(6):
            assert hol_act(hol, HolElement(a, 0), x) == N.mul[x][N.inv[a]]
    for phi in range(hol.naut):
        for x in range(6):
            assert hol_act(hol, HolElement(0, phi), x) == hol.auts.perms[phi][x]
    for code in range(hol.order):
        assert hol.act(code, 0) == N.inv[hol.decode(code).a]


def test_conj_is_rho_times_lambda():
    for spec in SPECS:
        N = build_group(spec)
        hol = Holomorph(N)
        for eta in range(N.order):
            conj = hol.encode(0, hol.auts.conj_index[eta])
            assert hol.mul(hol.rho_code(eta), hol.lambda_code(eta)) == conj


@pytest.mark.parametrize("spec", [s for s in SPECS if 1 < build_group(s).order <= 12])
def test_hol_normalizes_lambda(spec):
    N = build_group(spec)
    hol = Holomorph(N)
    n = N.order
    left = {tuple(N.mul[s][t] for t in range(n)) for s in range(n)}  # lambda(N) on N
    for x in range(hol.order):
        p = hol.as_permutation(x)
        pinv = [0] * n
        for i, v in enumerate(p):
            pinv[v] = i
        for L in left:
            assert tuple(p[L[pinv[t]]] for t in range(n)) in left


def test_regular_subset_examples():
    N = build_group("abelian:2,2")
    hol = Holomorph(N)
    rho, lam = canonical_rho_lambda(hol)
    assert is_regular_subset(hol, rho.elements)
    auts_part = [hol.encode(0, p) for p in range(hol.naut)]
    assert not is_regular_subset(hol, auts_part)
    with pytest.raises(GroupError):
        is_regular_subset(hol, [0, hol.encode(1, 0), hol.encode(2, 0)])


def test_lemma_witness_in_c4xc4():
    ok, detail = c4xc4_witness()
    assert ok, detail


@pytest.mark.parametrize("spec", [s for n in range(1, 65) for s in catalog(n)[n][0]
                                  if n <= 28 or s in ("alt:5", "cyclic:60")])
def test_rho_lambda_regular(spec):
    N = build_group(spec)
    hol = Holomorph(N)
    rho, lam = canonical_rho_lambda(hol)
    assert is_regular_subset(hol, rho.elements) and is_regular_subset(hol, lam.elements)
    assert (rho.as_set() == lam.as_set()) == N.is_abelian()
    if N.order <= 24:
        assert find_isomorphism(rho.as_group(), N) is not None
        assert find_isomorphism(lam.as_group(), N) is not None


def test_rho_lambda_examples():
    rho, lam = canonical_rho_lambda(Holomorph(build_group("cyclic:6")))
    assert rho.as_set() == lam.as_set()
    rho, lam = canonical_rho_lambda(Holomorph(build_group("sym:3")))
    assert rho.as_set() != lam.as_set()


def test_hol_subgroup_closure():
    hol = Holomorph(build_group("cyclic:5"))
    H = hol_subgroup(hol, [hol.encode(0, 1)])
    assert set(H.elements) == closure(hol, [hol.encode(0, 1)])
