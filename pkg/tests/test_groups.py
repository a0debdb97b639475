import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from holocount.catalog import build_group, catalog
from holocount.groups import (BoundExceeded, Group, GroupError, all_subgroups, classify_group,
                              find_isomorphism, generated_subgroup, normal_subgroups,
                              quotient_group, structural_subgroup, subgroups_of_order)
from holocount.morphisms import automorphism_group

SMALL_SPECS = [s for n in range(1, 17) for s in catalog(n)[n][0]] + [
    "heis:3", "c9xc3semi", "abelian:9,3", "sym:4", "sl2:3", "alt:5"]

spec_strategy = st.sampled_from(SMALL_SPECS)


def test_cyclic6_orders():
    G = build_group("cyclic:6")
    assert G.order == 6
    assert sorted(G.elem_order) == [1, 2, 3, 3, 6, 6]


def test_sl25_center():
    G = build_group("sl2:5")
    assert G.order == 120
    assert structural_subgroup(G, "center").order == 2


def test_alt5_is_simple():
    G = build_group("alt:5")
    assert G.order == 60
    assert sorted(len(M) for M in normal_subgroups(G)) == [1, 60]


@pytest.mark.parametrize("spec", ["cyclic:0", "dihedral", "frob:5", "sym:9", "sl2:11",
                                  "abelian:2,x", "product:cyclic:2", "quaternion:12"])
def test_malformed_specs(spec):
    with pytest.raises(GroupError):
        build_group(spec)


def test_bad_tables_rejected():
    with pytest.raises(GroupError):
        Group([[0, 1], [1, 1]])  # row not a permutation
    with pytest.raises(GroupError):
        Group([[1, 0], [0, 1]])  # 0 is not the identity
    # a Latin square with identity 0 that is not associative
    loop = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(GroupError, match="associative"):
        Group(loop)


@settings(max_examples=40, deadline=None)
@given(spec_strategy)
def test_group_invariants(spec):
    G = build_group(spec)
    T = G.table
    n = G.order
    ar = np.arange(n)
    assert np.array_equal(T[0], ar) and np.array_equal(T[:, 0], ar)
    assert all(G.mul[x][G.inv[x]] == 0 for x in range(n))
    for x in range(n):
        k = G.elem_order[x]
        assert n % k == 0
        assert G.power(x, k) == 0
        assert all(G.power(x, j) != 0 for j in range(1, k))
    assert len(generated_subgroup(G, G.generators)) == n


def test_generators_greedy_cyclic():
    G = build_group("cyclic:12")
    assert len(G.generators) == 1 and G.elem_order[G.generators[0]] == 12


def test_generated_subgroup_examples():
    A5 = build_group("alt:5")
    assert len(generated_subgroup(A5, [0])) == 1
    three = next(x for x in range(60) if A5.elem_order[x] == 3)
    assert len(generated_subgroup(A5, [three])) == 3


def test_structural_examples():
    assert structural_subgroup(build_group("abelian:2,2,2"), "frattini").order == 1
    assert structural_subgroup(build_group("abelian:9,3"), "frattini").order == 3
    assert structural_subgroup(build_group("sym:4"), "commutator").order == 12
    assert structural_subgroup(build_group("abelian:9,3"), "power:3").order == 3
    # non-p-group Frattini via maximal subgroups
    assert structural_subgroup(build_group("cyclic:12"), "frattini").order == 2
    with pytest.raises(GroupError):
        structural_subgroup(build_group("cyclic:4"), "socle")


def test_frattini_non_p_group_bound():
    with pytest.raises(BoundExceeded):
        structural_subgroup(build_group("sym:5"), "frattini")


def test_quotient_examples():
    S = build_group("sl2:5")
    Q = quotient_group(S, structural_subgroup(S, "center"))
    assert find_isomorphism(Q.group, build_group("alt:5")) is not None
    H = build_group("heis:3")
    Q = quotient_group(H, structural_subgroup(H, "frattini"))
    assert find_isomorphism(Q.group, build_group("abelian:3,3")) is not None
    G = build_group("dihedral:4")
    assert quotient_group(G, generated_subgroup(G, range(8))).group.order == 1


def test_quotient_needs_normal():
    G = build_group("sym:3")
    t = next(x for x in range(6) if G.elem_order[x] == 2)
    with pytest.raises(GroupError):
        quotient_group(G, generated_subgroup(G, [t]))


@settings(max_examples=25, deadline=None)
@given(spec_strategy, st.data())
def test_quotient_projection_is_hom(spec, data):
    G = build_group(spec)
    if G.order > 64:
        return
    normals = normal_subgroups(G)
    M = data.draw(st.sampled_from(normals))
    Q = quotient_group(G, M)
    pr = Q.projection
    assert all(pr[G.mul[x][y]] == Q.group.mul[pr[x]][pr[y]]
               for x in range(G.order) for y in range(G.order))
    assert sorted(x for x in range(G.order) if pr[x] == 0) == list(M.elements)


def test_subgroups_of_order_examples():
    assert len(subgroups_of_order(build_group("cyclic:4"), 2)) == 1
    sizes = sorted(len(M) for M in subgroups_of_order(build_group("sym:5"), 60, normal_only=True))
    assert sizes == [60]
    assert sorted(len(M) for M in normal_subgroups(build_group("sym:5"))) == [1, 60, 120]
    with pytest.raises(GroupError):
        subgroups_of_order(build_group("cyclic:4"), 3)


def test_order6_subgroups_of_d12_exhaustive():
    G = build_group("dihedral:6")
    found = {M.as_set() for M in subgroups_of_order(G, 6)}
    brute = set()
    for S in itertools.combinations(range(1, 12), 5):
        S = frozenset((0,) + S)
        if all(G.mul[x][y] in S for x in S for y in S):
            brute.add(S)
    assert found == brute
    assert len(found) == 3


def test_all_subgroups_bound():
    with pytest.raises(BoundExceeded):
        all_subgroups(build_group("sym:5"))


def test_isomorphism_examples():
    iso = find_isomorphism(build_group("cyclic:6"), build_group("abelian:3,2"))
    assert iso is not None and iso.check()
    assert find_isomorphism(build_group("sym:3"), build_group("cyclic:6")) is None


@settings(max_examples=30, deadline=None)
@given(spec_strategy, spec_strategy)
def test_isomorphism_symmetric(a, b):
    G, H = build_group(a), build_group(b)
    fwd, back = find_isomorphism(G, H), find_isomorphism(H, G)
    assert (fwd is None) == (back is None)
    if fwd is not None:
        assert fwd.check() and back.check()


def test_isomorphism_deterministic():
    G, H = build_group("dihedral:4"), build_group("dihedral:4")
    assert find_isomorphism(G, H).map == find_isomorphism(G, H).map


@pytest.mark.parametrize("spec,flags", [
    ("alt:5", {"perfect", "simple", "quasisimple", "characteristically_simple"}),
    ("sl2:5", {"perfect", "quasisimple"}),
    ("abelian:3,3", {"abelian", "characteristically_simple"}),
    ("cyclic:4", {"abelian"}),
    ("cyclic:5", {"abelian", "simple", "characteristically_simple"}),
    ("sym:3", set()),
])
def test_classify(spec, flags):
    assert classify_group(build_group(spec)) == flags


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([s for s in SMALL_SPECS if build_group(s).order <= 27]))
def test_structural_subgroups_characteristic(spec):
    G = build_group(spec)
    auts = automorphism_group(G)
    for kind in ("center", "commutator", "frattini"):
        M = structural_subgroup(G, kind).as_set()
        for p in auts.perms:
            assert {p[x] for x in M} == M


def test_catalog_pairwise_non_isomorphic():
    for n in range(1, 17):
        groups = [build_group(s) for s in catalog(n)[n][0]]
        for G, H in itertools.combinations(groups, 2):
            assert find_isomorphism(G, H) is None, (G.label, H.label)
