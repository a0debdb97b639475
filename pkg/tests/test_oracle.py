import pytest

from holocount.catalog import build_group, catalog, catalog_groups
from holocount.crossed import count_pairs, count_reg
from holocount.groups import BoundExceeded
from holocount.holomorph import Holomorph
from holocount.morphisms import automorphism_group
from holocount.oracle import (brute_gp_count, brute_reg_subgroups_hol, byott_report,
                              hol_hom_census, hol_hom_images, regular_subgroup_census)


@pytest.mark.parametrize("n,g,count", [("cyclic:6", "cyclic:6", 1),
                                       ("abelian:3,3", "cyclic:9", 0),
                                       ("cyclic:4", "abelian:2,2", 1),
                                       ("sym:3", "cyclic:6", 6)])
def test_brute_reg_examples(n, g, count):
    N, G = build_group(n), build_group(g)
    assert brute_reg_subgroups_hol(N, G) == count
    assert brute_reg_subgroups_hol(N, G, method="homs") == count
    assert brute_reg_subgroups_hol(N, G, method="homcount") == count


def test_brute_reg_a5_extended():
    A5 = build_group("alt:5")
    with pytest.raises(BoundExceeded):
        brute_reg_subgroups_hol(A5, A5)
    assert brute_reg_subgroups_hol(A5, A5, extended=True) == 2


def test_brute_reg_errors():
    C4 = build_group("cyclic:4")
    assert brute_reg_subgroups_hol(C4, build_group("cyclic:2")) == 0
    with pytest.raises(ValueError):
        brute_reg_subgroups_hol(C4, C4, method="magic")
    with pytest.raises(BoundExceeded):
        brute_reg_subgroups_hol(build_group("abelian:4,4"), build_group("abelian:2,2,2,2"),
                                method="homs")


@pytest.mark.parametrize("n", [4, 6, 8, 9, 10, 12])
def test_census_matches_pipeline(n):
    groups = catalog_groups(n)
    for N in groups:
        rep = byott_report(N, groups)
        assert rep.ok, rep.deltas
        census = regular_subgroup_census(N)
        assert census.total == sum(rep.counts.values())


def test_census_weights_divide_aut():
    for spec in ("dihedral:4", "abelian:2,2,2", "alt:4"):
        census = regular_subgroup_census(build_group(spec))
        naut = automorphism_group(census.N).order
        assert all(naut % w == 0 for w in census.weights)


def test_census_bound():
    with pytest.raises(BoundExceeded):
        regular_subgroup_census(build_group("cyclic:25"))


@pytest.mark.parametrize("spec,expect", [("cyclic:1", 1), ("cyclic:2", 1), ("cyclic:3", 1),
                                         ("cyclic:4", 2), ("abelian:2,2", 4), ("cyclic:5", 1),
                                         ("cyclic:6", 3), ("sym:3", 5)])
def test_gp_counts(spec, expect):
    G = build_group(spec)
    assert brute_gp_count(G) == expect
    total = sum(count_reg(G, N).e for N in catalog_groups(G.order))
    assert total == expect


def test_gp_bound():
    with pytest.raises(BoundExceeded):
        brute_gp_count(build_group("cyclic:7"))


@pytest.mark.slow
def test_gp_order_8_extended():
    for G in catalog_groups(8):
        total = sum(count_reg(G, N).e for N in catalog_groups(8))
        assert brute_gp_count(G, extended=True) == total


@pytest.mark.parametrize("g,n", [(g, n) for k in (4, 6, 8) for g in catalog(k)[k][0]
                                 for n in catalog(k)[k][0]])
def test_hom_census_matches_direct(g, n):
    G, N = build_group(g), build_group(n)
    direct = hol_hom_images(G, N)
    total, regular = hol_hom_census(G, N)
    assert total == len(direct)
    hol = Holomorph(N)
    assert regular == sum(1 for h in direct if len({x // hol.naut for x in h}) == N.order)
    assert (total, regular) == (count_pairs(G, N), count_pairs(G, N, bijective=True))


def test_hom_census_deadline():
    G = build_group("abelian:2,2,2,2")
    with pytest.raises(TimeoutError):
        hol_hom_census(G, build_group("abelian:4,4"), deadline=0.0)


@pytest.mark.parametrize("g,n,e", [("sym:5", "sym:5", 32),
                                   ("sym:5", "product:alt:5,cyclic:2", 20),
                                   ("sl2:5", "sl2:5", 2)])
def test_order_120_hom_census(g, n, e):
    G, N = build_group(g), build_group(n)
    _, regular = hol_hom_census(G, N)
    assert regular == e * automorphism_group(N).order
    assert count_reg(G, N, mode="orbit").e == e
