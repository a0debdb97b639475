import itertools

import pytest

from holocount.catalog import build_group, catalog, read_table_file, write_table_file
from holocount.groups import GroupError, find_isomorphism, structural_subgroup


def test_catalog_27_complete():
    specs, complete = catalog(27)[27]
    assert len(specs) == 5 and complete
    groups = [build_group(s) for s in specs]
    for G, H in itertools.combinations(groups, 2):
        assert find_isomorphism(G, H) is None


def test_catalog_120_partial():
    specs, complete = catalog(120)[120]
    assert not complete
    assert {"sym:5", "sl2:5", "product:alt:5,cyclic:2", "cyclic:120"} <= set(specs)


def test_catalog_6():
    assert catalog(6)[6] == (["cyclic:6", "sym:3"], True)


def test_catalog_missing_order_falls_back_to_cyclic():
    assert catalog(17)[17] == (["cyclic:17"], False)


@pytest.mark.parametrize("n", [18, 20, 21, 24, 28])
def test_catalog_orders_distinct(n):
    groups = [build_group(s) for s in catalog(n)[n][0]]
    assert all(G.order == n for G in groups)
    for G, H in itertools.combinations(groups, 2):
        assert find_isomorphism(G, H) is None


@pytest.mark.parametrize("spec,order", [
    ("dihedral:5", 10), ("dicyclic:3", 12), ("quaternion:8", 8), ("semidihedral:16", 16),
    ("modular:16", 16), ("cpq:7,3", 21), ("heis:3", 27), ("c9xc3semi", 27), ("sl2:3", 24),
    ("sl2:5", 120), ("alt:4", 12), ("product:sym:3,cyclic:2", 12), ("pauli", 16),
])
def test_constructor_orders(spec, order):
    assert build_group(spec).order == order


def test_exponents():
    H = build_group("heis:3")
    assert set(H.elem_order) == {1, 3}
    assert max(build_group("c9xc3semi").elem_order) == 9
    assert not build_group("c9xc3semi").is_abelian()


def test_quaternion_has_one_involution():
    Q = build_group("quaternion:8")
    assert Q.elem_order.count(2) == 1


def test_product_of_products():
    G = build_group("product:product:cyclic:2,cyclic:2,cyclic:3")
    assert find_isomorphism(G, build_group("abelian:2,6")) is not None


def test_cpq_7_2_is_dihedral():
    assert find_isomorphism(build_group("cpq:7,2"), build_group("dihedral:7")) is not None


def test_cpq_rejects():
    with pytest.raises(GroupError):
        build_group("cpq:7,5")


def test_table_round_trip(tmp_path):
    G = build_group("sl2:3")
    path = tmp_path / "sl23.tbl"
    write_table_file(G, path)
    H = read_table_file(path)
    assert H.label == "sl2:3"
    assert H.mul == G.mul
    assert structural_subgroup(H, "center").order == 2
    assert build_group(f"file:{path}").order == 24


def test_table_file_errors(tmp_path):
    bad = tmp_path / "bad.tbl"
    bad.write_text("2\n0 1\n1 1\n")
    with pytest.raises(GroupError):
        read_table_file(bad)
    bad.write_text("3\n0 1 2\n1 2 0\n")
    with pytest.raises(GroupError):
        read_table_file(bad)
    bad.write_text("2\n0 x\n1 0\n")
    with pytest.raises(GroupError):
        read_table_file(bad)
