import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from holocount import morphisms
from holocount.catalog import build_group, catalog
from holocount.groups import (Group, GroupError, closure, quotient_group, structural_subgroup)
from holocount.morphisms import (Automorphism, automorphism_group, check_homomorphism,
                                 count_homs, enumerate_homs, induced_quotient_aut)

SPECS = [s for n in range(2, 13) for s in catalog(n)[n][0]]


def brute_homs(G, H):
    """Every map on generators checked by full multiplicativity."""
    found = set()
    for imgs in itertools.product(range(H.order), repeat=len(G.generators)):
        img = [-1] * G.order
        img[0] = 0
        frontier = [0]
        ok = True
        while frontier and ok:
            nxt = []
            for x in frontier:
                for g, v in zip(G.generators, imgs):
                    y = G.mul[x][g]
                    w = H.mul[img[x]][v]
                    if img[y] < 0:
                        img[y] = w
                        nxt.append(y)
            frontier = nxt
        if check_homomorphism(img, G, H):
            found.add(tuple(img))
    return found


def test_small_hom_counts():
    assert count_homs(build_group("cyclic:2"), build_group("cyclic:3")) == 1
    assert count_homs(build_group("cyclic:2"), build_group("cyclic:2")) == 2


def test_check_homomorphism_examples():
    C4, S3 = build_group("cyclic:4"), build_group("sym:3")
    assert check_homomorphism([0] * 6, S3, S3)
    assert check_homomorphism(C4.inv, C4, C4)
    assert not check_homomorphism(S3.inv, S3, S3)
    assert not check_homomorphism([0, 1], S3, S3)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(SPECS[:12]), st.sampled_from(SPECS[:12]))
def test_enumerate_matches_brute_force(a, b):
    G, H = build_group(a), build_group(b)
    homs = [h.image for h in enumerate_homs(G, H)]
    assert len(homs) == len(set(homs))
    assert set(homs) == brute_homs(G, H)
    assert homs == sorted(homs, key=lambda im: [im[g] for g in G.generators])


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(SPECS), st.sampled_from(SPECS), st.randoms(use_true_random=False))
def test_count_independent_of_generators(a, b, rnd):
    G, H = build_group(a), build_group(b)
    elems = list(range(1, G.order))
    rnd.shuffle(elems)
    gens: list[int] = []
    for x in elems:
        if len(closure(G, gens)) == G.order:
            break
        if x not in closure(G, gens):
            gens.append(x)
    assert sum(1 for _ in enumerate_homs(G, H, gens=gens)) == count_homs(G, H)


def test_filters():
    G, H = build_group("cyclic:6"), build_group("cyclic:6")
    assert count_homs(G, H, "injective") == 2
    assert count_homs(G, H, "surjective") == 2
    assert count_homs(build_group("cyclic:6"), build_group("cyclic:3"), "surjective") == 2
    assert count_homs(build_group("cyclic:3"), build_group("cyclic:6"), "surjective") == 0
    with pytest.raises(ValueError):
        list(enumerate_homs(G, H, "bijective"))
    with pytest.raises(GroupError):
        list(enumerate_homs(G, H, gens=[2]))


def test_sl25_to_a5_kernels():
    S, A = build_group("sl2:5"), build_group("alt:5")
    nontrivial = [h for h in enumerate_homs(S, A) if any(h.image)]
    assert nontrivial
    assert all(len(h.kernel()) == 2 for h in nontrivial)


@pytest.mark.parametrize("spec,order,inner", [
    ("cyclic:9", 6, 1), ("abelian:4,4", 96, 1), ("alt:5", 120, 60), ("sym:3", 6, 6),
    ("quaternion:8", 24, 4), ("abelian:2,2,2", 168, 1), ("dihedral:4", 8, 4),
])
def test_automorphism_orders(spec, order, inner):
    auts = automorphism_group(build_group(spec))
    assert auts.order == order
    assert len(auts.inn_indices) == inner


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(SPECS + ["heis:3", "abelian:3,3,3", "sym:4"]))
def test_autgroup_structure(spec):
    N = build_group(spec)
    auts = automorphism_group(N)
    assert auts.perms[0] == tuple(range(N.order))
    assert all(Automorphism(N, p).is_valid() for p in auts.perms)
    # closure under composition and inverse
    rng = np.random.default_rng(0)
    for a, b in rng.integers(0, auts.order, size=(30, 2)).tolist():
        c = auts.compose(a, b)
        assert auts.perms[c] == tuple(auts.perms[a][x] for x in auts.perms[b])
        assert auts.compose(a, auts.inverse[a]) == 0
    # conj is a homomorphism N -> Inn(N) with kernel Z(N)
    conj = auts.conj_index
    for x in range(N.order):
        for y in range(N.order):
            assert conj[N.mul[x][y]] == auts.compose(conj[x], conj[y])
    Z = structural_subgroup(N, "center")
    assert sorted(x for x in range(N.order) if conj[x] == 0) == list(Z.elements)
    assert len(auts.inn_indices) * Z.order == N.order
    # Inn is normal
    inn = set(auts.inn_indices)
    for a in range(min(auts.order, 20)):
        for i in inn:
            assert auts.compose(auts.compose(a, i), auts.inverse[a]) in inn
    # conjugates() agrees with compose
    x = int(rng.integers(auts.order))
    by = np.arange(auts.order)
    expect = [auts.compose(auts.compose(c, x), auts.inverse[c]) for c in range(auts.order)]
    assert auts.conjugates(x, by).tolist() == expect


def test_a5_automorphisms_never_fixed_point_free():
    A = build_group("alt:5")
    auts = automorphism_group(A)
    for p, q in itertools.combinations(auts.perms, 2):
        assert any(p[x] == q[x] for x in range(1, 60))


def test_induced_quotient_aut_examples():
    H = build_group("heis:3")
    auts = automorphism_group(H)
    Z = structural_subgroup(H, "center")
    Q = quotient_group(H, Z)
    ident = Automorphism(H, auts.perms[0])
    assert induced_quotient_aut(ident, Z, Q).perm == tuple(range(9))
    for eta in range(27):
        if eta in Z:
            continue
        phi = Automorphism(H, auts.perms[auts.conj_index[eta]])
        bar = induced_quotient_aut(phi, Z, Q)
        e = Q.projection[eta]
        qi = Q.group.inv[e]
        assert bar.perm == tuple(Q.group.mul[Q.group.mul[e][y]][qi] for y in range(9))
    S4 = build_group("sym:4")
    D = structural_subgroup(S4, "commutator")
    Qd = quotient_group(S4, D)
    a4 = automorphism_group(S4)
    for i in a4.inn_indices:
        assert induced_quotient_aut(Automorphism(S4, a4.perms[i]), D, Qd).perm == (0, 1)


def test_induced_quotient_aut_is_hom():
    N = build_group("abelian:4,2")
    auts = automorphism_group(N)
    M = structural_subgroup(N, "frattini")
    Q = quotient_group(N, M)
    bars = [induced_quotient_aut(Automorphism(N, p), M, Q, auts) for p in auts.perms]
    for a in range(auts.order):
        for b in range(auts.order):
            assert bars[auts.compose(a, b)].perm == bars[a].compose(bars[b]).perm


def test_induced_quotient_aut_requires_characteristic():
    N = build_group("abelian:2,2")
    auts = automorphism_group(N)
    from holocount.groups import generated_subgroup
    M = generated_subgroup(N, [1])
    Q = quotient_group(N, M)
    with pytest.raises(GroupError):
        induced_quotient_aut(Automorphism(N, auts.perms[1]), M, Q, auts)


def test_disk_cache(tmp_path, monkeypatch):
    monkeypatch.setenv(morphisms.CACHE_ENV, str(tmp_path))
    N = Group(build_group("dihedral:5").table, "d10-copy")
    morphisms._MEMORY_CACHE.pop(N.digest, None)
    first = automorphism_group(N)
    files = list(tmp_path.glob("aut-v*.json"))
    assert len(files) == 1
    data = json.loads(files[0].read_text())
    assert data["digest"] == N.digest and len(data["perms"]) == 20
    morphisms._MEMORY_CACHE.pop(N.digest, None)
    assert automorphism_group(N).perms == first.perms
    # a stale digest is ignored and recomputed
    data["digest"] = "0" * 64
    data["perms"] = data["perms"][:1]
    files[0].write_text(json.dumps(data))
    morphisms._MEMORY_CACHE.pop(N.digest, None)
    assert automorphism_group(N).order == 20
