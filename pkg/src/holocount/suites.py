"""Named verification batteries shared by ``holocount verify`` and the test suite.

Each battery returns a list of :class:`Check` records; a battery passes when
every record does.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .catalog import build_group, catalog, catalog_groups
from .crossed import (action_classes, cocycle_orbits, count_pairs, count_reg, pair_images,
                      principal_cocycle, cocycle_images)
from .groups import Group
from .holomorph import Holomorph, affine_element, is_regular_subset
from .morphisms import Homomorphism, automorphism_group, enumerate_homs
from .oracle import (brute_gp_count, byott_report, hol_hom_census, hol_hom_images,
                     hol_mul_many)

# pairs with at most this many homomorphisms into the holomorph get a set comparison
SET_COMPARE_HOMS = 20_000
# larger pairs check multiplicativity on about this many orbit representatives
REP_CHECK_CAP = 50_000


@dataclass
class Check:
    suite: str
    claim: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.ok else 'FAIL'}] {self.suite}: {self.claim} {self.detail}".rstrip()


@dataclass
class Profile:
    extended: bool = False
    prune: bool = True
    budget: Optional[float] = None
    workers: int = 1
    mode: str = "auto"
    assert_lemma: bool = True
    lemma_checks: int = 0


def _e(g: str, n: str, prof: Profile):
    r = count_reg(build_group(g), build_group(n), mode=prof.mode, prune=prof.prune,
                  budget=prof.budget, workers=prof.workers, assert_lemma=prof.assert_lemma)
    prof.lemma_checks += r.lemma_checks
    return r


def _timed(suite: str, claim: str, fn: Callable[[], tuple[bool, str]]) -> Check:
    t = time.monotonic()
    try:
        ok, detail = fn()
    except AssertionError as exc:  # invariant violations inside the pipeline
        ok, detail = False, f"assertion: {exc}"
    return Check(suite, claim, ok, detail, time.monotonic() - t)


def _e_claim(suite: str, g: str, n: str, prof: Profile, pred: Callable[[int], bool],
             want: str) -> Check:
    def run():
        r = _e(g, n, prof)
        if not r.authoritative:
            return False, "budget exhausted"
        return pred(r.e), f"e={r.e}"
    return _timed(suite, f"e({g}, {n}) {want}", run)


ABELIAN_ONE = ["cyclic:1", "cyclic:2", "cyclic:3", "cyclic:4", "abelian:2,2", "cyclic:5",
               "cyclic:6", "cyclic:7", "cyclic:10", "cyclic:12", "abelian:2,6", "abelian:2,10",
               "cyclic:15", "abelian:2,14", "cyclic:21"]
ABELIAN_MANY = ["cyclic:8", "abelian:4,2", "abelian:2,2,2", "cyclic:9", "abelian:3,3",
                "cyclic:16", "cyclic:18", "cyclic:25", "abelian:4,4"]


def c4xc4_witness() -> tuple[bool, str]:
    """The two affine maps ``x -> A x + b`` on ``Z/4 x Z/4`` generating a non-translation regular subgroup."""
    N = build_group("abelian:4,4")
    hol = Holomorph(N)
    idx = N.element_index

    def affine(A, b):
        perm = [0] * N.order
        for u in range(4):
            for v in range(4):
                perm[idx((u, v))] = idx(((A[0][0] * u + A[0][1] * v) % 4,
                                         (A[1][0] * u + A[1][1] * v) % 4))
        return affine_element(hol, perm, idx(tuple(b)))

    eta1 = affine([[1, 0], [0, 1]], (1, 1))
    eta2 = affine([[3, 2], [2, 3]], (1, 2))
    from .groups import generated_subgroup, is_isomorphic
    from .holomorph import canonical_rho_lambda
    S = generated_subgroup(hol, [eta1, eta2])
    rho, _ = canonical_rho_lambda(hol)
    regular = is_regular_subset(hol, S.elements)
    iso = S.order == 16 and is_isomorphic(S.as_group(), N)
    other = S.as_set() != rho.as_set()
    return regular and iso and other, f"|S|={S.order} regular={regular} iso={iso} not_rho={other}"


def suite_abelian(prof: Profile) -> list[Check]:
    out = [_e_claim("abelian", a, a, prof, lambda e: e == 1, "= 1") for a in ABELIAN_ONE]
    out += [_e_claim("abelian", a, a, prof, lambda e: e >= 2, ">= 2") for a in ABELIAN_MANY]
    out.append(_timed("abelian", "affine witness on C4 x C4", c4xc4_witness))
    return out


CYCLIC_PN = [("cyclic:9", "abelian:3,3"), ("cyclic:27", "abelian:9,3"),
             ("cyclic:27", "abelian:3,3,3"), ("cyclic:27", "heis:3"),
             ("cyclic:27", "c9xc3semi"), ("cyclic:25", "abelian:5,5")]


def suite_cyclic_pn(prof: Profile) -> list[Check]:
    return [_e_claim("cyclic-pn", g, n, prof, lambda e: e == 0, "= 0") for g, n in CYCLIC_PN]


def suite_quasisimple(prof: Profile) -> list[Check]:
    def a5():
        r = _e("alt:5", "alt:5", prof)
        c = r.classification
        ok = r.authoritative and r.e == 2 and r.reg_count == 240 and c == {
            "rho": 1, "lambda": 1, "other": 0}
        return ok, f"e={r.e} reg={r.reg_count} classes={c}"
    out = [_timed("quasisimple", "e(alt:5, alt:5) = 2 with rho + lambda only", a5)]
    if prof.extended:
        out.append(_e_claim("quasisimple", "sl2:5", "sl2:5", prof, lambda e: e == 2, "= 2"))
    return out


SL25_TARGETS = ["cyclic:120", "sym:5", "product:alt:5,cyclic:2", "dihedral:60", "dicyclic:30"]


def suite_2a5(prof: Profile) -> list[Check]:
    return [_e_claim("2a5", "sl2:5", n, prof, lambda e: e == 0, "= 0") for n in SL25_TARGETS]


def suite_s5(prof: Profile) -> list[Check]:
    return [_e_claim("s5", "sym:5", "sym:5", prof, lambda e: e >= 1, ">= 1"),
            _e_claim("s5", "sym:5", "product:alt:5,cyclic:2", prof, lambda e: e >= 1, ">= 1"),
            _e_claim("s5", "sym:5", "cyclic:120", prof, lambda e: e == 0, "= 0")]


def small_pairs(max_order: int, complete_only: bool = True) -> list[tuple[Group, Group]]:
    out = []
    for n, (specs, complete) in catalog().items():
        if n > max_order or (complete_only and not complete):
            continue
        groups = [build_group(s) for s in specs]
        out += [(G, N) for N in groups for G in groups]
    return out


def byott_check(prof: Profile, max_order: int = 16) -> Check:
    def run():
        bad = []
        for n, (specs, complete) in catalog().items():
            if n > max_order or not complete:
                continue
            groups = [build_group(s) for s in specs]
            for N in groups:
                rep = byott_report(N, groups, mode=prof.mode, prune=prof.prune)
                bad += [f"({g}, {N.label}): brute={rep.counts[g]} delta={d}"
                        for g, d in rep.deltas.items() if d]
        return not bad, "; ".join(bad) or "all pairs agree"
    return _timed("oracle", f"holomorph census = |Reg|/|Aut(G)| for orders <= {max_order}", run)


def gp_check(prof: Profile, gp_max: int = 6) -> Check:
    def run():
        bad = []
        for n in range(1, gp_max + 1):
            groups = catalog_groups(n)
            for G in groups:
                total = sum(count_reg(G, N, mode=prof.mode, prune=prof.prune).e for N in groups)
                brute = brute_gp_count(G)
                if total != brute:
                    bad.append(f"{G.label}: brute={brute} sum={total}")
        return not bad, "; ".join(bad) or f"orders 1..{gp_max} agree"
    return _timed("oracle", f"symmetric-group count = sum of e(G, N) for orders <= {gp_max}", run)


def suite_oracle(prof: Profile) -> list[Check]:
    return [byott_check(prof), gp_check(prof)]


# -- structural properties ---------------------------------------------------

def pair_set_equality(G: Group, N: Group) -> tuple[bool, str]:
    """Homomorphisms into the holomorph coincide with the ``beta`` maps of all pairs."""
    hol = Holomorph(N)
    n = N.order
    total, regular = hol_hom_census(G, N)
    if total <= SET_COMPARE_HOMS:
        direct = hol_hom_images(G, N)
        pairs = pair_images(G, N)
        reg_direct = {h for h in direct if len({hol.act(x, 0) for x in h}) == n}
        reg_pairs = {h for h in pairs if len({x // hol.naut for x in h}) == n}
        ok = direct == pairs and reg_direct == reg_pairs and (total, regular) == (
            len(direct), len(reg_direct))
        return ok, f"set |Hom|={len(direct)} |Reg|={len(reg_direct)}"
    # both sides are invariant under conjugation by Aut(N): containment on orbit
    # representatives (capped per action class) plus equal sizes from two
    # independent counts gives equality
    auts = hol.auts
    mul = np.asarray(G.mul)
    batch: list[list[int]] = []

    def multiplicative() -> bool:
        B = np.asarray(batch, dtype=np.int64)
        batch.clear()
        for x in G.generators:
            left = np.repeat(B[:, x], G.order)
            if not np.array_equal(B[:, mul[x]].ravel(), hol_mul_many(hol, left, B.ravel())):
                return False
        return True

    classes = list(action_classes(G, auts, symmetric=True))
    per_class = max(1, REP_CHECK_CAP // len(classes))
    for _, f_img, C in classes:
        fperms = [auts.perms[a] for a in f_img]
        reps = cocycle_orbits(G, N, fperms, C, auts, bijective=False)
        for _, g_img in itertools.islice(reps, per_class):
            batch.append([hol.encode(g, a) for g, a in zip(g_img, f_img)])
            if len(batch) == 4096 and not multiplicative():
                return False, "beta of a representative is not multiplicative"
    if batch and not multiplicative():
        return False, "beta of a representative is not multiplicative"
    pairs_total = count_pairs(G, N)
    pairs_regular = count_pairs(G, N, bijective=True)
    ok = total == pairs_total and regular == pairs_regular
    return ok, f"orbit |Hom|={total}/{pairs_total} |Reg|={regular}/{pairs_regular}"


def propagation_samples(samples: int = 10_000, seed: int = 7) -> tuple[bool, str]:
    """Power identities for cocycles on random (f, s, k)."""
    rng = random.Random(seed)
    pool = []
    for G, N in small_pairs(12):
        auts = automorphism_group(N)
        fs = [f for _, f, _ in action_classes(G, auts, symmetric=False)]
        pool.append((G, N, auts, fs))
    bad = 0
    for _ in range(samples):
        G, N, auts, fs = rng.choice(pool)
        f_img = rng.choice(fs)
        fperms = [auts.perms[a] for a in f_img]
        cocs = list(cocycle_images(G, N, fperms))
        g = rng.choice(cocs)
        s = rng.randrange(G.order)
        k = rng.randrange(1, 3 * G.elem_order[s] + 1)
        prod, cur = 0, g[s]
        p = fperms[s]
        for _ in range(k):
            prod = N.mul[prod][cur]
            cur = p[cur]
        if g[G.power(s, k)] != prod:
            bad += 1
        e = auts.elem_order[f_img[s]]
        if g[G.power(s, e * k)] != N.power(g[G.power(s, e)], k):
            bad += 1
    return bad == 0, f"{samples} samples, {bad} failures"


def principal_never_bijective(max_order: int = 24) -> tuple[bool, str]:
    checked = 0
    for G, N in small_pairs(max_order, complete_only=False):
        if G.order == 1:
            continue
        auts = automorphism_group(N)
        # bijectivity of g_eta is invariant under Aut(N)-conjugation of (f, eta)
        for _, f_img, _ in action_classes(G, auts, symmetric=True):
            f = Homomorphism(G, auts, f_img)
            for eta in range(N.order):
                checked += 1
                if principal_cocycle(f, eta).is_bijective():
                    return False, f"bijective principal cocycle for ({G.label}, {N.label})"
    return True, f"{checked} (f, eta) representatives"


def fpf_bijection_counts(max_order: int = 24) -> tuple[bool, str]:
    """``|Z^1| = |Hom(G, N)|`` and bijective count = fpf count for actions ``conj o f``."""
    checked = 0
    for n, (specs, _) in catalog().items():
        if n > max_order:
            continue
        for spec in specs:
            N = build_group(spec)
            auts = automorphism_group(N)
            homs = [h.image for h in enumerate_homs(N, N)]
            trivial_perms = [tuple(range(N.order))] * N.order
            # f up to post-composition with Aut(N)
            reps = [g for _, g in cocycle_orbits(N, N, trivial_perms, np.arange(auts.order),
                                                 auts, bijective=False)]
            for f_img in reps:
                action = [auts.conj_index[y] for y in f_img]
                fperms = [auts.perms[a] for a in action]
                z1 = sum(1 for _ in cocycle_images(N, N, fperms))
                zb = sum(1 for _ in cocycle_images(N, N, fperms, bijective=True))
                fpf = sum(1 for h in homs if all(h[x] != f_img[x] for x in range(1, N.order)))
                checked += 1
                if z1 != len(homs) or zb != fpf:
                    return False, f"{spec}: |Z1|={z1} |Hom|={len(homs)} bij={zb} fpf={fpf}"
    return True, f"{checked} actions"


def pruning_soundness(max_order: int = 27, mode: str = "auto") -> tuple[bool, str]:
    bad, checked = [], 0
    for G, N in small_pairs(max_order, complete_only=False):
        on = count_reg(G, N, mode=mode, prune=True)
        off = count_reg(G, N, mode=mode, prune=False)
        checked += 1
        if on.reg_count != off.reg_count:
            bad.append(f"({G.label}, {N.label}) {on.reg_count} != {off.reg_count}")
    return not bad, "; ".join(bad) or f"{checked} pairs agree"


def worker_determinism(pairs: Optional[list[tuple[str, str]]] = None) -> tuple[bool, str]:
    pairs = pairs or [("alt:5", "alt:5"), ("abelian:4,4", "abelian:4,4"),
                      ("dihedral:8", "quaternion:16"), ("cyclic:27", "heis:3"),
                      ("sym:3", "sym:3")]
    for g, n in pairs:
        G, N = build_group(g), build_group(n)
        blobs = []
        for w in (1, 4):
            d = count_reg(G, N, mode="auto", workers=w).to_dict(with_witnesses=True)
            d.pop("elapsed_ms")
            blobs.append(json.dumps(d, sort_keys=True))
        if blobs[0] != blobs[1]:
            return False, f"({g}, {n}) differs between 1 and 4 workers"
    return True, f"{len(pairs)} pairs byte-identical"


def suite_props(prof: Profile, max_order: int = 16) -> list[Check]:
    def sets():
        bad, n = [], 0
        for G, N in small_pairs(max_order):
            ok, detail = pair_set_equality(G, N)
            n += 1
            if not ok:
                bad.append(f"({G.label}, {N.label}) {detail}")
        return not bad, "; ".join(bad) or f"{n} pairs"

    return [
        _timed("props", f"beta maps = Hom(G, Hol N) for pairs <= {max_order}", sets),
        _timed("props", "cocycle power identities on random samples", propagation_samples),
        _timed("props", "principal cocycles are never bijective", principal_never_bijective),
        _timed("props", "inner actions: cocycle and fpf counts", fpf_bijection_counts),
        _timed("props", "pruning on/off agree for pairs <= 27", pruning_soundness),
        _timed("props", "reports identical for 1 and 4 workers", worker_determinism),
    ]


SUITES: dict[str, Callable[[Profile], list[Check]]] = {
    "abelian": suite_abelian,
    "cyclic-pn": suite_cyclic_pn,
    "quasisimple": suite_quasisimple,
    "s5": suite_s5,
    "2a5": suite_2a5,
    "props": suite_props,
    "oracle": suite_oracle,
}


def run_suite(name: str, prof: Optional[Profile] = None) -> list[Check]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name](prof or Profile())
