"""Brute-force baselines that avoid crossed homomorphisms entirely.

``regular_subgroup_census`` builds every regular subgroup of ``Hol(N)`` by
repeatedly adjoining an element that moves the identity of ``N`` to the
smallest point not yet reached; intermediate subgroups must act freely.
Subgroups are kept up to conjugation by ``Aut(N)`` (the point stabiliser)
with their orbit sizes, then typed with the isomorphism test.

``brute_gp_count`` works inside the symmetric group on the elements of
``G`` without any holomorph structure.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .groups import BoundExceeded, Group, closure, find_isomorphism
from .holomorph import Holomorph
from .morphisms import automorphism_group, enumerate_homs

HOL_ORDER_BOUND = 24
HOMS_HOL_LIMIT = 600
GP_ORDER_BOUND = 6
GP_EXTENDED_BOUND = 8

_CENSUS_CACHE: dict[str, "Census"] = {}


@dataclass
class Census:
    """Regular subgroups of ``Hol(N)`` up to ``Aut(N)``-conjugacy."""

    N: Group
    reps: list[frozenset[int]]
    weights: list[int]
    types: list[Optional[Group]] = field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(self.weights)


@dataclass
class OracleReport:
    method: str
    counts: dict[str, int]
    deltas: dict[str, int]

    @property
    def ok(self) -> bool:
        return all(d == 0 for d in self.deltas.values())


def _close_free(hol: Holomorph, S: set[int], h: int, cap: int) -> Optional[set[int]]:
    """``<S, h>``, or None once it has more than ``cap`` elements or fails to act freely."""
    gens = [x for x in S if x != 0] + [h]
    elems, points, frontier = {0}, {0}, [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = hol.mul(x, g)
                if y in elems:
                    continue
                p = hol.act(y, 0)
                if p in points or len(elems) >= cap:
                    return None
                elems.add(y)
                points.add(p)
                nxt.append(y)
        frontier = nxt
    return elems


class _Canon:
    """Canonical form of a subgroup of ``Hol(N)`` under conjugation by ``Aut(N)``."""

    def __init__(self, hol: Holomorph):
        self.hol = hol
        self.auts = hol.auts
        self.all = np.arange(self.auts.order)
        self._conj: dict[int, np.ndarray] = {}

    def _conjugates(self, psi: int) -> np.ndarray:
        c = self._conj.get(psi)
        if c is None:
            c = self.auts.conjugates(psi, self.all)
            self._conj[psi] = c
        return c

    def form(self, S: set[int]) -> tuple[tuple[int, ...], int]:
        """(lexicographically least conjugate, stabiliser order)."""
        naut = self.auts.order
        P = self.auts.perm_array
        cols = []
        for x in sorted(S):
            a, psi = divmod(x, naut)
            cols.append(P[:, a] * naut + self._conjugates(psi))
        rows = np.sort(np.stack(cols, axis=1), axis=1)
        order = np.lexsort(rows.T[::-1])
        best = rows[order[0]]
        stab = int(np.count_nonzero(np.all(rows == best, axis=1)))
        return tuple(int(v) for v in best), stab


def regular_subgroup_census(N: Group) -> Census:
    """All regular subgroups of ``Hol(N)``, one per ``Aut(N)``-conjugacy class."""
    key = N.digest
    if key in _CENSUS_CACHE:
        return _CENSUS_CACHE[key]
    if N.order > HOL_ORDER_BOUND:
        raise BoundExceeded(f"holomorph census limited to |N| <= {HOL_ORDER_BOUND}")
    hol = Holomorph(N)
    auts = hol.auts
    naut, n = auts.order, N.order
    P = auts.perm_array
    canon = _Canon(hol)
    level: dict[tuple[int, ...], int] = {(0,): auts.order}
    finished: dict[tuple[int, ...], int] = {}
    while level:
        nxt: dict[tuple[int, ...], int] = {}
        for form, stab in level.items():
            S = set(form)
            if len(S) == n:
                finished[form] = stab
                continue
            A = sorted({x // naut for x in S})  # translation parts of S
            orbit = {N.inv[a] for a in A}
            x = min(p for p in range(n) if p not in orbit)
            xi = N.inv[x]
            # h = (x^-1, phi): h * s has translation part x^-1 phi(a_s), which must avoid A
            trans = N.table[xi][P[:, A]]
            ok = ~np.isin(trans, A).any(axis=1)
            for phi in np.flatnonzero(ok).tolist():
                h = xi * naut + phi
                T = _close_free(hol, S, h, n)
                if T is None or n % len(T):
                    continue
                f, st = canon.form(T)
                nxt.setdefault(f, st)
        level = nxt
    reps = sorted(finished)
    census = Census(N, [frozenset(r) for r in reps], [naut // finished[r] for r in reps])
    census.types = [None] * len(reps)
    _CENSUS_CACHE[key] = census
    return census


def _hol_subgroup_group(hol: Holomorph, S: frozenset[int]) -> Group:
    elems = sorted(S)
    pos = {x: i for i, x in enumerate(elems)}
    return Group([[pos[hol.mul(x, y)] for y in elems] for x in elems], "R")


def census_counts(N: Group, groups: list[Group]) -> dict[str, int]:
    """Number of regular subgroups of ``Hol(N)`` isomorphic to each of ``groups``."""
    census = regular_subgroup_census(N)
    hol = Holomorph(N)
    out = {G.label: 0 for G in groups}
    for i, (S, w) in enumerate(zip(census.reps, census.weights)):
        R = _hol_subgroup_group(hol, S)
        for G in groups:
            if find_isomorphism(R, G) is not None:
                out[G.label] += w
                break
    return out


def _brute_homs(N: Group, G: Group) -> int:
    hol = Holomorph(N)
    if hol.order > HOMS_HOL_LIMIT:
        raise BoundExceeded(f"hom-image search limited to |Hol(N)| <= {HOMS_HOL_LIMIT}")
    seen: set[frozenset[int]] = set()
    n = N.order
    for h in enumerate_homs(G, hol, "injective"):
        S = frozenset(h.image)
        if S in seen:
            continue
        if len({hol.act(x, 0) for x in S}) == n:
            seen.add(S)
    return len(seen)


def brute_reg_subgroups_hol(N: Group, G: Group, method: str = "census",
                            extended: bool = False) -> int:
    """Regular subgroups of ``Hol(N)`` isomorphic to ``G``.

    ``census`` uses :func:`regular_subgroup_census`; ``homs`` enumerates
    injective homomorphisms ``G -> Hol(N)`` and dedupes their images;
    ``homcount`` divides the number of homomorphisms with regular image
    (from :func:`hol_hom_census`) by ``|Aut(G)|``.  With ``extended`` the
    census falls back to ``homcount`` above its size bound.
    """
    if G.order != N.order:
        return 0
    if method == "census" and extended and N.order > HOL_ORDER_BOUND:
        method = "homcount"
    if method == "homs":
        return _brute_homs(N, G)
    if method == "homcount":
        _, regular = hol_hom_census(G, N)
        naut = automorphism_group(G).order
        if regular % naut:
            raise AssertionError("regular homomorphisms not a multiple of |Aut(G)|")
        return regular // naut
    if method != "census":
        raise ValueError(f"unknown method {method!r}")
    return census_counts(N, [G])[G.label]


def byott_report(N: Group, groups: list[Group], mode: str = "auto",
                 prune: bool = True) -> OracleReport:
    """Census counts for each ``G`` in ``groups`` against ``count_reg``'s subgroup counts."""
    from .crossed import count_reg

    counts = census_counts(N, groups)
    deltas = {}
    for G in groups:
        r = count_reg(G, N, mode=mode, prune=prune)
        if r.reg_count % r.aut_g or r.reg_count % r.aut_n:
            raise AssertionError(f"divisibility violated for ({G.label}, {N.label})")
        deltas[G.label] = counts[G.label] - r.subgroups
    return OracleReport("census", counts, deltas)


# -- symmetric group baseline -----------------------------------------------

def _perm_mul(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    # apply q then p
    return tuple(p[i] for i in q)


def _close_perms(gens: list[tuple[int, ...]], n: int) -> Optional[set[tuple[int, ...]]]:
    ident = tuple(range(n))
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _perm_mul(g, x)
                if y not in elems:
                    if y[0] == 0 or len(elems) >= n:
                        return None  # an element fixing a point, or too large
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    points = {p[0] for p in elems}
    return elems if len(points) == len(elems) else None


def brute_gp_count(G: Group, extended: bool = False) -> int:
    """Regular subgroups of ``Sym(G)`` normalised by the left translations of ``G``."""
    n = G.order
    bound = GP_EXTENDED_BOUND if extended else GP_ORDER_BOUND
    if n > bound:
        raise BoundExceeded(f"symmetric-group search limited to order {bound}")
    if n == 1:
        return 1
    mul = G.mul
    ident = tuple(range(n))
    lam = [tuple(mul[s][t] for t in range(n)) for s in G.generators]
    lam_inv = [tuple(G.mul[G.inv[s]][t] for t in range(n)) for s in G.generators]
    # fixed-point-free permutations sorted by the image of 0
    fpf: dict[int, list[tuple[int, ...]]] = {x: [] for x in range(1, n)}
    for p in itertools.permutations(range(n)):
        if all(p[i] != i for i in range(n)):
            fpf[p[0]].append(p)
    level = {frozenset([ident])}
    found: set[frozenset] = set()
    while level:
        nxt = set()
        for S in level:
            orbit = {p[0] for p in S}
            if len(orbit) == n:
                found.add(S)
                continue
            x = min(p for p in range(n) if p not in orbit)
            for h in fpf[x]:
                T = _close_perms(list(S) + [h], n)
                if T is not None and n % len(T) == 0:
                    nxt.add(frozenset(T))
        level = nxt
    count = 0
    for R in found:
        if all(_perm_mul(_perm_mul(l, r), li) in R for l, li in zip(lam, lam_inv) for r in R):
            count += 1
    return count


# -- homomorphisms into the holomorph ---------------------------------------

def hol_hom_images(G: Group, N: Group) -> set[tuple[int, ...]]:
    """Every homomorphism ``G -> Hol(N)`` as its tuple of element codes."""
    hol = Holomorph(N)
    return {h.image for h in enumerate_homs(G, hol)}


def hol_mul_many(hol: Holomorph, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Element-wise products of two broadcastable arrays of holomorph codes."""
    auts = hol.auts
    X, Y = np.broadcast_arrays(np.asarray(X), np.asarray(Y))
    a1, p1 = np.divmod(X, hol.naut)
    a2, p2 = np.divmod(Y, hol.naut)
    P = auts.perm_array
    a = np.asarray(hol.base.mul)[a1, P[p1, a2]]
    p = auts.indices_of(np.take_along_axis(P[p1], P[p2], axis=1))
    return a * hol.naut + p


def hol_hom_census(G: Group, N: Group, deadline: Optional[float] = None) -> tuple[int, int]:
    """``(|Hom(G, Hol N)|, number with regular image)`` by a conjugation-orbit walk.

    ``Hol(N)`` acts on homomorphisms by conjugation, which preserves
    regularity.  Generator images are chosen one orbit at a time under the
    centraliser of the images fixed so far, and each representative is weighted
    by its orbit size.  Candidates for a new generator ``s`` are prefiltered
    by the relations ``s^-1 t s = w`` with ``t`` an earlier generator and ``w``
    already in the subgroup they generate.
    """
    from .morphisms import _HomSearch

    hol = Holomorph(N)
    naut, n = hol.naut, N.order
    P = hol.auts.perm_array
    T = np.asarray(N.mul)
    inv = np.asarray(N.inv)
    gens = list(G.generators)
    if not gens:
        return 1, 1
    orders = np.asarray(hol.elem_order)
    all_codes = np.arange(hol.order)
    cands = [all_codes[G.elem_order[s] % orders == 0] for s in gens]
    # relations[k]: (j, w) with s_k^-1 s_j s_k = w inside <s_0..s_{k-1}>
    relations: list[list[tuple[int, int]]] = []
    prefix = {0}
    for k, s in enumerate(gens):
        rel = []
        for j in range(k):
            w = G.mul[G.mul[G.inv[s]][gens[j]]][s]
            if w in prefix:
                rel.append((j, w))
        relations.append(rel)
        if k == len(gens) - 1 and len(rel) == k:
            # the last generator normalises the prefix: its images are exactly
            # the candidates meeting the relations and s^m = u, m the index
            m, u = 1, s
            while u not in prefix:
                m, u = m + 1, G.mul[u][s]
            last = (m, u, sorted(prefix))
        else:
            last = None
        prefix = set(closure(G, list(prefix) + [s]))
    search = _HomSearch(G, hol, gens, injective=False)
    totals = [0, 0]
    ticker = [0]

    def conj(x: int, C: np.ndarray) -> np.ndarray:
        a, psi = divmod(x, naut)
        b, c = np.divmod(C, naut)
        psi2 = hol.auts.conjugates(psi, c)
        return T[T[b, P[c, a]], P[psi2, inv[b]]] * naut + psi2

    def regular() -> bool:
        img = search.img
        return len({hol.act(img[x], 0) for x in range(G.order)}) == n

    def count_last(X: np.ndarray, weight: int) -> None:
        m, u, H = last
        power = X
        for _ in range(m - 1):
            power = hol_mul_many(hol, power, X)
        X = X[power == search.img[u]]
        if not len(X):
            return
        totals[0] += weight * len(X)
        # the image of h s^i is img(h) x^i; regular iff the translation parts are distinct
        ha, hp = np.divmod(np.asarray([search.img[h] for h in H]), naut)
        cols, power = [], np.zeros_like(X)
        for _ in range(m):
            cols.append(T[ha[:, None], P[hp[:, None], (power // naut)[None, :]]])
            power = hol_mul_many(hol, power, X)
        trans = np.sort(np.concatenate(cols, axis=0), axis=0)
        free = np.all(trans[1:] != trans[:-1], axis=0)
        totals[1] += weight * int(np.count_nonzero(free))

    def rec(k: int, C: np.ndarray, weight: int) -> None:
        ticker[0] += 1
        if deadline is not None and ticker[0] & 255 == 0 and time.monotonic() > deadline:
            raise TimeoutError("hol_hom_census budget exhausted")
        if k == len(gens):
            totals[0] += weight
            if regular():
                totals[1] += weight
            return
        X = cands[k]
        for j, w in relations[k]:
            gj, cw = search.gimg[j], search.img[w]
            X = X[hol_mul_many(hol, gj, X) == hol_mul_many(hol, X, cw)]
        if last is not None and k == len(gens) - 1:
            count_last(X, weight)
            return
        if len(C) == 1:
            for x in X.tolist():
                trail = search.extend(k, x)
                if trail is not None:
                    search.push(trail)
                    rec(k + 1, C, weight)
                    search.pop(trail)
            return
        seen: set[int] = set()
        for x in X.tolist():
            if x in seen:
                continue
            imgs = conj(x, C)
            seen.update(imgs.tolist())
            trail = search.extend(k, x)
            if trail is None:
                continue
            search.push(trail)
            rec(k + 1, C[imgs == x], weight * len(np.unique(imgs)))
            search.pop(trail)

    rec(0, all_codes, 1)
    return totals[0], totals[1]
