"""Homomorphism enumeration and automorphism groups.

Homomorphisms are found by assigning images to the domain's generators one
at a time.  After each assignment the images are propagated over the
subgroup generated so far and every Cayley-graph edge inside it is checked,
so inconsistent prefixes die before the next generator is tried.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterator, Optional, Sequence

import numpy as np

from .groups import Group, GroupError, Quotient, Subgroup, closure

CACHE_ENV = "HOLOCOUNT_CACHE_DIR"
CACHE_VERSION = 1
DENSE_AUT_LIMIT = 1500

_MEMORY_CACHE: dict[str, "AutGroup"] = {}


def mul_function(H) -> Callable[[int, int], int]:
    """A two-argument product for any carrier (table-backed or lazy)."""
    m = H.mul
    if isinstance(m, list):
        return lambda a, b: m[a][b]
    return m


@dataclass(frozen=True)
class Homomorphism:
    domain: Group
    codomain: object
    image: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.image[x]

    def kernel(self) -> list[int]:
        return [x for x, y in enumerate(self.image) if y == 0]

    def is_injective(self) -> bool:
        return len(set(self.image)) == len(self.image)


@dataclass(frozen=True)
class Automorphism:
    group: Group
    perm: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.perm[x]

    def compose(self, other: "Automorphism") -> "Automorphism":
        """``self o other`` (apply ``other`` first)."""
        return Automorphism(self.group, tuple(self.perm[i] for i in other.perm))

    def is_valid(self) -> bool:
        return sorted(self.perm) == list(range(self.group.order)) and check_homomorphism(
            self.perm, self.group, self.group)


def check_homomorphism(image: Sequence[int], G: Group, H) -> bool:
    """Full multiplicativity check ``image[xy] == image[x] image[y]``."""
    if len(image) != G.order:
        return False
    hm = mul_function(H)
    gm = G.mul
    return all(image[gm[x][y]] == hm(image[x], image[y])
               for x in range(G.order) for y in range(G.order))


class _HomSearch:
    """Backtracking over generator images with incremental subgroup closure."""

    def __init__(self, G: Group, H, gens: Sequence[int], injective: bool):
        self.G, self.H = G, H
        self.gens = list(gens)
        self.hm = mul_function(H)
        self.injective = injective
        self.img = [-1] * G.order
        self.img[0] = 0
        self.used: set[int] = {0}
        self.gimg = [0] * len(self.gens)
        self.members = [0]
        self.member_set = {0}

    def _undo(self, trail: list[int]) -> None:
        img, used = self.img, self.used
        for t in trail:
            if self.injective:
                used.discard(img[t])
            img[t] = -1

    def extend(self, k: int, image: int) -> Optional[list[int]]:
        G, img, hm, gens = self.G, self.img, self.hm, self.gens
        self.gimg[k] = image
        gimg = self.gimg
        old = self.member_set
        queue = list(self.members)
        trail: list[int] = []
        i = 0
        gm = G.mul
        while i < len(queue):
            x = queue[i]
            i += 1
            in_old = x in old
            for j in range(k + 1):
                if j < k and in_old:
                    continue
                y = gm[x][gens[j]]
                v = hm(img[x], gimg[j])
                if img[y] < 0:
                    if self.injective:
                        if v in self.used:
                            self._undo(trail)
                            return None
                        self.used.add(v)
                    img[y] = v
                    trail.append(y)
                    queue.append(y)
                elif img[y] != v:
                    self._undo(trail)
                    return None
        return trail

    def push(self, trail: list[int]) -> None:
        self.members.extend(trail)
        self.member_set.update(trail)

    def pop(self, trail: list[int]) -> None:
        if trail:
            del self.members[len(self.members) - len(trail):]
            self.member_set.difference_update(trail)
        self._undo(trail)


def _order_candidates(H, g_order: int) -> list[int]:
    orders = H.elem_order
    return [y for y in range(H.order) if g_order % orders[y] == 0]


def enumerate_homs(G: Group, H, filter: str = "all", gens: Optional[Sequence[int]] = None,
                   candidates: Optional[Sequence[Sequence[int]]] = None,
                   first_images: Optional[Sequence[int]] = None) -> Iterator[Homomorphism]:
    """Stream ``Hom(G, H)`` in lexicographic order of generator images.

    ``filter`` is ``"all"``, ``"injective"`` or ``"surjective"``.  ``H`` may be
    a :class:`Group`, an :class:`AutGroup` or a holomorph carrier.
    ``first_images`` restricts the first generator's image; this is how
    the stream is partitioned across workers.
    """
    if filter not in ("all", "injective", "surjective"):
        raise ValueError(f"unknown filter {filter!r}")
    gens = list(G.generators if gens is None else gens)
    if closure(G, gens) != set(range(G.order)):
        raise GroupError("supplied elements do not generate the domain")
    if filter == "surjective" and G.order < H.order:
        return
    if filter == "injective" and G.order > H.order:
        return
    if candidates is None:
        candidates = [_order_candidates(H, G.elem_order[g]) for g in gens]
    candidates = [list(c) for c in candidates]
    if first_images is not None and candidates:
        allowed = set(first_images)
        candidates[0] = [c for c in candidates[0] if c in allowed]
    injective = filter == "injective" or (filter == "surjective" and G.order == H.order)
    search = _HomSearch(G, H, gens, injective=injective)

    def rec(k: int) -> Iterator[Homomorphism]:
        if k == len(gens):
            image = tuple(search.img)
            if filter == "surjective" and len(set(image)) != H.order:
                return
            yield Homomorphism(G, H, image)
            return
        for c in candidates[k]:
            trail = search.extend(k, c)
            if trail is None:
                continue
            search.push(trail)
            yield from rec(k + 1)
            search.pop(trail)

    if not gens:
        if filter == "surjective" and H.order != 1:
            return
        yield Homomorphism(G, H, (0,))
        return
    yield from rec(0)


def count_homs(G: Group, H, filter: str = "all") -> int:
    return sum(1 for _ in enumerate_homs(G, H, filter))


def perm_order(p: Sequence[int]) -> int:
    seen = [False] * len(p)
    out = 1
    for i in range(len(p)):
        if not seen[i]:
            k, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                k += 1
            out = out * k // math.gcd(out, k)
    return out


class AutGroup:
    """``Aut(N)`` as a list of element permutations; index 0 is the identity.

    Products follow ``(a * b)(x) = a(b(x))``.  Elements are keyed by the
    images of ``N.generators``, which determine an automorphism.
    """

    def __init__(self, group: Group, perms: Sequence[Sequence[int]]):
        self.group = group
        N = group
        ident = tuple(range(N.order))
        perms = [tuple(p) for p in perms]
        perms.sort(key=lambda p: p != ident)  # stable: identity first
        if not perms or perms[0] != ident:
            raise GroupError("automorphism list lacks the identity")
        self.perms: list[tuple[int, ...]] = perms
        self.order = len(perms)
        self.keys = [tuple(p[g] for g in N.generators) for p in perms]
        self.index = {k: i for i, k in enumerate(self.keys)}
        if len(self.index) != self.order:
            raise GroupError("duplicate automorphisms")
        self.perm_array = np.array(perms, dtype=np.int64).reshape(self.order, N.order)
        self.elem_order = [perm_order(p) for p in perms]
        self.inverse = [self.index[tuple(self._inverse_perm(p)[g] for g in N.generators)]
                        for p in perms]
        self._table: Optional[list[list[int]]] = None
        if self.order <= DENSE_AUT_LIMIT:
            self._table = self._dense_table()
            self.mul = self._table
        else:
            self.mul = self.compose
        self.conj_index = [self.perm_index(self._conj_perm(eta)) for eta in range(N.order)]
        self.inn_indices = sorted(set(self.conj_index))
        self.label = f"Aut({N.label})"
        self._generators: Optional[list[int]] = None
        self.inverse_array = np.argsort(self.perm_array, axis=1)
        self._radix = None
        if N.order ** max(1, len(N.generators)) < 2 ** 62:
            self._radix = np.array([N.order ** j for j in range(len(N.generators))], dtype=np.int64)
            codes = self.perm_array[:, N.generators] @ self._radix if N.generators else \
                np.zeros(self.order, dtype=np.int64)
            self._code_order = np.argsort(codes)
            self._sorted_codes = codes[self._code_order]

    @staticmethod
    def _inverse_perm(p):
        q = [0] * len(p)
        for i, v in enumerate(p):
            q[v] = i
        return q

    def _conj_perm(self, eta: int) -> tuple[int, ...]:
        N = self.group
        ei = N.inv[eta]
        return tuple(N.mul[N.mul[eta][x]][ei] for x in range(N.order))

    def _dense_table(self) -> list[list[int]]:
        P = self.perm_array
        gens = np.array(self.group.generators, dtype=np.int64)
        # key of a o b is a[b[gens]]
        idx = self.index
        table = []
        for a in range(self.order):
            imgs = P[a][P[:, gens]] if len(gens) else np.zeros((self.order, 0), dtype=np.int64)
            table.append([idx[tuple(r)] for r in imgs.tolist()])
        return table

    def compose(self, a: int, b: int) -> int:
        pa = self.perms[a]
        return self.index[tuple(pa[x] for x in self.keys[b])]

    def perm_index(self, perm: Sequence[int]) -> int:
        return self.index[tuple(perm[g] for g in self.group.generators)]

    def indices_of(self, rows: np.ndarray) -> np.ndarray:
        """Vectorised :meth:`perm_index` for a stack of permutation rows."""
        gens = self.group.generators
        if not gens:
            return np.zeros(len(rows), dtype=np.int64)
        if self._radix is None:
            return np.array([self.index[tuple(r)] for r in rows[:, gens].tolist()], dtype=np.int64)
        codes = rows[:, gens] @ self._radix
        pos = np.searchsorted(self._sorted_codes, codes)
        return self._code_order[pos]

    def conjugates(self, x: int, by: np.ndarray) -> np.ndarray:
        """Indices of ``c o x o c^-1`` for every index ``c`` in ``by``."""
        P = self.perm_array
        inner = P[x][self.inverse_array[by]]
        rows = np.take_along_axis(P[by], inner, axis=1)
        return self.indices_of(rows)

    def apply(self, a: int, x: int) -> int:
        return self.perms[a][x]

    def automorphism(self, a: int) -> Automorphism:
        return Automorphism(self.group, self.perms[a])

    def __len__(self) -> int:
        return self.order

    def __iter__(self) -> Iterator[Automorphism]:
        return (Automorphism(self.group, p) for p in self.perms)

    def inner_center(self) -> list[int]:
        return [eta for eta, c in enumerate(self.conj_index) if c == 0]

    @property
    def generators(self) -> list[int]:
        """Small generating set chosen greedily by element order."""
        if self._generators is None:
            ranked = sorted(range(1, self.order), key=lambda a: (-self.elem_order[a], a))
            gens: list[int] = []
            span = {0}
            for a in ranked:
                if len(span) == self.order:
                    break
                if a in span:
                    continue
                gens.append(a)
                frontier = list(span)
                while frontier:
                    nxt = []
                    for x in frontier:
                        for g in gens:
                            y = self.compose(x, g)
                            if y not in span:
                                span.add(y)
                                nxt.append(y)
                    frontier = nxt
            self._generators = gens
        return self._generators

    def stabilizes(self, elements) -> bool:
        """Whether every automorphism maps ``elements`` onto itself."""
        s = set(elements)
        return all(p[x] in s for a in self.generators for p in (self.perms[a],) for x in s)

    def as_group(self) -> Group:
        if self._table is None:
            raise GroupError("Aut(N) too large for a dense table")
        return Group(self._table, self.label)


def _cache_dir() -> Optional[Path]:
    d = os.environ.get(CACHE_ENV)
    return Path(d) if d else None


def _load_cached(N: Group) -> Optional[list[list[int]]]:
    d = _cache_dir()
    if d is None:
        return None
    path = d / f"aut-v{CACHE_VERSION}-{N.digest[:32]}.json"
    if not path.exists():
        return None
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError):
        return None
    if data.get("version") != CACHE_VERSION or data.get("digest") != N.digest:
        return None
    return data["perms"]


def _store_cached(N: Group, perms: list[tuple[int, ...]]) -> None:
    d = _cache_dir()
    if d is None:
        return
    d.mkdir(parents=True, exist_ok=True)
    path = d / f"aut-v{CACHE_VERSION}-{N.digest[:32]}.json"
    payload = {"version": CACHE_VERSION, "digest": N.digest, "perms": [list(p) for p in perms]}
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(payload))
    tmp.replace(path)


def automorphism_group(N: Group) -> AutGroup:
    """All automorphisms of ``N``, found as bijective endomorphisms.

    Generator images are restricted to elements with the same order and
    conjugacy-class size.  Results are memoised in-process and, when the
    ``HOLOCOUNT_CACHE_DIR`` environment variable is set, on disk keyed by
    the table digest.
    """
    key = N.digest
    if key in _MEMORY_CACHE and _MEMORY_CACHE[key].group is N:
        return _MEMORY_CACHE[key]
    perms = _load_cached(N)
    if perms is None:
        fp = N.fingerprint()
        cands = [[y for y in range(N.order) if fp[y] == fp[g]] for g in N.generators]
        perms = [h.image for h in enumerate_homs(N, N, "injective", candidates=cands)]
        _store_cached(N, perms)
    auts = AutGroup(N, perms)
    _MEMORY_CACHE[key] = auts
    return auts


def is_characteristic(auts: AutGroup, M: Subgroup) -> bool:
    return auts.stabilizes(M.elements)


def induced_quotient_aut(phi: Automorphism, M: Subgroup, Q: Quotient,
                         auts: Optional[AutGroup] = None) -> Automorphism:
    """The automorphism of ``N/M`` induced by ``phi`` (``M`` must be characteristic)."""
    N = phi.group
    auts = auts or automorphism_group(N)
    if not is_characteristic(auts, M):
        raise GroupError("subgroup is not characteristic")
    perm = tuple(Q.projection[phi.perm[r]] for r in Q.reps)
    return Automorphism(Q.group, perm)


def quotient_action(auts: AutGroup, M: Subgroup, Q: Quotient) -> list[tuple[int, ...]]:
    """Induced permutation of ``N/M`` for every automorphism index (no checks)."""
    proj, reps = Q.projection, Q.reps
    return [tuple(proj[p[r]] for r in reps) for p in auts.perms]
