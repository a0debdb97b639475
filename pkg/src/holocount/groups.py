"""Finite groups as dense multiplication tables.

Elements are the integers ``0..order-1`` with ``0`` the identity.  Every
table handed to :class:`Group` is validated (identity, inverses,
associativity) before the object is usable, so downstream code never has to
re-check the group axioms.
"""

from __future__ import annotations

import hashlib
from collections import Counter, deque
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Iterator, Optional, Sequence

import numpy as np

SUBGROUP_BOUND = 64
NORMAL_BOUND = 200
MAX_TABLE_ORDER = 400


class GroupError(ValueError):
    """Raised for malformed group data or violated preconditions."""


class BoundExceeded(GroupError):
    """A request needs an enumeration beyond the configured size bound."""


def _check_table(table: np.ndarray) -> None:
    n = table.shape[0]
    if table.shape != (n, n):
        raise GroupError("multiplication table must be square")
    if table.min() < 0 or table.max() >= n:
        raise GroupError("table entries out of range")
    ar = np.arange(n)
    if not (np.array_equal(table[0], ar) and np.array_equal(table[:, 0], ar)):
        raise GroupError("index 0 is not the identity")
    for row in table:
        if len(np.unique(row)) != n:
            raise GroupError("table row is not a permutation (not a group)")
    # (xy)z == x(yz), chunked over x to bound memory
    step = max(1, 2_000_000 // (n * n))
    for start in range(0, n, step):
        xs = slice(start, min(n, start + step))
        left = table[table[xs]]  # [x, y, :] -> (xy) z
        right = table[xs][:, table]  # [x, y, z] -> x (yz)
        if not np.array_equal(left, right):
            raise GroupError("multiplication table is not associative")


class Group:
    """A finite group given by its Cayley table.

    Attributes:
        order: number of elements.
        mul: nested list, ``mul[x][y]`` is the index of ``x*y``.
        inv: ``inv[x]`` is the index of ``x**-1``.
        elem_order: order of each element.
        generators: greedily chosen generating set (largest orders first).
        label: catalog string the group was built from.
    """

    def __init__(self, table: Sequence[Sequence[int]] | np.ndarray, label: str = "",
                 validate: bool = True):
        arr = np.asarray(table, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] == 0:
            raise GroupError("empty or non-square table")
        if arr.shape[0] > MAX_TABLE_ORDER:
            raise BoundExceeded(f"dense tables limited to order {MAX_TABLE_ORDER}")
        if validate:
            _check_table(arr)
        self.order = int(arr.shape[0])
        self.label = label
        self._cache: dict = {}
        self.table = arr
        self.mul: list[list[int]] = arr.tolist()
        n = self.order
        self.inv = [int(np.nonzero(arr[x] == 0)[0][0]) for x in range(n)]
        orders = [1] * n
        for x in range(1, n):
            k, y = 1, x
            while y != 0:
                y = self.mul[y][x]
                k += 1
            orders[x] = k
        self.elem_order = orders
        if any(n % k for k in orders):
            raise GroupError("element order does not divide the group order")
        self.generators = self._greedy_generators()

    # -- basic structure -------------------------------------------------

    def _greedy_generators(self) -> list[int]:
        ranked = sorted(range(1, self.order), key=lambda x: (-self.elem_order[x], x))
        gens: list[int] = []
        span = closure(self, [])
        for x in ranked:
            if len(span) == self.order:
                break
            if x not in span:
                gens.append(x)
                span = closure(self, gens)
        return gens

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"Group({self.label or '?'}, order={self.order})"

    @property
    def digest(self) -> str:
        """Stable hash of the multiplication table (used as a cache key)."""
        if "digest" not in self._cache:
            h = hashlib.sha256(self.table.astype(np.int32).tobytes()).hexdigest()
            self._cache["digest"] = h
        return self._cache["digest"]

    def power(self, x: int, k: int) -> int:
        y = 0
        for _ in range(k % self.elem_order[x]):
            y = self.mul[y][x]
        return y

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def conjugacy_classes(self) -> list[list[int]]:
        if "classes" not in self._cache:
            seen = [False] * self.order
            classes = []
            for x in range(self.order):
                if seen[x]:
                    continue
                cls = sorted({self.mul[self.mul[g][x]][self.inv[g]] for g in range(self.order)})
                for y in cls:
                    seen[y] = True
                classes.append(cls)
            self._cache["classes"] = classes
        return self._cache["classes"]

    def class_size(self) -> list[int]:
        if "class_size" not in self._cache:
            sizes = [0] * self.order
            for cls in self.conjugacy_classes():
                for x in cls:
                    sizes[x] = len(cls)
            self._cache["class_size"] = sizes
        return self._cache["class_size"]

    def fingerprint(self) -> list[tuple[int, int]]:
        """Per-element (order, conjugacy class size) invariants."""
        cs = self.class_size()
        return [(self.elem_order[x], cs[x]) for x in range(self.order)]

    def profile(self) -> tuple:
        """Isomorphism-invariant summary used to reject non-isomorphic pairs fast."""
        if "profile" not in self._cache:
            self._cache["profile"] = (self.order, tuple(sorted(Counter(self.fingerprint()).items())))
        return self._cache["profile"]

    def element_index(self, label: Hashable) -> int:
        """Index of a concrete element for groups built by :meth:`from_elements`."""
        elems = self._cache.get("elements")
        if elems is None:
            raise GroupError("group was not built from concrete elements")
        try:
            return elems.index(label)
        except ValueError:
            raise GroupError(f"{label!r} is not an element of {self.label}") from None

    @classmethod
    def from_elements(cls, gens: Sequence[Hashable], mul: Callable[[Hashable, Hashable], Hashable],
                      identity: Hashable, label: str = "") -> "Group":
        """Close ``gens`` under ``mul`` and build the table.

        Elements are numbered in breadth-first order from the identity, so
        the same generators always give the same table.
        """
        elems = [identity]
        index = {identity: 0}
        queue = deque([identity])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = mul(x, g)
                if y not in index:
                    if len(elems) >= MAX_TABLE_ORDER:
                        raise BoundExceeded(f"group exceeds order {MAX_TABLE_ORDER}")
                    index[y] = len(elems)
                    elems.append(y)
                    queue.append(y)
        table = [[index[mul(x, y)] for y in elems] for x in elems]
        group = cls(table, label)
        group._cache["elements"] = elems
        return group


def closure(G, seed: Iterable[int]) -> set[int]:
    """Smallest subgroup of ``G`` containing ``seed`` (``G`` is any carrier with ``mul``)."""
    gens = [s for s in dict.fromkeys(seed) if s != 0]
    found = {0}
    frontier = [0]
    mul = G.mul
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul[x][g] if isinstance(mul, list) else mul(x, g)
                if y not in found:
                    found.add(y)
                    nxt.append(y)
        frontier = nxt
    return found


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of ``parent`` stored as a sorted tuple of element indices."""

    parent: object
    elements: tuple[int, ...]

    def __post_init__(self):
        if not self.elements or self.elements[0] != 0:
            raise GroupError("subgroup must contain the identity")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self.as_set()

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def as_set(self) -> frozenset[int]:
        return frozenset(self.elements)

    def mask(self) -> int:
        m = 0
        for x in self.elements:
            m |= 1 << x
        return m

    def is_normal(self) -> bool:
        G = self.parent
        s = self.as_set()
        gens = G.generators if isinstance(G, Group) else range(G.order)
        return all(G.mul[G.mul[g][x]][G.inv[g]] in s for g in gens for x in self.elements)

    def as_group(self, label: str = "") -> Group:
        """Re-index the subgroup as a standalone :class:`Group`."""
        G = self.parent
        pos = {x: i for i, x in enumerate(self.elements)}
        mul = G.mul if isinstance(G.mul, list) else None
        rows = []
        for x in self.elements:
            if mul is not None:
                rows.append([pos[mul[x][y]] for y in self.elements])
            else:
                rows.append([pos[G.mul(x, y)] for y in self.elements])
        return Group(rows, label or f"sub({getattr(G, 'label', '?')})")


def _make_subgroup(G, elems: Iterable[int]) -> Subgroup:
    return Subgroup(G, tuple(sorted(elems)))


def generated_subgroup(G, seed: Iterable[int]) -> Subgroup:
    """Closure of ``seed``.  Works on :class:`Group` and on lazy carriers."""
    seed = list(seed)
    n = G.order
    for s in seed:
        if not 0 <= s < n:
            raise GroupError(f"element index {s} out of range")
    return _make_subgroup(G, closure(G, seed))


def is_p_group(n: int) -> Optional[int]:
    """Return the prime ``p`` if ``n`` is a power of ``p`` (``n > 1``), else ``None``."""
    if n < 2:
        return None
    p = next(d for d in range(2, n + 1) if n % d == 0)
    while n % p == 0:
        n //= p
    return p if n == 1 else None


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def structural_subgroup(G: Group, kind: str) -> Subgroup:
    """Center, commutator subgroup, Frattini subgroup, or ``power:p`` subgroup."""
    key = ("structural", kind)
    if key in G._cache:
        return G._cache[key]
    n = G.order
    mul, inv = G.mul, G.inv
    if kind == "center":
        elems = [x for x in range(n) if all(mul[x][g] == mul[g][x] for g in G.generators)]
        sub = _make_subgroup(G, elems)
    elif kind == "commutator":
        comms = {mul[mul[inv[x]][inv[y]]][mul[x][y]] for x in range(n) for y in range(n)}
        sub = generated_subgroup(G, comms)
    elif kind.startswith("power:"):
        p = int(kind.split(":", 1)[1])
        sub = generated_subgroup(G, {G.power(x, p) for x in range(n)})
    elif kind == "frattini":
        p = is_p_group(n)
        if n == 1:
            sub = _make_subgroup(G, [0])
        elif p is not None:
            powers = structural_subgroup(G, f"power:{p}")
            comm = structural_subgroup(G, "commutator")
            sub = generated_subgroup(G, set(powers) | set(comm))
        else:
            if n > SUBGROUP_BOUND:
                raise BoundExceeded("Frattini subgroup of a non-p-group needs full subgroup lattice")
            maximal = maximal_subgroups(G)
            common = set(range(n))
            for m in maximal:
                common &= m.as_set()
            sub = _make_subgroup(G, common)
    else:
        raise GroupError(f"unknown structural subgroup kind {kind!r}")
    G._cache[key] = sub
    return sub


@dataclass
class Quotient:
    """Quotient ``G/M`` with the projection and chosen coset representatives."""

    group: Group
    projection: list[int]
    reps: list[int]
    kernel: Subgroup


def quotient_group(G: Group, M: Subgroup) -> Quotient:
    if M.parent is not G:
        raise GroupError("subgroup belongs to a different group")
    if not M.is_normal():
        raise GroupError("quotient requires a normal subgroup")
    key = ("quotient", M.elements)
    if key in G._cache:
        return G._cache[key]
    n = G.order
    proj = [-1] * n
    reps: list[int] = []
    for x in range(n):
        if proj[x] < 0:
            c = len(reps)
            reps.append(x)
            for m in M.elements:
                proj[G.mul[x][m]] = c
    table = [[proj[G.mul[a][b]] for b in reps] for a in reps]
    Q = Group(table, f"{G.label}/{len(M)}")
    res = Quotient(Q, proj, reps, M)
    G._cache[key] = res
    return res


def _cyclic_subgroup_masks(G: Group) -> list[int]:
    masks = set()
    for x in range(G.order):
        m, y = 1, x
        while y != 0:
            m |= 1 << y
            y = G.mul[y][x]
        masks.add(m)
    return sorted(masks)


def _mask_elems(mask: int) -> list[int]:
    out, i = [], 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _join(G: Group, a: int, b: int) -> int:
    if a & b == b:
        return a
    if a & b == a:
        return b
    elems = closure(G, _mask_elems(a | b))
    m = 0
    for x in elems:
        m |= 1 << x
    return m


def all_subgroups(G: Group) -> list[Subgroup]:
    """Every subgroup of ``G`` (joins of cyclic subgroups); needs ``|G| <= SUBGROUP_BOUND``."""
    if "all_subgroups" in G._cache:
        return G._cache["all_subgroups"]
    if G.order > SUBGROUP_BOUND:
        raise BoundExceeded(f"subgroup lattice enumeration limited to order {SUBGROUP_BOUND}")
    cyclic = _cyclic_subgroup_masks(G)
    found = set(cyclic) | {1}
    frontier = list(found)
    while frontier:
        nxt = []
        for a in frontier:
            for c in cyclic:
                j = _join(G, a, c)
                if j not in found:
                    found.add(j)
                    nxt.append(j)
        frontier = nxt
    subs = sorted((_make_subgroup(G, _mask_elems(m)) for m in found),
                  key=lambda s: (s.order, s.elements))
    G._cache["all_subgroups"] = subs
    return subs


def normal_subgroups(G: Group) -> list[Subgroup]:
    """Normal subgroups as joins of normal closures of conjugacy classes."""
    if "normal_subgroups" in G._cache:
        return G._cache["normal_subgroups"]
    if G.order > NORMAL_BOUND:
        raise BoundExceeded(f"normal subgroup enumeration limited to order {NORMAL_BOUND}")
    closures = set()
    for cls in G.conjugacy_classes():
        m = 0
        for x in closure(G, cls):
            m |= 1 << x
        closures.add(m)
    found = set(closures) | {1}
    frontier = list(found)
    while frontier:
        nxt = []
        for a in frontier:
            for c in closures:
                j = a | c if a & c in (a, c) else None
                if j is None or j not in found:
                    j = _join(G, a, c)
                if j not in found:
                    found.add(j)
                    nxt.append(j)
        frontier = nxt
    subs = sorted((_make_subgroup(G, _mask_elems(m)) for m in found),
                  key=lambda s: (s.order, s.elements))
    G._cache["normal_subgroups"] = subs
    return subs


def subgroups_of_order(G: Group, k: int, normal_only: bool = False) -> list[Subgroup]:
    if k <= 0 or G.order % k:
        raise GroupError(f"{k} does not divide |G| = {G.order}")
    pool = normal_subgroups(G) if normal_only else all_subgroups(G)
    return [s for s in pool if s.order == k]


def maximal_subgroups(G: Group) -> list[Subgroup]:
    subs = [s for s in all_subgroups(G) if s.order < G.order]
    sets = [s.as_set() for s in subs]
    return [s for s, a in zip(subs, sets) if not any(a < b for b in sets)]


# -- isomorphism ---------------------------------------------------------

@dataclass(frozen=True)
class GroupIso:
    source: Group
    target: Group
    map: tuple[int, ...]

    def check(self) -> bool:
        s, t, f = self.source, self.target, self.map
        if sorted(f) != list(range(t.order)) or s.order != t.order or f[0] != 0:
            return False
        return all(f[s.mul[x][y]] == t.mul[f[x]][f[y]] for x in range(s.order) for y in range(s.order))


def _isomorphism_search(G: Group, H: Group) -> Iterator[list[int]]:
    fpG, fpH = G.fingerprint(), H.fingerprint()
    gens = G.generators
    cands = [[y for y in range(H.order) if fpH[y] == fpG[g]] for g in gens]
    n = G.order
    img = [-1] * n
    img[0] = 0
    used = [False] * H.order
    used[0] = True
    gimg = [0] * len(gens)
    members = [0]

    def extend(k: int) -> Optional[list[int]]:
        # close <gens[:k+1]> with the new image; every edge is checked once
        trail = []
        queue = list(members)
        old = set(members)
        i = 0
        while i < len(queue):
            x = queue[i]
            i += 1
            for j in range(k + 1):
                if j < k and x in old:
                    continue
                y = G.mul[x][gens[j]]
                v = H.mul[img[x]][gimg[j]]
                if img[y] < 0:
                    if used[v] or fpH[v] != fpG[y]:
                        for t in trail:
                            used[img[t]] = False
                            img[t] = -1
                        return None
                    img[y] = v
                    used[v] = True
                    trail.append(y)
                    queue.append(y)
                elif img[y] != v:
                    for t in trail:
                        used[img[t]] = False
                        img[t] = -1
                    return None
        return trail

    def rec(k: int) -> Iterator[list[int]]:
        if k == len(gens):
            yield list(img)
            return
        for c in cands[k]:
            if used[c]:
                continue
            gimg[k] = c
            trail = extend(k)
            if trail is None:
                continue
            members.extend(trail)
            yield from rec(k + 1)
            del members[len(members) - len(trail):]
            for t in trail:
                used[img[t]] = False
                img[t] = -1

    yield from rec(0)


def find_isomorphism(G: Group, H: Group) -> Optional[GroupIso]:
    """First isomorphism ``G -> H`` in lexicographic generator-image order, or ``None``."""
    if G.profile() != H.profile():
        return None
    for m in _isomorphism_search(G, H):
        return GroupIso(G, H, tuple(m))
    return None


def is_isomorphic(G: Group, H: Group) -> bool:
    return find_isomorphism(G, H) is not None


# -- classification ------------------------------------------------------

def classify_group(G: Group, flags: Optional[Iterable[str]] = None) -> set[str]:
    """Structural flags of ``G`` computed from the definitions.

    ``flags`` restricts the work to the requested subset; by default every
    flag is evaluated and a :class:`BoundExceeded` propagates when ``G`` is
    too large for the normal/characteristic subgroup enumerations.
    """
    from .reduction import characteristic_subgroups  # circular at import time

    wanted = set(flags) if flags is not None else {
        "abelian", "perfect", "simple", "quasisimple", "characteristically_simple"}
    out: set[str] = set()
    n = G.order
    if "abelian" in wanted and G.is_abelian():
        out.add("abelian")
    comm = structural_subgroup(G, "commutator")
    perfect = comm.order == n
    if "perfect" in wanted and perfect:
        out.add("perfect")
    simple = None
    if wanted & {"simple", "characteristically_simple"}:
        simple = n > 1 and len(normal_subgroups(G)) == 2
        if "simple" in wanted and simple:
            out.add("simple")
    if "quasisimple" in wanted and perfect and n > 1:
        Z = structural_subgroup(G, "center")
        Q = quotient_group(G, Z).group
        if Q.order > 1 and len(normal_subgroups(Q)) == 2:
            out.add("quasisimple")
    if "characteristically_simple" in wanted and n > 1:
        if simple:
            out.add("characteristically_simple")
        else:
            from .morphisms import automorphism_group
            chars = characteristic_subgroups(G, automorphism_group(G))
            if not chars.complete:
                raise BoundExceeded("characteristic subgroups not fully enumerable")
            if len(chars.subgroups) == 2:
                out.add("characteristically_simple")
    return out
