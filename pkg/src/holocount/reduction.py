"""Characteristic subgroups and reduction of crossed homomorphisms modulo them.

For a characteristic ``M`` of ``N`` every pair ``(f, g)`` pushes forward to
``fbar: G -> Aut(N/M)`` and ``gbar: G -> N/M`` with ``gbar`` again a crossed
homomorphism.  A bijective ``g`` forces ``gbar`` onto, so an action whose
push-forward admits no surjective crossed homomorphism can be discarded
before any search at the level of ``N``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .groups import (BoundExceeded, Group, GroupError, NORMAL_BOUND, Quotient, Subgroup,
                     is_p_group, normal_subgroups, prime_factors, quotient_group,
                     structural_subgroup)
from .morphisms import AutGroup, Homomorphism, automorphism_group, perm_order, quotient_action


def _require_prime(p: int) -> None:
    if p < 2 or prime_factors(p) != [p]:
        raise ValueError(f"{p} is not prime")


def valuation(n: int | Group, p: int) -> int:
    """Exponent of ``p`` in ``n`` (or in ``|n|`` for a group)."""
    _require_prime(p)
    if isinstance(n, Group):
        n = n.order
    if n <= 0:
        raise ValueError("valuation of a non-positive integer")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def sym_valuation(m: int, p: int) -> int:
    """Exponent of ``p`` in ``m!`` by Legendre's sum."""
    _require_prime(p)
    v, q = 0, p
    while q <= m:
        v += m // q
        q *= p
    return v


def gl_order(m: int, p: int) -> int:
    _require_prime(p)
    q = p ** m
    return math.prod(q - p ** i for i in range(m))


@dataclass
class CharacteristicFamily:
    subgroups: list[Subgroup]
    complete: bool
    mode: str  # "full" or "fallback"

    def __iter__(self):
        return iter(self.subgroups)

    def __len__(self) -> int:
        return len(self.subgroups)


def _fallback_candidates(N: Group) -> list[Subgroup]:
    out = [Subgroup(N, (0,)), structural_subgroup(N, "center"),
           structural_subgroup(N, "commutator")]
    try:
        out.append(structural_subgroup(N, "frattini"))
    except BoundExceeded:
        pass
    out.extend(structural_subgroup(N, f"power:{p}") for p in prime_factors(N.order))
    out.append(Subgroup(N, tuple(range(N.order))))
    return out


def characteristic_subgroups(N: Group, auts: Optional[AutGroup] = None,
                             mode: str = "auto") -> CharacteristicFamily:
    """Characteristic subgroups of ``N`` sorted by (order, elements).

    ``full`` filters the normal-subgroup lattice by Aut-stability and is
    exhaustive; ``fallback`` checks a fixed family of canonical subgroups.
    ``auto`` uses ``full`` whenever the lattice is within bounds.
    """
    if mode not in ("auto", "full", "fallback"):
        raise ValueError(f"unknown mode {mode!r}")
    auts = auts or automorphism_group(N)
    key = ("characteristic", mode)
    if key in N._cache:
        return N._cache[key]
    if mode == "full" or (mode == "auto" and N.order <= NORMAL_BOUND):
        pool, complete, used = normal_subgroups(N), True, "full"
    else:
        pool, complete, used = _fallback_candidates(N), False, "fallback"
    seen, subs = set(), []
    for M in pool:
        if M.elements in seen:
            continue
        seen.add(M.elements)
        if auts.stabilizes(M.elements):
            subs.append(M)
    subs.sort(key=lambda s: (s.order, s.elements))
    fam = CharacteristicFamily(subs, complete, used)
    N._cache[key] = fam
    return fam


def maximal_characteristic(N: Group, auts: Optional[AutGroup] = None) -> Optional[Subgroup]:
    """A maximal proper characteristic subgroup: largest order, then smallest element tuple."""
    fam = characteristic_subgroups(N, auts)
    proper = [M for M in fam.subgroups if M.order < N.order]
    if not proper:
        return None
    sets = [M.as_set() for M in proper]
    maximal = [M for M, s in zip(proper, sets) if not any(s < t for t in sets)]
    return min(maximal, key=lambda M: (-M.order, M.elements))


@dataclass(frozen=True)
class CharSimpleShape:
    T_label: str
    m: int


def char_simple_shape(N: Group, auts: Optional[AutGroup] = None) -> Optional[CharSimpleShape]:
    """Shape ``T^m`` of ``N/M`` for the maximal characteristic subgroup ``M``."""
    M = maximal_characteristic(N, auts)
    if M is None:
        return None
    Q = quotient_group(N, M).group
    if Q.is_abelian():
        p = is_p_group(Q.order)
        if p is None:
            raise AssertionError("characteristically simple abelian quotient is not a p-group")
        return CharSimpleShape(f"cyclic:{p}", valuation(Q.order, p))
    minimal = [S for S in normal_subgroups(Q) if S.order > 1][0]
    t = minimal.order
    m = round(math.log(Q.order, t))
    if t ** m != Q.order:
        raise AssertionError("quotient order is not a power of the minimal normal subgroup order")
    return CharSimpleShape(f"simple:{t}", m)


@dataclass
class ReducedPair:
    domain: Group
    M: Subgroup
    quotient: Quotient
    fbar: list[tuple[int, ...]]  # induced permutation of N/M for each element of G
    gbar: tuple[int, ...]        # coset index per element of G, -1 where undefined
    kernel: tuple[int, ...]

    def fbar_hom(self) -> Homomorphism:
        """``fbar`` as a homomorphism into ``Aut(N/M)``."""
        qa = automorphism_group(self.quotient.group)
        return Homomorphism(self.domain, qa, tuple(qa.perm_index(p) for p in self.fbar))


def _as_action(f) -> tuple[tuple[int, ...], AutGroup]:
    if isinstance(f, Homomorphism):
        return tuple(f.image), f.codomain
    raise TypeError("action must be a Homomorphism into Aut(N)")


def reduce_pair(f: Homomorphism, g: Sequence[int], M: Subgroup,
                auts: Optional[AutGroup] = None) -> ReducedPair:
    """Push ``(f, g)`` forward to ``N/M``; entries of ``g`` equal to -1 stay undefined."""
    f_img, auts = _as_action(f)
    N = auts.group
    if M.parent is not N:
        raise GroupError("subgroup belongs to a different group")
    if not auts.stabilizes(M.elements):
        raise GroupError("subgroup is not characteristic")
    Q = quotient_group(N, M)
    proj, reps = Q.projection, Q.reps
    perms = auts.perms
    cache: dict[int, tuple[int, ...]] = {}
    fbar = []
    for a in f_img:
        if a not in cache:
            p = perms[a]
            cache[a] = tuple(proj[p[r]] for r in reps)
        fbar.append(cache[a])
    gbar = tuple(proj[y] if y >= 0 else -1 for y in g)
    kernel = tuple(x for x, q in enumerate(gbar) if q == 0)
    return ReducedPair(f.domain, M, Q, fbar, gbar, kernel)


@dataclass
class ModCharCheck:
    a: bool
    b: bool
    c: bool
    d: bool
    d_applies: bool
    cocycle: bool = True

    @property
    def ok(self) -> bool:
        return self.a and self.b and self.c and self.d and self.cocycle

    def failures(self) -> list[str]:
        return [k for k in ("a", "b", "c", "d", "cocycle") if not getattr(self, k)]


def verify_mod_char(rp: ReducedPair, G: Group, N: Group, M: Subgroup) -> ModCharCheck:
    """Check the four consequences of reducing a full crossed homomorphism mod ``M``."""
    if M.elements != rp.M.elements:
        raise GroupError("reduced pair was built for a different subgroup")
    gbar, fbar = rp.gbar, rp.fbar
    if any(q < 0 for q in gbar):
        raise GroupError("verification needs a fully defined map")
    Q = rp.quotient.group
    Qm, Gm, Gi = Q.mul, G.mul, G.inv
    n = G.order
    ident = tuple(range(Q.order))
    # gbar is a crossed homomorphism for fbar
    cocycle = all(gbar[Gm[x][y]] == Qm[gbar[x]][fbar[x][gbar[y]]]
                  for x in range(n) for y in range(n))
    K = rp.kernel
    Ks = set(K)
    a = 0 in Ks and all(Gm[x][Gi[y]] in Ks for x in K for y in K)
    # fibres of gbar are exactly the left cosets of the kernel
    fibres: dict[int, set[int]] = {}
    for x in range(n):
        fibres.setdefault(gbar[x], set()).add(x)
    b = a and all(fib == {Gm[x][k] for k in K} for fib in fibres.values() for x in (min(fib),))
    kf = [x for x in range(n) if fbar[x] == ident]
    c = all(gbar[Gm[x][y]] == Qm[gbar[x]][gbar[y]] for x in kf for y in kf)
    d_applies = Q.is_abelian()
    d = True
    if d_applies:
        Z = set(structural_subgroup(G, "center").elements)
        images = {p for p in fbar}
        d = all(p[gbar[x]] == gbar[x] for x in kf if x in Z for p in images)
    return ModCharCheck(a, b, c, d, d_applies, cocycle)


def _surjective_exists(G: Group, Q: Group, fperms: Sequence[Sequence[int]]) -> bool:
    from .crossed import cocycle_images
    for _ in cocycle_images(G, Q, fperms, surjective=True):
        return True
    return False


def quotient_prune(G: Group, N: Group, M: Subgroup, f: Homomorphism) -> bool:
    """True when no crossed homomorphism for ``fbar`` maps onto ``N/M``.

    A true answer proves that ``f`` carries no bijective crossed homomorphism.
    """
    f_img, auts = _as_action(f)
    if M.order == N.order:
        return False
    rp = reduce_pair(f, [-1] * G.order, M, auts)
    if _cyclic_fast_path(G, N, M, rp.fbar):
        return True
    if M.order == 1:
        return False  # the quotient search would be the full search
    return not _surjective_exists(G, rp.quotient.group, rp.fbar)


def _cyclic_fast_path(G: Group, N: Group, M: Subgroup,
                      fbar: Sequence[Sequence[int]]) -> Optional[bool]:
    """Index bound for cyclic ``G`` of order ``p^n`` with ``M`` the Frattini subgroup.

    With ``|fbar(s)| = p^r`` the kernel of ``gbar`` contains ``s^(p^(r+1))``;
    for ``m = 2`` and odd ``p`` it already contains ``s^p``.  A surjection onto
    ``(Z/p)^m`` needs index ``p^m``.  Returns None when the bound does not apply.
    """
    p = is_p_group(G.order)
    if p is None or len(G.generators) != 1 or G.elem_order[G.generators[0]] != G.order:
        return None
    if is_p_group(N.order) != p or M.elements != structural_subgroup(N, "frattini").elements:
        return None
    m = valuation(N.order // M.order, p)
    s = G.generators[0]
    r = valuation(perm_order(fbar[s]), p)
    if m == 2 and p % 2 == 1:
        return True
    return r + 1 < m


class PruneContext:
    """Per-(G, N) pruning state with a cache keyed by the induced quotient action."""

    def __init__(self, G: Group, N: Group, auts: Optional[AutGroup] = None):
        self.G, self.N = G, N
        self.auts = auts or automorphism_group(N)
        self.family = characteristic_subgroups(N, self.auts)
        self.subgroups = [M for M in self.family.subgroups if 1 < M.order < N.order]
        self._levels: Optional[list[tuple[Subgroup, Quotient, list[tuple[int, ...]]]]] = None
        self._cache: dict = {}
        self.checks = 0

    def tried_orders(self) -> list[int]:
        return [M.order for M in self.subgroups]

    def _data(self):
        if self._levels is None:
            # larger M first: smaller quotients are cheaper to search
            order = sorted(self.subgroups, key=lambda M: (-M.order, M.elements))
            self._levels = [(M, quotient_group(self.N, M), None) for M in order]
        return self._levels

    def _qperms(self, i: int) -> list[tuple[int, ...]]:
        M, Q, qp = self._levels[i]
        if qp is None:
            qp = quotient_action(self.auts, M, Q)
            self._levels[i] = (M, Q, qp)
        return qp

    def prune(self, f_img: Sequence[int]) -> bool:
        G = self.G
        gens = G.generators
        for i, (M, Q, _) in enumerate(self._data()):
            qp = self._qperms(i)
            key = (i, tuple(qp[f_img[s]] for s in gens))
            hit = self._cache.get(key)
            if hit is None:
                fbar = [qp[a] for a in f_img]
                fast = _cyclic_fast_path(G, self.N, M, fbar)
                hit = True if fast else not _surjective_exists(G, Q.group, fbar)
                self._cache[key] = hit
            if hit:
                return True
        return False

    def assert_lemma(self, f_img: Sequence[int], g_img: Sequence[int]) -> None:
        """Raise AssertionError if some characteristic ``M`` violates a reduction clause."""
        f = Homomorphism(self.G, self.auts, tuple(f_img))
        for M in self.subgroups:
            rp = reduce_pair(f, g_img, M, self.auts)
            rec = verify_mod_char(rp, self.G, self.N, M)
            self.checks += 1
            if not rec.ok:
                raise AssertionError(f"reduction mod |M|={M.order} failed clauses {rec.failures()}")
