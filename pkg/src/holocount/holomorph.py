"""The holomorph ``Hol(N)`` as pairs ``(a, phi)`` with ``a in N``, ``phi in Aut(N)``.

The pair ``(a, phi)`` stands for ``rho(a) * phi`` and acts on ``N`` by
``x -> phi(x) * a^-1``.  Products follow::

    (a1, phi1) * (a2, phi2) = (a1 * phi1(a2), phi1 o phi2)

Elements are encoded as the integer ``a * |Aut(N)| + phi`` so the identity is
0 and any code in ``range(order)`` is a valid element.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .groups import Group, GroupError, Subgroup, closure, generated_subgroup
from .morphisms import AutGroup, automorphism_group, mul_function

DENSE_HOL_LIMIT = 4096


@dataclass(frozen=True)
class HolElement:
    a: int
    phi: int


class Holomorph:
    """Lazy carrier for ``Hol(N)``; a dense table is built only on request."""

    def __init__(self, N: Group, auts: Optional[AutGroup] = None):
        self.base = N
        self.auts = auts or automorphism_group(N)
        self.naut = self.auts.order
        self.order = N.order * self.naut
        self.label = f"Hol({N.label})"
        self._elem_order: Optional[list[int]] = None
        self._dense: Optional[Group] = None
        self._amul = mul_function(self.auts)

    def encode(self, a: int, phi: int) -> int:
        return a * self.naut + phi

    def decode(self, code: int) -> HolElement:
        a, phi = divmod(code, self.naut)
        return HolElement(a, phi)

    def mul(self, x: int, y: int) -> int:
        a1, p1 = divmod(x, self.naut)
        a2, p2 = divmod(y, self.naut)
        a = self.base.mul[a1][self.auts.perms[p1][a2]]
        return a * self.naut + self._amul(p1, p2)

    def inverse(self, x: int) -> int:
        a, p = divmod(x, self.naut)
        pi = self.auts.inverse[p]
        # (a, p)^-1 = (p^-1(a^-1), p^-1)
        return self.auts.perms[pi][self.base.inv[a]] * self.naut + pi

    def act(self, x: int, point: int) -> int:
        """Image of ``point`` under the permutation of ``N`` that ``x`` represents."""
        a, p = divmod(x, self.naut)
        N = self.base
        return N.mul[self.auts.perms[p][point]][N.inv[a]]

    def as_permutation(self, x: int) -> tuple[int, ...]:
        a, p = divmod(x, self.naut)
        N = self.base
        ai = N.inv[a]
        perm = self.auts.perms[p]
        return tuple(N.mul[perm[t]][ai] for t in range(N.order))

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != 0:
            y = self.mul(y, x)
            k += 1
        return k

    @property
    def elem_order(self) -> list[int]:
        if self._elem_order is None:
            self._elem_order = self._compute_orders()
        return self._elem_order

    def _compute_orders(self) -> list[int]:
        # (a, p)^e = (t, id) with e = ord(p); the order is e * ord(t)
        N, auts, A = self.base, self.auts, self.naut
        out = [0] * self.order
        for p in range(A):
            e = auts.elem_order[p]
            perm = auts.perms[p]
            for a in range(N.order):
                t, cur = 0, a
                for _ in range(e):
                    t = N.mul[t][cur]
                    cur = perm[cur]
                out[a * A + p] = e * N.elem_order[t]
        return out

    def rho_code(self, a: int) -> int:
        return a * self.naut

    def lambda_code(self, eta: int) -> int:
        return self.base.inv[eta] * self.naut + self.auts.conj_index[eta]

    def as_group(self) -> Group:
        if self._dense is None:
            if self.order > DENSE_HOL_LIMIT:
                raise GroupError(f"|Hol| = {self.order} exceeds the dense limit {DENSE_HOL_LIMIT}")
            n = self.order
            self._dense = Group([[self.mul(x, y) for y in range(n)] for x in range(n)], self.label)
        return self._dense

    def __len__(self) -> int:
        return self.order


def build_holomorph(N: Group) -> Holomorph:
    return Holomorph(N)


def affine_element(hol: Holomorph, phi_perm, b: int) -> int:
    """Code of the holomorph element acting as ``x -> phi(x) * b``."""
    # phi(x) * a^-1 with a^-1 = b
    return hol.encode(hol.base.inv[b], hol.auts.perm_index(phi_perm))


def hol_act(hol: Holomorph, h: HolElement | int, x: int) -> int:
    code = hol.encode(h.a, h.phi) if isinstance(h, HolElement) else h
    return hol.act(code, x)


def is_regular_subset(hol: Holomorph, S: Iterable[int]) -> bool:
    """Whether the subgroup ``S`` acts simply transitively on ``N``.

    Raises :class:`GroupError` when ``S`` is not closed under the product.
    """
    S = set(S)
    if 0 not in S or closure(hol, S) != S:
        raise GroupError("not a subgroup of the holomorph")
    N = hol.base
    if len(S) != N.order:
        return False
    hits = {hol.act(x, 0) for x in S}
    return len(hits) == N.order


def canonical_rho_lambda(hol: Holomorph) -> tuple[Subgroup, Subgroup]:
    N = hol.base
    rho = Subgroup(hol, tuple(sorted(hol.rho_code(a) for a in range(N.order))))
    lam = Subgroup(hol, tuple(sorted(hol.lambda_code(e) for e in range(N.order))))
    return rho, lam


def hol_subgroup(hol: Holomorph, seed: Iterable[int]) -> Subgroup:
    return generated_subgroup(hol, seed)
