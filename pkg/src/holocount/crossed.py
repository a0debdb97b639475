"""Crossed homomorphisms and the count of regular embeddings ``G -> Hol(N)``.

A pair ``(f, g)`` with ``f: G -> Aut(N)`` a homomorphism and ``g`` a crossed
homomorphism for ``f`` defines ``beta(s) = (g(s), f(s))`` in ``Hol(N)``; every
homomorphism ``G -> Hol(N)`` arises this way exactly once, and the image is
regular iff ``g`` is a bijection.  :func:`count_reg` counts those pairs.

Counting can run over every pair ("raw") or over orbits of ``Aut(N)``,
which acts on pairs by ``(f, g) -> (c f c^-1, c o g)``.  Both modes share
the search code; raw mode is the orbit walk with a trivial symmetry group.
"""

from __future__ import annotations

import json
import multiprocessing
import time
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Sequence

import numpy as np

from .groups import Group, GroupError, Quotient, closure
from .holomorph import Holomorph
from .morphisms import (AutGroup, Homomorphism, _HomSearch, automorphism_group,
                        check_homomorphism)

SCHEMA_VERSION = 1
DEFAULT_WITNESS_CAP = 10_000
MODES = ("raw", "orbit", "auto")


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class CrossedHom:
    """A map ``g: G -> N`` together with the action ``f: G -> Aut(N)``."""

    action: Homomorphism
    images: tuple[int, ...]

    @property
    def domain(self) -> Group:
        return self.action.domain

    @property
    def auts(self) -> AutGroup:
        return self.action.codomain

    @property
    def target(self) -> Group:
        return self.action.codomain.group

    def __call__(self, x: int) -> int:
        return self.images[x]

    def is_bijective(self) -> bool:
        return len(set(self.images)) == self.target.order == len(self.images)


def _fperms(f: Homomorphism) -> list[tuple[int, ...]]:
    perms = f.codomain.perms
    return [perms[a] for a in f.image]


def is_cocycle(G: Group, target: Group, fperms: Sequence[Sequence[int]],
               images: Sequence[int]) -> bool:
    """Full check of ``g(xy) = g(x) * f(x)(g(y))`` for an action given as permutations."""
    Nm, Gm = target.mul, G.mul
    for x in range(G.order):
        gx, px = images[x], fperms[x]
        row = Gm[x]
        for y in range(G.order):
            if images[row[y]] != Nm[gx][px[images[y]]]:
                return False
    return True


def check_cocycle(c: CrossedHom) -> bool:
    if len(c.images) != c.domain.order:
        return False
    return is_cocycle(c.domain, c.target, _fperms(c.action), c.images)


class _CocycleSearch:
    """Assign generator images and propagate with ``g(x s) = g(x) * f(x)(g(s))``.

    After generator ``k`` is assigned the closure of ``<s_0..s_k>`` is grown
    breadth first; every edge ``x -> x s_j`` met on the way is checked, so a
    returned trail means the prefix is a crossed homomorphism on that subgroup.
    """

    def __init__(self, G: Group, target: Group, fperms: Sequence[Sequence[int]],
                 gens: Sequence[int], bijective: bool):
        self.G, self.target = G, target
        self.fperms = fperms
        self.gens = list(gens)
        self.Nmul = target.mul
        self.bijective = bijective
        self.img = [-1] * G.order
        self.img[0] = 0
        self.used = [False] * target.order
        self.used[0] = True
        self.gimg = [0] * len(self.gens)
        self.members = [0]
        self.in_members = [False] * G.order
        self.in_members[0] = True
        self.steps = 0

    def _undo(self, trail: list[int]) -> None:
        img, used = self.img, self.used
        for t in trail:
            if self.bijective:
                used[img[t]] = False
            img[t] = -1

    def extend(self, k: int, image: int) -> Optional[list[int]]:
        if self.bijective and self.used[image] and self.img[self.gens[k]] < 0:
            return None
        self.gimg[k] = image
        gimg, img, used, fperms = self.gimg, self.img, self.used, self.fperms
        Nm, gm, gens = self.Nmul, self.G.mul, self.gens
        old = self.in_members
        bij = self.bijective
        queue = list(self.members)
        trail: list[int] = []
        i = 0
        while i < len(queue):
            x = queue[i]
            i += 1
            row, px, vx = gm[x], fperms[x], img[x]
            start = k if old[x] else 0
            for j in range(start, k + 1):
                y = row[gens[j]]
                v = Nm[vx][px[gimg[j]]]
                w = img[y]
                if w < 0:
                    if bij:
                        if used[v]:
                            self._undo(trail)
                            return None
                        used[v] = True
                    img[y] = v
                    trail.append(y)
                    queue.append(y)
                elif w != v:
                    self._undo(trail)
                    return None
        self.steps += len(queue)
        return trail

    def push(self, trail: list[int]) -> None:
        self.members.extend(trail)
        for t in trail:
            self.in_members[t] = True

    def pop(self, trail: list[int]) -> None:
        if trail:
            del self.members[len(self.members) - len(trail):]
            for t in trail:
                self.in_members[t] = False
        self._undo(trail)


def _check_gens(G: Group, gens: Sequence[int]) -> None:
    if closure(G, gens) != set(range(G.order)):
        raise GroupError("supplied elements do not generate the domain")


def cocycle_images(G: Group, target: Group, fperms: Sequence[Sequence[int]],
                   bijective: bool = False, gens: Optional[Sequence[int]] = None,
                   surjective: bool = False) -> Iterator[tuple[int, ...]]:
    """Image tuples of all crossed homomorphisms for an action given by permutations."""
    gens = list(G.generators if gens is None else gens)
    _check_gens(G, gens)
    if bijective and G.order != target.order:
        raise GroupError("bijective cocycles need |G| = |N|")
    search = _CocycleSearch(G, target, fperms, gens, bijective)
    n = target.order

    def rec(k: int) -> Iterator[tuple[int, ...]]:
        if k == len(gens):
            if surjective and len(set(search.img)) != n:
                return
            yield tuple(search.img)
            return
        for y in range(n):
            trail = search.extend(k, y)
            if trail is None:
                continue
            search.push(trail)
            yield from rec(k + 1)
            search.pop(trail)

    yield from rec(0)


def extend_cocycle(f: Homomorphism, gen_images: Sequence[int],
                   gens: Optional[Sequence[int]] = None) -> Optional[CrossedHom]:
    """The unique crossed homomorphism with the given generator images, if any."""
    G = f.domain
    gens = list(G.generators if gens is None else gens)
    if len(gen_images) != len(gens):
        raise ValueError("one image per generator required")
    _check_gens(G, gens)
    search = _CocycleSearch(G, f.codomain.group, _fperms(f), gens, bijective=False)
    for k, y in enumerate(gen_images):
        trail = search.extend(k, y)
        if trail is None:
            return None
        search.push(trail)
    return CrossedHom(f, tuple(search.img))


def enumerate_cocycles(G: Group, N: Group, f: Homomorphism, mode: str = "all",
                       prune: Optional[Callable[[Homomorphism], bool]] = None
                       ) -> Iterator[CrossedHom]:
    """Stream the crossed homomorphisms for ``f``; ``mode="bijective"`` keeps bijections.

    ``prune`` is consulted once, before any generator image is assigned, and
    only in bijective mode; a true answer means no bijection exists.
    """
    if mode not in ("all", "bijective"):
        raise ValueError(f"unknown mode {mode!r}")
    if f.codomain.group is not N and f.codomain.group.digest != N.digest:
        raise GroupError("action does not land in Aut(N)")
    bij = mode == "bijective"
    if bij and G.order != N.order:
        raise GroupError(f"order mismatch: |G| = {G.order}, |N| = {N.order}")
    if bij and prune is not None and prune(f):
        return
    for images in cocycle_images(G, N, _fperms(f), bijective=bij):
        yield CrossedHom(f, images)


def principal_cocycle(f: Homomorphism, eta: int) -> CrossedHom:
    """``g(s) = eta^-1 * f(s)(eta)``."""
    auts = f.codomain
    N = auts.group
    ei = N.inv[eta]
    images = tuple(N.mul[ei][auts.perms[a][eta]] for a in f.image)
    return CrossedHom(f, images)


def beta_embed(c: CrossedHom, hol: Optional[Holomorph] = None) -> Homomorphism:
    if not check_cocycle(c):
        raise GroupError("not a crossed homomorphism")
    hol = hol or Holomorph(c.target, c.auts)
    image = tuple(hol.encode(g, a) for g, a in zip(c.images, c.action.image))
    return Homomorphism(c.domain, hol, image)


def trivial_action(G: Group, auts: AutGroup) -> Homomorphism:
    return Homomorphism(G, auts, (0,) * G.order)


def is_fpf(f: Homomorphism, g: Homomorphism) -> bool:
    """``f(s) = g(s)`` only for ``s = 1``."""
    return all(f.image[x] != g.image[x] for x in range(1, f.domain.order))


def is_wfpf(f: Homomorphism, g: Homomorphism) -> bool:
    """``s -> f(s) g(s)^-1`` hits every element of the common codomain."""
    H = f.codomain
    hits = {H.mul[a][H.inv[b]] for a, b in zip(f.image, g.image)}
    return len(hits) == H.order


def _require_inner(f_images: Sequence[int], c: CrossedHom, lift: Callable[[int], int]) -> None:
    conj = c.auts.conj_index
    for x, a in enumerate(c.action.image):
        if conj[lift(f_images[x])] != a:
            raise GroupError("action is not conjugation by the given homomorphism")


def fpf_translate(f: Homomorphism, c: CrossedHom) -> Homomorphism:
    """``g -> (s -> g(s) f(s))`` for an action ``conj o f``; the result is a homomorphism."""
    N = c.target
    _require_inner(f.image, c, lambda y: y)
    image = tuple(N.mul[c.images[x]][f.image[x]] for x in range(f.domain.order))
    return Homomorphism(f.domain, N, image)


def fpf_untranslate(f: Homomorphism, g: Homomorphism, auts: Optional[AutGroup] = None) -> CrossedHom:
    """Inverse of :func:`fpf_translate`: ``s -> g(s) f(s)^-1`` for the action ``conj o f``."""
    N = f.codomain
    auts = auts or automorphism_group(N)
    action = Homomorphism(f.domain, auts, tuple(auts.conj_index[y] for y in f.image))
    images = tuple(N.mul[g.image[x]][N.inv[f.image[x]]] for x in range(f.domain.order))
    return CrossedHom(action, images)


def wfpf_translate(f: Homomorphism, c: CrossedHom, Q: Quotient) -> Homomorphism:
    """``s -> g(s)Z * f(s)`` in ``N/Z(N)`` for an action conjugating by lifts of ``f``."""
    _require_inner(f.image, c, lambda q: Q.reps[q])
    Qg = Q.group
    image = tuple(Qg.mul[Q.projection[c.images[x]]][f.image[x]] for x in range(f.domain.order))
    return Homomorphism(f.domain, Qg, image)


# ---------------------------------------------------------------------------
# counting


@dataclass
class RegReport:
    g: str
    n: str
    order: int
    aut_g: int
    aut_n: int
    reg_count: int
    e: Optional[int]
    subgroups: Optional[int]
    classification: dict[str, int]
    mode: str
    prune: bool
    authoritative: bool
    pruned_branches: int = 0
    action_classes: int = 0
    lemma_checks: int = 0
    characteristic: list[int] = field(default_factory=list)
    elapsed_ms: int = 0
    witnesses: list[tuple[tuple[int, ...], tuple[int, ...]]] = field(default_factory=list)
    witness_weights: list[int] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_dict(self, with_witnesses: bool = False) -> dict:
        out = {
            "schema": SCHEMA_VERSION,
            "g": self.g,
            "n": self.n,
            "order": self.order,
            "aut_g": self.aut_g,
            "aut_n": self.aut_n,
            "reg_count": self.reg_count,
            "e": self.e,
            "subgroups": self.subgroups,
            "classification": dict(self.classification),
            "mode": self.mode,
            "prune": self.prune,
            "authoritative": self.authoritative,
            "pruned_branches": self.pruned_branches,
            "action_classes": self.action_classes,
            "lemma_checks": self.lemma_checks,
            "characteristic": list(self.characteristic),
            "elapsed_ms": self.elapsed_ms,
            "notes": list(self.notes),
        }
        if with_witnesses:
            out["witnesses"] = [{"f": list(f), "g": list(g), "weight": w}
                                for (f, g), w in zip(self.witnesses, self.witness_weights)]
        return out

    def to_json(self, with_witnesses: bool = False) -> str:
        return json.dumps(self.to_dict(with_witnesses), sort_keys=True)


@dataclass
class _Tally:
    total: int = 0
    rho: int = 0
    lam: int = 0
    pruned: int = 0
    classes: int = 0
    lemma_checks: int = 0
    witnesses: list = field(default_factory=list)  # (class index, seq, f, g, weight)

    def merge(self, other: "_Tally") -> None:
        self.total += other.total
        self.rho += other.rho
        self.lam += other.lam
        self.pruned += other.pruned
        self.classes += other.classes
        self.lemma_checks += other.lemma_checks
        self.witnesses.extend(other.witnesses)


def action_classes(G: Group, auts: AutGroup, symmetric: bool = True
                   ) -> Iterator[tuple[int, tuple[int, ...], Optional[np.ndarray]]]:
    """Homomorphisms ``G -> Aut(N)``, optionally one per conjugacy orbit.

    Yields ``(weight, image, centralizer)``.  With ``symmetric`` the weight is
    the orbit size and ``centralizer`` lists the automorphisms commuting with
    the whole image; otherwise every homomorphism comes with weight 1 and
    centralizer ``None``.
    """
    gens = list(G.generators)
    if not gens:
        yield 1, (0,), (np.arange(auts.order) if symmetric else None)
        return
    orders = auts.elem_order
    cands = [[a for a in range(auts.order) if G.elem_order[s] % orders[a] == 0] for s in gens]
    search = _HomSearch(G, auts, gens, injective=False)

    def rec(k: int, C: Optional[np.ndarray], weight: int):
        if k == len(gens):
            yield weight, tuple(search.img), C
            return
        if C is None or len(C) == 1:
            for a in cands[k]:
                trail = search.extend(k, a)
                if trail is None:
                    continue
                search.push(trail)
                yield from rec(k + 1, C, weight)
                search.pop(trail)
            return
        seen = np.zeros(auts.order, dtype=bool)
        for a in cands[k]:
            if seen[a]:
                continue
            conj = auts.conjugates(a, C)
            seen[conj] = True
            size = len(np.unique(conj))
            trail = search.extend(k, a)
            if trail is None:
                continue
            search.push(trail)
            yield from rec(k + 1, C[conj == a], weight * size)
            search.pop(trail)

    yield from rec(0, np.arange(auts.order) if symmetric else None, 1)


def cocycle_orbits(G: Group, N: Group, fperms: Sequence[Sequence[int]],
                   symmetry: Optional[np.ndarray], auts: AutGroup, bijective: bool = True,
                   weight: int = 1, tick: Optional[Callable[[], None]] = None
                   ) -> Iterator[tuple[int, tuple[int, ...]]]:
    """Crossed homomorphisms up to ``g -> c o g`` for ``c`` in ``symmetry``.

    ``symmetry`` must consist of automorphisms commuting with every ``f(s)``
    (None means no symmetry).  Yields ``(weight * orbit size, images)``.
    """
    gens = list(G.generators)
    if not gens:
        yield weight, (0,)
        return
    search = _CocycleSearch(G, N, fperms, gens, bijective)
    P = auts.perm_array
    n = N.order

    def rec(k: int, H: Optional[np.ndarray], mult: int):
        if tick is not None:
            tick()
        if k == len(gens):
            yield mult, tuple(search.img)
            return
        used = search.used
        if H is None or len(H) == 1:
            for y in range(n):
                if bijective and used[y]:
                    continue
                trail = search.extend(k, y)
                if trail is None:
                    continue
                search.push(trail)
                yield from rec(k + 1, None, mult)
                search.pop(trail)
            return
        Y = P[H]
        seen = np.zeros(n, dtype=bool)
        for y in range(n):
            if seen[y] or (bijective and used[y]):
                continue
            col = Y[:, y]
            seen[col] = True
            trail = search.extend(k, y)
            if trail is None:
                continue
            size = len(np.unique(col))
            search.push(trail)
            yield from rec(k + 1, H[col == y], mult * size)
            search.pop(trail)

    yield from rec(0, symmetry, weight)


class _Ticker:
    def __init__(self, deadline: Optional[float]):
        self.deadline = deadline
        self.ticks = 0

    def __call__(self) -> None:
        self.ticks += 1
        if self.deadline is not None and self.ticks & 255 == 0 and time.monotonic() > self.deadline:
            raise BudgetExceeded()


@dataclass
class _Job:
    G: Group
    N: Group
    mode: str
    prune: bool
    witness_cap: int
    deadline: Optional[float]
    part: int
    nparts: int
    assert_lemma: bool


def _run_job(job: _Job) -> tuple[_Tally, bool]:
    G, N = job.G, job.N
    auts = automorphism_group(N)
    symmetric = job.mode == "orbit"
    pruner = None
    lemma_hook = None
    if job.prune or job.assert_lemma:
        from .reduction import PruneContext
        ctx = PruneContext(G, N, auts)
        pruner = ctx.prune if job.prune else None
        lemma_hook = ctx.assert_lemma if job.assert_lemma else None
    tally = _Tally()
    ticker = _Ticker(job.deadline)
    inv, conj = N.inv, auts.conj_index
    gens = list(G.generators)
    try:
        for idx, (weight, f_img, C) in enumerate(action_classes(G, auts, symmetric)):
            if idx % job.nparts != job.part:
                continue
            if job.deadline is not None and time.monotonic() > job.deadline:
                raise BudgetExceeded()
            tally.classes += 1
            if pruner is not None and pruner(f_img):
                tally.pruned += 1
                continue
            trivial = all(a == 0 for a in f_img)
            fperms = [auts.perms[a] for a in f_img]
            walk = cocycle_orbits(G, N, fperms, C, auts, True, weight, ticker)
            for seq, (mult, g_img) in enumerate(walk):
                tally.total += mult
                if trivial:
                    tally.rho += mult
                if all(f_img[s] == conj[inv[g_img[s]]] for s in gens):
                    tally.lam += mult
                if lemma_hook is not None:
                    lemma_hook(f_img, g_img)
                if len(tally.witnesses) < job.witness_cap:
                    tally.witnesses.append((idx, seq, f_img, g_img, mult))
    except BudgetExceeded:
        return _finish(tally, ctx if lemma_hook else None), False
    return _finish(tally, ctx if lemma_hook else None), True


def _finish(tally: _Tally, ctx) -> _Tally:
    if ctx is not None:
        tally.lemma_checks = ctx.checks
    return tally


def _pick_mode(G: Group, N: Group, auts: AutGroup) -> str:
    # raw work grows with |Hom(G, Aut N)| * |N|^rank; large Aut(N) is the usual culprit
    if auts.order > 48 or G.order > 48:
        return "orbit"
    return "raw"


def count_reg(G: Group, N: Group, *, mode: str = "raw", prune: bool = True,
              budget: Optional[float] = None, workers: int = 1,
              witness_cap: int = DEFAULT_WITNESS_CAP, assert_lemma: bool = False) -> RegReport:
    """Count ``Reg(G, Hol(N))`` and derive ``e(G, N)`` and the subgroup count.

    ``budget`` is a wall-clock limit in seconds; when it runs out the report
    carries the partial count and ``authoritative=False``.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if G.order != N.order:
        raise GroupError(f"order mismatch: |G| = {G.order}, |N| = {N.order}")
    if workers < 1:
        raise ValueError("workers must be positive")
    t0 = time.monotonic()
    auts_n = automorphism_group(N)
    auts_g = automorphism_group(G)
    if mode == "auto":
        mode = _pick_mode(G, N, auts_n)
    deadline = None if budget is None else t0 + budget
    jobs = [_Job(G, N, mode, prune, witness_cap, deadline, i, workers, assert_lemma)
            for i in range(workers)]
    if workers == 1:
        results = [_run_job(jobs[0])]
    else:
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(workers) as pool:
            results = pool.map(_run_job, jobs)
    tally = _Tally()
    complete = True
    for t, ok in results:
        tally.merge(t)
        complete = complete and ok
    tally.witnesses.sort(key=lambda w: (w[0], w[1]))
    kept = tally.witnesses[:witness_cap]

    report = RegReport(
        g=G.label, n=N.label, order=G.order, aut_g=auts_g.order, aut_n=auts_n.order,
        reg_count=tally.total, e=None, subgroups=None,
        classification={"rho": 0, "lambda": 0, "other": 0},
        mode=mode, prune=prune, authoritative=complete,
        pruned_branches=tally.pruned, action_classes=tally.classes,
        lemma_checks=tally.lemma_checks,
        witnesses=[(w[2], w[3]) for w in kept], witness_weights=[w[4] for w in kept])
    if prune:
        from .reduction import PruneContext
        report.characteristic = PruneContext(G, N, auts_n).tried_orders()
    if complete:
        if tally.total % auts_n.order or tally.total % auts_g.order:
            raise AssertionError(f"divisibility violated: |Reg| = {tally.total}, "
                                 f"|Aut(N)| = {auts_n.order}, |Aut(G)| = {auts_g.order}")
        report.e = tally.total // auts_n.order
        report.subgroups = tally.total // auts_g.order
        rho = tally.rho // auts_g.order
        lam = tally.lam // auts_g.order
        if rho > 1 or lam > 1:
            raise AssertionError("more than one subgroup recognised as rho(N) or lambda(N)")
        same = N.is_abelian()  # rho(N) = lambda(N) as sets exactly when N is abelian
        report.classification = {"rho": rho, "lambda": lam,
                                 "other": report.subgroups - (rho if same else rho + lam)}
        if mode == "raw" and len(kept) == tally.total:
            _check_subgroups(report, G, N, auts_n)
    else:
        report.notes.append("budget exhausted; counts are lower bounds")
    report.elapsed_ms = int(1000 * (time.monotonic() - t0))
    return report


def witness_subgroup(hol: Holomorph, f_img: Sequence[int], g_img: Sequence[int]) -> frozenset[int]:
    return frozenset(hol.encode(g, a) for g, a in zip(g_img, f_img))


def _check_subgroups(report: RegReport, G: Group, N: Group, auts: AutGroup) -> None:
    """Cross-check the recognition tests against explicit image sets."""
    from .holomorph import canonical_rho_lambda
    hol = Holomorph(N, auts)
    rho, lam = canonical_rho_lambda(hol)
    rho_s, lam_s = rho.as_set(), lam.as_set()
    images = {witness_subgroup(hol, f, g) for f, g in report.witnesses}
    if len(images) != report.subgroups:
        raise AssertionError(f"{len(images)} distinct images, expected {report.subgroups}")
    n_rho = sum(1 for s in images if s == rho_s)
    n_lam = sum(1 for s in images if s == lam_s)
    if n_rho != report.classification["rho"] or n_lam != report.classification["lambda"]:
        raise AssertionError("recognition tests disagree with set comparison")


def report_witnesses(report: RegReport, G: Group, N: Group) -> list[CrossedHom]:
    auts = automorphism_group(N)
    return [CrossedHom(Homomorphism(G, auts, f), g) for f, g in report.witnesses]


def pair_images(G: Group, N: Group) -> set[tuple[int, ...]]:
    """``{beta_(f,g)}`` over every action ``f`` and every crossed homomorphism ``g``."""
    auts = automorphism_group(N)
    hol = Holomorph(N, auts)
    out = set()
    for _, f_img, _ in action_classes(G, auts, symmetric=False):
        fperms = [auts.perms[a] for a in f_img]
        for g_img in cocycle_images(G, N, fperms):
            out.add(tuple(hol.encode(g, a) for g, a in zip(g_img, f_img)))
    return out


def _last_generator_relations(G: Group, gens: Sequence[int]):
    """``(relations, m, u, prefix)`` when the last generator normalises the rest, else None.

    ``relations`` lists ``(j, w)`` with ``s^-1 s_j s = w``; ``s^m = u`` is the
    first power of ``s`` in the prefix subgroup.
    """
    k = len(gens) - 1
    s = gens[k]
    prefix = closure(G, gens[:k])
    rel = []
    for j in range(k):
        w = G.mul[G.mul[G.inv[s]][gens[j]]][s]
        if w not in prefix:
            return None
        rel.append((j, w))
    m, u = 1, s
    while u not in prefix:
        m, u = m + 1, G.mul[u][s]
    return rel, m, u, sorted(prefix)


def count_cocycles(G: Group, N: Group, fperms: Sequence[Sequence[int]],
                   symmetry: Optional[np.ndarray], auts: AutGroup, bijective: bool = False,
                   weight: int = 1) -> int:
    """Weighted number of crossed homomorphisms, as summed over :func:`cocycle_orbits`.

    When the last generator ``s`` normalises the subgroup of the others, its
    admissible images ``y`` are counted in bulk: ``y`` extends the prefix iff
    ``g(s_j) f(s_j)(y) = y f(s)(g(w))`` for each relation ``s^-1 s_j s = w``
    and ``y f(s)(y) ... f(s)^(m-1)(y) = g(s^m)``.
    """
    gens = list(G.generators)
    info = _last_generator_relations(G, gens) if gens else None
    if info is None:
        return sum(m for m, _ in cocycle_orbits(G, N, fperms, symmetry, auts, bijective, weight))
    rel, m, u, prefix = info
    k = len(gens) - 1
    T = N.table
    P = np.asarray(fperms)
    Ps = P[gens[k]]
    ys = np.arange(N.order)
    search = _CocycleSearch(G, N, fperms, gens, bijective)
    A = auts.perm_array
    pre_f = P[prefix]

    def bulk(mult: int) -> int:
        img = search.img
        ok = np.ones(N.order, dtype=bool)
        for j, w in rel:
            ok &= T[img[gens[j]], P[gens[j]][ys]] == T[ys, Ps[img[w]]]
        acc, cur = ys, ys
        for _ in range(m - 1):
            cur = Ps[cur]
            acc = T[acc, cur]
        ok &= acc == img[u]
        if not bijective:
            return mult * int(np.count_nonzero(ok))
        # g(h s^i) = g(h) f(h)(g(s^i)) must be pairwise distinct
        cur = ys[ok]
        gpow = np.zeros_like(cur)
        pre_g = np.asarray([img[h] for h in prefix])[:, None]
        cols = []
        for _ in range(m):
            cols.append(T[pre_g, pre_f[:, gpow]])
            gpow = T[gpow, cur]
            cur = Ps[cur]
        vals = np.sort(np.concatenate(cols, axis=0), axis=0)
        return mult * int(np.count_nonzero(np.all(vals[1:] != vals[:-1], axis=0)))

    def rec(j: int, H: Optional[np.ndarray], mult: int) -> int:
        if j == k:
            return bulk(mult)
        out = 0
        used = search.used
        if H is None or len(H) == 1:
            for y in range(N.order):
                if bijective and used[y]:
                    continue
                trail = search.extend(j, y)
                if trail is None:
                    continue
                search.push(trail)
                out += rec(j + 1, None, mult)
                search.pop(trail)
            return out
        Y = A[H]
        seen = np.zeros(N.order, dtype=bool)
        for y in range(N.order):
            if seen[y] or (bijective and used[y]):
                continue
            col = Y[:, y]
            seen[col] = True
            trail = search.extend(j, y)
            if trail is None:
                continue
            search.push(trail)
            out += rec(j + 1, H[col == y], mult * len(np.unique(col)))
            search.pop(trail)
        return out

    return rec(0, symmetry, weight)


def count_pairs(G: Group, N: Group, bijective: bool = False) -> int:
    """Number of pairs ``(f, g)`` counted with ``Aut(N)``-orbit weights."""
    auts = automorphism_group(N)
    total = 0
    for weight, f_img, C in action_classes(G, auts, symmetric=True):
        fperms = [auts.perms[a] for a in f_img]
        total += count_cocycles(G, N, fperms, C, auts, bijective, weight)
    return total
