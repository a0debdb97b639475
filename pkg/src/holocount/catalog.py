"""Group constructors addressed by spec strings such as ``"cyclic:6"``.

Spec grammar (``name:args``)::

    cyclic:n            abelian:d1,d2,...      dihedral:n (order 2n)
    dicyclic:n (4n)     quaternion:2^k         semidihedral:2^k     modular:2^k
    metacyclic:m,n,r    C_m x| C_n with the generator acting by x -> x^r
    cpq:p,q             non-abelian C_p x| C_q (q | p-1)
    sym:n  alt:n        n <= 8
    sl2:p               p in {3, 5, 7}
    heis:p              upper unitriangular 3x3 matrices over Z/p
    c9xc3semi  k4semic4  pauli
    product:A,B         direct product
    file:path           table file (see :func:`read_table_file`)
"""

from __future__ import annotations

import functools
import itertools
import re
from pathlib import Path

from .groups import Group, GroupError

ATOMS = {"c9xc3semi", "k4semic4", "pauli"}
NAMED = {"cyclic", "abelian", "dihedral", "dicyclic", "quaternion", "semidihedral",
         "modular", "metacyclic", "cpq", "sym", "alt", "sl2", "heis", "product", "file"}


def _ints(args: str, count: int | None = None) -> list[int]:
    try:
        vals = [int(a) for a in args.split(",")]
    except ValueError:
        raise GroupError(f"expected integers, got {args!r}") from None
    if count is not None and len(vals) != count:
        raise GroupError(f"expected {count} integer(s), got {args!r}")
    if any(v < 1 for v in vals):
        raise GroupError(f"arguments must be positive: {args!r}")
    return vals


def _syntax_ok(spec: str) -> bool:
    if spec in ATOMS:
        return True
    name, sep, args = spec.partition(":")
    if not sep or name not in NAMED or not args:
        return False
    if name == "product":
        return _split_product(args) is not None
    if name == "file":
        return True
    return re.fullmatch(r"\d+(,\d+)*", args) is not None


def _split_product(args: str) -> tuple[str, str] | None:
    for m in re.finditer(",", args):
        left, right = args[:m.start()], args[m.end():]
        if _syntax_ok(left) and _syntax_ok(right):
            return left, right
    return None


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def _mult_order(r: int, m: int) -> int:
    if m == 1:
        return 1
    k, x = 1, r % m
    while x != 1 % m:
        x = x * r % m
        k += 1
        if k > m:
            raise GroupError(f"{r} is not a unit mod {m}")
    return k


def metacyclic(m: int, n: int, r: int, label: str) -> Group:
    """Split metacyclic group ``C_m x| C_n`` where the generator of ``C_n`` raises to the ``r``-th power."""
    if pow(r, n, m) != 1 % m:
        raise GroupError(f"r={r} does not satisfy r^{n} = 1 mod {m}")
    pw = [pow(r, k, m) for k in range(n)]

    def mul(x, y):
        return ((x[0] + pw[x[1]] * y[0]) % m, (x[1] + y[1]) % n)

    return Group.from_elements([(1 % m, 0), (0, 1 % n)], mul, (0, 0), label)


def abelian(dims: list[int], label: str) -> Group:
    k = len(dims)

    def mul(x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, dims))

    gens = [tuple(1 % dims[i] if j == i else 0 for j in range(k)) for i in range(k)]
    return Group.from_elements(gens, mul, tuple([0] * k), label)


def dicyclic(n: int, label: str) -> Group:
    """Dicyclic group of order ``4n``: ``<a, x | a^2n, x^2 = a^n, x a x^-1 = a^-1>``."""
    m = 2 * n

    def mul(u, v):
        i, j = u
        k, l = v
        e = i + (k if j == 0 else -k)
        if j + l == 2:
            return ((e + n) % m, 0)
        return (e % m, j + l)

    return Group.from_elements([(1, 0), (0, 1)], mul, (0, 0), label)


def _perm_mul(p, q):
    return tuple(p[i] for i in q)


def symmetric(n: int, label: str) -> Group:
    if n == 1:
        return Group([[0]], label)
    idt = tuple(range(n))
    swap = (1, 0) + idt[2:]
    cycle = idt[1:] + (0,)
    return Group.from_elements([cycle, swap], _perm_mul, idt, label)


def alternating(n: int, label: str) -> Group:
    idt = tuple(range(n))
    if n < 3:
        return Group([[0]], label)
    gens = []
    for k in range(2, n):
        p = list(idt)
        p[0], p[1], p[k] = 1, k, 0
        gens.append(tuple(p))
    return Group.from_elements(gens, _perm_mul, idt, label)


def special_linear_2(p: int, label: str) -> Group:
    def mul(a, b):
        return ((a[0] * b[0] + a[1] * b[2]) % p, (a[0] * b[1] + a[1] * b[3]) % p,
                (a[2] * b[0] + a[3] * b[2]) % p, (a[2] * b[1] + a[3] * b[3]) % p)

    return Group.from_elements([(1, 1, 0, 1), (0, p - 1, 1, 0)], mul, (1, 0, 0, 1), label)


def heisenberg(p: int, label: str) -> Group:
    # (a, b, c) <-> [[1, a, c], [0, 1, b], [0, 0, 1]]
    def mul(x, y):
        return ((x[0] + y[0]) % p, (x[1] + y[1]) % p, (x[2] + y[2] + x[0] * y[1]) % p)

    return Group.from_elements([(1, 0, 0), (0, 1, 0)], mul, (0, 0, 0), label)


def k4_semi_c4(label: str) -> Group:
    """``(C2 x C2) x| C4`` with the generator of ``C4`` swapping the two factors."""

    def act(t, v):
        return ((v & 1) << 1) | (v >> 1) if t % 2 else v

    def mul(x, y):
        return (x[0] ^ act(x[1], y[0]), (x[1] + y[1]) % 4)

    return Group.from_elements([(1, 0), (0, 1)], mul, (0, 0), label)


def pauli(label: str) -> Group:
    """Central product ``C4 o D4``: the group generated by X, Z and iI."""

    def mul(a, b):
        return (a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
                a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3])

    X = (0, 1, 1, 0)
    Z = (1, 0, 0, -1)
    iI = (1j, 0, 0, 1j)
    return Group.from_elements([X, Z, iI], mul, (1, 0, 0, 1), label)


def direct_product(A: Group, B: Group, label: str) -> Group:
    na, nb = A.order, B.order
    table = [[A.mul[a1][a2] * nb + B.mul[b1][b2] for a2 in range(na) for b2 in range(nb)]
             for a1 in range(na) for b1 in range(nb)]
    return Group(table, label)


def read_table_file(path: str | Path, label: str | None = None) -> Group:
    """Load a group table file.

    Format: first line ``n``; next ``n`` lines give row ``x`` of the table
    (the indices of ``x*y``); index 0 must be the identity; an optional final
    ``# label`` line names the group.
    """
    lines = [ln.strip() for ln in Path(path).read_text().splitlines() if ln.strip()]
    if not lines:
        raise GroupError(f"{path}: empty table file")
    name = label
    if lines[-1].startswith("#"):
        name = name or lines[-1][1:].strip()
        lines = lines[:-1]
    try:
        n = int(lines[0])
        rows = [[int(t) for t in ln.split()] for ln in lines[1:]]
    except ValueError:
        raise GroupError(f"{path}: non-integer entry") from None
    if n < 1 or len(rows) != n or any(len(r) != n for r in rows):
        raise GroupError(f"{path}: expected {n} rows of {n} entries")
    return Group(rows, name or f"file:{path}")


def write_table_file(G: Group, path: str | Path) -> None:
    body = [str(G.order)] + [" ".join(map(str, row)) for row in G.mul]
    if G.label:
        body.append(f"# {G.label}")
    Path(path).write_text("\n".join(body) + "\n")


@functools.lru_cache(maxsize=256)
def build_group(spec: str) -> Group:
    """Construct the group named by ``spec``.  Results are cached per spec string."""
    spec = spec.strip()
    if spec == "c9xc3semi":
        return metacyclic(9, 3, 4, spec)
    if spec == "k4semic4":
        return k4_semi_c4(spec)
    if spec == "pauli":
        return pauli(spec)
    name, sep, args = spec.partition(":")
    if not sep or not args:
        raise GroupError(f"malformed group spec {spec!r}")
    if name == "file":
        return read_table_file(args)
    if name == "product":
        parts = _split_product(args)
        if parts is None:
            raise GroupError(f"malformed product spec {spec!r}")
        return direct_product(build_group(parts[0]), build_group(parts[1]), spec)
    if name not in NAMED:
        raise GroupError(f"unknown group constructor {name!r}")
    if name == "abelian":
        return abelian(_ints(args), spec)
    if name == "cpq":
        p, q = _ints(args, 2)
        if (p - 1) % q:
            raise GroupError(f"cpq needs q | p-1, got p={p}, q={q}")
        r = next((r for r in range(2, p) if _mult_order(r, p) == q), None)
        if r is None:
            raise GroupError(f"no element of order {q} mod {p}")
        return metacyclic(p, q, r, spec)
    if name == "metacyclic":
        m, n, r = _ints(args, 3)
        return metacyclic(m, n, r, spec)
    (n,) = _ints(args, 1)
    if name == "cyclic":
        return abelian([n], spec)
    if name == "dihedral":
        return metacyclic(n, 2, n - 1, spec) if n > 1 else abelian([2], spec)
    if name == "dicyclic":
        return dicyclic(n, spec)
    if name in ("quaternion", "semidihedral", "modular"):
        low = 8 if name == "quaternion" else 16
        if not _is_power_of_two(n) or n < low:
            raise GroupError(f"{name} needs a power of two >= {low}, got {n}")
        if name == "quaternion":
            return dicyclic(n // 4, spec)
        half = n // 2
        r = half // 2 - 1 if name == "semidihedral" else half // 2 + 1
        return metacyclic(half, 2, r, spec)
    if name in ("sym", "alt"):
        if not 1 <= n <= 8:
            raise GroupError(f"{name}:n supports 1 <= n <= 8, got {n}")
        if name == "sym":
            return symmetric(n, spec)
        return alternating(n, spec)
    if name == "sl2":
        if n not in (3, 5, 7):
            raise GroupError(f"sl2:p supports p in {{3, 5, 7}}, got {n}")
        return special_linear_2(n, spec)
    if name == "heis":
        if n not in (2, 3, 5, 7):
            raise GroupError(f"heis:p supports p in {{2, 3, 5, 7}}, got {n}")
        return heisenberg(n, spec)
    raise GroupError(f"malformed group spec {spec!r}")


# All isomorphism types for the orders marked complete; pairwise
# non-isomorphism is checked in the test suite.
CATALOG: dict[int, list[str]] = {
    1: ["cyclic:1"],
    2: ["cyclic:2"],
    3: ["cyclic:3"],
    4: ["cyclic:4", "abelian:2,2"],
    5: ["cyclic:5"],
    6: ["cyclic:6", "sym:3"],
    7: ["cyclic:7"],
    8: ["cyclic:8", "abelian:4,2", "abelian:2,2,2", "dihedral:4", "quaternion:8"],
    9: ["cyclic:9", "abelian:3,3"],
    10: ["cyclic:10", "dihedral:5"],
    11: ["cyclic:11"],
    12: ["cyclic:12", "abelian:2,6", "alt:4", "dihedral:6", "dicyclic:3"],
    13: ["cyclic:13"],
    14: ["cyclic:14", "dihedral:7"],
    15: ["cyclic:15"],
    16: ["cyclic:16", "abelian:8,2", "abelian:4,4", "abelian:4,2,2", "abelian:2,2,2,2",
         "dihedral:8", "quaternion:16", "semidihedral:16", "modular:16", "metacyclic:4,4,3",
         "k4semic4", "product:dihedral:4,cyclic:2", "product:quaternion:8,cyclic:2", "pauli"],
    18: ["cyclic:18", "abelian:3,6", "dihedral:9", "product:sym:3,cyclic:3"],
    20: ["cyclic:20", "abelian:2,10", "dihedral:10", "dicyclic:5", "metacyclic:5,4,2"],
    21: ["cyclic:21", "cpq:7,3"],
    24: ["cyclic:24", "sym:4", "sl2:3", "product:alt:4,cyclic:2", "dihedral:12"],
    25: ["cyclic:25", "abelian:5,5"],
    27: ["cyclic:27", "abelian:9,3", "abelian:3,3,3", "heis:3", "c9xc3semi"],
    28: ["cyclic:28", "abelian:2,14", "dihedral:14", "dicyclic:7"],
    60: ["alt:5", "cyclic:60", "dihedral:30"],
    120: ["sym:5", "sl2:5", "product:alt:5,cyclic:2", "cyclic:120", "dihedral:60",
          "dicyclic:30", "product:cyclic:5,sym:4", "product:cyclic:5,sl2:3"],
}
COMPLETE_ORDERS = frozenset(list(range(1, 17)) + [20, 21, 25, 27, 28])


def catalog(order: int | None = None) -> dict[int, tuple[list[str], bool]]:
    """Available specs per order with a flag telling whether the list is a full classification."""
    orders = [order] if order is not None else sorted(CATALOG)
    out = {}
    for n in orders:
        specs = CATALOG.get(n)
        if specs is None:
            specs = [f"cyclic:{n}"]
        out[n] = (list(specs), n in COMPLETE_ORDERS and n in CATALOG)
    return out


def catalog_groups(order: int) -> list[Group]:
    specs, complete = catalog(order)[order]
    return [build_group(s) for s in specs]


def pairs_up_to(max_order: int, complete_only: bool = True):
    """All ordered pairs (G_spec, N_spec) of equal order from the catalog."""
    for n in range(1, max_order + 1):
        specs, complete = catalog(n)[n]
        if complete_only and not complete:
            continue
        yield from itertools.product(specs, specs)
