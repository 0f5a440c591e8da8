"""Finite groups as validated multiplication tables.

Elements are the integers ``0 .. n-1``; the identity is always ``0``. Tables
are stored twice: as a read-only numpy array for vectorised scans and as a
tuple of row tuples for fast scalar lookups in closure loops.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property, reduce
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import NoIdentity, NoInverse, NotAssociative, NotClosed

# Tables up to this order get the full n^3 associativity scan; larger ones use
# Light's test over a generating set.
FULL_ASSOCIATIVITY_LIMIT = 256


class GroupTable:
    """An immutable finite group given by its Cayley table.

    Do not call the constructor with untrusted data; use :func:`validate_table`.
    """

    def __init__(self, mul: np.ndarray, inv: Sequence[int] | None = None):
        mul = np.array(mul, dtype=np.int64)
        mul.setflags(write=False)
        self.mul = mul
        self.order = int(mul.shape[0])
        self.identity = 0
        self.rows: tuple[tuple[int, ...], ...] = tuple(tuple(r) for r in mul.tolist())
        if inv is None:
            inv = np.argmin(mul, axis=1)  # identity is 0, so the 0 entry of each row
        self.inv: tuple[int, ...] = tuple(int(x) for x in inv)

    def __repr__(self) -> str:
        return f"GroupTable(order={self.order}, exp={self.exponent}, phi={self.phi})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupTable):
            return NotImplemented
        return self.order == other.order and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __len__(self) -> int:
        return self.order

    def elements(self) -> range:
        return range(self.order)

    def op(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def power(self, a: int, k: int) -> int:
        x = 0
        for _ in range(k % self.element_order(a)):
            x = self.rows[x][a]
        return x

    def commutator(self, a: int, b: int) -> int:
        """[a, b] = a^-1 b^-1 a b."""
        r = self.rows
        return r[r[r[self.inv[a]][self.inv[b]]][a]][b]

    @cached_property
    def orders(self) -> tuple[int, ...]:
        n = self.order
        idx = np.arange(n)
        cur = idx.copy()
        out = np.zeros(n, dtype=np.int64)
        k = 1
        while True:
            hit = (cur == 0) & (out == 0)
            out[hit] = k
            if out.all():
                break
            cur = self.mul[cur, idx]
            k += 1
        return tuple(int(x) for x in out)

    def element_order(self, a: int) -> int:
        return self.orders[a]

    @cached_property
    def exponent(self) -> int:
        return reduce(math.lcm, set(self.orders), 1)

    @cached_property
    def spectrum(self) -> OrderSpectrum:
        return OrderSpectrum(dict(sorted(Counter(self.orders).items())))

    @cached_property
    def phi(self) -> int:
        return self.spectrum.counts.get(self.exponent, 0)

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.mul == self.mul.T).all())

    @cached_property
    def is_cyclic(self) -> bool:
        return self.exponent == self.order

    def all_elements(self) -> SubgroupSet:
        return SubgroupSet(self, tuple(range(self.order)))

    def trivial(self) -> SubgroupSet:
        return SubgroupSet(self, (0,))


@dataclass(frozen=True)
class SubgroupSet:
    """A subgroup of ``parent`` as a strictly increasing tuple of element ids."""

    parent: GroupTable = field(compare=False, repr=False)
    members: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, a: int) -> bool:
        return (self.mask >> a) & 1 == 1

    def __iter__(self):
        return iter(self.members)

    @property
    def order(self) -> int:
        return len(self.members)

    @cached_property
    def mask(self) -> int:
        m = 0
        for a in self.members:
            m |= 1 << a
        return m

    def issubset(self, other: SubgroupSet) -> bool:
        return self.mask & ~other.mask == 0

    def intersection(self, other: SubgroupSet) -> SubgroupSet:
        keep = other.mask
        return SubgroupSet(self.parent, tuple(a for a in self.members if (keep >> a) & 1))


@dataclass(frozen=True)
class OrderSpectrum:
    """Histogram ``{element order: number of elements of that order}``."""

    counts: dict[int, int]

    def __getitem__(self, d: int) -> int:
        return self.counts.get(d, 0)

    @property
    def total(self) -> int:
        return sum(self.counts.values())


@dataclass(frozen=True)
class PhiReport:
    exponent: int
    phi: int
    spectrum: OrderSpectrum

    def to_dict(self) -> dict:
        return {
            "exponent": self.exponent,
            "phi": self.phi,
            "spectrum": {str(k): v for k, v in self.spectrum.counts.items()},
        }


def validate_table(raw, *, full_check_limit: int = FULL_ASSOCIATIVITY_LIMIT) -> GroupTable:
    """Check the group axioms on ``raw`` and return the canonical GroupTable.

    The identity is renumbered to 0 by swapping it with the element that had
    id 0. Error messages refer to the ids of the input table.
    """
    try:
        t = np.array(raw, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise NotClosed(f"table is not a rectangular integer array: {exc}") from None
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise NotClosed(f"table must be a non-empty n x n array, got shape {t.shape}")
    n = t.shape[0]
    bad = np.argwhere((t < 0) | (t >= n))
    if len(bad):
        a, b = (int(x) for x in bad[0])
        raise NotClosed(f"entry ({a},{b}) = {int(t[a, b])} is outside 0..{n - 1}")

    idx = np.arange(n)
    e = next((int(x) for x in idx if (t[x] == idx).all() and (t[:, x] == idx).all()), None)
    if e is None:
        raise NoIdentity("no element acts as a two-sided identity")
    # perm is an involution, so it also maps canonical ids back to input ids
    perm = idx.copy()
    perm[0], perm[e] = e, 0
    t = perm[t[np.ix_(perm, perm)]]

    inv = np.full(n, -1)
    for a in range(n):
        cands = np.flatnonzero((t[a] == 0) & (t[:, a] == 0))
        if len(cands) == 0:
            raise NoInverse(f"element {int(perm[a])} has no two-sided inverse")
        inv[a] = cands[0]

    triple = _associativity_violation(t, full_check_limit)
    if triple is not None:
        raise NotAssociative(tuple(int(perm[x]) for x in triple))
    return GroupTable(t, inv)


def _associativity_violation(t: np.ndarray, full_check_limit: int) -> tuple[int, int, int] | None:
    n = t.shape[0]
    if n <= full_check_limit:
        for a in range(n):
            left = t[t[a]]          # [b, c] -> (ab)c
            right = t[a][t]         # [b, c] -> a(bc)
            diff = np.argwhere(left != right)
            if len(diff):
                b, c = diff[0]
                return a, int(b), int(c)
        return None
    for g in _magma_generators(t):
        left = t[t[:, g]]           # [x, y] -> (xg)y
        right = t[:, t[g]]          # [x, y] -> x(gy)
        diff = np.argwhere(left != right)
        if len(diff):
            x, y = diff[0]
            return int(x), g, int(y)
    return None


def _magma_generators(t: np.ndarray) -> list[int]:
    """Greedy generating set: every element is a generator or a right product
    of generators. Good enough for Light's test, which only needs the elements
    passing the test to cover the table by products."""
    n = t.shape[0]
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    gens: list[int] = []
    while not seen.all():
        g = int(np.flatnonzero(~seen)[0])
        gens.append(g)
        frontier = np.flatnonzero(seen)
        seen[g] = True
        frontier = np.union1d(frontier, [g])
        while len(frontier):
            prods = t[np.ix_(frontier, gens)].ravel()
            new = np.unique(prods[~seen[prods]])
            seen[new] = True
            frontier = new
    return gens


def relabel(G: GroupTable, perm: Sequence[int]) -> GroupTable:
    """Rename element ``a`` to ``perm[a]`` and re-canonicalise."""
    p = np.asarray(perm)
    new = np.empty_like(G.mul)
    new[np.ix_(p, p)] = p[G.mul]
    return validate_table(new)


def element_order(G: GroupTable, a: int) -> int:
    return G.orders[a]


def exponent(G: GroupTable) -> int:
    return G.exponent


def phi(G: GroupTable) -> int:
    """Number of elements whose order equals the exponent of G."""
    return G.phi


def order_spectrum(G: GroupTable) -> OrderSpectrum:
    return G.spectrum


def phi_report(G: GroupTable) -> PhiReport:
    return PhiReport(G.exponent, G.phi, G.spectrum)


def closure(G: GroupTable, gens: Iterable[int]) -> tuple[int, ...]:
    """Sorted members of the subgroup generated by ``gens``.

    Right multiplication by the generators is enough for finite groups.
    """
    rows = G.rows
    gens = [g for g in dict.fromkeys(gens) if g != 0]
    seen = {0, *gens}
    frontier = [0, *gens]
    while frontier:
        nxt = []
        for x in frontier:
            rx = rows[x]
            for g in gens:
                y = rx[g]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return tuple(sorted(seen))


def generated_subgroup(G: GroupTable, seeds: Iterable[int]) -> SubgroupSet:
    return SubgroupSet(G, closure(G, seeds))


def cyclic_subgroup(G: GroupTable, a: int) -> SubgroupSet:
    members = [0]
    x = a
    while x != 0:
        members.append(x)
        x = G.rows[x][a]
    return SubgroupSet(G, tuple(sorted(members)))


def centralizer(G: GroupTable, H: SubgroupSet | None = None, within: SubgroupSet | None = None) -> SubgroupSet:
    """Elements of ``within`` (default G) commuting with every element of ``H`` (default G)."""
    h = np.array(H.members if H is not None else range(G.order))
    cand = within.members if within is not None else range(G.order)
    m = G.mul
    return SubgroupSet(G, tuple(z for z in cand if (m[z, h] == m[h, z]).all()))


def center(G: GroupTable, within: SubgroupSet | None = None) -> SubgroupSet:
    """Z(G), or Z(H) for a subgroup ``within`` = H."""
    return centralizer(G, within, within)


def commutator_subgroup(G: GroupTable, A: SubgroupSet, B: SubgroupSet) -> SubgroupSet:
    """[A, B], generated by all a^-1 b^-1 a b with a in A, b in B."""
    a = np.array(A.members)
    b = np.array(B.members)
    inv = np.array(G.inv)
    m = G.mul
    comms = m[m[m[inv[a][:, None], inv[b][None, :]], a[:, None]], b[None, :]]
    return generated_subgroup(G, np.unique(comms).tolist())


def derived_subgroup(G: GroupTable, within: SubgroupSet | None = None) -> SubgroupSet:
    H = within if within is not None else G.all_elements()
    return commutator_subgroup(G, H, H)


def subgroup_table(H: SubgroupSet) -> GroupTable:
    """H as a group in its own right; member ``H.members[i]`` becomes id ``i``."""
    G = H.parent
    mem = np.array(H.members)
    pos = np.full(G.order, -1)
    pos[mem] = np.arange(len(mem))
    return GroupTable(pos[G.mul[np.ix_(mem, mem)]])


def parse_cayley(text: str) -> GroupTable:
    """Parse the text format: line 1 is n, then n rows of n ids."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise NotClosed("empty Cayley table file")
    try:
        n = int(lines[0])
        rows = [[int(x) for x in ln.split()] for ln in lines[1:]]
    except ValueError as exc:
        raise NotClosed(f"malformed Cayley table: {exc}") from None
    if len(rows) != n or any(len(r) != n for r in rows):
        raise NotClosed(f"expected {n} rows of {n} entries")
    return validate_table(rows)


def format_cayley(G: GroupTable) -> str:
    out = [str(G.order)]
    out.extend(" ".join(map(str, r)) for r in G.rows)
    return "\n".join(out) + "\n"


def read_cayley(path: str | Path) -> GroupTable:
    return parse_cayley(Path(path).read_text())


def write_cayley(G: GroupTable, path: str | Path) -> None:
    Path(path).write_text(format_cayley(G))


def divides(h: int, k: int) -> bool:
    """h | k over the non-negative integers, with 0 | 0 true and 0 | k false for k != 0."""
    if h == 0:
        return k == 0
    return k % h == 0


def subgroup_phi_report(H: SubgroupSet) -> PhiReport:
    """PhiReport of a subgroup, read off the parent's element orders."""
    orders = [H.parent.orders[a] for a in H.members]
    exp = reduce(math.lcm, set(orders), 1)
    spec = OrderSpectrum(dict(sorted(Counter(orders).items())))
    return PhiReport(exp, spec[exp], spec)
