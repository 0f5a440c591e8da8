"""Subgroup lattices, quotients and sections."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .core import (
    GroupTable,
    PhiReport,
    SubgroupSet,
    cyclic_subgroup,
    divides,
    subgroup_phi_report,
)
from .errors import LatticeBudgetExceeded, NotNormal

DEFAULT_MAX_LATTICE = 256


@dataclass
class Lattice:
    """All subgroups of ``group``, sorted by (order, members), with cover edges."""

    group: GroupTable
    subgroups: list[SubgroupSet]
    edges: list[tuple[int, int]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.subgroups)

    @cached_property
    def _index(self) -> dict[tuple[int, ...], int]:
        return {H.members: i for i, H in enumerate(self.subgroups)}

    def index(self, H: SubgroupSet) -> int:
        return self._index[H.members]

    def __contains__(self, H: SubgroupSet) -> bool:
        return H.members in self._index

    @property
    def top(self) -> SubgroupSet:
        return self.subgroups[-1]

    @property
    def bottom(self) -> SubgroupSet:
        return self.subgroups[0]

    def within(self, H: SubgroupSet) -> list[SubgroupSet]:
        """Subgroups of G contained in H, i.e. the subgroup lattice of H."""
        return [K for K in self.subgroups if K.order <= H.order and K.issubset(H)]

    def pairs(self):
        """All index pairs (i, j) with subgroups[i] contained in subgroups[j]."""
        subs = self.subgroups
        for j, K in enumerate(subs):
            for i in range(j + 1):
                if subs[i].issubset(K):
                    yield i, j


def all_subgroups(
    G: GroupTable, *, max_lattice: int = DEFAULT_MAX_LATTICE, shuffle_seed: int | None = None
) -> Lattice:
    """Enumerate every subgroup by joining cyclic subgroups until nothing new appears.

    Each subgroup is a join of cyclic subgroups, so it suffices to extend
    every known subgroup by one cyclic generator at a time. ``shuffle_seed``
    randomises the order in which seeds and joins are processed; the result
    does not depend on it.
    """
    if G.order > max_lattice:
        raise LatticeBudgetExceeded(f"group of order {G.order} exceeds the lattice budget {max_lattice}")
    rng = random.Random(shuffle_seed) if shuffle_seed is not None else None

    # one generator per distinct cyclic subgroup
    cyc: dict[int, int] = {}
    for a in G.elements():
        C = cyclic_subgroup(G, a)
        cyc.setdefault(C.mask, a)
    seeds = list(cyc.items())
    if rng is not None:
        rng.shuffle(seeds)

    found: dict[int, tuple[tuple[int, ...], tuple[int, ...]]] = {1: ((0,), ())}
    queue = [1]
    while queue:
        if rng is not None:
            mask = queue.pop(rng.randrange(len(queue)))
        else:
            mask = queue.pop()
        members, gens = found[mask]
        for cmask, a in seeds:
            if cmask & ~mask == 0:
                continue
            new_gens = gens + (a,)
            kmask = _join(G.rows, members, mask, new_gens)
            if kmask not in found:
                found[kmask] = (_members(kmask), new_gens)
                queue.append(kmask)

    subs = sorted((SubgroupSet(G, m) for m, _ in found.values()), key=lambda H: (H.order, H.members))
    L = Lattice(G, subs)
    L.edges = _cover_edges(subs)
    return L


def _join(rows, members: tuple[int, ...], mask: int, gens: tuple[int, ...]) -> int:
    """Mask of the subgroup generated by H = ``members`` and ``gens``.

    The result is a union of left cosets yH, so each new element brings its
    whole coset in at once.
    """
    reps = [0]
    for y in reps:
        for g in gens:
            z = rows[g][y]
            if not (mask >> z) & 1:
                rz = rows[z]
                for h in members:
                    mask |= 1 << rz[h]
                reps.append(z)
    return mask


def _members(mask: int) -> tuple[int, ...]:
    out = []
    a = 0
    while mask:
        if mask & 1:
            out.append(a)
        mask >>= 1
        a += 1
    return tuple(out)


def _cover_edges(subs: list[SubgroupSet]) -> list[tuple[int, int]]:
    edges = []
    for j, K in enumerate(subs):
        maximal: list[int] = []
        for i in range(j - 1, -1, -1):
            H = subs[i]
            if H.order == K.order or not H.issubset(K):
                continue
            if not any(H.issubset(subs[k]) for k in maximal):
                maximal.append(i)
        edges.extend((i, j) for i in sorted(maximal))
    edges.sort()
    return edges


def is_normal(G: GroupTable, H: SubgroupSet, within: SubgroupSet | None = None) -> bool:
    """True iff g^-1 H g = H for every g in G (or in ``within``)."""
    conj_by = np.array(within.members if within is not None else range(G.order))
    h = np.array(H.members)
    inv = np.array(G.inv)
    conj = G.mul[G.mul[inv[conj_by][:, None], h[None, :]], conj_by[:, None]]
    inside = np.zeros(G.order, dtype=bool)
    inside[h] = True
    return bool(inside[conj].all())


def maximal_subgroups(L: Lattice, H: SubgroupSet | None = None) -> list[SubgroupSet]:
    """Maximal subgroups of the top of ``L`` (or of H, read off the same lattice)."""
    top = L.index(H) if H is not None else len(L) - 1
    return [L.subgroups[i] for i, j in L.edges if j == top]


def frattini(G: GroupTable, L: Lattice, within: SubgroupSet | None = None) -> SubgroupSet:
    """Intersection of all maximal subgroups of G (of ``within`` if given)."""
    top = within if within is not None else L.top
    result = top
    for M in maximal_subgroups(L, top):
        result = result.intersection(M)
    return result


@dataclass(frozen=True)
class QuotientResult:
    """G/N as a fresh table; ``projection[i]`` is the coset label of ``domain[i]``.

    For quotients of G itself ``domain`` is every element of G, so
    ``projection`` can be indexed by element id directly.
    """

    quotient: GroupTable
    projection: tuple[int, ...]
    domain: tuple[int, ...]
    kernel: SubgroupSet


def quotient(G: GroupTable, N: SubgroupSet, within: SubgroupSet | None = None) -> QuotientResult:
    """Coset table of H/N, H = ``within`` (default G).

    Cosets are numbered in order of their smallest member, so the coset of
    the identity is 0.
    """
    H = within if within is not None else G.all_elements()
    if not N.issubset(H) or not is_normal(G, N, H):
        raise NotNormal("N is not a normal subgroup")
    rows = G.rows
    label: dict[int, int] = {}
    reps: list[int] = []
    for g in H.members:
        if g in label:
            continue
        k = len(reps)
        reps.append(g)
        for n in N.members:
            label[rows[g][n]] = k
    table = [[label[rows[x][y]] for y in reps] for x in reps]
    return QuotientResult(GroupTable(table), tuple(label[g] for g in H.members), H.members, N)


def all_sections(G: GroupTable, L: Lattice):
    """Yield every section H/N with H in L and N normal in H.

    The subgroups of H are read off L rather than recomputed.
    """
    for H in L.subgroups:
        for N in L.within(H):
            if is_normal(G, N, H):
                yield quotient(G, N, H)


def phi_annotations(L: Lattice) -> list[PhiReport]:
    return [subgroup_phi_report(H) for H in L.subgroups]


def lattice_to_dot(L: Lattice, annotations: list[PhiReport] | None = None) -> str:
    """Hasse diagram in DOT; cover edges with phi(H) not dividing phi(K) are red."""
    if annotations is None:
        annotations = phi_annotations(L)
    out = ["digraph lattice {", "  rankdir=BT;", "  node [shape=box];"]
    for i, (H, rep) in enumerate(zip(L.subgroups, annotations)):
        out.append(f'  n{i} [label="|H|={H.order}, exp={rep.exponent}, φ={rep.phi}"];')
    for i, j in L.edges:
        if divides(annotations[i].phi, annotations[j].phi):
            out.append(f"  n{i} -> n{j};")
        else:
            out.append(f'  n{i} -> n{j} [color=red, style=bold, label="{annotations[i].phi}∤{annotations[j].phi}"];')
    out.append("}")
    return "\n".join(out) + "\n"


def lattice_to_json(L: Lattice, annotations: list[PhiReport] | None = None) -> dict:
    if annotations is None:
        annotations = phi_annotations(L)
    return {
        "order": L.group.order,
        "subgroups": [list(H.members) for H in L.subgroups],
        "edges": [list(e) for e in L.edges],
        "phi": [rep.to_dict() for rep in annotations],
    }

