"""Slow, independent reference computations used to freeze expected values.

Nothing here imports the algorithms under test; inputs are plain
multiplication tables (lists of lists) with identity 0.
"""

from __future__ import annotations

import itertools
import math


def totient(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def order_by_repeated_mul(table, a: int) -> int:
    x, k = a, 1
    while x != 0:
        x = table[x][a]
        k += 1
    return k


def spectrum(table) -> dict[int, int]:
    out: dict[int, int] = {}
    for a in range(len(table)):
        d = order_by_repeated_mul(table, a)
        out[d] = out.get(d, 0) + 1
    return dict(sorted(out.items()))


def phi(table) -> int:
    orders = [order_by_repeated_mul(table, a) for a in range(len(table))]
    e = math.lcm(*orders)
    return orders.count(e)


def naive_closure(table, seeds) -> frozenset[int]:
    """Close a set under the product by squaring until stable."""
    s = {0, *seeds}
    while True:
        new = {table[a][b] for a in s for b in s} | s
        if new == s:
            return frozenset(s)
        s = new


def subgroups_by_generators(table, k: int) -> set[frozenset[int]]:
    """Every subgroup generated by at most k elements."""
    n = len(table)
    out = set()
    for gens in itertools.combinations_with_replacement(range(n), k):
        out.add(naive_closure(table, gens))
    return out


def subgroups_by_subsets(table) -> set[frozenset[int]]:
    """Every subset containing 0 that is closed under the product (finite => subgroup)."""
    n = len(table)
    out = set()
    others = range(1, n)
    for r in range(n):
        if n % (r + 1):
            continue
        for combo in itertools.combinations(others, r):
            s = {0, *combo}
            if all(table[a][b] in s for a in s for b in s):
                out.add(frozenset(s))
    return out


def is_associative(table) -> bool:
    n = len(table)
    return all(
        table[table[a][b]][c] == table[a][table[b][c]] for a in range(n) for b in range(n) for c in range(n)
    )


def perm_compose_table(perms):
    index = {p: i for i, p in enumerate(perms)}
    return [[index[tuple(s[t[x]] for x in range(len(t)))] for t in perms] for s in perms]
