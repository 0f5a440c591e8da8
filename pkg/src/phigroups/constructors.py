"""Constructors for the group families used by the catalog.

Every constructor returns a canonical :class:`GroupTable` (identity 0) that has
passed the full axiom check in :func:`validate_table`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from sympy import isprime

from .core import GroupTable, validate_table
from .errors import (
    ActionNotAutomorphism,
    ActionNotHomomorphism,
    InvalidParameter,
    NoIrreducibleAction,
    SizeBudgetExceeded,
)

DEFAULT_MAX_ORDER = 1024


def _check_budget(n: int, max_order: int) -> None:
    if n > max_order:
        raise SizeBudgetExceeded(f"group of order {n} exceeds the size budget {max_order}")


def _prime(p: int, what: str = "p") -> None:
    if not isinstance(p, (int, np.integer)) or not isprime(int(p)):
        raise InvalidParameter(f"{what}={p} is not a prime")


def cyclic(n: int, *, max_order: int = DEFAULT_MAX_ORDER) -> GroupTable:
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidParameter(f"cyclic group needs n >= 1, got {n}")
    _check_budget(n, max_order)
    i = np.arange(n)
    return validate_table((i[:, None] + i[None, :]) % n)


def elementary_abelian(p: int, k: int, *, max_order: int = DEFAULT_MAX_ORDER) -> GroupTable:
    """Z_p^k; element ids are base-p digit vectors, least significant first."""
    _prime(p)
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise InvalidParameter(f"elementary abelian group needs k >= 1, got {k}")
    _check_budget(p**k, max_order)
    return _vector_group(p, k)


def _vector_group(p: int, k: int) -> GroupTable:
    n = p**k
    digits = _digits(n, p, k)
    s = (digits[:, None, :] + digits[None, :, :]) % p
    return validate_table(s @ (p ** np.arange(k)))


def _digits(n: int, p: int, k: int) -> np.ndarray:
    return (np.arange(n)[:, None] // (p ** np.arange(k))[None, :]) % p


def direct_product(A: GroupTable, B: GroupTable, *, max_order: int = DEFAULT_MAX_ORDER) -> GroupTable:
    """A x B with (a, b) encoded as ``a * |B| + b``."""
    n = A.order * B.order
    _check_budget(n, max_order)
    m = B.order
    a = np.arange(n) // m
    b = np.arange(n) % m
    return validate_table(A.mul[a[:, None], a[None, :]] * m + B.mul[b[:, None], b[None, :]])


def dihedral(two_n: int, *, max_order: int = DEFAULT_MAX_ORDER) -> GroupTable:
    """Symmetries of the n-gon, order ``two_n``; r^i s^j has id ``j*n + i``."""
    if not isinstance(two_n, (int, np.integer)) or two_n < 4 or two_n % 2:
        raise InvalidParameter(f"dihedral group needs an even order >= 4, got {two_n}")
    _check_budget(two_n, max_order)
    n = two_n // 2
    ids = np.arange(two_n)
    i, j = ids % n, ids // n
    # r^i s^j * r^k s^l = r^(i + (-1)^j k) s^(j + l)
    sign = np.where(j == 1, -1, 1)
    rot = (i[:, None] + sign[:, None] * i[None, :]) % n
    ref = (j[:, None] + j[None, :]) % 2
    return validate_table(ref * n + rot)


def generalized_quaternion(order: int, *, max_order: int = DEFAULT_MAX_ORDER) -> GroupTable:
    """Q_{2^n} = <a, b | a^(2^(n-2)) = b^2, a^(2^(n-1)) = 1, b^-1 a b = a^-1>.

    Element a^i b^j has id ``j*m + i`` with m = order/2, so ``a`` is id 1 and
    ``b`` is id m.
    """
    if not isinstance(order, (int, np.integer)) or order < 8 or order & (order - 1):
        raise InvalidParameter(f"generalized quaternion group needs order 2^n >= 8, got {order}")
    _check_budget(order, max_order)
    m = order // 2
    ids = np.arange(order)
    i, j = ids % m, ids // m
    # b a^k = a^-k b and b^2 = a^(m/2)
    sign = np.where(j == 1, -1, 1)
    rot = i[:, None] + sign[:, None] * i[None, :] + (m // 2) * (j[:, None] & j[None, :])
    ref = (j[:, None] + j[None, :]) % 2
    return validate_table(ref * m + rot % m)


def modular_M_p3(p: int, *, max_order: int = DEFAULT_MAX_ORDER) -> GroupTable:
    """M(p^3) = <x, y | x^(p^2) = y^p = 1, y^-1 x y = x^(p+1)>, p odd.

    x^i y^j has id ``j*p^2 + i``.
    """
    _prime(p)
    if p == 2:
        raise InvalidParameter("M(p^3) with p=2 is the dihedral group of order 8; use dihedral(8)")
    _check_budget(p**3, max_order)
    p2 = p * p
    ids = np.arange(p**3)
    i, j = ids % p2, ids // p2
    # y^j x^k y^-j = x^(k (1-p)^j)
    twist = np.array([pow(1 - p, int(e), p2) for e in range(p)])
    xs = (i[:, None] + i[None, :] * twist[j][:, None]) % p2
    ys = (j[:, None] + j[None, :]) % p
    return validate_table(ys * p2 + xs)


def extraspecial_E_p3(p: int, *, max_order: int = DEFAULT_MAX_ORDER) -> GroupTable:
    """Heisenberg group of unitriangular 3x3 matrices over Z_p, p odd.

    (a, b, c) has id ``a + p*b + p^2*c`` and
    (a, b, c)(a', b', c') = (a + a', b + b', c + c' + a b').
    """
    _prime(p)
    if p == 2:
        raise InvalidParameter(
            "E(p^3) with p=2 is not defined here (exponent 2 forces an abelian group); "
            "the order-8 non-abelian groups are dihedral(8) and generalized_quaternion(8)"
        )
    _check_budget(p**3, max_order)
    d = _digits(p**3, p, 3)
    a, b, c = d[:, 0], d[:, 1], d[:, 2]
    na = (a[:, None] + a[None, :]) % p
    nb = (b[:, None] + b[None, :]) % p
    nc = (c[:, None] + c[None, :] + a[:, None] * b[None, :]) % p
    return validate_table(na + p * nb + p * p * nc)


def _permutation_group(perms: list[tuple[int, ...]]) -> GroupTable:
    index = {s: k for k, s in enumerate(perms)}
    # (s t)(x) = s(t(x))
    table = [[index[tuple(s[x] for x in t)] for t in perms] for s in perms]
    return validate_table(table)


def symmetric(n: int, *, max_order: int = DEFAULT_MAX_ORDER) -> GroupTable:
    """S_n; elements are the permutations of range(n) in lexicographic order."""
    if not isinstance(n, (int, np.integer)) or n < 1 or n > 6:
        raise SizeBudgetExceeded(f"symmetric(n) supports 1 <= n <= 6, got {n}")
    perms = list(itertools.permutations(range(n)))
    _check_budget(len(perms), max_order)
    return _permutation_group(perms)


def alternating(n: int, *, max_order: int = DEFAULT_MAX_ORDER) -> GroupTable:
    if not isinstance(n, (int, np.integer)) or n < 1 or n > 6:
        raise SizeBudgetExceeded(f"alternating(n) supports 1 <= n <= 6, got {n}")
    perms = [s for s in itertools.permutations(range(n)) if _parity(s) == 0]
    _check_budget(len(perms), max_order)
    return _permutation_group(perms)


def _parity(s: Sequence[int]) -> int:
    return sum(1 for i in range(len(s)) for j in range(i + 1, len(s)) if s[i] > s[j]) % 2


@dataclass(frozen=True)
class ActionTable:
    """A map h -> permutation of N's element ids, one row per element of H."""

    acting: GroupTable
    normal: GroupTable
    images: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        H, N = self.acting, self.normal
        if len(self.images) != H.order:
            raise ActionNotHomomorphism(f"need one permutation per element of H ({H.order}), got {len(self.images)}")
        for h, img in enumerate(self.images):
            if sorted(img) != list(range(N.order)):
                raise ActionNotAutomorphism(f"image of h={h} is not a permutation of N")
        perm = np.array(self.images)
        for h in range(H.order):
            s = perm[h]
            # s(ab) == s(a) s(b)
            bad = np.argwhere(s[N.mul] != N.mul[np.ix_(s, s)])
            if len(bad):
                a, b = bad[0]
                raise ActionNotAutomorphism(
                    f"image of h={h} does not preserve the product of {int(a)} and {int(b)}"
                )
        for h1 in range(H.order):
            for h2 in range(H.order):
                # act(h1 h2) == act(h1) o act(h2)
                if not (perm[H.rows[h1][h2]] == perm[h1][perm[h2]]).all():
                    raise ActionNotHomomorphism(f"act({h1}*{h2}) != act({h1}) o act({h2})")

    @classmethod
    def trivial(cls, acting: GroupTable, normal: GroupTable) -> ActionTable:
        ident = tuple(range(normal.order))
        return cls(acting, normal, tuple(ident for _ in range(acting.order)))

    @classmethod
    def from_generator(cls, acting: GroupTable, normal: GroupTable, gen: int, auto: Sequence[int]) -> ActionTable:
        """Action of a cyclic group ``acting`` whose generator ``gen`` acts by ``auto``."""
        if acting.orders[gen] != acting.order:
            raise InvalidParameter(f"element {gen} does not generate the acting group")
        auto = np.asarray(auto)
        images: list[tuple[int, ...]] = [()] * acting.order
        x, cur = 0, np.arange(normal.order)
        for _ in range(acting.order):
            images[x] = tuple(int(v) for v in cur)
            x = acting.rows[x][gen]
            cur = auto[cur]
        return cls(acting, normal, tuple(images))


def semidirect_product(
    N: GroupTable, H: GroupTable, action: ActionTable, *, max_order: int = DEFAULT_MAX_ORDER
) -> GroupTable:
    """N x| H on pairs (n, h) encoded as ``n * |H| + h``, with
    (n1, h1)(n2, h2) = (n1 * act(h1)(n2), h1 h2)."""
    if action.normal != N or action.acting != H:
        raise InvalidParameter("action table was built for different groups")
    size = N.order * H.order
    _check_budget(size, max_order)
    m = H.order
    ids = np.arange(size)
    n, h = ids // m, ids % m
    perm = np.array(action.images)
    twisted = perm[h[:, None], n[None, :]]
    return validate_table(N.mul[n[:, None], twisted] * m + H.mul[h[:, None], h[None, :]])


def extend_automorphism(G: GroupTable, gens: Sequence[int], images: Sequence[int]) -> tuple[int, ...]:
    """Extend generator images to a map on all of G.

    Raises ActionNotAutomorphism if the generators do not generate G or the
    extension is not a well-defined bijective homomorphism.
    """
    f = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g, gi in zip(gens, images):
                y, yi = G.rows[x][g], G.rows[f[x]][gi]
                if y not in f:
                    f[y] = yi
                    nxt.append(y)
                elif f[y] != yi:
                    raise ActionNotAutomorphism("generator images do not define a homomorphism")
        frontier = nxt
    if len(f) != G.order:
        raise ActionNotAutomorphism("the given elements do not generate the group")
    perm = tuple(f[a] for a in range(G.order))
    if len(set(perm)) != G.order:
        raise ActionNotAutomorphism("generator images do not define a bijection")
    s = np.array(perm)
    if (s[G.mul] != G.mul[np.ix_(s, s)]).any():
        raise ActionNotAutomorphism("generator images do not define a homomorphism")
    return perm


def multiplicative_order(p: int, q: int) -> int:
    """Least r >= 1 with p^r = 1 (mod q)."""
    _prime(q, "q")
    if p % q == 0:
        raise InvalidParameter(f"{q} divides {p}; no multiplicative order")
    r, x = 1, p % q
    while x != 1:
        x = x * p % q
        r += 1
    return r


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] % p), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], -1, p)
        m[rank] = [v * inv % p for v in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                c = m[i][col]
                m[i] = [(a - c * b) % p for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def _matmul(a: list[list[int]], b: list[list[int]], p: int) -> list[list[int]]:
    r = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(r)) % p for j in range(r)] for i in range(r)]


def _is_irreducible(a: list[list[int]], p: int) -> bool:
    """No proper nonzero invariant subspace: every nonzero v is cyclic."""
    r = len(a)
    for v in itertools.product(range(p), repeat=r):
        if not any(v):
            continue
        krylov = [list(v)]
        for _ in range(r - 1):
            w = krylov[-1]
            krylov.append([sum(a[i][k] * w[k] for k in range(r)) % p for i in range(r)])
        if _rank_mod_p(krylov, p) < r:
            return False
    return True


def irreducible_action_matrix(p: int, q: int, r: int) -> list[list[int]]:
    """First r x r matrix over F_p (entries in lexicographic order) of
    multiplicative order exactly q with no proper nonzero invariant subspace."""
    ident = [[int(i == j) for j in range(r)] for i in range(r)]
    for entries in itertools.product(range(p), repeat=r * r):
        a = [list(entries[i * r:(i + 1) * r]) for i in range(r)]
        if a == ident:
            continue
        power = a
        for _ in range(q - 1):
            power = _matmul(power, a, p)
        # q prime, so a^q = I and a != I means order exactly q
        if power != ident:
            continue
        if _rank_mod_p(a, p) < r:
            continue
        if _is_irreducible(a, p):
            return a
    raise NoIrreducibleAction(f"no irreducible order-{q} element in GL({r},{p})")


def schmidt_group(p: int, q: int, q_exp: int, *, max_order: int = DEFAULT_MAX_ORDER) -> GroupTable:
    """Z_p^r x| Z_{q^q_exp} with r the multiplicative order of p mod q.

    The generator of the cyclic factor acts by an irreducible matrix of order
    q, so its q-th power is central.
    """
    _prime(p)
    _prime(q, "q")
    if p == q:
        raise InvalidParameter("schmidt group needs distinct primes p and q")
    if not isinstance(q_exp, (int, np.integer)) or q_exp < 1:
        raise InvalidParameter(f"q_exp must be >= 1, got {q_exp}")
    r = multiplicative_order(p, q)
    _check_budget(p**r * q**q_exp, max_order)
    a = np.array(irreducible_action_matrix(p, q, r))
    N = _vector_group(p, r)
    H = cyclic(q**q_exp)
    d = _digits(p**r, p, r)
    auto = ((d @ a.T) % p) @ (p ** np.arange(r))
    return semidirect_product(N, H, ActionTable.from_generator(H, N, 1, auto), max_order=max_order)


def q8_by_cyclic(n: int = 1, *, max_order: int = DEFAULT_MAX_ORDER) -> GroupTable:
    """Q_8 x| Z_{3^n}, the generator permuting i -> j -> k -> i."""
    Q = generalized_quaternion(8)
    # a = i (id 1), b = j (id 4), ab = k (id 5)
    auto = extend_automorphism(Q, [1, 4], [4, 5])
    H = cyclic(3**n, max_order=max_order)
    return semidirect_product(Q, H, ActionTable.from_generator(H, Q, 1, auto), max_order=max_order)
