"""Acceptance criteria. Every check is an exact integer comparison.

Each test carries ``@pytest.mark.acceptance(n, title)``; conftest prints one
PASS/FAIL line per criterion at the end of the run.
"""

import math
import time

import numpy as np
import pytest
from sympy import factorint
from sympy.ntheory import n_order

import oracles
from phigroups.analysis import (
    classification_predicate,
    condition2,
    is_nilpotent_lcs,
    is_nilpotent_sections,
    is_schmidt,
    lemma21_check,
    lemma22_case_probe,
    recognize_sylow_shape,
    schmidt_structure_report,
)
from phigroups.catalog import build_catalog, default_catalog, verify_catalog
from phigroups.constructors import (
    alternating,
    cyclic,
    dihedral,
    direct_product,
    elementary_abelian,
    extraspecial_E_p3,
    generalized_quaternion,
    modular_M_p3,
    q8_by_cyclic,
    schmidt_group,
    symmetric,
)
from phigroups.core import center, relabel
from phigroups.lattice import all_subgroups, frattini, is_normal, quotient

# runtime budgets in seconds
BUDGET_PHI = 5.0
BUDGET_PGROUPS = 30.0
BUDGET_CATALOG = 300.0

acceptance = pytest.mark.acceptance


@pytest.fixture(scope="module")
def catalog():
    return build_catalog(default_catalog())


# -------------------------------------------------------------------- 1


@acceptance(1, "phi formula suite")
def test_phi_formulas():
    start = time.perf_counter()
    for n, expected in [(3, 6), (4, 4), (5, 8)]:
        Q = generalized_quaternion(2**n)
        assert Q.phi == expected == oracles.phi(Q.rows)
        if n >= 4:
            assert Q.phi == 2 ** (n - 2)
    for p in (2, 3, 5):
        E = elementary_abelian(p, 2)
        assert E.phi == p * p - 1 == oracles.phi(E.rows)
        M = direct_product(cyclic(p), cyclic(p * p))
        assert M.phi == p * p * (p - 1) == oracles.phi(M.rows)
    for n in range(1, 201):
        assert cyclic(n).phi == oracles.totient(n), n
    assert time.perf_counter() - start < BUDGET_PHI


# -------------------------------------------------------------------- 2

# (name, builder, expected shape, expected condition (2))
P_GROUPS = [
    ("Z8", lambda: cyclic(8), "cyclic", True),
    ("Z2xZ4", lambda: direct_product(cyclic(2), cyclic(4)), "other", False),
    ("Z2^3", lambda: elementary_abelian(2, 3), "other", False),
    ("D8", lambda: dihedral(8), "other", False),
    ("Q8", lambda: generalized_quaternion(8), "Q8", True),
]
for p in (3, 5):
    P_GROUPS += [
        (f"Z{p**3}", lambda p=p: cyclic(p**3), "cyclic", True),
        (f"Z{p}xZ{p*p}", lambda p=p: direct_product(cyclic(p), cyclic(p * p)), "other", False),
        (f"Z{p}^3", lambda p=p: elementary_abelian(p, 3), "other", False),
        (f"M{p**3}", lambda p=p: modular_M_p3(p), "other", False),
        (f"E{p**3}", lambda p=p: extraspecial_E_p3(p), "other", False),
    ]
for p in (2, 3, 5):
    P_GROUPS += [
        (f"Z{p}^1", lambda p=p: elementary_abelian(p, 1), "cyclic", True),
        (f"Z{p}^2", lambda p=p: elementary_abelian(p, 2), "p_by_p", True),
        (f"Z{p}^4", lambda p=p: elementary_abelian(p, 4), "other", False),
    ]
P_GROUPS += [
    ("Q16", lambda: generalized_quaternion(16), "generalized_quaternion", False),
    ("Q32", lambda: generalized_quaternion(32), "generalized_quaternion", False),
    ("D16", lambda: dihedral(16), "other", False),
]


@acceptance(2, "p-group biconditional")
def test_p_group_biconditional():
    start = time.perf_counter()
    assert len({name for name, *_ in P_GROUPS}) == len(P_GROUPS) == 27
    for name, make, shape, c2 in P_GROUPS:
        P = make()
        # Z5^4 has order 625, past the default lattice budget of 256
        L = all_subgroups(P, max_lattice=2000)
        assert recognize_sylow_shape(P) == shape, name
        assert condition2(P, L)[0] is c2, name
        assert lemma21_check(P, L), name
    assert time.perf_counter() - start < BUDGET_PGROUPS


# -------------------------------------------------------------------- 3

POSITIVE = ["Z12", "Q8xZ3", "Z3xZ3xZ2", "Q8xZ5"]
NEGATIVE = ["D8", "Z2xZ4", "Z4xQ8", "M27", "E27"]


@acceptance(3, "classification agreement on the default catalog")
def test_catalog_agreement():
    spec = default_catalog()
    start = time.perf_counter()
    results = verify_catalog(spec, parallel=1)
    elapsed = time.perf_counter() - start
    assert len(results) >= 60
    assert max(r.record["order"] for r in results) <= 256
    bad = [r.name for r in results if not r.record["verdict"]["agrees"]]
    assert bad == []
    assert [p for r in results for p in r.problems] == []
    by_name = {r.name: r.record["verdict"] for r in results}
    for name in POSITIVE:
        v = by_name[name]
        assert (v["cond1"], v["cond2"], v["classified"]) == (True, True, True), name
    for name in NEGATIVE:
        v = by_name[name]
        assert (v["cond2"], v["classified"]) == (False, False), name
        assert v["cond2_witness"] is not None, name
    assert elapsed < BUDGET_CATALOG


# -------------------------------------------------------------------- 4


@acceptance(4, "nilpotency cross-check")
def test_nilpotency_cross_check(catalog):
    non_nilpotent = set()
    for name, G in catalog:
        L = all_subgroups(G)
        lcs = is_nilpotent_lcs(G)
        assert lcs == is_nilpotent_sections(G, L), name
        if not lcs:
            non_nilpotent.add(name)
    # both sides of the equivalence are exercised
    assert {"S3", "A4", "S4", "Q8:Z3"} <= non_nilpotent
    assert len(non_nilpotent) < len(catalog)


# -------------------------------------------------------------------- 5

SCHMIDT = [
    ("S3", lambda: symmetric(3), 3, 2),
    ("A4", lambda: alternating(4), 2, 3),
    ("schmidt(2,3,2)", lambda: schmidt_group(2, 3, 2), 2, 3),
    ("schmidt(3,2,1)", lambda: schmidt_group(3, 2, 1), 3, 2),
    ("Q8:Z3", lambda: q8_by_cyclic(1), 2, 3),
]


@acceptance(5, "Schmidt structure suite")
def test_schmidt_suite():
    for name, make, p, q in SCHMIDT:
        G = make()
        L = all_subgroups(G)
        assert is_schmidt(G, L), name
        rep = schmidt_structure_report(G, L)
        assert rep.failed_clauses() == [], name
        assert (rep.p, rep.q) == (p, q), name
        assert rep.r == n_order(p, q), name
        assert rep.index_formula and rep.quotient_schmidt and rep.no_cyclic_pq, name
        assert rep.details["P_order"] // rep.details["P_derived_order"] == p**rep.r, name
        assert rep.details["quotient_order"] == p**rep.r * q, name
    A4, Q8Z3 = alternating(4), q8_by_cyclic(1)
    assert A4.phi == 0 == oracles.phi(A4.rows)
    assert Q8Z3.phi == 0 == oracles.phi(Q8Z3.rows)
    assert lemma22_case_probe(A4).contradiction
    assert lemma22_case_probe(Q8Z3).contradiction


# -------------------------------------------------------------------- 6

LATTICE_COUNTS = [
    ("Z6", lambda: cyclic(6), 4),
    ("Q8", lambda: generalized_quaternion(8), 6),
    ("D8", lambda: dihedral(8), 10),
    ("Z2^3", lambda: elementary_abelian(2, 3), 16),
    ("A4", lambda: alternating(4), 10),
    ("S4", lambda: symmetric(4), 30),
]


@acceptance(6, "lattice oracles")
def test_lattice_counts():
    seeds = np.random.default_rng(6).integers(0, 2**31, size=5).tolist()
    for name, make, count in LATTICE_COUNTS:
        G = make()
        base = all_subgroups(G)
        assert len(base) == count, name
        for seed in seeds:
            assert all_subgroups(G, shuffle_seed=seed).subgroups == base.subgroups, (name, seed)
        table = [list(r) for r in G.rows]
        if G.order <= 12:
            oracle = oracles.subgroups_by_subsets(table)
        else:
            # every subgroup of S4 is 2-generated
            oracle = oracles.subgroups_by_generators(table, 2)
        assert {frozenset(H.members) for H in base.subgroups} == oracle, name
    Q8 = generalized_quaternion(8)
    assert frattini(Q8, all_subgroups(Q8)) == center(Q8)


# -------------------------------------------------------------------- 7


@acceptance(7, "property suites")
def test_frobenius_divisibility(catalog):
    for name, G in catalog:
        counts = G.spectrum.counts
        assert counts[1] == 1 and sum(counts.values()) == G.order, name
        for d, c in counts.items():
            assert G.order % d == 0 and c % oracles.totient(d) == 0, (name, d)


@acceptance(7, "property suites")
def test_coprime_phi_multiplicativity(catalog):
    pairs = [
        (a, b)
        for a in catalog
        for b in catalog
        if a[0] < b[0] and math.gcd(a[1].exponent, b[1].exponent) == 1 and a[1].order * b[1].order <= 1024
    ]
    rng = np.random.default_rng(7)
    picks = rng.choice(len(pairs), size=20, replace=False)
    for i in picks:
        (na, A), (nb, B) = pairs[i]
        G = direct_product(A, B)
        assert G.exponent == A.exponent * B.exponent, (na, nb)
        assert G.phi == A.phi * B.phi, (na, nb)


@acceptance(7, "property suites")
def test_recognizers_ignore_labels(catalog):
    rng = np.random.default_rng(77)
    for name, G in catalog:
        if G.order > 128:
            continue
        H = relabel(G, rng.permutation(G.order))
        assert classification_predicate(H, all_subgroups(H)) == classification_predicate(G, all_subgroups(G)), name
        if len(factorint(G.order)) == 1:
            assert recognize_sylow_shape(H) == recognize_sylow_shape(G), name


@acceptance(7, "property suites")
def test_quotient_projections_are_homomorphisms():
    for G in [symmetric(4), generalized_quaternion(16), dihedral(12), schmidt_group(2, 3, 2), modular_M_p3(3)]:
        for N in all_subgroups(G).subgroups:
            if not is_normal(G, N):
                continue
            res = quotient(G, N)
            pi, Q = res.projection, res.quotient
            assert Q.order * N.order == G.order
            assert all(pi[G.rows[a][b]] == Q.rows[pi[a]][pi[b]] for a in G.elements() for b in G.elements())
            assert [a for a in G.elements() if pi[a] == 0] == list(N.members)
