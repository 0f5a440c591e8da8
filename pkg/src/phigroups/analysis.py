"""Nilpotency tests, the divisibility conditions on phi, Sylow recognisers,
and the Schmidt-group structure checks."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

from sympy import factorint

from .constructors import multiplicative_order
from .core import (
    GroupTable,
    SubgroupSet,
    center,
    commutator_subgroup,
    cyclic_subgroup,
    derived_subgroup,
    divides,
    generated_subgroup,
    subgroup_phi_report,
    subgroup_table,
)
from .errors import NotApplicable, NotPrimePower, NotSchmidt, PrimeDoesNotDivide
from .lattice import DEFAULT_MAX_LATTICE, Lattice, all_sections, all_subgroups, frattini, is_normal, quotient

ADMISSIBLE_SHAPES = frozenset({"cyclic", "Q8", "p_by_p"})


# ---------------------------------------------------------------- Sylow


@dataclass
class SylowEntry:
    prime: int
    valuation: int
    subgroup: SubgroupSet
    unique: bool


@dataclass
class SylowDecomposition:
    entries: dict[int, SylowEntry]


def sylow_subgroup(G: GroupTable, L: Lattice, p: int) -> SylowEntry:
    """First Sylow p-subgroup of G in canonical lattice order."""
    if G.order % p or p < 2:
        raise PrimeDoesNotDivide(f"{p} does not divide |G| = {G.order}")
    v = factorint(G.order).get(p, 0)
    size = p**v
    sylows = [H for H in L.subgroups if H.order == size]
    return SylowEntry(p, v, sylows[0], len(sylows) == 1)


def sylow_decomposition(G: GroupTable, L: Lattice) -> SylowDecomposition:
    return SylowDecomposition({p: sylow_subgroup(G, L, p) for p in sorted(factorint(G.order))})


# ---------------------------------------------------------------- nilpotency


def lower_central_series(G: GroupTable, H: SubgroupSet | None = None) -> list[SubgroupSet]:
    """H = g_1 >= g_2 = [g_1, H] >= ... until the series stabilises."""
    H = H if H is not None else G.all_elements()
    series = [H]
    while True:
        nxt = commutator_subgroup(G, series[-1], H)
        if nxt.members == series[-1].members:
            return series
        series.append(nxt)


def is_nilpotent_lcs(G: GroupTable, H: SubgroupSet | None = None) -> bool:
    return lower_central_series(G, H)[-1].order == 1


def is_nilpotent_sections(G: GroupTable, L: Lattice | None = None, *, max_lattice: int = DEFAULT_MAX_LATTICE) -> bool:
    """True iff every section H/N of G has nonzero phi."""
    if L is None:
        L = all_subgroups(G, max_lattice=max_lattice)
    return all(S.quotient.phi != 0 for S in all_sections(G, L))


# ---------------------------------------------------------------- conditions (1) and (2)


@dataclass
class PairWitness:
    H: SubgroupSet
    K: SubgroupSet
    phi_H: int
    phi_K: int

    def to_dict(self) -> dict:
        return {"H": list(self.H.members), "K": list(self.K.members), "phi_H": self.phi_H, "phi_K": self.phi_K}


def condition1(G: GroupTable, L: Lattice) -> tuple[bool, SubgroupSet | None]:
    """phi(H) != 0 for every subgroup; the witness is the first failure in lattice order."""
    for H in L.subgroups:
        if subgroup_phi_report(H).phi == 0:
            return False, H
    return True, None


def condition2(G: GroupTable, L: Lattice) -> tuple[bool, PairWitness | None]:
    """phi(H) | phi(K) whenever H <= K.

    Pairs are scanned by (index of H, index of K). A pair with phi(H) = 0 and
    phi(K) != 0 fails; 0 | 0 passes.
    """
    subs = L.subgroups
    phis = [subgroup_phi_report(H).phi for H in subs]
    for i, H in enumerate(subs):
        for j in range(i + 1, len(subs)):
            K = subs[j]
            if K.order % H.order == 0 and H.issubset(K) and not divides(phis[i], phis[j]):
                return False, PairWitness(H, K, phis[i], phis[j])
    return True, None


# ---------------------------------------------------------------- recognisers


def prime_power(n: int) -> tuple[int, int]:
    f = factorint(n)
    if len(f) != 1:
        raise NotPrimePower(f"{n} is not a prime power")
    return next(iter(f.items()))


def recognize_sylow_shape(P: GroupTable) -> str:
    """Classify a p-group as cyclic, Q8, p_by_p, generalized_quaternion or other.

    Checks run in that order, so Q8 is never reported as generalized_quaternion.
    """
    if P.order == 1:
        return "cyclic"
    p, n = prime_power(P.order)
    spec = P.spectrum
    if spec[P.order] > 0:
        return "cyclic"
    if P.order == 8 and not P.is_abelian and spec.counts == {1: 1, 2: 1, 4: 6}:
        return "Q8"
    if n == 2 and P.exponent == p:
        return "p_by_p"
    if p == 2 and n >= 3 and spec[2] == 1:
        return "generalized_quaternion"
    return "other"


def classification_predicate(G: GroupTable, L: Lattice) -> tuple[bool, dict[int, str]]:
    """Nilpotent with every Sylow subgroup cyclic, Q8 or Z_p x Z_p."""
    shapes = {p: recognize_sylow_shape(subgroup_table(e.subgroup)) for p, e in sylow_decomposition(G, L).entries.items()}
    ok = is_nilpotent_lcs(G) and all(s in ADMISSIBLE_SHAPES for s in shapes.values())
    return ok, shapes


# ---------------------------------------------------------------- theorem verdict


@dataclass
class VerdictReport:
    cond1: bool
    cond1_witness: SubgroupSet | None
    cond2: bool
    cond2_witness: PairWitness | None
    nilpotent: bool
    sylow_shapes: dict[int, str]
    classified: bool
    agrees: bool

    def to_dict(self) -> dict:
        return {
            "cond1": self.cond1,
            "cond1_witness": list(self.cond1_witness.members) if self.cond1_witness is not None else None,
            "cond2": self.cond2,
            "cond2_witness": self.cond2_witness.to_dict() if self.cond2_witness is not None else None,
            "nilpotent": self.nilpotent,
            "sylow_shapes": {str(p): s for p, s in self.sylow_shapes.items()},
            "classified": self.classified,
            "agrees": self.agrees,
        }


def verify_theorem(G: GroupTable, L: Lattice | None = None, *, max_lattice: int = DEFAULT_MAX_LATTICE) -> VerdictReport:
    """Evaluate conditions (1), (2) and the classification, and whether they agree.

    The equivalence is only claimed for groups satisfying condition (1), so
    ``agrees`` is vacuously true otherwise.
    """
    if L is None:
        L = all_subgroups(G, max_lattice=max_lattice)
    c1, w1 = condition1(G, L)
    c2, w2 = condition2(G, L)
    classified, shapes = classification_predicate(G, L)
    return VerdictReport(
        cond1=c1,
        cond1_witness=w1,
        cond2=c2,
        cond2_witness=w2,
        nilpotent=is_nilpotent_lcs(G),
        sylow_shapes=shapes,
        classified=classified,
        agrees=(not c1) or (c2 == classified),
    )


def lemma21_check(P: GroupTable, L: Lattice | None = None, *, max_lattice: int = DEFAULT_MAX_LATTICE) -> bool:
    """For a p-group: condition (2) holds iff P is cyclic, Q8 or Z_p x Z_p."""
    if P.order > 1:
        prime_power(P.order)
    if L is None:
        L = all_subgroups(P, max_lattice=max_lattice)
    c2, _ = condition2(P, L)
    return c2 == (recognize_sylow_shape(P) in ADMISSIBLE_SHAPES)


# ---------------------------------------------------------------- Schmidt groups


def is_schmidt(G: GroupTable, L: Lattice) -> bool:
    """Non-nilpotent, but every proper subgroup is nilpotent."""
    if is_nilpotent_lcs(G):
        return False
    return all(is_nilpotent_lcs(G, H) for H in L.subgroups[:-1])


@dataclass
class SchmidtReport:
    is_schmidt: bool
    p: int = 0
    q: int = 0
    m: int = 0
    n: int = 0
    r: int = 0
    yq_central: bool = False
    center_eq_frattini: bool = False
    center_eq_phiP_times_yq: bool = False
    derived_eq_P: bool = False
    P_derived_eq_frattini_P: bool = False
    index_formula: bool = False
    abelian_case: bool = False
    nonabelian_case: bool = False
    quotient_schmidt: bool = False
    no_cyclic_pq: bool = False
    details: dict = field(default_factory=dict)

    CLAUSES = (
        "yq_central",
        "center_eq_frattini",
        "center_eq_phiP_times_yq",
        "derived_eq_P",
        "P_derived_eq_frattini_P",
        "index_formula",
        "abelian_case",
        "nonabelian_case",
        "quotient_schmidt",
        "no_cyclic_pq",
    )

    @property
    def all_clauses(self) -> bool:
        return self.is_schmidt and all(getattr(self, c) for c in self.CLAUSES)

    def failed_clauses(self) -> list[str]:
        return [c for c in self.CLAUSES if not getattr(self, c)]

    def to_dict(self) -> dict:
        return asdict(self)


def _schmidt_primes(G: GroupTable, L: Lattice) -> tuple[SylowEntry, SylowEntry]:
    """(normal Sylow p-entry, Sylow q-entry) of a group of order p^m q^n."""
    f = factorint(G.order)
    if len(f) != 2:
        raise NotSchmidt(f"|G| = {G.order} is not divisible by exactly two primes")
    a, b = (sylow_subgroup(G, L, p) for p in sorted(f))
    if a.unique and not b.unique:
        return a, b
    if b.unique and not a.unique:
        return b, a
    raise NotSchmidt("expected exactly one normal Sylow subgroup")


def schmidt_structure_report(G: GroupTable, L: Lattice | None = None) -> SchmidtReport:
    """Check the structural identities of a Schmidt group clause by clause."""
    if L is None:
        L = all_subgroups(G)
    if not is_schmidt(G, L):
        raise NotSchmidt("group is not a Schmidt group")
    Pe, Qe = _schmidt_primes(G, L)
    p, q = Pe.prime, Qe.prime
    P, Q = Pe.subgroup, Qe.subgroup
    r = multiplicative_order(p, q)
    rep = SchmidtReport(True, p=p, q=q, m=Pe.valuation, n=Qe.valuation, r=r)

    y = next((a for a in Q.members if G.orders[a] == Q.order), None)
    if y is None:
        rep.details["Q_cyclic"] = False
        return rep
    yq = G.power(y, q)
    Z = center(G)
    PhiG = frattini(G, L)
    PhiP = frattini(G, L, within=P)
    Pd = derived_subgroup(G, within=P)
    Gd = derived_subgroup(G)
    ZP = center(G, within=P)
    yq_sub = cyclic_subgroup(G, yq)

    rep.yq_central = yq in Z
    rep.center_eq_frattini = Z.members == PhiG.members
    prod = generated_subgroup(G, PhiP.members + yq_sub.members)
    rep.center_eq_phiP_times_yq = (
        prod.members == Z.members and PhiP.intersection(yq_sub).order == 1 and PhiP.order * yq_sub.order == Z.order
    )
    rep.derived_eq_P = Gd.members == P.members
    rep.P_derived_eq_frattini_P = Pd.members == PhiP.members
    rep.index_formula = P.order // Pd.order == p**r

    P_abelian = Pd.order == 1
    if P_abelian:
        elementary = all(G.orders[a] in (1, p) for a in P.members)
        minimal_normal = not any(
            1 < N.order < P.order and N.issubset(P) and is_normal(G, N) for N in L.subgroups
        )
        rep.abelian_case = elementary and P.order == p**r and minimal_normal
        rep.nonabelian_case = True
    else:
        rep.abelian_case = True
        rep.nonabelian_case = (
            ZP.members == Pd.members == PhiP.members and P.order // ZP.order == p**r
        )

    Qt = quotient(G, Z).quotient
    QL = all_subgroups(Qt)
    rep.quotient_schmidt = Qt.order == p**r * q and is_schmidt(Qt, QL)
    rep.no_cyclic_pq = Qt.spectrum[p * q] == 0
    rep.details.update(
        y=y,
        center_order=Z.order,
        frattini_order=PhiG.order,
        P_order=P.order,
        P_derived_order=Pd.order,
        quotient_order=Qt.order,
        quotient_spectrum={str(k): v for k, v in Qt.spectrum.counts.items()},
    )
    return rep


@dataclass
class SchmidtCaseProbe:
    case: str
    phi: int
    quotient_pq_element: int | None
    contradiction: bool

    def to_dict(self) -> dict:
        return asdict(self)


def lemma22_case_probe(G: GroupTable, L: Lattice | None = None) -> SchmidtCaseProbe:
    """For a Schmidt group whose normal Sylow P is cyclic, Z_p x Z_p or Q8,
    exhibit why conditions (1) and (2) cannot both hold.

    Case a (P cyclic): phi(G) = 0 since G is not cyclic.
    Cases b (P = Z_p x Z_p) and c (P = Q8): phi(G) = 0, or else G/Z(G) has a
    cyclic subgroup of order pq, which a Schmidt quotient cannot have.
    """
    if L is None:
        L = all_subgroups(G)
    if not is_schmidt(G, L):
        raise NotApplicable("group is not a Schmidt group")
    Pe, Qe = _schmidt_primes(G, L)
    shape = recognize_sylow_shape(subgroup_table(Pe.subgroup))
    case = {"cyclic": "a", "p_by_p": "b", "Q8": "c"}.get(shape)
    if case is None:
        raise NotApplicable(f"normal Sylow subgroup has shape {shape!r}")
    phi = G.phi
    pq_elem = None
    if case != "a":
        Qt = quotient(G, center(G)).quotient
        pq = Pe.prime * Qe.prime
        pq_elem = next((a for a in Qt.elements() if Qt.orders[a] == pq), None)
    contradiction = phi == 0 or pq_elem is not None
    return SchmidtCaseProbe(case, phi, pq_elem, contradiction)


def search_nonnilpotent_with_subgroup_phi(catalog, *, max_lattice: int = DEFAULT_MAX_LATTICE) -> list:
    """Catalog entries that are not nilpotent yet have phi(H) != 0 for every subgroup H.

    ``catalog`` is an iterable of GroupTable or of (name, GroupTable) pairs;
    matching items are returned unchanged.
    """
    hits = []
    for item in catalog:
        G = item[1] if isinstance(item, tuple) else item
        if G.order > max_lattice or is_nilpotent_lcs(G):
            continue
        if condition1(G, all_subgroups(G, max_lattice=max_lattice))[0]:
            hits.append(item)
    return hits

