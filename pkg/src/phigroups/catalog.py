"""JSON group descriptors, catalogs, and the catalog verification runner."""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from . import constructors as C
from .analysis import (
    is_nilpotent_sections,
    is_schmidt,
    lemma21_check,
    lemma22_case_probe,
    schmidt_structure_report,
    verify_theorem,
)
from .core import GroupTable, read_cayley
from .errors import DescriptorError, NotApplicable
from .lattice import DEFAULT_MAX_LATTICE, all_subgroups

_SIMPLE = {
    "cyclic": (C.cyclic, ("n",)),
    "elementary_abelian": (C.elementary_abelian, ("p", "k")),
    "dihedral": (C.dihedral, ("order",)),
    "generalized_quaternion": (C.generalized_quaternion, ("order",)),
    "modular_M_p3": (C.modular_M_p3, ("p",)),
    "extraspecial_E_p3": (C.extraspecial_E_p3, ("p",)),
    "symmetric": (C.symmetric, ("n",)),
    "alternating": (C.alternating, ("n",)),
    "schmidt": (C.schmidt_group, ("p", "q", "q_exp")),
}

KINDS = (*_SIMPLE, "direct_product", "semidirect_product", "cayley_file")


def build(desc: dict, *, base_dir: str | Path | None = None, max_order: int = C.DEFAULT_MAX_ORDER) -> GroupTable:
    """Construct the group described by ``desc``.

    ``cayley_file`` paths are resolved against ``base_dir`` when relative.
    """
    if not isinstance(desc, dict) or "kind" not in desc:
        raise DescriptorError(f"descriptor must be an object with a 'kind' key: {desc!r}")
    kind = desc["kind"]
    if kind in _SIMPLE:
        fn, keys = _SIMPLE[kind]
        missing = [k for k in keys if k not in desc]
        if missing:
            raise DescriptorError(f"{kind} descriptor is missing {', '.join(missing)}")
        for k in keys:
            if not isinstance(desc[k], int) or isinstance(desc[k], bool):
                raise DescriptorError(f"{kind}.{k} must be an integer, got {desc[k]!r}")
        return fn(*(desc[k] for k in keys), max_order=max_order)
    if kind == "direct_product":
        factors = desc.get("factors")
        if not isinstance(factors, list) or not factors:
            raise DescriptorError("direct_product needs a non-empty 'factors' list")
        G = build(factors[0], base_dir=base_dir, max_order=max_order)
        for f in factors[1:]:
            G = C.direct_product(G, build(f, base_dir=base_dir, max_order=max_order), max_order=max_order)
        return G
    if kind == "semidirect_product":
        for k in ("normal", "acting", "action"):
            if k not in desc:
                raise DescriptorError(f"semidirect_product descriptor is missing {k}")
        N = build(desc["normal"], base_dir=base_dir, max_order=max_order)
        H = build(desc["acting"], base_dir=base_dir, max_order=max_order)
        try:
            images = tuple(tuple(int(x) for x in row) for row in desc["action"])
        except (TypeError, ValueError):
            raise DescriptorError("action must be a list of permutations (lists of ints)") from None
        return C.semidirect_product(N, H, C.ActionTable(H, N, images), max_order=max_order)
    if kind == "cayley_file":
        if "path" not in desc:
            raise DescriptorError("cayley_file descriptor is missing path")
        path = Path(desc["path"])
        if base_dir is not None and not path.is_absolute():
            path = Path(base_dir) / path
        try:
            G = read_cayley(path)
        except OSError as exc:
            raise DescriptorError(f"cannot read {path}: {exc.strerror}") from None
        if G.order > max_order:
            raise C.SizeBudgetExceeded(f"group of order {G.order} exceeds the size budget {max_order}")
        return G
    raise DescriptorError(f"unknown descriptor kind {kind!r}; expected one of {', '.join(KINDS)}")


@dataclass
class CatalogSpec:
    entries: list[tuple[str, dict]]
    max_order: int = C.DEFAULT_MAX_ORDER
    max_lattice: int = DEFAULT_MAX_LATTICE
    base_dir: Path | None = None

    def __post_init__(self):
        names = [n for n, _ in self.entries]
        dupes = sorted({n for n in names if names.count(n) > 1})
        if dupes:
            raise DescriptorError(f"duplicate catalog names: {', '.join(dupes)}")


def parse_catalog(data: dict, base_dir: Path | None = None) -> CatalogSpec:
    if not isinstance(data, dict) or not isinstance(data.get("entries"), list):
        raise DescriptorError("catalog must be an object with an 'entries' list")
    entries = []
    for e in data["entries"]:
        if not isinstance(e, dict) or "name" not in e or "descriptor" not in e:
            raise DescriptorError(f"catalog entry needs 'name' and 'descriptor': {e!r}")
        entries.append((str(e["name"]), e["descriptor"]))
    return CatalogSpec(
        entries,
        max_order=int(data.get("max_order", C.DEFAULT_MAX_ORDER)),
        max_lattice=int(data.get("max_lattice", DEFAULT_MAX_LATTICE)),
        base_dir=base_dir,
    )


def load_catalog(path: str | Path) -> CatalogSpec:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except OSError as exc:
        raise DescriptorError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise DescriptorError(f"{path} is not valid JSON: {exc}") from None
    return parse_catalog(data, path.parent)


def default_catalog() -> CatalogSpec:
    text = resources.files("phigroups").joinpath("data/default_catalog.json").read_text()
    return parse_catalog(json.loads(text))


def build_catalog(spec: CatalogSpec) -> list[tuple[str, GroupTable]]:
    return [(n, build(d, base_dir=spec.base_dir, max_order=spec.max_order)) for n, d in spec.entries]


@dataclass
class EntryResult:
    name: str
    record: dict
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems


def check_group(name: str, G: GroupTable, max_lattice: int = DEFAULT_MAX_LATTICE) -> EntryResult:
    """Run every verification that applies to G."""
    L = all_subgroups(G, max_lattice=max_lattice)
    verdict = verify_theorem(G, L)
    nil_sections = is_nilpotent_sections(G, L)
    record = {
        "name": name,
        "order": G.order,
        "exp": G.exponent,
        "phi": G.phi,
        "spectrum": {str(k): v for k, v in G.spectrum.counts.items()},
        "subgroups": len(L),
        "verdict": verdict.to_dict(),
        "nilpotent_sections": nil_sections,
        "lemma21": None,
        "schmidt": None,
        "lemma22": None,
    }
    res = EntryResult(name, record)
    if not verdict.agrees:
        w = verdict.cond2_witness
        detail = f" (cond2 witness phi {w.phi_H} vs {w.phi_K})" if w else ""
        res.problems.append(f"{name}: theorem disagreement, cond2={verdict.cond2} classified={verdict.classified}{detail}")
    if nil_sections != verdict.nilpotent:
        res.problems.append(f"{name}: nilpotency tests disagree (lcs={verdict.nilpotent}, sections={nil_sections})")
    if len(verdict.sylow_shapes) <= 1:
        record["lemma21"] = lemma21_check(G, L)
        if not record["lemma21"]:
            res.problems.append(f"{name}: p-group check fails: condition (2) does not match the cyclic/Q8/Z_p x Z_p shape test")
    if is_schmidt(G, L):
        rep = schmidt_structure_report(G, L)
        record["schmidt"] = rep.to_dict()
        if not rep.all_clauses:
            res.problems.append(f"{name}: Schmidt clauses fail: {', '.join(rep.failed_clauses())}")
        try:
            probe = lemma22_case_probe(G, L)
        except NotApplicable:
            probe = None
        if probe is not None:
            record["lemma22"] = probe.to_dict()
            if not probe.contradiction:
                res.problems.append(f"{name}: Schmidt case {probe.case} probe found no contradiction")
    record["ok"] = res.ok
    record["problems"] = res.problems
    return res


def _check_entry(args) -> EntryResult:
    name, desc, base_dir, max_order, max_lattice = args
    G = build(desc, base_dir=base_dir, max_order=max_order)
    return check_group(name, G, max_lattice)


def verify_catalog(spec: CatalogSpec, parallel: int = 1) -> list[EntryResult]:
    """Check every catalog entry; results come back in catalog order."""
    jobs = [(n, d, spec.base_dir, spec.max_order, spec.max_lattice) for n, d in spec.entries]
    if parallel <= 1:
        return [_check_entry(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=parallel) as pool:
        return list(pool.map(_check_entry, jobs))


TSV_COLUMNS = ("name", "order", "exp", "phi", "cond1", "cond2", "nilpotent", "shapes", "classified", "agrees")


def _flag(b: bool) -> str:
    return "true" if b else "false"


def summary_tsv(results: list[EntryResult]) -> str:
    lines = ["\t".join(TSV_COLUMNS)]
    for r in results:
        rec, v = r.record, r.record["verdict"]
        shapes = ",".join(f"{p}:{s}" for p, s in v["sylow_shapes"].items()) or "-"
        lines.append(
            "\t".join(
                [
                    rec["name"],
                    str(rec["order"]),
                    str(rec["exp"]),
                    str(rec["phi"]),
                    _flag(v["cond1"]),
                    _flag(v["cond2"]),
                    _flag(v["nilpotent"]),
                    shapes,
                    _flag(v["classified"]),
                    _flag(v["agrees"]),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def write_reports(results: list[EntryResult], out_dir: str | Path) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "summary.tsv").write_text(summary_tsv(results))
    (out / "report.json").write_text(json.dumps([r.record for r in results], indent=2) + "\n")
    hits = [
        r.name
        for r in results
        if r.record["verdict"]["cond1"] and not r.record["verdict"]["nilpotent"]
    ]
    (out / "nonnilpotent_cond1.json").write_text(json.dumps(hits) + "\n")

