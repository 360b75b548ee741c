"""Corpus runs: every theorem check over a family of ``(A, I)`` pairs, aggregated deterministically."""

from __future__ import annotations

import json
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .conditions import hierarchy_check
from .constructions import TableCache, make_amalgamation
from .errors import AmalgamError, CapExceeded, ParseError
from .ideals import DEFAULT_MAX_IDEALS, Ideal, all_ideals, ideal_from_text
from .parser import parse_ideal, parse_ring_expr, resolve
from .ring import DEFAULT_MAX_SIZE, FiniteRing
from .theorems import THEOREMS, TheoremCheck, applicable, fqp_product_stability, run_theorem

REPORT_FORMAT = "conditions-report v1"
ALL_CHECKS = THEOREMS + ("fqp_product",)
PRODUCT_FACTOR_MAX = 16


@dataclass
class CorpusSpec:
    family: str = "zmod"  # zmod | list
    nmin: int = 2
    nmax: int = 16
    rings: list[str] = field(default_factory=list)
    ideals: str = "all"  # all | principal | sampled | listed
    pairs: list[tuple[str, str]] = field(default_factory=list)
    theorems: tuple[str, ...] = ALL_CHECKS
    max_ring_size: int = DEFAULT_MAX_SIZE
    max_ideals: int = DEFAULT_MAX_IDEALS
    sample_size: int = 3
    seed: int = 0
    hierarchy: bool = True

    def __post_init__(self):
        if self.family not in ("zmod", "list"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.ideals not in ("all", "principal", "sampled", "listed"):
            raise ValueError(f"unknown ideal policy {self.ideals!r}")
        unknown = set(self.theorems) - set(ALL_CHECKS)
        if unknown:
            raise ValueError(f"unknown theorems {sorted(unknown)}")
        if self.max_ring_size < 1 or self.max_ideals < 1:
            raise ValueError("caps must be positive")
        self.theorems = tuple(self.theorems)
        self.pairs = [tuple(p) for p in self.pairs]

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "CorpusSpec":
        data = dict(data)
        caps = data.pop("caps", {}) or {}
        known = {"family", "nmin", "nmax", "rings", "ideals", "pairs", "theorems", "sample_size", "seed", "hierarchy"}
        extra = set(data) - known
        if extra:
            raise ValueError(f"unknown corpus fields {sorted(extra)}")
        if "theorems" in data and data["theorems"] == "all":
            data["theorems"] = ALL_CHECKS
        return cls(
            **data,
            max_ring_size=caps.get("max_ring_size", DEFAULT_MAX_SIZE),
            max_ideals=caps.get("max_ideals", DEFAULT_MAX_IDEALS),
        )


def load_corpus(path: str | Path) -> CorpusSpec:
    return CorpusSpec.from_dict(json.loads(Path(path).read_text()))


def default_corpus() -> CorpusSpec:
    return CorpusSpec()


@dataclass
class CorpusReport:
    entries: list[dict[str, Any]]
    hierarchy: list[dict[str, Any]]
    errors: list[dict[str, Any]]
    skipped: int = 0

    @property
    def mismatches(self) -> list[dict[str, Any]]:
        return [e for e in self.entries if not e["agree"]]

    @property
    def hierarchy_violations(self) -> list[dict[str, Any]]:
        return [h for h in self.hierarchy if not h["holds"]]

    @property
    def flags(self) -> list[dict[str, Any]]:
        return [{"pair": e["pair"], "condition": e["condition"], "flags": e["flags"]} for e in self.entries if e["flags"]]

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.hierarchy_violations

    def to_dict(self, timings: bool = False) -> dict[str, Any]:
        summary: dict[str, Any] = {
            "checks": len(self.entries),
            "mismatches": len(self.mismatches),
            "hierarchy_rings": len(self.hierarchy),
            "hierarchy_violations": len(self.hierarchy_violations),
            "errors": len(self.errors),
            "skipped": self.skipped,
            "flagged": self.flags,
        }
        if timings:
            summary["elapsed_ms"] = round(sum(e["elapsed_ms"] or 0 for e in self.entries), 3)
        else:
            for e in self.entries:
                e["elapsed_ms"] = None
        return {
            "format": REPORT_FORMAT,
            "entries": self.entries,
            "hierarchy": self.hierarchy,
            "errors": self.errors,
            "summary": summary,
        }


def _ideals_for(A: FiniteRing, spec: CorpusSpec) -> list[Ideal]:
    proper = [I for I in all_ideals(A, spec.max_ideals) if I.is_proper]
    if spec.ideals == "all":
        return proper
    if spec.ideals == "principal":
        return [I for I in proper if len(I.generators) <= 1]
    if spec.ideals == "sampled":
        rng = random.Random(f"{spec.seed}:{A.descriptor}")
        return sorted(rng.sample(proper, min(spec.sample_size, len(proper))), key=lambda I: I.sort_key())
    return []


def _bases(spec: CorpusSpec, cache, errors: list | None = None) -> list[FiniteRing]:
    texts = [f"Z/{n}" for n in range(spec.nmin, spec.nmax + 1)] if spec.family == "zmod" else []
    texts += spec.rings
    out = []
    for t in texts:
        try:
            out.append(resolve(parse_ring_expr(t), max_size=spec.max_ring_size, cache=cache))
        except AmalgamError as exc:
            if errors is not None:
                errors.append({"pair": {"A": t, "I": None}, "error": type(exc).__name__, "message": str(exc)})
    return out


def corpus_pairs(spec: CorpusSpec, cache=None) -> tuple[list[tuple[FiniteRing, Ideal]], list[dict[str, Any]]]:
    """``(A, I)`` pairs in corpus order, plus per-pair construction errors."""
    pairs: list[tuple[FiniteRing, Ideal]] = []
    errors: list[dict[str, Any]] = []
    for A in _bases(spec, cache, errors):
        try:
            pairs.extend((A, I) for I in _ideals_for(A, spec))
        except AmalgamError as exc:
            errors.append({"pair": {"A": str(A.descriptor), "I": None}, "error": type(exc).__name__, "message": str(exc)})
    for a_text, i_text in spec.pairs:
        try:
            A = resolve(parse_ring_expr(a_text), max_size=spec.max_ring_size, cache=cache)
            I = ideal_from_text(A, parse_ideal(i_text))
            pairs.append((A, I))
        except (AmalgamError, ParseError) as exc:
            errors.append({"pair": {"A": a_text, "I": i_text}, "error": type(exc).__name__, "message": str(exc)})
    seen = set()
    unique = []
    for A, I in pairs:
        key = (str(A.descriptor), I.bits)
        if key not in seen:
            seen.add(key)
            unique.append((A, I))
    return unique, errors


def product_factors(bases: list[FiniteRing], pairs: list[tuple[FiniteRing, Ideal]]) -> list[FiniteRing]:
    """Corpus rings (bases and nontrivial duplications) of size at most ``PRODUCT_FACTOR_MAX``."""
    out: dict[str, FiniteRing] = {}
    for A in bases:
        if A.size <= PRODUCT_FACTOR_MAX:
            out.setdefault(str(A.descriptor), A)
    for A, I in pairs:
        if not I.is_zero and A.size * I.size <= PRODUCT_FACTOR_MAX:
            R = make_amalgamation(A, I)
            out.setdefault(str(R.descriptor), R)
    return list(out.values())


def _sort_key(entry: dict[str, Any]) -> tuple:
    pair = entry["pair"]
    second = pair.get("I", pair.get("B"))
    return (entry["condition"] == "fqp_product", pair["A"], str(second), entry["condition"])


def run_corpus(spec: CorpusSpec, workers: int = 1, cache_dir: str | None = None) -> CorpusReport:
    """Run every applicable check; caps and other failures are recorded per pair."""
    cache = TableCache(cache_dir) if cache_dir else None
    pairs, errors = corpus_pairs(spec, cache)
    tasks: list[tuple] = []
    skipped = 0
    for A, I in pairs:
        for th in spec.theorems:
            if th == "fqp_product":
                continue
            if applicable(th, A, I):
                tasks.append(("theorem", th, A, I))
            else:
                skipped += 1
    if "fqp_product" in spec.theorems:
        factors = product_factors(_bases(spec, cache) + [A for A, _ in pairs], pairs)
        for i in range(len(factors)):
            for j in range(i, len(factors)):
                tasks.append(("product", "fqp_product", factors[i], factors[j]))

    def run(task):
        kind, th, x, y = task
        try:
            size = x.size * (y.size if kind == "product" else len(y))
            if size > spec.max_ring_size:
                raise CapExceeded(f"ring of size {size} exceeds the size cap {spec.max_ring_size}")
            check: TheoremCheck = run_theorem(th, x, y) if kind == "theorem" else fqp_product_stability(x, y)
            return check.to_dict(timings=True), None
        except AmalgamError as exc:
            second = y.gens_text() if kind == "theorem" else str(y.descriptor)
            return None, {"pair": {"A": str(x.descriptor), "I" if kind == "theorem" else "B": second},
                          "condition": th, "error": type(exc).__name__, "message": str(exc)}

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(run, tasks))
    else:
        results = [run(t) for t in tasks]
    entries = sorted((r for r, _ in results if r is not None), key=_sort_key)
    errors += [e for _, e in results if e is not None]

    hierarchy = []
    if spec.hierarchy:
        rings: dict[str, FiniteRing] = {}
        for A, I in pairs:
            rings.setdefault(str(A.descriptor), A)
            if A.size * len(I) <= spec.max_ring_size:
                R = make_amalgamation(A, I)
                rings.setdefault(str(R.descriptor), R)
        for name in sorted(rings):
            try:
                res = hierarchy_check(rings[name], strict=False)
            except AmalgamError as exc:
                errors.append({"ring": name, "condition": "hierarchy", "error": type(exc).__name__, "message": str(exc)})
                continue
            hierarchy.append(
                {
                    "ring": name,
                    "size": rings[name].size,
                    "condition": "hierarchy",
                    "holds": res.monotone,
                    "pattern": res.pattern(),
                    "violations": [list(v) for v in res.violations],
                }
            )
    return CorpusReport(entries, hierarchy, errors, skipped)
