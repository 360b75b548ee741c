"""Finitely generated modules over finite rings: relation modules, Hom enumeration,
projectivity, quasi-projectivity and invertibility of ideals."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .constructions import localize
from .errors import CapExceeded, KernelError
from .ideals import Ideal, all_ideals, ideal_generated, ideal_product, maximal_ideals, minimal_generators, unit_ideal
from .ring import FiniteRing
from .structure import units_mask, zero_divisor_mask

MAX_GENERATORS = 3
MAX_RING_SIZE = 64
MAX_CANDIDATES = 4_000_000
SPLIT_CROSS_CHECK_LIMIT = 64


def _check_caps(R: FiniteRing, k: int) -> None:
    if k > MAX_GENERATORS and R.size > MAX_RING_SIZE:
        raise CapExceeded(
            f"{k} generators over a ring of size {R.size} (caps: {MAX_GENERATORS} generators above size {MAX_RING_SIZE})"
        )
    if R.size**k > MAX_CANDIDATES:
        raise CapExceeded(f"coefficient scan of size {R.size}^{k} exceeds {MAX_CANDIDATES}")


class SubquotientModule:
    """``J/K`` for ideals ``K ⊆ J`` of the same ring; cosets are named by their least element."""

    def __init__(self, numerator: Ideal, denominator: Ideal | None = None):
        R = numerator.ring
        if denominator is None:
            denominator = Ideal(R, np.eye(1, R.size, R.zero, dtype=bool)[0])
        if not denominator <= numerator:
            raise ValueError("denominator must be contained in numerator")
        self.numerator = numerator
        self.denominator = denominator
        self.ring = R
        rep = R.add[:, denominator.elements].min(axis=1)
        self.rep = rep
        self.reps = np.unique(rep[numerator.elements])

    def __len__(self) -> int:
        return int(self.reps.size)

    def __repr__(self) -> str:
        return f"{self.numerator.gens_text()}/{self.denominator.gens_text()}"


@dataclass(frozen=True)
class ModuleMap:
    """A module map determined by the images (coset representatives) of generators."""

    source: SubquotientModule
    target: SubquotientModule
    generators: tuple[int, ...]
    images: tuple[int, ...]

    def describe(self) -> dict[str, str]:
        R = self.source.ring
        return {R.fmt(g): R.fmt(h) for g, h in zip(self.generators, self.images)}

    def is_well_defined(self) -> bool:
        """Every relation on the generators (modulo the source denominator) maps into the target denominator."""
        R = self.source.ring
        rels = relation_vectors(R, list(self.generators), self.source.denominator.mask)
        h = np.array(self.images, dtype=np.int64)
        acc = np.full(len(rels), R.zero)
        for i in range(len(h)):
            acc = R.add[acc, R.mul[rels[:, i], h[i]]]
        return bool(np.all(self.target.denominator.mask[acc]))


# -- relations ---------------------------------------------------------------


def _combination_table(R: FiniteRing, gens: list[int]) -> np.ndarray:
    """``S[r1, ..., rk] = sum r_i g_i``."""
    _check_caps(R, len(gens))
    S = R.mul[:, gens[0]]
    for g in gens[1:]:
        S = R.add[S[..., None], R.mul[:, g]]
    return S


def relation_vectors(R: FiniteRing, gens: list[int], target_mask: np.ndarray) -> np.ndarray:
    """All ``r`` in ``R^k`` with ``sum r_i g_i`` in the target set, in lexicographic order."""
    if not gens:
        return np.zeros((1, 0), dtype=np.int64)
    return np.argwhere(target_mask[_combination_table(R, gens)])


def _codes(v: np.ndarray, n: int) -> np.ndarray:
    weights = n ** np.arange(v.shape[1], dtype=np.int64)
    return v.astype(np.int64) @ weights


def relation_generators(R: FiniteRing, gens: list[int], target_mask: np.ndarray) -> np.ndarray:
    """A small generating set of the relation submodule, chosen greedily in lex order."""
    vecs = relation_vectors(R, gens, target_mask)
    k = len(gens)
    if k == 0:
        return np.zeros((0, 0), dtype=np.int64)
    n = R.size
    zero = np.full((1, k), R.zero, dtype=np.int64)
    span = zero
    span_codes = set(_codes(span, n).tolist())
    chosen = []
    for v, code in zip(vecs, _codes(vecs, n).tolist()):
        if len(span_codes) == len(vecs):
            break
        if code in span_codes:
            continue
        chosen.append(v)
        multiples = np.unique(R.mul[:, v], axis=0)
        cols = [R.add[span[:, i][:, None], multiples[:, i][None, :]].ravel() for i in range(k)]
        span = np.unique(np.stack(cols, axis=1), axis=0)
        span_codes = set(_codes(span, n).tolist())
    return np.array(chosen, dtype=np.int64).reshape(-1, k)


def _satisfies(R: FiniteRing, rels: np.ndarray, cands: np.ndarray, target_mask: np.ndarray) -> np.ndarray:
    ok = np.ones(len(cands), dtype=bool)
    for rho in rels:
        acc = np.full(len(cands), R.zero)
        for i, r in enumerate(rho):
            acc = R.add[acc, R.mul[r, cands[:, i]]]
        ok &= target_mask[acc]
    return ok


def _grid(values: np.ndarray, k: int) -> np.ndarray:
    if len(values) ** k > MAX_CANDIDATES:
        raise CapExceeded(f"{len(values)}^{k} candidate image tuples exceed {MAX_CANDIDATES}")
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    mesh = np.meshgrid(*([values] * k), indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def hom_module(source: SubquotientModule, target: SubquotientModule) -> list[ModuleMap]:
    """Every module map ``source -> target``."""
    R = source.ring
    if target.ring is not R:
        raise ValueError("modules over different rings")
    gens = list(source.numerator.generators)
    rels = relation_generators(R, gens, source.denominator.mask)
    cands = _grid(target.reps, len(gens))
    ok = _satisfies(R, rels, cands, target.denominator.mask)
    return [ModuleMap(source, target, tuple(gens), tuple(int(x) for x in row)) for row in cands[ok]]


# -- quasi-projectivity --------------------------------------------------------


@dataclass
class QuasiProjectivity:
    holds: bool
    witness: tuple[Ideal, ModuleMap] | None = None
    subideals_checked: int = 0

    def __bool__(self) -> bool:
        return self.holds


def endomorphism_tuples(J: Ideal) -> np.ndarray:
    """Generator images of every endomorphism of ``J``."""
    R = J.ring

    def build():
        gens = list(J.generators)
        rels = relation_generators(R, gens, np.eye(1, R.size, R.zero, dtype=bool)[0])
        cands = _grid(J.elements, len(gens))
        return gens, rels, cands[_satisfies(R, rels, cands, np.eye(1, R.size, R.zero, dtype=bool)[0])]

    return R.memo(("endomorphisms", J.bits), build)


def is_quasi_projective(J: Ideal) -> QuasiProjectivity:
    """Every map ``J -> J/K`` lifts to an endomorphism of ``J``, for every subideal ``K``."""
    R = J.ring
    if J.is_zero:
        return QuasiProjectivity(True)
    gens, rels, ends = endomorphism_tuples(J)
    checked = 0
    for K in all_ideals(R):
        if not K <= J or K == J or K.is_zero:
            continue  # K = 0 and K = J always lift
        checked += 1
        quot = SubquotientModule(J, K)
        homs = _grid(quot.reps, len(gens))
        homs = homs[_satisfies(R, rels, homs, K.mask)]
        lifted = np.unique(quot.rep[ends], axis=0)
        if len(lifted) < len(homs):
            lifted_codes = set(_codes(lifted, R.size).tolist())
            for row, code in zip(homs, _codes(homs, R.size).tolist()):
                if code not in lifted_codes:
                    f = ModuleMap(SubquotientModule(J), quot, tuple(gens), tuple(int(x) for x in row))
                    return QuasiProjectivity(False, (K, f), checked)
    return QuasiProjectivity(True, None, checked)


def lifts(f: ModuleMap) -> bool:
    """Independent re-check of a single map ``J -> J/K``: is it the reduction of some endomorphism?"""
    J = f.source.numerator
    K = f.target.denominator
    R = J.ring
    gens = list(f.generators)
    cands = _grid(J.elements, len(gens))
    zero = np.eye(1, R.size, R.zero, dtype=bool)[0]
    rels = relation_vectors(R, gens, zero)
    ends = cands[_satisfies(R, rels, cands, zero)]
    diffs = R.add[ends, R.neg[np.array(f.images, dtype=np.int64)][None, :]]
    return bool(np.any(np.all(K.mask[diffs], axis=1)))


# -- projectivity -----------------------------------------------------------------


@dataclass
class SplitResult:
    found: bool
    splitting: list[tuple[int, ...]] | None = None


def splitting_search(J: Ideal) -> SplitResult:
    """Search for a section of ``R^k -> J`` (``k`` = minimal generator count).

    ``splitting[j]`` lists the values of the j-th coordinate map on the generators.
    """
    R = J.ring
    gens = list(J.generators)
    k = len(gens)
    if k == 0:
        return SplitResult(True, [])
    zero = np.eye(1, R.size, R.zero, dtype=bool)[0]
    rels = relation_generators(R, gens, zero)
    cands = _grid(np.arange(R.size), k)
    dual = cands[_satisfies(R, rels, cands, zero)]  # maps J -> R by generator values
    target = np.array(gens, dtype=np.int64)
    n = R.size
    # partial sums sum_{j<=t} (c^(j)_i g_j)_i, deduplicated, with back-pointers
    layers: list[dict[int, tuple[int, int]]] = []
    current = {int(_codes(np.full((1, k), R.zero), n)[0]): (-1, -1)}
    vecs = {next(iter(current)): np.full(k, R.zero)}
    for j in range(k):
        contrib = R.mul[dual, gens[j]]  # rows: (c_i g_j)_i
        nxt: dict[int, tuple[int, int]] = {}
        nvecs: dict[int, np.ndarray] = {}
        for code, v in vecs.items():
            sums = R.add[v[None, :], contrib]
            for row_index, (s, sc) in enumerate(zip(sums, _codes(sums, n).tolist())):
                if sc not in nxt:
                    nxt[sc] = (code, row_index)
                    nvecs[sc] = s
        layers.append(nxt)
        vecs = nvecs
    goal = int(_codes(target[None, :], n)[0])
    if goal not in vecs:
        return SplitResult(False)
    coords = []
    code = goal
    for j in reversed(range(k)):
        prev, row = layers[j][code]
        coords.append(tuple(int(x) for x in dual[row]))
        code = prev
    return SplitResult(True, list(reversed(coords)))


@dataclass
class Projectivity:
    holds: bool
    certificate: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.holds


def locally_free(J: Ideal) -> tuple[bool, list[dict[str, Any]]]:
    """``J_m`` free over ``R_m`` for every maximal ``m``, via ``|J_m| = |R_m|^mu``."""
    R = J.ring
    rows = []
    ok = True
    for m in maximal_ideals(R):
        loc, phi = localize(R, m)
        L = loc.ring
        Jm = ideal_generated(L, [phi(g) for g in J.generators])
        mu = len(minimal_generators(Jm))
        free = Jm.size == L.size**mu
        ok &= free
        rows.append({"maximal": m.gens_text(), "local_size": L.size, "ideal_size": Jm.size, "mu": mu, "free": free})
    return ok, rows


def is_projective(J: Ideal, cross_check: bool | None = None) -> Projectivity:
    """Projectivity by local freeness, cross-checked by a splitting search on small rings."""
    R = J.ring
    holds, rows = locally_free(J)
    cert: dict[str, Any] = {"method": "locally-free", "localizations": rows}
    if cross_check is None:
        cross_check = R.size <= SPLIT_CROSS_CHECK_LIMIT
    if cross_check:
        split = splitting_search(J)
        if split.found != holds:
            raise KernelError(f"projectivity methods disagree on {J!r}: local={holds} split={split.found}")
        cert["splitting"] = split.splitting if split.found else None
    cert["cross_checked"] = bool(cross_check)
    return Projectivity(holds, cert)


@dataclass
class Invertibility:
    holds: bool
    certificate: dict[str, Any]

    def __bool__(self) -> bool:
        return self.holds


def is_invertible(J: Ideal) -> Invertibility:
    """``J J^{-1} = R`` with ``J^{-1} = {x in Q(R) : xJ ⊆ R}``.

    In a finite ring every regular element is a unit, so ``Q(R) = R`` and
    ``J^{-1} = R``; hence ``J`` is invertible exactly when ``J = R``.
    """
    R = J.ring
    regular = ~zero_divisor_mask(R)
    if not np.all(units_mask(R)[regular]):
        raise KernelError(f"a regular non-unit exists in the finite ring {R.descriptor}")
    reg_in_J = np.flatnonzero(regular & J.mask)
    inverse = unit_ideal(R)  # every x in Q(R) = R satisfies xJ ⊆ R
    prod = ideal_product(J, inverse)
    holds = bool(reg_in_J.size) and prod.is_unit
    cert = {
        "total_quotient_ring": "R (regular elements are units)",
        "regular_element": R.fmt(int(reg_in_J[0])) if reg_in_J.size else None,
        "inverse": "R",
        "product_is_unit_ideal": prod.is_unit,
    }
    return Invertibility(holds, cert)
