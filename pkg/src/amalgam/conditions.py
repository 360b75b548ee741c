"""Definitional decision procedures for the Prüfer-type conditions on finite rings."""

from __future__ import annotations

import functools
import math
import time
from dataclasses import dataclass
from itertools import product

import numpy as np

from .constructions import localize
from .errors import HierarchyViolation, KernelError, NotLocal
from .ideals import Ideal, all_ideals, closure_mask, ideal_product, maximal_ideals, principal_masks, spectrum
from .modules import is_invertible, is_projective, is_quasi_projective
from .ring import FiniteRing
from .structure import is_local, nilpotent_mask, units_mask, zero_divisor_mask
from .verdict import ConditionVerdict

HIERARCHY = ("semihereditary", "wdim_le1", "arithmetical", "fqp", "gaussian", "pruefer")
WDIM_INFINITY = math.inf


def _timed(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        verdict = fn(*args, **kwargs)
        verdict.elapsed = time.perf_counter() - t0
        return verdict

    return wrapper


def _require_local(R: FiniteRing) -> None:
    if not is_local(R):
        raise NotLocal(f"{R.descriptor} is not local")


def _localizations(R: FiniteRing, primes: bool = False):
    ideals = spectrum(R).primes if primes else maximal_ideals(R)
    for m in ideals:
        loc, _ = localize(R, m)
        yield m, loc.ring


# -- chained / arithmetical ------------------------------------------------------


def incomparable_pair(R: FiniteRing) -> tuple[int, int] | None:
    P = principal_masks(R)
    bad = np.argwhere(~(P | P.T))
    return (int(bad[0][0]), int(bad[0][1])) if bad.size else None


@_timed
def check_chained(R: FiniteRing) -> ConditionVerdict:
    """Principal ideals (hence all ideals) of a local ring form a chain."""
    _require_local(R)
    pair = incomparable_pair(R)
    witness = None if pair is None else {"pair": [R.fmt(pair[0]), R.fmt(pair[1])]}
    return ConditionVerdict("chained", pair is None, "oracle", witness)


@_timed
def check_arithmetical(R: FiniteRing) -> ConditionVerdict:
    for m, L in _localizations(R):
        pair = incomparable_pair(L)
        if pair is not None:
            return ConditionVerdict(
                "arithmetical", False, "oracle", {"maximal": m.gens_text(), "pair": [L.fmt(pair[0]), L.fmt(pair[1])]}
            )
    return ConditionVerdict("arithmetical", True, "oracle")


# -- Gaussian ---------------------------------------------------------------------


def gaussian_pair_failures(R: FiniteRing) -> np.ndarray:
    """Pairs ``(a, b)``, ``a <= b``, violating the local Gaussian pair criterion, in lex order.

    The criterion: ``(a,b)^2`` equals ``(a^2)`` or ``(b^2)``, and when ``ab = 0`` the
    square of the element whose square does not generate is zero.
    """
    P = principal_masks(R)
    n = R.size
    a, b = np.triu_indices(n)
    a2, b2, ab = R.mul[a, a], R.mul[b, b], R.mul[a, b]
    by_a2 = P[a2, ab] & P[a2, b2]  # (a,b)^2 = (a^2)
    by_b2 = P[b2, ab] & P[b2, a2]
    zero = R.zero
    ok = (by_a2 | by_b2) & ~((ab == zero) & ((by_a2 & (b2 != zero)) | (by_b2 & (a2 != zero))))
    return np.stack([a[~ok], b[~ok]], axis=1)


def pair_criterion_holds(R: FiniteRing, a: int, b: int) -> bool:
    """Direct single-pair evaluation through ideal generation (used to re-validate witnesses)."""
    sq = Ideal(R, closure_mask(R, [R.mul[a, a], R.mul[a, b], R.mul[b, b]]))
    sa = Ideal(R, closure_mask(R, [R.mul[a, a]]))
    sb = Ideal(R, closure_mask(R, [R.mul[b, b]]))
    if sq != sa and sq != sb:
        return False
    if R.mul[a, b] == R.zero:
        if sq == sa and R.mul[b, b] != R.zero:
            return False
        if sq == sb and R.mul[a, a] != R.zero:
            return False
    return True


@_timed
def check_gaussian_local(R: FiniteRing) -> ConditionVerdict:
    _require_local(R)
    bad = gaussian_pair_failures(R)
    if bad.size:
        a, b = map(int, bad[0])
        return ConditionVerdict("gaussian", False, "oracle", {"pair": [R.fmt(a), R.fmt(b)]})
    return ConditionVerdict("gaussian", True, "oracle")


@_timed
def check_gaussian(R: FiniteRing) -> ConditionVerdict:
    """Gaussian is a local property: test the pair criterion at every maximal ideal."""
    for m, L in _localizations(R):
        bad = gaussian_pair_failures(L)
        if bad.size:
            a, b = map(int, bad[0])
            return ConditionVerdict("gaussian", False, "oracle", {"maximal": m.gens_text(), "pair": [L.fmt(a), L.fmt(b)]})
    return ConditionVerdict("gaussian", True, "oracle")


@dataclass(frozen=True)
class Polynomial:
    """Polynomial over a finite ring; ``coeffs[i]`` multiplies ``x^i``."""

    ring: FiniteRing
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == self.ring.zero:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        R = self.ring
        if not self.coeffs or not other.coeffs:
            return Polynomial(R, ())
        out = [R.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = int(R.add[out[i + j], R.mul[a, b]])
        return Polynomial(R, tuple(out))

    def content(self) -> Ideal:
        return Ideal(self.ring, closure_mask(self.ring, self.coeffs))

    def text(self) -> str:
        return "[" + ",".join(self.ring.fmt(c) for c in self.coeffs) + "]"


@dataclass(frozen=True)
class ContentViolation:
    f: Polynomial
    g: Polynomial
    content_of_product: Ideal
    product_of_contents: Ideal


def content_multiplicative(f: Polynomial, g: Polynomial) -> bool:
    return (f * g).content() == ideal_product(f.content(), g.content())


def gaussian_content_sampler(
    R: FiniteRing, max_degree: int, budget: int = 20000, seed: int = 0, coefficients=None
) -> ContentViolation | None:
    """Search for ``f, g`` with ``c(fg) != c(f)c(g)``.

    Exhaustive over all pairs when there are at most ``budget`` of them, otherwise
    ``budget`` pairs drawn with a fixed seed. Finding nothing certifies nothing.
    """
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    pool = list(range(R.size)) if coefficients is None else [int(c) for c in coefficients]
    count = len(pool) ** (max_degree + 1)
    contents: dict[tuple, Ideal] = {}
    products: dict[tuple[int, int], int] = {}

    def content(p: Polynomial) -> Ideal:
        c = contents.get(p.coeffs)
        if c is None:
            c = contents[p.coeffs] = p.content()
        return c

    def test(fc, gc):
        f, g = Polynomial(R, fc), Polynomial(R, gc)
        cf, cg = content(f), content(g)
        key = (cf.bits, cg.bits)
        if key not in products:
            products[key] = ideal_product(cf, cg).bits
        cfg = content(f * g)
        if cfg.bits != products[key]:
            return ContentViolation(f, g, cfg, ideal_product(cf, cg))
        return None

    if count * (count + 1) // 2 <= budget:
        polys = list(product(pool, repeat=max_degree + 1))
        for i, fc in enumerate(polys):
            for gc in polys[i:]:
                found = test(fc, gc)
                if found:
                    return found
        return None
    rng = np.random.default_rng(seed)
    draws = rng.choice(len(pool), size=(budget, 2, max_degree + 1))
    for fi, gi in draws:
        found = test(tuple(pool[k] for k in fi), tuple(pool[k] for k in gi))
        if found:
            return found
    return None


# -- fqp ------------------------------------------------------------------------------


@_timed
def check_fqp(R: FiniteRing) -> ConditionVerdict:
    """Every (finitely generated) ideal is quasi-projective."""
    for J in all_ideals(R):
        qp = is_quasi_projective(J)
        if not qp:
            K, f = qp.witness
            return ConditionVerdict(
                "fqp", False, "oracle", {"ideal": J.gens_text(), "subideal": K.gens_text(), "map": f.describe()}
            )
    return ConditionVerdict("fqp", True, "oracle")


# -- Prüfer ------------------------------------------------------------------------------


@_timed
def check_pruefer(R: FiniteRing) -> ConditionVerdict:
    """Every regular ideal is invertible.

    Regular elements of a finite ring are units, so only the unit ideal is regular and
    the verdict is always true; the general test still runs over every ideal.
    """
    regular = ~zero_divisor_mask(R)
    checked = 0
    for J in all_ideals(R):
        if not np.any(regular & J.mask):
            continue
        checked += 1
        inv = is_invertible(J)
        if not inv:
            return ConditionVerdict("pruefer", False, "finite-trivial", {"ideal": J.gens_text(), **inv.certificate})
        if not is_projective(J, cross_check=False):
            raise KernelError(f"invertible ideal {J!r} is not projective")
    return ConditionVerdict("pruefer", True, "finite-trivial", notes={"regular_ideals": checked})


# -- weak dimension / semihereditary -------------------------------------------------------


def _non_field_witness(L: FiniteRing) -> int | None:
    if L.is_zero_ring:
        return L.zero
    bad = np.flatnonzero(~units_mask(L) & (np.arange(L.size) != L.zero))
    return int(bad[0]) if bad.size else None


@_timed
def check_wdim_le1(R: FiniteRing) -> ConditionVerdict:
    """Every localization at a prime is a valuation domain, i.e. (finite case) a field."""
    for p, L in _localizations(R, primes=True):
        x = _non_field_witness(L)
        if x is not None:
            return ConditionVerdict("wdim_le1", False, "oracle", {"prime": p.gens_text(), "element": L.fmt(x)})
    return ConditionVerdict("wdim_le1", True, "oracle")


def classify_wdim_finite(R: FiniteRing) -> float:
    """0 for a finite product of fields (reduced), infinity otherwise."""
    return 0 if int(nilpotent_mask(R).sum()) == 1 else WDIM_INFINITY


@_timed
def check_semihereditary(R: FiniteRing) -> ConditionVerdict:
    """Every ideal is projective; must coincide with ``check_wdim_le1`` on finite rings."""
    verdict = ConditionVerdict("semihereditary", True, "oracle")
    for J in all_ideals(R):
        proj = is_projective(J)
        if not proj:
            bad = [row["maximal"] for row in proj.certificate["localizations"] if not row["free"]]
            verdict = ConditionVerdict("semihereditary", False, "oracle", {"ideal": J.gens_text(), "maximal": bad[0]})
            break
    if verdict.holds != check_wdim_le1(R).holds:
        raise KernelError(f"semihereditary and wdim<=1 disagree on the finite ring {R.descriptor}")
    return verdict


CHECKERS = {
    "semihereditary": check_semihereditary,
    "wdim_le1": check_wdim_le1,
    "arithmetical": check_arithmetical,
    "fqp": check_fqp,
    "gaussian": check_gaussian,
    "pruefer": check_pruefer,
}


@dataclass
class HierarchyResult:
    verdicts: list[ConditionVerdict]
    monotone: bool
    violations: list[tuple[str, str]]

    def pattern(self) -> str:
        return "".join("T" if v.holds else "F" for v in self.verdicts)


def hierarchy_check(R: FiniteRing, strict: bool = True, verdicts: dict[str, ConditionVerdict] | None = None) -> HierarchyResult:
    """Run the six checkers and test the implication chain in ``HIERARCHY`` order."""
    verdicts = dict(verdicts or {})
    ordered = [verdicts.get(name) or CHECKERS[name](R) for name in HIERARCHY]
    violations = [
        (HIERARCHY[i], HIERARCHY[i + 1])
        for i in range(len(ordered) - 1)
        if ordered[i].holds and not ordered[i + 1].holds
    ]
    if violations and strict:
        raise HierarchyViolation(f"{R.descriptor}: {violations}")
    return HierarchyResult(ordered, not violations, violations)


__all__ = [
    "CHECKERS",
    "HIERARCHY",
    "WDIM_INFINITY",
    "ContentViolation",
    "HierarchyResult",
    "Polynomial",
    "check_arithmetical",
    "check_chained",
    "check_fqp",
    "check_gaussian",
    "check_gaussian_local",
    "check_pruefer",
    "check_semihereditary",
    "check_wdim_le1",
    "classify_wdim_finite",
    "content_multiplicative",
    "gaussian_content_sampler",
    "gaussian_pair_failures",
    "hierarchy_check",
    "pair_criterion_holds",
]
