"""Distinguished subsets, locality, and the ideals specific to amalgamated duplications."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constructions import localize, make_amalgamation
from .errors import KernelError, NotAnIdeal, NotPrime
from .ideals import Ideal, ideal_generated, is_ideal_mask, is_prime, maximal_ideals
from .ring import FiniteRing, RingHom
from .verdict import ConditionVerdict


def units_mask(R: FiniteRing) -> np.ndarray:
    return R.memo("units", lambda: np.any(R.mul == R.one, axis=1))


def zero_divisor_mask(R: FiniteRing) -> np.ndarray:
    """``a`` with ``ab = 0`` for some ``b != 0``; contains 0 unless R is the zero ring."""

    def build():
        nonzero = np.arange(R.size) != R.zero
        return np.any((R.mul == R.zero) & nonzero[None, :], axis=1)

    return R.memo("zero_divisors", build)


def nilpotent_mask(R: FiniteRing) -> np.ndarray:
    def build():
        p = np.arange(R.size)
        steps = max(1, int(np.ceil(np.log2(max(R.size, 2)))) + 1)
        for _ in range(steps):
            p = R.mul[p, p]
        return p == R.zero

    return R.memo("nilpotents", build)


@dataclass(frozen=True)
class DistinguishedSets:
    units: frozenset[int]
    zero_divisors: frozenset[int]
    regular: frozenset[int]
    nilradical: Ideal
    jacobson_radical: Ideal


def _set(mask: np.ndarray) -> frozenset[int]:
    return frozenset(np.flatnonzero(mask).tolist())


def jacobson_radical(R: FiniteRing) -> Ideal:
    mask = np.ones(R.size, dtype=bool)
    for m in maximal_ideals(R):
        mask &= m.mask
    return Ideal(R, mask)


def distinguished_sets(R: FiniteRing) -> DistinguishedSets:
    ze = zero_divisor_mask(R)
    return DistinguishedSets(
        units=_set(units_mask(R)),
        zero_divisors=_set(ze),
        regular=_set(~ze),
        nilradical=Ideal(R, nilpotent_mask(R)),
        jacobson_radical=jacobson_radical(R),
    )


@dataclass(frozen=True)
class LocalResult:
    local: bool
    maximal: Ideal | None
    degenerate: bool = False

    def __bool__(self) -> bool:
        return self.local


def is_local(R: FiniteRing) -> LocalResult:
    if R.is_zero_ring:
        return LocalResult(True, None, degenerate=True)
    maxs = maximal_ideals(R)
    if len(maxs) == 1:
        return LocalResult(True, maxs[0])
    return LocalResult(False, None)


def is_total_ring_of_quotients(R: FiniteRing) -> ConditionVerdict:
    """Every element is a unit or a zero divisor; always so for finite rings."""
    bad = np.flatnonzero(~(units_mask(R) | zero_divisor_mask(R)))
    witness = {"element": R.fmt(int(bad[0]))} if bad.size else None
    return ConditionVerdict("total_quotients", bad.size == 0, "finite-trivial", witness)


# -- amalgamated duplications --------------------------------------------------


def amalgam_parts(R: FiniteRing) -> tuple[FiniteRing, Ideal]:
    """Recover ``(A, I)`` from a realized ``A ⋈ I``."""

    def build():
        A = R.factors[0]
        c = R.coords
        diffs = A.add[c[:, 1], A.neg[c[:, 0]]]
        mask = np.zeros(A.size, dtype=bool)
        mask[diffs] = True
        return A, Ideal(A, mask)

    return R.memo("amalgam_parts", build)


def diagonal(R: FiniteRing, a: int) -> int:
    """Id of ``(a, a)`` in ``A ⋈ I``."""
    return R.pair_id(a, a)


def pairs_mask(R: FiniteRing, pairs) -> np.ndarray:
    mask = np.zeros(R.size, dtype=bool)
    for x, y in pairs:
        k = R.pair_id(int(x), int(y))
        if k < 0:
            raise NotAnIdeal(f"({x},{y}) is not an element of {R.descriptor}")
        mask[k] = True
    return mask


@dataclass(frozen=True)
class BowtieViolation:
    j: int
    i: int

    def __bool__(self) -> bool:
        return False


def bowtie_ideal(A: FiniteRing, J: Ideal, I: Ideal, K: Ideal) -> Ideal | BowtieViolation:
    """``J ⋈ K = {(j, j+k)}`` as an ideal of ``A ⋈ I``, or a certificate ``ji ∉ K``."""
    if not K <= I:
        raise NotAnIdeal("K must be contained in I")
    prods = A.mul[np.ix_(J.elements, I.elements)]
    bad = np.argwhere(~K.mask[prods])
    if bad.size:
        r, c = bad[0]
        return BowtieViolation(int(J.elements[r]), int(I.elements[c]))
    R = make_amalgamation(A, I)
    pairs = [(j, int(A.add[j, k])) for j in J.elements.tolist() for k in K.elements.tolist()]
    return Ideal(R, pairs_mask(R, pairs))


@dataclass(frozen=True)
class SpecialIdeals:
    bowtie: Ideal  # P ⋈ I
    tilde: Ideal  # {(p+i, p)}
    i_times_zero: Ideal
    zero_times_i: Ideal


def special_ideals_of_amalgamation(A: FiniteRing, I: Ideal, P: Ideal) -> SpecialIdeals:
    if not is_prime(P):
        raise NotPrime(f"{P.gens_text()} is not prime in {A.descriptor}")
    R = make_amalgamation(A, I)
    Pe, Ie = P.elements.tolist(), I.elements.tolist()
    bow = Ideal(R, pairs_mask(R, [(p, int(A.add[p, i])) for p in Pe for i in Ie]))
    tilde = Ideal(R, pairs_mask(R, [(int(A.add[p, i]), p) for p in Pe for i in Ie]))
    i0 = Ideal(R, pairs_mask(R, [(i, A.zero) for i in Ie]))
    zi = Ideal(R, pairs_mask(R, [(A.zero, i) for i in Ie]))
    for name, ideal in (("P⋈I", bow), ("P~", tilde), ("I×0", i0), ("0×I", zi)):
        if not is_ideal_mask(R, ideal.mask):
            raise AssertionError(f"{name} failed the ideal closure test")
    for name, ideal in (("P⋈I", bow), ("P~", tilde)):
        if not is_prime(ideal):
            raise AssertionError(f"{name} is not prime")
    return SpecialIdeals(bow, tilde, i0, zi)


def zero_divisor_formula(A: FiniteRing, I: Ideal) -> np.ndarray:
    """Mask of ``Ze(A)⋈I ∪ {(i,0)} ∪ {(a,a+i) : a regular, j(a+i)=0 for some 0≠j∈I}``."""
    R = make_amalgamation(A, I)
    zeA = zero_divisor_mask(A)
    c = R.coords
    a, b = c[:, 0], c[:, 1]
    first = zeA[a]
    second = (b == A.zero) & I.mask[a]
    nz = I.elements[I.elements != A.zero]
    third = ~zeA[a] & np.any(A.mul[np.ix_(b, nz)] == A.zero, axis=1) if nz.size else np.zeros(R.size, bool)
    return first | second | third



def inverse_of(R: FiniteRing, x: int) -> int:
    hits = np.flatnonzero(R.mul[x] == R.one)
    if not hits.size:
        raise ValueError(f"{R.fmt(x)} is not a unit")
    return int(hits[0])


def localized_ideal(A: FiniteRing, I: Ideal, m: Ideal) -> tuple[FiniteRing, Ideal]:
    """``(A_m, I_m)`` with ``I_m`` generated by the images of ``I``."""
    loc, phi = localize(A, m)
    return loc.ring, ideal_generated(loc.ring, [phi(x) for x in I.generators])


def localization_comparison(A: FiniteRing, I: Ideal, m: Ideal) -> RingHom:
    """The canonical map ``A_m ⋈ I_m -> (A⋈I)_{m⋈I}`` for a maximal ``m ⊇ I``.

    Built as the inverse of the map induced by ``(a, a+i) -> (a/1, (a+i)/1)``, which
    sends every element outside ``m⋈I`` to a unit. Raises if that map is not bijective.
    """
    if not I <= m:
        raise NotAnIdeal(f"{I.gens_text()} is not contained in {m.gens_text()}")
    R = make_amalgamation(A, I)
    loc_a, phi = localize(A, m)
    Am, Im = loc_a.ring, ideal_generated(loc_a.ring, [phi(x) for x in I.generators])
    target = make_amalgamation(Am, Im)
    M = Ideal(R, pairs_mask(R, [(p, int(A.add[p, i])) for p in m.elements.tolist() for i in I.elements.tolist()]))
    loc_r, _ = localize(R, M)
    c = R.coords
    theta = np.array([target.pair_id(phi(int(x)), phi(int(y))) for x, y in c])
    if np.any(theta < 0):
        raise KernelError("(a, a+i) -> (a/1, (a+i)/1) leaves the amalgamation")
    images = [int(target.mul[theta[num], inverse_of(target, int(theta[den]))]) for num, den in loc_r.fractions]
    psi = RingHom(loc_r.ring, target, images)
    if not (psi.check() and psi.is_bijective()):
        raise KernelError(f"localization comparison for {R.descriptor} at {m.gens_text()} is not an isomorphism")
    inverse = np.empty(target.size, dtype=np.int64)
    inverse[psi.images] = np.arange(loc_r.ring.size)
    return RingHom(target, loc_r.ring, inverse)
