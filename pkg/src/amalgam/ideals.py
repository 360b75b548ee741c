"""Ideals of finite rings: generation, lattice enumeration, arithmetic, spectrum."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

import numpy as np

from .errors import CapExceeded
from .ring import FiniteRing

DEFAULT_MAX_IDEALS = 100_000
DEFAULT_MAX_GENERATOR_SEARCH = 2_000_000


def _bits(mask: np.ndarray) -> int:
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


class Ideal:
    """An ideal, stored as a membership mask over element ids."""

    __slots__ = ("ring", "mask", "bits", "_generators", "_elements")

    def __init__(self, ring: FiniteRing, mask: np.ndarray, generators: Iterable[int] | None = None):
        mask = np.array(mask, dtype=bool)
        mask.setflags(write=False)
        self.ring = ring
        self.mask = mask
        self.bits = _bits(mask)
        self._generators = None if generators is None else tuple(int(g) for g in generators)
        self._elements = None

    @property
    def elements(self) -> np.ndarray:
        if self._elements is None:
            e = np.flatnonzero(self.mask)
            e.setflags(write=False)
            self._elements = e
        return self._elements

    @property
    def size(self) -> int:
        return int(self.elements.size)

    def __len__(self) -> int:
        return self.size

    @property
    def generators(self) -> tuple[int, ...]:
        if self._generators is None:
            self._generators = tuple(minimal_generators(self))
        return self._generators

    def __contains__(self, x: int) -> bool:
        return bool(self.mask[x])

    def __eq__(self, other) -> bool:
        return isinstance(other, Ideal) and other.ring is self.ring and other.bits == self.bits

    def __hash__(self) -> int:
        return hash((id(self.ring), self.bits))

    def __le__(self, other: "Ideal") -> bool:
        return self.bits & other.bits == self.bits

    def __lt__(self, other: "Ideal") -> bool:
        return self != other and self <= other

    @property
    def is_zero(self) -> bool:
        return self.size == 1

    @property
    def is_unit(self) -> bool:
        return bool(self.mask[self.ring.one])

    @property
    def is_proper(self) -> bool:
        return not self.is_unit

    def sort_key(self) -> tuple:
        return (self.size, tuple(self.elements.tolist()))

    def gens_text(self) -> str:
        return "(" + ",".join(self.ring.fmt(g) for g in self.generators) + ")"

    def gen_labels(self) -> list[str]:
        return [self.ring.fmt(g) for g in self.generators]

    def __repr__(self) -> str:
        return f"Ideal{self.gens_text()} of size {self.size} in {self.ring.descriptor}"


# -- low level mask operations ---------------------------------------------


def principal_masks(R: FiniteRing) -> np.ndarray:
    """Row ``g`` is the membership mask of the principal ideal ``Rg``."""

    def build():
        n = R.size
        P = np.zeros((n, n), dtype=bool)
        P[np.repeat(np.arange(n), n), R.mul.ravel()] = True
        P.setflags(write=False)
        return P

    return R.memo("principal_masks", build)


def sum_mask(R: FiniteRing, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.zeros(R.size, dtype=bool)
    out[R.add[np.ix_(np.flatnonzero(a), np.flatnonzero(b))].ravel()] = True
    return out


def mask_of(R: FiniteRing, elements: Iterable[int]) -> np.ndarray:
    m = np.zeros(R.size, dtype=bool)
    m[list(elements)] = True
    return m


def closure_mask(R: FiniteRing, gens: Iterable[int]) -> np.ndarray:
    """Smallest ideal containing ``gens``, as a sum of principal ideals."""
    P = principal_masks(R)
    m = np.zeros(R.size, dtype=bool)
    m[R.zero] = True
    for g in gens:
        if not m[g] or not np.all(m[P[g]]):
            m = sum_mask(R, m, P[g])
    return m


def is_ideal_mask(R: FiniteRing, mask: np.ndarray) -> bool:
    """Independent closure test: contains 0, closed under + and ring multiples."""
    e = np.flatnonzero(mask)
    if e.size == 0 or not mask[R.zero]:
        return False
    return bool(np.all(mask[R.add[np.ix_(e, e)]]) and np.all(mask[R.mul[:, e]]))


# -- public operations -------------------------------------------------------


def ideal_generated(R: FiniteRing, gens: Iterable[int]) -> Ideal:
    gens = [int(g) for g in gens]
    return Ideal(R, closure_mask(R, gens), gens)


def zero_ideal(R: FiniteRing) -> Ideal:
    return Ideal(R, mask_of(R, [R.zero]), [])


def unit_ideal(R: FiniteRing) -> Ideal:
    return Ideal(R, np.ones(R.size, dtype=bool), [R.one])


def principal(R: FiniteRing, x: int) -> Ideal:
    return Ideal(R, principal_masks(R)[x], [x])


_LIMITS = {"max_ideals": DEFAULT_MAX_IDEALS}


def set_max_ideals(limit: int) -> None:
    """Process-wide cap used when ``all_ideals`` gets no explicit one."""
    if limit < 1:
        raise ValueError("the ideal cap must be positive")
    _LIMITS["max_ideals"] = limit


def all_ideals(R: FiniteRing, max_ideals: int | None = None) -> list[Ideal]:
    """Every ideal of R, as the closure of the principal ideals under sums."""
    if max_ideals is None:
        max_ideals = _LIMITS["max_ideals"]

    def build():
        P = principal_masks(R)
        prin: dict[int, tuple[int, np.ndarray]] = {}
        for g in range(R.size):
            b = _bits(P[g])
            if b not in prin:
                prin[b] = (g, P[g])
        found: dict[int, tuple[tuple[int, ...], np.ndarray]] = {b: ((g,), m) for b, (g, m) in prin.items()}
        frontier = list(found)
        while frontier:
            nxt = []
            for b in frontier:
                gens, m = found[b]
                for pb, (g, pm) in prin.items():
                    if pb & b == pb:
                        continue
                    s = sum_mask(R, m, pm)
                    sb = _bits(s)
                    if sb not in found:
                        found[sb] = (gens + (g,), s)
                        nxt.append(sb)
                        if len(found) > max_ideals:
                            raise CapExceeded(f"more than {max_ideals} ideals in {R.descriptor}")
            frontier = nxt
        ideals = [Ideal(R, m) for (_, m) in found.values()]
        ideals.sort(key=Ideal.sort_key)
        return tuple(ideals)

    ideals = R.memo("all_ideals", build)
    if len(ideals) > max_ideals:
        raise CapExceeded(f"more than {max_ideals} ideals in {R.descriptor}")
    return list(ideals)


def intersection(J: Ideal, K: Ideal) -> Ideal:
    return Ideal(J.ring, J.mask & K.mask)


def ideal_sum(J: Ideal, K: Ideal) -> Ideal:
    gens = None
    if J._generators is not None and K._generators is not None:
        gens = J._generators + K._generators
    return Ideal(J.ring, sum_mask(J.ring, J.mask, K.mask), gens)


def ideal_product(J: Ideal, K: Ideal) -> Ideal:
    R = J.ring
    prods = np.unique(R.mul[np.ix_(J.elements, K.elements)])
    return Ideal(R, closure_mask(R, prods.tolist()))


def annihilator(J: Ideal) -> Ideal:
    R = J.ring
    return Ideal(R, np.all(R.mul[:, J.elements] == R.zero, axis=1))


def scaled(a: int, J: Ideal) -> Ideal:
    """The ideal ``aJ = {a*j : j in J}``."""
    R = J.ring
    return Ideal(R, mask_of(R, R.mul[a, J.elements].tolist()))


def comparability(J: Ideal, K: Ideal) -> str:
    if J == K:
        return "equal"
    if J <= K:
        return "left_in_right"
    if K <= J:
        return "right_in_left"
    return "incomparable"


@dataclass(frozen=True)
class IdealOps:
    sum: Ideal
    product: Ideal
    intersection: Ideal
    annihilator: Ideal
    comparability: str


def ideal_ops(J: Ideal, K: Ideal) -> IdealOps:
    if J.ring is not K.ring:
        raise ValueError("ideals of different rings")
    return IdealOps(ideal_sum(J, K), ideal_product(J, K), intersection(J, K), annihilator(J), comparability(J, K))


def is_prime(P: Ideal) -> bool:
    if not P.is_proper:
        return False
    R = P.ring
    c = np.flatnonzero(~P.mask)
    return not bool(np.any(P.mask[R.mul[np.ix_(c, c)]]))


@dataclass(frozen=True)
class Spectrum:
    primes: tuple[Ideal, ...]
    maximals: tuple[Ideal, ...]


def spectrum(R: FiniteRing) -> Spectrum:
    def build():
        ideals = all_ideals(R)
        primes = tuple(P for P in ideals if is_prime(P))
        proper = [J for J in ideals if J.is_proper]
        maximals = tuple(P for P in primes if not any(P < J for J in proper))
        return Spectrum(primes, maximals)

    return R.memo("spectrum", build)


def maximal_ideals(R: FiniteRing) -> tuple[Ideal, ...]:
    return spectrum(R).maximals


def max_containing(R: FiniteRing, I: Ideal) -> list[Ideal]:
    return [m for m in maximal_ideals(R) if I <= m]


def minimal_generators(J: Ideal, max_search: int = DEFAULT_MAX_GENERATOR_SEARCH) -> list[int]:
    """A generating set of least size; ties broken lexicographically on ids."""
    R = J.ring
    if J.is_zero:
        return []
    P = principal_masks(R)
    reps: list[int] = []
    seen: set[int] = set()
    for x in J.elements.tolist():
        b = _bits(P[x])
        if b not in seen:
            seen.add(b)
            reps.append(x)
    target = J.bits
    searched = 0
    for k in range(1, len(reps) + 1):
        for combo in combinations(reps, k):
            searched += 1
            if searched > max_search:
                raise CapExceeded(f"minimal generator search for {J!r} exceeded {max_search} subsets")
            m = P[combo[0]]
            for g in combo[1:]:
                m = sum_mask(R, m, P[g])
            if _bits(m) == target:
                return list(combo)
    raise AssertionError("the principal ideals inside J must generate J")


def ideal_from_text(R: FiniteRing, gens: Iterable) -> Ideal:
    """Ideal generated by element literals."""
    return ideal_generated(R, [R.element(g) for g in gens])

