"""Exact arithmetic in ``Z_(p) ⋉ Q`` and the few ideal shapes needed to test ``I = aI``.

Elements are pairs of ``Fraction``; the first coordinate must have a denominator
prime to ``p``. Only three ideal shapes are modelled and anything else is refused.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ElementError, UnsupportedShape

Rational = Fraction


def in_zloc(q: Fraction, p: int) -> bool:
    return q.denominator % p != 0


def is_zloc_unit(q: Fraction, p: int) -> bool:
    return q != 0 and in_zloc(q, p) and q.numerator % p != 0


def _fmt(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class ExactExtElement:
    """``(a, e)`` with ``a ∈ Z_(p)`` and ``e ∈ Q``; multiplication ``(ab, af + be)``."""

    first: Fraction
    second: Fraction
    p: int = 2

    def __post_init__(self):
        object.__setattr__(self, "first", Fraction(self.first))
        object.__setattr__(self, "second", Fraction(self.second))
        if not in_zloc(self.first, self.p):
            raise ElementError(f"{self.first} is not in Z_({self.p})")

    def __mul__(self, other: "ExactExtElement") -> "ExactExtElement":
        return ExactExtElement(
            self.first * other.first, self.first * other.second + self.second * other.first, self.p
        )

    def __add__(self, other: "ExactExtElement") -> "ExactExtElement":
        return ExactExtElement(self.first + other.first, self.second + other.second, self.p)

    @property
    def is_zero(self) -> bool:
        return self.first == 0 and self.second == 0

    def __str__(self) -> str:
        return f"({_fmt(self.first)}, {_fmt(self.second)})"


def elem(a, e, p: int = 2) -> ExactExtElement:
    return ExactExtElement(Fraction(a), Fraction(e), p)


def classify_element(x: ExactExtElement) -> str:
    """``unit``, ``zero_divisor`` (exactly the ``(0, e)``) or ``regular_nonunit``."""
    if x.first == 0:
        return "zero_divisor"
    if is_zloc_unit(x.first, x.p):
        return "unit"
    return "regular_nonunit"


@dataclass(frozen=True)
class Membership:
    member: bool
    cofactor: ExactExtElement | None = None

    def __bool__(self) -> bool:
        return self.member


def principal_membership(x: ExactExtElement, g: ExactExtElement) -> Membership:
    """Solve ``x = g·(b, f)`` with ``b ∈ Z_(p)``, ``f ∈ Q``."""
    if g.is_zero:
        raise ValueError("generator must be nonzero")
    p = g.p
    if g.first != 0:
        b = x.first / g.first
        if not in_zloc(b, p):
            return Membership(False)
        f = (x.second - g.second * b) / g.first
        return Membership(True, ExactExtElement(b, f, p))
    # g = (0, e): g·(b, f) = (0, e b)
    if x.first != 0:
        return Membership(False)
    b = x.second / g.second
    if not in_zloc(b, p):
        return Membership(False)
    return Membership(True, ExactExtElement(b, 0, p))


# -- ideal shapes -------------------------------------------------------------------


@dataclass(frozen=True)
class ZeroTimesQ:
    """``0 ⋉ Q``."""

    p: int = 2

    def __str__(self) -> str:
        return "0xQ"


@dataclass(frozen=True)
class ZeroTimesScaledZLoc:
    """``{(0, c t) : t ∈ Z_(p)}``."""

    c: Fraction
    p: int = 2

    def __post_init__(self):
        object.__setattr__(self, "c", Fraction(self.c))
        if self.c == 0:
            raise UnsupportedShape("scale must be nonzero; use principal((0/1, 0/1)) for the zero ideal")

    def contains(self, x: ExactExtElement) -> bool:
        return x.first == 0 and in_zloc(x.second / self.c, self.p)

    def __str__(self) -> str:
        return f"0x({_fmt(self.c)})Zloc({self.p})"


@dataclass(frozen=True)
class Principal:
    g: ExactExtElement

    @property
    def is_zero(self) -> bool:
        return self.g.is_zero

    def __str__(self) -> str:
        return f"principal({self.g})"


ExactIdealShape = Union[ZeroTimesQ, ZeroTimesScaledZLoc, Principal]


def zero_shape(p: int = 2) -> Principal:
    return Principal(ExactExtElement(Fraction(0), Fraction(0), p))


def _normalize(shape: ExactIdealShape) -> ExactIdealShape:
    """Canonical form: ``c`` in ``ZeroTimesScaledZLoc`` reduced to ``±p^k``."""
    if isinstance(shape, ZeroTimesScaledZLoc):
        c, p = shape.c, shape.p
        k = 0
        num, den = abs(c.numerator), c.denominator
        while num % p == 0:
            num //= p
            k += 1
        while den % p == 0:
            den //= p
            k -= 1
        return ZeroTimesScaledZLoc(Fraction(p) ** k, p)
    return shape


def scaled_ideal(a: ExactExtElement, shape: ExactIdealShape) -> ExactIdealShape:
    """Closed form of ``a·I`` for the supported shapes."""
    p = a.p
    if isinstance(shape, Principal):
        return _principal_or_zero(a * shape.g)
    if a.first == 0:
        # (0, e) kills everything of the form (0, m)
        return zero_shape(p)
    if isinstance(shape, ZeroTimesQ):
        return ZeroTimesQ(p)
    if isinstance(shape, ZeroTimesScaledZLoc):
        return _normalize(ZeroTimesScaledZLoc(a.first * shape.c, p))
    raise UnsupportedShape(f"cannot scale {shape!r}")


def _principal_or_zero(g: ExactExtElement) -> Principal:
    return zero_shape(g.p) if g.is_zero else Principal(g)


def ideal_square(shape: ExactIdealShape) -> ExactIdealShape:
    if isinstance(shape, (ZeroTimesQ, ZeroTimesScaledZLoc)):
        return zero_shape(shape.p)
    if isinstance(shape, Principal):
        return _principal_or_zero(shape.g * shape.g)
    raise UnsupportedShape(f"cannot square {shape!r}")


@dataclass(frozen=True)
class ShapeComparison:
    equal: bool
    witness: ExactExtElement | None = None

    def __bool__(self) -> bool:
        return self.equal


def shape_equal(I: ExactIdealShape, J: ExactIdealShape) -> ShapeComparison:
    """Set equality of two shapes; on inequality a witness of the symmetric difference."""
    I, J = _normalize(I), _normalize(J)
    zero_i = isinstance(I, Principal) and I.is_zero
    zero_j = isinstance(J, Principal) and J.is_zero
    if zero_i and zero_j:
        return ShapeComparison(True)
    if zero_i or zero_j:
        other = J if zero_i else I
        return ShapeComparison(False, _some_nonzero(other))
    if isinstance(I, ZeroTimesQ) and isinstance(J, ZeroTimesQ):
        return ShapeComparison(True)
    if isinstance(I, ZeroTimesScaledZLoc) and isinstance(J, ZeroTimesScaledZLoc):
        if I.p != J.p:
            raise UnsupportedShape("shapes over different primes")
        if I.c == J.c:
            return ShapeComparison(True)
        big = I if abs(I.c) < abs(J.c) else J
        return ShapeComparison(False, ExactExtElement(0, big.c, big.p))
    if {type(I), type(J)} == {ZeroTimesQ, ZeroTimesScaledZLoc}:
        scaled_z = I if isinstance(I, ZeroTimesScaledZLoc) else J
        return ShapeComparison(False, ExactExtElement(0, scaled_z.c / scaled_z.p, scaled_z.p))
    raise UnsupportedShape(f"cannot compare {I} with {J}")


def _some_nonzero(shape: ExactIdealShape) -> ExactExtElement:
    if isinstance(shape, ZeroTimesQ):
        return ExactExtElement(0, 1, shape.p)
    if isinstance(shape, ZeroTimesScaledZLoc):
        return ExactExtElement(0, shape.c, shape.p)
    return shape.g


def shape_contains(shape: ExactIdealShape, x: ExactExtElement) -> bool:
    if isinstance(shape, ZeroTimesQ):
        return x.first == 0
    if isinstance(shape, ZeroTimesScaledZLoc):
        return shape.contains(x)
    if isinstance(shape, Principal):
        if shape.is_zero:
            return x.is_zero
        return bool(principal_membership(x, shape.g))
    raise UnsupportedShape(f"unknown shape {shape!r}")


# -- premise checks for the two infinite counterexamples -------------------------------


def pruefer_counterexample(p: int = 2) -> ShapeComparison:
    """``I = 0 ⋉ Z_(p)`` against ``(p^2, 0)·I``: unequal, so ``I = aI`` fails for a regular ``a``."""
    I = ZeroTimesScaledZLoc(Fraction(1), p)
    a = ExactExtElement(p * p, 0, p)
    assert classify_element(a) == "regular_nonunit"
    return shape_equal(I, scaled_ideal(a, I))


@dataclass
class PremiseReport:
    results: dict[str, bool]
    samples: int

    @property
    def passed(self) -> bool:
        return all(self.results.values())


def ws4_samples(p: int = 2, bound: int = 6) -> list[ExactExtElement]:
    """A structured grid of ``a = (p t, e)`` with small numerators and denominators."""
    nums = [n for n in range(-bound, bound + 1)]
    dens = [d for d in range(1, bound + 1) if d % p != 0]
    es = [Fraction(n, d) for n in (-3, 0, 1, 5) for d in (1, 2, 3, 7)]
    return [ExactExtElement(Fraction(p * n, d), e, p) for n in nums for d in dens for e in es]


def ws4_premises(p: int = 2, bound: int = 6) -> PremiseReport:
    """``I = 0 ⋉ Q`` in ``Z_(p) ⋉ Q``: ``I^2 = 0`` and ``aI = a^2 I`` for ``a ∈ p Z_(p) ⋉ Q``."""
    I = ZeroTimesQ(p)
    samples = ws4_samples(p, bound)
    square = shape_equal(ideal_square(I), zero_shape(p)).equal
    scaling = all(shape_equal(scaled_ideal(a, I), scaled_ideal(a * a, I)).equal for a in samples)
    # the two cases separately: t != 0 gives 0xQ, t = 0 gives the zero ideal
    nonzero_t = all(isinstance(scaled_ideal(a, I), ZeroTimesQ) for a in samples if a.first != 0)
    zero_t = all(shape_equal(scaled_ideal(a, I), zero_shape(p)).equal for a in samples if a.first == 0)
    return PremiseReport(
        {"I^2 = 0": square, "aI = a^2 I": scaling, "aI = 0xQ for a_1 != 0": nonzero_t, "aI = 0 for a_1 = 0": zero_t},
        len(samples),
    )
