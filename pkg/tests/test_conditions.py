import math
from itertools import product

import numpy as np
import pytest

import oracles
from amalgam.conditions import (
    HIERARCHY,
    Polynomial,
    check_arithmetical,
    check_chained,
    check_fqp,
    check_gaussian,
    check_gaussian_local,
    check_pruefer,
    check_semihereditary,
    check_wdim_le1,
    classify_wdim_finite,
    content_multiplicative,
    gaussian_content_sampler,
    gaussian_pair_failures,
    hierarchy_check,
    pair_criterion_holds,
)
from amalgam.constructions import make_amalgamation
from amalgam.errors import HierarchyViolation, NotLocal
from amalgam.ideals import all_ideals, closure_mask, ideal_product, scaled
from amalgam.modules import lifts
from amalgam.ring import make_zmod
from amalgam.structure import is_local, nilpotent_mask, zero_divisor_mask
from amalgam.verdict import ConditionVerdict
from conftest import ideal, ring


def _duplications(nmax=16):
    for n in range(2, nmax + 1):
        A = make_zmod(n)
        for I in all_ideals(A):
            if I.is_proper:
                yield A, I, make_amalgamation(A, I)


# -- chained / arithmetical ---------------------------------------------------------


def test_chained_examples():
    assert check_chained(ring("Z/8")).holds
    assert check_chained(ring("Z/7")).holds
    v = check_chained(ring("bowtie(Z/4,(2))"))
    assert not v.holds
    R = ring("bowtie(Z/4,(2))")
    a, b = (R.element(eval(x)) for x in v.witness["pair"])
    left, right = (ideal(R, f"({x})") for x in v.witness["pair"])
    assert not left.mask[b] and not right.mask[a]
    with pytest.raises(NotLocal):
        check_chained(ring("Z/6"))


def test_arithmetical_examples():
    assert check_arithmetical(ring("Z/12")).holds
    assert not check_arithmetical(ring("bowtie(Z/8,(2))")).holds
    assert not check_arithmetical(ring("bowtie(Z/12,(6))")).holds


# -- Gaussian --------------------------------------------------------------------------


def test_gaussian_examples():
    R = ring("bowtie(Z/8,(2))")
    v = check_gaussian_local(R)
    assert not v.holds
    a, b = (R.element(eval(x)) for x in v.witness["pair"])
    assert not pair_criterion_holds(R, a, b)
    # the pair (x, y) = ((2,2),(0,2)): (x,y)^2 = ((4,4),(0,4)) is neither (x^2) nor (y^2)
    x, y = R.element((2, 2)), R.element((0, 2))
    assert not pair_criterion_holds(R, x, y)
    assert check_gaussian_local(ring("bowtie(Z/4,(2))")).holds
    assert check_gaussian(ring("bowtie(Z/12,(6))")).holds
    assert check_gaussian(ring("product(Z/2,Z/3)")).holds
    assert not check_gaussian(R).holds


@pytest.mark.parametrize("text", ["Z/8", "Z/9", "bowtie(Z/4,(2))", "bowtie(Z/8,(4))", "trivext(Z/4,(1))", "trivext(Z/2,(1))"])
def test_vectorized_pair_scan_matches_direct_evaluation(text):
    R = ring(text)
    bad = {tuple(map(int, p)) for p in gaussian_pair_failures(R)}
    for a in range(R.size):
        for b in range(a, R.size):
            assert ((a, b) in bad) == (not pair_criterion_holds(R, a, b))


@pytest.mark.parametrize("text", ["Z/4", "Z/8", "Z/9", "bowtie(Z/4,(2))", "trivext(Z/2,(1))", "trivext(Z/4,(1))", "Z/6"])
def test_pair_criterion_agrees_with_content_definition(text):
    # degree-1 exhaustive search of c(fg) = c(f)c(g) by the independent oracle
    R = ring(text)
    assert check_gaussian(R).holds == (oracles.content_violation_naive(R, 1) is None)


def test_sampler_examples():
    assert gaussian_content_sampler(ring("Z/4"), 2) is None
    R = ring("bowtie(Z/8,(2))")
    hit = gaussian_content_sampler(R, 1, budget=20000, seed=0)
    assert hit is not None
    fg = oracles.generated(R, (hit.f * hit.g).coeffs) if (hit.f * hit.g).coeffs else frozenset({R.zero})
    cf, cg = oracles.generated(R, hit.f.coeffs), oracles.generated(R, hit.g.coeffs)
    assert fg != oracles.generated(R, {int(R.mul[a, b]) for a in cf for b in cg})
    zero = Polynomial(R, ())
    assert content_multiplicative(zero, Polynomial(R, (1, 2, 3)))
    with pytest.raises(ValueError):
        gaussian_content_sampler(R, 0)


def test_sampler_is_deterministic():
    R = ring("trivext(Z/4,(1))")
    a = gaussian_content_sampler(R, 2, budget=5000, seed=7)
    b = gaussian_content_sampler(R, 2, budget=5000, seed=7)
    assert a is not None
    assert (a.f.coeffs, a.g.coeffs) == (b.f.coeffs, b.g.coeffs)


def test_polynomial_trims_and_multiplies():
    R = ring("Z/8")
    f = Polynomial(R, (2, 4, 0, 0))
    assert f.coeffs == (2, 4) and f.degree == 1
    assert (f * Polynomial(R, (4,))).coeffs == ()
    assert (f * f).coeffs == (4,)
    assert f.content() == ideal(R, "(2)")


@pytest.mark.parametrize("A_text,I_text", [("Z/8", "(2)"), ("Z/4", "(2)"), ("Z/9", "(3)")])
def test_content_descends_along_the_diagonal(A_text, I_text):
    A = ring(A_text)
    I = ideal(A, I_text)
    R = make_amalgamation(A, I)
    diag = [R.pair_id(a, a) for a in range(A.size)]
    polys = list(product(range(A.size), repeat=2))
    for fa in polys:
        F = Polynomial(R, tuple(diag[a] for a in fa))
        f = Polynomial(A, fa)
        for ga in polys:
            G = Polynomial(R, tuple(diag[a] for a in ga))
            if content_multiplicative(F, G):
                assert content_multiplicative(f, Polynomial(A, ga))


# -- fqp / Prüfer --------------------------------------------------------------------------


def test_fqp_examples():
    assert check_fqp(ring("bowtie(Z/4,(2))")).holds
    v = check_fqp(ring("bowtie(Z/8,(2))"))
    assert not v.holds and set(v.witness) == {"ideal", "subideal", "map"}
    assert check_fqp(ring("Z/16")).holds


def test_fqp_witness_is_an_unliftable_map():
    from amalgam.modules import is_quasi_projective

    R = ring("bowtie(Z/8,(2))")
    v = check_fqp(R)
    J = ideal(R, v.witness["ideal"])
    K, f = is_quasi_projective(J).witness
    assert K.gens_text() == v.witness["subideal"]
    assert f.is_well_defined() and not lifts(f)


@pytest.mark.parametrize("text", ["Z/1", "Z/8", "bowtie(Z/8,(2))", "product(Z/4,Z/9)"])
def test_pruefer_is_finite_trivial(text):
    v = check_pruefer(ring(text))
    assert v.holds and v.method == "finite-trivial"


# -- weak dimension / semihereditary ---------------------------------------------------------


def test_wdim_examples():
    assert check_wdim_le1(ring("Z/6")).holds
    v = check_wdim_le1(ring("Z/4"))
    assert not v.holds and v.witness == {"prime": "(2)", "element": "2"}
    assert check_wdim_le1(ring("Z/7")).holds
    assert classify_wdim_finite(ring("Z/6")) == 0
    assert classify_wdim_finite(ring("Z/4")) == math.inf
    assert classify_wdim_finite(ring("bowtie(Z/8,(2))")) == math.inf


def test_semihereditary_examples():
    assert check_semihereditary(ring("Z/6")).holds
    v = check_semihereditary(ring("Z/4"))
    assert not v.holds and v.witness["ideal"] == "(2)"
    assert check_semihereditary(ring("Z/5")).holds


@pytest.mark.parametrize("n", range(2, 17))
def test_semihereditary_equals_wdim_and_reducedness(n):
    A = make_zmod(n)
    for I in all_ideals(A):
        if I.is_proper:
            R = make_amalgamation(A, I)
            s = check_semihereditary(R).holds
            assert s == check_wdim_le1(R).holds == (classify_wdim_finite(R) == 0)


# -- hierarchy --------------------------------------------------------------------------------


@pytest.mark.parametrize(
    "text,pattern",
    [("bowtie(Z/8,(2))", "FFFFFT"), ("bowtie(Z/4,(2))", "FFFTTT"), ("Z/6", "TTTTTT"), ("bowtie(Z/8,(4))", "FFFFTT")],
)
def test_hierarchy_patterns(text, pattern):
    res = hierarchy_check(ring(text))
    assert res.pattern() == pattern and res.monotone
    assert [v.condition for v in res.verdicts] == list(HIERARCHY)


def test_hierarchy_violation_is_an_error():
    R = ring("Z/4")
    fake = {"semihereditary": ConditionVerdict("semihereditary", True)}
    with pytest.raises(HierarchyViolation):
        hierarchy_check(R, verdicts=fake)
    assert not hierarchy_check(R, strict=False, verdicts=fake).monotone


@pytest.mark.parametrize("n", range(2, 17))
def test_hierarchy_monotone_on_duplications(n):
    A = make_zmod(n)
    for I in all_ideals(A):
        if I.is_proper:
            assert hierarchy_check(make_amalgamation(A, I)).monotone


# -- structure of local fqp rings ----------------------------------------------------------------


def test_local_fqp_rings_that_are_not_chained():
    seen = 0
    for _, _, R in _duplications():
        if not is_local(R) or not check_fqp(R).holds or check_chained(R).holds:
            continue
        seen += 1
        nil = np.flatnonzero(nilpotent_mask(R))
        assert not np.any(R.mul[np.ix_(nil, nil)] != R.zero)  # Nil(R)^2 = 0
        assert np.array_equal(nilpotent_mask(R), zero_divisor_mask(R))
    assert seen > 0


def test_square_scaling_implication_chain_on_local_rings():
    for n in range(2, 17):
        A = make_zmod(n)
        loc = is_local(A)
        if not loc or A.is_zero_ring:
            continue
        m = loc.maximal
        regular = ~zero_divisor_mask(A)
        ze = zero_divisor_mask(A)
        for I in all_ideals(A):
            if not I.is_proper:
                continue
            square_scaling = all(scaled(a, I) == scaled(int(A.mul[a, a]), I) for a in m.elements.tolist())
            regular_fixing = all(scaled(a, I) == I for a in np.flatnonzero(regular & m.mask).tolist())
            if square_scaling:
                assert regular_fixing
            if regular_fixing:
                assert np.all(ze[I.elements])


def test_ideal_square_helper():
    A = ring("Z/8")
    I = ideal(A, "(2)")
    assert ideal_product(I, I) == ideal(A, "(4)")
    assert np.array_equal(closure_mask(A, [4]), ideal(A, "(4)").mask)
