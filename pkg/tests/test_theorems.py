import numpy as np
import pytest

from amalgam.conditions import check_fqp
from amalgam.constructions import make_amalgamation
from amalgam.errors import ImproperIdeal, NotLocal, UnsupportedCombination
from amalgam.ideals import all_ideals, maximal_ideals, scaled
from amalgam.ring import make_zmod
from amalgam.structure import inverse_of, localize, localized_ideal, zero_divisor_mask
from amalgam.theorems import (
    THEOREMS,
    applicable,
    fqp_product_stability,
    inverse_formula,
    prop_total_quotients_amalg,
    run_theorem,
    thm_agf_amalg,
    thm_pruefer_amalg,
    thm_ws_amalg,
)
from conftest import ideal, ring


def _pair(A_text, I_text):
    A = ring(A_text)
    return A, ideal(A, I_text)


# -- examples -------------------------------------------------------------------------


@pytest.mark.parametrize("A_text,I_text", [("Z/8", "(2)"), ("Z/8", "(0)"), ("Z/4", "(2)")])
def test_pruefer_examples(A_text, I_text):
    c = thm_pruefer_amalg(*_pair(A_text, I_text))
    assert c.lhs.holds and c.rhs.holds and c.agree
    assert c.certificate["vacuous"]


@pytest.mark.parametrize(
    "which,A_text,I_text,expected",
    [
        ("arithmetical", "Z/12", "(6)", False),
        ("gaussian", "Z/8", "(2)", False),
        ("fqp_local", "Z/4", "(2)", True),
        ("gaussian", "Z/12", "(6)", True),
        ("locally_fqp", "Z/12", "(6)", True),
    ],
)
def test_agf_examples(which, A_text, I_text, expected):
    c = thm_agf_amalg(*_pair(A_text, I_text), which)
    assert c.lhs.holds == c.rhs.holds == expected
    assert not any(f.startswith("erratum") for f in c.flags)


def test_gaussian_rhs_names_the_square():
    c = thm_agf_amalg(*_pair("Z/8", "(2)"), "gaussian")
    assert c.rhs.witness["ideal_square"] == "(4)"


def test_ws_examples():
    c = thm_ws_amalg(*_pair("Z/12", "(4)"), "wdim")
    assert not c.lhs.holds and not c.rhs.holds
    # I_(2) is the unit ideal of Z/2 here, which is nonzero
    c = thm_ws_amalg(*_pair("Z/6", "(2)"), "semihereditary")
    assert c.agree
    c = thm_ws_amalg(*_pair("Z/6", "(0)"), "semihereditary")
    assert c.lhs.holds and c.rhs.holds


def test_ws_on_z6_two_localizes_to_zero():
    A, I = _pair("Z/6", "(2)")
    m = ideal(A, "(2)")
    _, Im = localized_ideal(A, I, m)
    assert Im.is_zero
    c = thm_ws_amalg(A, I, "wdim")
    assert c.lhs.holds and c.rhs.holds


def test_total_quotients_examples():
    A, I = _pair("Z/12", "(6)")
    R = make_amalgamation(A, I)
    x = R.element((1, 7))
    assert R.mul[x, x] == R.one
    assert inverse_formula(A, 1, 6) == 6
    c = prop_total_quotients_amalg(*_pair("Z/8", "(4)"))
    assert c.agree and c.certificate["inverse_formula_checked"] == 4 * 2
    for y in (1, 3, 5, 7):
        assert inverse_formula(A, y, 0) == 0


def test_inverse_formula_against_search():
    A = ring("Z/16")
    for I in all_ideals(A):
        if not I.is_proper:
            continue
        R = make_amalgamation(A, I)
        for x in (1, 3, 5, 7, 9, 11, 13, 15):
            y = inverse_of(A, x)
            for i in I.elements.tolist():
                u = R.pair_id(x, int(A.add[x, i]))
                found = [v for v in range(R.size) if R.mul[u, v] == R.one]
                j = inverse_formula(A, y, i)
                assert found == [R.pair_id(y, int(A.add[y, j]))]


@pytest.mark.parametrize(
    "left,right,expected",
    [("Z/4", "Z/9", True), ("bowtie(Z/8,(2))", "Z/2", False), ("Z/2", "Z/2", True)],
)
def test_product_stability_examples(left, right, expected):
    c = fqp_product_stability(ring(left), ring(right))
    assert c.lhs.holds == c.rhs.holds == expected
    assert c.to_dict()["pair"] == {"A": left, "B": right}


# -- errors ---------------------------------------------------------------------------------


def test_errors():
    with pytest.raises(NotLocal):
        thm_pruefer_amalg(*_pair("Z/12", "(6)"))
    with pytest.raises(ImproperIdeal):
        thm_pruefer_amalg(*_pair("Z/8", "(1)"))
    with pytest.raises(UnsupportedCombination):
        thm_agf_amalg(*_pair("Z/12", "(6)"), "fqp")
    with pytest.raises(NotLocal):
        thm_agf_amalg(*_pair("Z/12", "(6)"), "fqp_local")
    with pytest.raises(UnsupportedCombination):
        prop_total_quotients_amalg(*_pair("Z/12", "(4)"))
    with pytest.raises(ValueError):
        thm_ws_amalg(*_pair("Z/8", "(2)"), "noetherian")
    with pytest.raises(ValueError):
        run_theorem("nonsense", *_pair("Z/8", "(2)"))


def test_local_fqp_is_accepted_under_the_generic_name():
    c = thm_agf_amalg(*_pair("Z/8", "(2)"), "fqp")
    assert c.theorem == "fqp_local" and not c.lhs.holds and c.agree


# -- flags ------------------------------------------------------------------------------------


def test_semihereditary_erratum_is_flagged_not_decided():
    c = thm_ws_amalg(*_pair("Z/12", "(4)"), "semihereditary")
    assert not c.lhs.holds and not c.rhs.holds and c.agree
    assert c.flags == ["erratum: asserted true, computed false"]


def test_zero_ideal_waives_the_square_condition():
    c = thm_agf_amalg(*_pair("Z/8", "(0)"), "fqp_local")
    assert c.lhs.holds and c.rhs.holds
    assert c.flags and c.flags[0].startswith("degenerate: I_m = 0")
    assert not c.certificate["localizations"][0]["zero_divisors_square_zero"]


def test_asserted_classifications_that_hold_raise_no_flag():
    for which, A_text, I_text in [("gaussian", "Z/8", "(2)"), ("arithmetical", "Z/12", "(6)"), ("locally_fqp", "Z/12", "(6)")]:
        assert thm_agf_amalg(*_pair(A_text, I_text), which).flags == []
    assert thm_pruefer_amalg(*_pair("Z/8", "(2)")).flags == []


# -- worked examples on small rings -----------------------------------------------------------


def test_fqp_with_nonzero_square_of_zero_divisors_fails():
    A, I = _pair("Z/8", "(4)")
    ze = np.flatnonzero(zero_divisor_mask(A)).tolist()
    assert {int(A.mul[a, b]) for a in ze for b in ze} == {0, 4}
    for a in (0, 2, 4, 6):
        assert scaled(a, I).is_zero and scaled(int(A.mul[a, a]), I).is_zero
    c = thm_agf_amalg(A, I, "fqp_local")
    assert not c.rhs.holds and not c.lhs.holds


def test_locally_fqp_not_arithmetical():
    A, I = _pair("Z/12", "(6)")
    m2, m3 = ideal(A, "(2)"), ideal(A, "(3)")
    assert not localized_ideal(A, I, m2)[1].is_zero
    assert localized_ideal(A, I, m3)[1].is_zero
    R = make_amalgamation(A, I)
    for M in maximal_ideals(R):
        assert check_fqp(localize(R, M)[0].ring).holds
    assert not run_theorem("arithmetical", A, I).lhs.holds


# -- sweep ---------------------------------------------------------------------------------------


@pytest.mark.parametrize("n", range(2, 17))
def test_every_applicable_theorem_agrees(n):
    A = make_zmod(n)
    for I in all_ideals(A):
        if not I.is_proper:
            continue
        for name in THEOREMS:
            if applicable(name, A, I):
                c = run_theorem(name, A, I)
                assert c.agree, (name, str(A.descriptor), I.gens_text())
