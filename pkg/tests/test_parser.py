import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from amalgam.descriptor import Amalgamation, Localization, Product, Quotient, TrivialExt, ZMod, canonical
from amalgam.errors import ElementError, ImproperIdeal, NotPrime, ParseError
from amalgam.parser import parse_ideal, parse_literal, parse_ring_expr, resolve

literals = st.recursive(st.integers(-50, 50), lambda inner: st.tuples(inner, inner), max_leaves=4)
gens = st.lists(literals, max_size=3).map(tuple)
descriptors = st.recursive(
    st.integers(1, 40).map(ZMod),
    lambda inner: st.one_of(
        st.tuples(inner, inner).map(lambda t: Product(*t)),
        st.tuples(inner, gens).map(lambda t: Quotient(*t)),
        st.tuples(inner, gens).map(lambda t: TrivialExt(*t)),
        st.tuples(inner, gens).map(lambda t: Amalgamation(*t)),
        st.tuples(inner, gens).map(lambda t: Localization(*t)),
    ),
    max_leaves=6,
)


@settings(max_examples=300, deadline=None)
@given(descriptors)
def test_print_parse_round_trip(desc):
    text = str(desc)
    assert parse_ring_expr(text) == desc
    assert canonical(parse_ring_expr(text)) == text


@settings(max_examples=200, deadline=None)
@given(literals)
def test_literal_round_trip(lit):
    from amalgam.descriptor import format_literal

    assert parse_literal(format_literal(lit)) == lit


def test_examples():
    assert parse_ring_expr("bowtie(Z/8, (2))") == Amalgamation(ZMod(8), (2,))
    assert parse_ring_expr("localize(Z/12, (2))") == Localization(ZMod(12), (2,))
    assert parse_ring_expr(" product( Z/2 ,Z/3 ) ") == Product(ZMod(2), ZMod(3))
    assert parse_ideal("((2,2),(0,2))") == ((2, 2), (0, 2))
    assert parse_ideal("()") == ()
    assert str(parse_ring_expr("bowtie( Z/8 ,( 2 ))")) == "bowtie(Z/8,(2))"


@pytest.mark.parametrize(
    "text,position",
    [
        ("bowtie(Z/8,(2)", 14),
        ("Z/", 2),
        ("Z/0", 2),
        ("frob(Z/8,(2))", 0),
        ("Z/8 extra", 4),
        ("product(Z/2;Z/3)", 11),
        ("", 0),
    ],
)
def test_syntax_errors_report_positions(text, position):
    with pytest.raises(ParseError) as info:
        parse_ring_expr(text)
    assert info.value.position == position


def test_syntax_error_lists_expected_tokens():
    with pytest.raises(ParseError) as info:
        parse_ring_expr("bowtie(Z/8 (2))")
    assert "','" in info.value.expected


def test_semantic_errors():
    with pytest.raises(ImproperIdeal):
        resolve(parse_ring_expr("bowtie(Z/8, (3))"))
    assert resolve(parse_ring_expr("bowtie(Z/8,(3))"), allow_improper=True).size == 64
    with pytest.raises(NotPrime):
        resolve(parse_ring_expr("localize(Z/12,(4))"))
    with pytest.raises(ElementError):
        resolve(parse_ring_expr("bowtie(Z/8,((1,1)))"))
    with pytest.raises(ElementError):
        resolve(parse_ring_expr("bowtie(bowtie(Z/4,(2)),((1,2)))"))
