import pytest
from hypothesis import given, settings, strategies as st

from lctsing.errors import ParseError
from lctsing.poly import (
    DEGREVLEX,
    LOCAL_ORDER,
    Polynomial,
    exp_add,
    m_adic_order,
    parse_polynomial,
    partial_derivative,
    poly_str,
    ring_arithmetic,
)
from lctsing.rationals import Q

V3 = ["x", "y", "z"]
V2 = ["x", "y"]

INF = float("inf")


def P(text, names=V3):
    return parse_polynomial(text, names)


# -- parsing ---------------------------------------------------------------


def test_parse_running_example():
    f = P("x^5+x^2*y^2+y^5+z^5")
    assert len(f.terms) == 4
    assert f.terms[(5, 0, 0)] == 1
    assert f.terms[(2, 2, 0)] == 1


def test_parse_zero_and_single_variable():
    assert P("0").is_zero()
    x = P("x")
    assert x.terms == {(1, 0, 0): Q(1)}


def test_parse_rational_coefficients_and_parens():
    p = P("1/2*x*(x-3)")
    assert p.terms == {(2, 0, 0): Q(1, 2), (1, 0, 0): Q(-3, 2)}


def test_parse_unknown_variable_reports_position():
    with pytest.raises(ParseError) as exc:
        P("x+q")
    assert exc.value.position == 2


def test_parse_negative_exponent_rejected():
    with pytest.raises(ParseError):
        P("x^-2")


def test_parse_syntax_error():
    with pytest.raises(ParseError):
        P("x++")
    with pytest.raises(ParseError):
        P("(x")


# -- arithmetic -------------------------------------------------------------


def test_product_difference_of_squares():
    assert ring_arithmetic(P("x+y"), P("x-y"), "mul") == P("x^2-y^2")


def test_additive_identity():
    p = P("x^3+2*y")
    assert ring_arithmetic(p, P("0"), "add") == p


def test_monomial_product():
    assert ring_arithmetic(P("x^2*y^2"), P("x^3"), "mul") == P("x^5*y^2")


def test_variable_count_mismatch():
    with pytest.raises(ValueError):
        ring_arithmetic(P("x", V2), P("x", V3), "add")


def test_pow():
    assert P("x+1") ** 3 == P("x^3+3*x^2+3*x+1")


# -- derivatives and order ---------------------------------------------------


def test_partial_derivatives_of_running_example():
    f = P("x^5+x^2*y^2+y^5+z^5")
    assert partial_derivative(f, 0) == P("5*x^4+2*x*y^2")
    assert partial_derivative(f, 2) == P("5*z^4")


def test_derivative_of_constant():
    assert partial_derivative(P("7"), 0).is_zero()


def test_derivative_index_range():
    with pytest.raises(IndexError):
        partial_derivative(P("x"), 3)


def test_m_adic_order():
    assert m_adic_order(P("x^5+x^2*y^2+y^5+z^5")) == 4
    assert m_adic_order(P("x^2+y^2+z^2")) == 2
    assert m_adic_order(P("0")) == INF


# -- printing ----------------------------------------------------------------


def test_print_parse_roundtrip_examples():
    for text in ["x^5+x^2*y^2+y^5+z^5", "-x+1/2", "0", "x", "2/3*x*y*z-z^5"]:
        p = P(text)
        assert parse_polynomial(poly_str(p, V3), V3) == p


# -- hypothesis property tests ------------------------------------------------

coeffs = st.integers(min_value=-9, max_value=9).map(Q)
exps = st.tuples(
    st.integers(0, 4), st.integers(0, 4), st.integers(0, 4)
)


@st.composite
def polys(draw, max_terms=5):
    terms = draw(
        st.dictionaries(exps, coeffs, min_size=0, max_size=max_terms)
    )
    return Polynomial(3, terms)


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), st.integers(0, 2))
def test_leibniz_rule(p, q, i):
    lhs = (p * q).diff(i)
    rhs = p * q.diff(i) + q * p.diff(i)
    assert lhs == rhs


@settings(max_examples=60, deadline=None)
@given(polys())
def test_parse_print_identity(p):
    assert parse_polynomial(poly_str(p, V3), V3) == p


@settings(max_examples=80, deadline=None)
@given(exps, exps, exps)
def test_monomial_order_laws(a, b, c):
    for order in (DEGREVLEX, LOCAL_ORDER):
        ka, kb, kc = order.key(a), order.key(b), order.key(c)
        # total and antisymmetric
        assert (ka < kb) + (kb < ka) + (ka == kb) == 1
        # transitive
        if ka < kb and kb < kc:
            assert ka < kc
        # compatible with multiplication
        if ka < kb:
            assert order.key(exp_add(a, c)) < order.key(exp_add(b, c))


def test_local_order_has_one_as_largest():
    one = (0, 0, 0)
    for m in [(1, 0, 0), (0, 3, 1), (2, 2, 2)]:
        assert LOCAL_ORDER.key(one) > LOCAL_ORDER.key(m)
