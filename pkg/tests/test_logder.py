import pytest

from lctsing.errors import NotInMDeltaError
from lctsing.linalg import mat_mul, mat_sub
from lctsing.localalg import milnor_data
from lctsing.logder import (
    Derivation,
    bracket_derivation,
    derlog_generators,
    is_logarithmic,
    jordan_chevalley,
    lie_bracket,
    linear_part,
    trace_residue,
)
from lctsing.poly import parse_polynomial
from lctsing.rationals import Q

V2 = ["x", "y"]


def P(text, names=V2):
    return parse_polynomial(text, names)


def _find(gens, coeffs):
    """Locate a generator proportional to the given coefficient tuple."""
    for d in gens:
        ratio = None
        good = True
        for g, t in zip(d.coeffs, coeffs):
            if g.is_zero() != t.is_zero():
                good = False
                break
            if g.is_zero():
                continue
            for e, c in t.terms.items():
                b = g.terms.get(e)
                if b is None:
                    good = False
                    break
                r = b / c
                if ratio is None:
                    ratio = r
                elif r != ratio:
                    good = False
                    break
            if not good or len(g.terms) != len(t.terms):
                good = False
                break
        if good and ratio is not None:
            return d
    return None


def test_derlog_cone_contains_euler_and_rotation():
    f = P("x^2+y^2")
    gens = derlog_generators(f)
    euler = _find(gens, (P("x"), P("y")))
    rotation = _find(gens, (P("y"), P("-x")))
    assert euler is not None and rotation is not None
    # Euler cofactor is a nonzero constant, rotation cofactor vanishes
    assert euler.cofactor.constant_term() != 0
    assert rotation.cofactor.is_zero()


def test_derlog_normal_crossing():
    f = P("x*y")
    gens = derlog_generators(f)
    dx = _find(gens, (P("x"), P("0")))
    dy = _find(gens, (P("0"), P("y")))
    assert dx is not None and dy is not None


def test_derlog_running_example_cofactors_vanish_at_origin(corpus):
    entry = corpus["t55_susp5"]
    gens = derlog_generators(entry.f, expect_nonqh=True)
    assert gens
    for d in gens:
        assert d.cofactor.constant_term() == 0


def test_is_logarithmic_cases():
    f = P("x^2+y^2")
    ok, q, unit = is_logarithmic((P("1/2*x"), P("1/2*y")), f)
    assert ok
    # unit * delta(f) = q * f with delta(f) = f here, so q/unit = 1
    assert q == unit
    ok, _, _ = is_logarithmic((P("1"), P("0")), f)
    assert not ok
    ok, q, _ = is_logarithmic((P("y"), P("-x")), f)
    assert ok and q.is_zero()


def test_linear_part_euler_and_rotation():
    f = P("x^2+y^2")
    euler = Derivation((P("1/2*x"), P("1/2*y")), P("1"), f)
    lp = linear_part(euler)
    assert lp.matrix == [[Q(1, 2), Q(0)], [Q(0), Q(1, 2)]]
    assert lp.trace == 1 and not lp.nilpotent

    rot = Derivation((P("y"), P("-x")), P("0"), f)
    lp2 = linear_part(rot)
    assert lp2.trace == 0 and not lp2.nilpotent  # char poly t^2 + 1


def test_linear_part_requires_vanishing_constant_terms():
    f = P("x^2+y^2")
    # not logarithmic, but the constructor only checks the exact relation
    bad = Derivation.__new__(Derivation)
    bad.coeffs = (P("1+x"), P("0"))
    bad.cofactor = P("0")
    bad.f = f
    with pytest.raises(NotInMDeltaError):
        linear_part(bad)


def test_jordan_chevalley_examples():
    nil = [[Q(0), Q(1)], [Q(0), Q(0)]]
    s, n = jordan_chevalley(nil)
    assert all(x == 0 for row in s for x in row) and n == nil
    diag = [[Q(3), Q(0)], [Q(0), Q(-1)]]
    s, n = jordan_chevalley(diag)
    assert s == diag and all(x == 0 for row in n for x in row)
    a = [[Q(1), Q(1)], [Q(0), Q(1)]]
    s, n = jordan_chevalley(a)
    assert s == [[Q(1), Q(0)], [Q(0), Q(1)]]
    assert n == [[Q(0), Q(1)], [Q(0), Q(0)]]


def test_trace_residue_cone_fields():
    f = P("x^2+y^2")
    euler = Derivation((P("1/2*x"), P("1/2*y")), P("1"), f)
    rot = Derivation((P("y"), P("-x")), P("0"), f)
    assert trace_residue(euler) == 0
    assert trace_residue(rot) == 0


def test_lie_bracket_basic_identities():
    f = P("x*y")
    d1 = Derivation((P("x"), P("0")), P("1"), f)
    d2 = Derivation((P("0"), P("y")), P("1"), f)
    br = lie_bracket(d1, d2)
    assert all(p.is_zero() for p in br)

    g = P("x^2+y^2")
    # [x d/dy, y d/dx] = x d/dx - y d/dy on raw coefficient tuples
    e1 = Derivation.__new__(Derivation)
    e1.coeffs, e1.cofactor, e1.f = (P("0"), P("x")), None, g
    e2 = Derivation.__new__(Derivation)
    e2.coeffs, e2.cofactor, e2.f = (P("y"), P("0")), None, g
    br2 = lie_bracket(e1, e2)
    assert br2 == (P("x"), P("-y"))


def test_bracket_closure_and_homomorphism(corpus):
    for name in ("t55_curve", "t55_susp5"):
        entry = corpus[name]
        gens = derlog_generators(entry.f)
        for d1, d2 in [(gens[0], gens[1]), (gens[1], gens[2])]:
            br = bracket_derivation(d1, d2)
            ok, _, _ = is_logarithmic(br.coeffs, entry.f)
            assert ok
            lp = linear_part(br).matrix
            m1 = linear_part(d1).matrix
            m2 = linear_part(d2).matrix
            assert lp == mat_sub(mat_mul(m1, m2), mat_mul(m2, m1))


def test_nonqh_corpus_trace_zero_and_nilpotency(corpus):
    for entry in corpus.values():
        if not entry.nonqh:
            continue
        gens = derlog_generators(entry.f, expect_nonqh=True)
        assert gens
        order3 = entry.f.order() >= 3
        for d in gens:
            lp = linear_part(d)
            assert lp.trace == 0
            if order3:
                assert lp.nilpotent
            assert trace_residue(d) == 0
