"""Logarithmic vector fields along the divisor D = {f = 0}.

A derivation delta = sum g_i d/dx_i is logarithmic when delta(f) = h*f for
some cofactor h.  Generators are obtained from the syzygies of
(df/dx_0, ..., df/dx_n, -f): the last syzygy component is the cofactor.
Polynomial representatives generate the module over the local ring by
flatness, and all diagnostics used here (trace, nilpotency, residues) are
evaluated at the origin, where representatives suffice.
"""

from .errors import NotInMDeltaError, ConsistencyError
from .linalg import trace, is_nilpotent, jordan_chevalley as _jc_matrix
from .localalg import standard_basis, mora_division
from .poly import Polynomial, LOCAL_ORDER
from .rationals import Q
from .syzygy import syzygies


class Derivation:
    """Vector field sum g_i d/dx_i with exact cofactor: delta(f) = h*f."""

    __slots__ = ("coeffs", "cofactor", "f")

    def __init__(self, coeffs, cofactor, f):
        self.coeffs = tuple(coeffs)
        self.cofactor = cofactor
        self.f = f
        acc = Polynomial.zero(f.nvars)
        for g, i in zip(self.coeffs, range(f.nvars)):
            acc = acc + g * f.diff(i)
        if acc != cofactor * f:
            raise ConsistencyError("coefficients do not satisfy delta(f) = h*f")

    def apply(self, p):
        """delta(p) = sum g_i * dp/dx_i."""
        acc = Polynomial.zero(p.nvars)
        for i, g in enumerate(self.coeffs):
            acc = acc + g * p.diff(i)
        return acc

    def __repr__(self):
        return f"Derivation(coeffs={self.coeffs!r})"


def derlog_generators(f, degree_bound=None, expect_nonqh=False):
    """Generating set of the logarithmic vector fields of f.

    Syzygy components against (df_0, ..., df_n, -f); the final component
    becomes the cofactor.  With expect_nonqh the constant term of every
    cofactor is checked to vanish, which certifies internal consistency
    for a non-quasihomogeneous divisor."""
    nv = f.nvars
    if degree_bound is None:
        degree_bound = 2 * f.total_degree() + nv
    gens = [f.diff(i) for i in range(nv)] + [-f]
    rows = syzygies(gens, degree_bound)
    out = []
    for row in rows:
        coeffs = row[:nv]
        h = row[nv]
        if all(p.is_zero() for p in coeffs) and h.is_zero():
            continue
        d = Derivation(coeffs, h, f)
        if expect_nonqh and h.constant_term() != 0:
            raise ConsistencyError(
                "cofactor with a unit constant term on a divisor that was "
                "certified non-quasihomogeneous"
            )
        out.append(d)
    return out


def is_logarithmic(coeffs, f):
    """Test delta(f) in (f) over the local ring.

    Returns (flag, cofactor_quotient, unit): when flag is true,
    unit * delta(f) = cofactor_quotient * f exactly."""
    nv = f.nvars
    df = Polynomial.zero(nv)
    for i, g in enumerate(coeffs):
        df = df + g * f.diff(i)
    if df.is_zero():
        zero = Polynomial.zero(nv)
        return True, zero, Polynomial.const(nv, 1)
    sb = standard_basis([f], LOCAL_ORDER)
    res = mora_division(df, sb)
    if res.normal_form.is_zero():
        return True, res.quotients[0], res.unit
    return False, None, None


class LinearPart:
    """Linear part of a derivation at the origin.

    The matrix is the transposed Jacobian of the coefficient tuple at 0,
    the convention under which the bracket of vector fields maps to the
    matrix commutator."""

    __slots__ = ("matrix", "trace", "nilpotent")

    def __init__(self, matrix):
        self.matrix = matrix
        self.trace = trace(matrix)
        self.nilpotent = is_nilpotent(matrix)

    def __repr__(self):
        return f"LinearPart(trace={self.trace}, nilpotent={self.nilpotent})"


def linear_part(delta):
    """Image of the derivation in gl_{n+1} (coefficients reduced mod m^2).

    Raises NotInMDeltaError when some coefficient has a nonzero constant
    term; in that case the divisor splits off a smooth factor and the
    construction does not apply in these coordinates."""
    f = delta.f
    nv = f.nvars
    for g in delta.coeffs:
        if g.constant_term() != 0:
            raise NotInMDeltaError(
                "derivation has a coefficient with nonzero constant term"
            )
    m = [[Q(0)] * nv for _ in range(nv)]
    for j, g in enumerate(delta.coeffs):
        for i in range(nv):
            e = tuple(1 if t == i else 0 for t in range(nv))
            c = g.terms.get(e)
            if c is not None:
                m[i][j] = c
    return LinearPart(m)


def jordan_chevalley(matrix):
    """Exact semisimple + nilpotent splitting of a rational matrix."""
    return _jc_matrix(matrix)


def trace_residue(delta):
    """Constant term of div(delta) - delta(f)/f, i.e. trace of the linear
    part minus the cofactor at 0.

    For a non-quasihomogeneous divisor the cofactor vanishes at 0 and the
    trace of every logarithmic linear part is 0, so a nonzero value
    certifies an internal inconsistency."""
    f = delta.f
    div0 = Q(0)
    for i, g in enumerate(delta.coeffs):
        dg = g.diff(i)
        div0 += dg.constant_term()
    return div0 - delta.cofactor.constant_term()


def lie_bracket(d1, d2):
    """Coefficients of [d1, d2]: component i is d1(d2_i) - d2(d1_i)."""
    nv = d1.f.nvars
    out = []
    for i in range(nv):
        out.append(d1.apply(d2.coeffs[i]) - d2.apply(d1.coeffs[i]))
    return tuple(out)


def bracket_derivation(d1, d2):
    """The bracket as a Derivation; its exact cofactor is
    d1(h2) - d2(h1), so the bracket of logarithmic fields is logarithmic."""
    coeffs = lie_bracket(d1, d2)
    h = d1.apply(d2.cofactor) - d2.apply(d1.cofactor)
    return Derivation(coeffs, h, d1.f)
