"""Weight detection in the given coordinates and the Holland-Mond test.

For a weighted-homogeneous isolated singularity of degree r with positive
integer weights w, the logarithmic comparison theorem holds at the origin
if and only if the Milnor algebra has no nonzero graded piece in degree
i*r - sum(w) for 1 <= i <= n-1 (with n+1 the number of variables).  The
check is empty for plane curves, where the theorem is equivalent to
quasihomogeneity.
"""

from math import gcd

from .rationals import Q
from .linalg import kernel
from .poly import exp_deg


class WeightSystem:
    """Positive integer weights and degree with gcd(w_0..w_n, r) = 1."""

    __slots__ = ("weights", "degree")

    def __init__(self, weights, degree):
        weights = tuple(int(w) for w in weights)
        degree = int(degree)
        if any(w <= 0 for w in weights) or degree <= 0:
            raise ValueError("weights and degree must be positive")
        g = gcd(degree, *weights)
        self.weights = tuple(w // g for w in weights)
        self.degree = degree // g

    def weighted_degree(self, exp):
        return sum(w * e for w, e in zip(self.weights, exp))

    def __eq__(self, other):
        return (
            isinstance(other, WeightSystem)
            and self.weights == other.weights
            and self.degree == other.degree
        )

    def __repr__(self):
        return f"WeightSystem(weights={self.weights}, degree={self.degree})"


def is_weighted_homogeneous(f, ws):
    return all(ws.weighted_degree(e) == ws.degree for e in f.terms)


# -- Fourier-Motzkin feasibility for strict inequalities -----------------


def _fm_feasible(forms, nvars):
    """Feasibility over Q of {form > 0} for affine forms (const, coeffs)."""
    forms = [f for f in forms if any(c != 0 for c in f[1:]) or True]
    for k in range(nvars):
        pos, neg, rest = [], [], []
        for f in forms:
            c = f[1 + k]
            if c > 0:
                pos.append(f)
            elif c < 0:
                neg.append(f)
            else:
                rest.append(f)
        new = rest
        for p in pos:
            a = p[1 + k]
            for n in neg:
                b = -n[1 + k]
                comb = [b * p[t] + a * n[t] for t in range(len(p))]
                comb[1 + k] = Q(0)
                new.append(tuple(comb))
        forms = new
    return all(f[0] > 0 for f in forms)


def _substitute_equalities(eqs, ineqs, nvars):
    """Eliminate equalities by exact Gaussian substitution.

    Returns (ineqs2, nvars_alive, consistent)."""
    rows = [list(e) for e in eqs]
    ineqs = [list(f) for f in ineqs]
    pivots = []
    r = 0
    for k in range(nvars):
        pr = None
        for i in range(r, len(rows)):
            if rows[i][1 + k] != 0:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = 1 / rows[r][1 + k]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][1 + k] != 0:
                f = rows[i][1 + k]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        for f in ineqs:
            if f[1 + k] != 0:
                c = f[1 + k]
                for t in range(len(f)):
                    f[t] -= c * rows[r][t]
        pivots.append(k)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][0] != 0:
            return None, None, False
    return [tuple(f) for f in ineqs], nvars, True


def _feasible(eqs, ineqs, nvars):
    ineqs2, nv, ok = _substitute_equalities(eqs, ineqs, nvars)
    if not ok:
        return False
    return _fm_feasible(ineqs2, nv)


def detect_weights(f, degree_cap=None):
    """Positive integer weight system in the given coordinates, or None.

    Solves <w, a> = r over all exponents a of f.  When the positive
    solution set is a cone of dimension one the primitive generator is
    returned; for higher-dimensional cones the canonical choice minimizes
    r and then picks the lexicographically smallest weight tuple (integer
    search capped, which only matters for highly degenerate inputs)."""
    if f.is_zero():
        raise ValueError("f must be nonzero")
    nv = f.nvars
    rows = [[Q(a) for a in e] + [Q(-1)] for e in f.terms]
    basis = kernel(rows, nv + 1)
    d = len(basis)
    if d == 0:
        return None
    if d == 1:
        v = basis[0]
        if v[nv] == 0:
            return None
        if v[nv] < 0:
            v = [-x for x in v]
        if any(x <= 0 for x in v[:nv]):
            return None
        den = 1
        for x in v:
            den = den * int(x.denominator) // gcd(den, int(x.denominator))
        ints = [int(x * den) for x in v]
        g = 0
        for x in ints:
            g = gcd(g, x)
        ints = [x // g for x in ints]
        return WeightSystem(ints[:nv], ints[nv])

    # cone of dimension > 1: minimize r, then lex-minimal integer weights
    if degree_cap is None:
        degree_cap = 6 * max(1, f.total_degree()) ** 2
    # coordinates: point = sum t_m * basis[m]
    w_forms = []
    for i in range(nv):
        w_forms.append(tuple([Q(0)] + [b[i] for b in basis]))
    r_form = tuple([Q(0)] + [b[nv] for b in basis])

    def minus_const(form, val):
        out = list(form)
        out[0] -= val
        return tuple(out)

    if not _feasible([], list(w_forms) + [r_form], d):
        return None
    for r_target in range(1, degree_cap + 1):
        eqs = [minus_const(r_form, Q(r_target))]
        if not _feasible(eqs, list(w_forms), d):
            continue
        fixed = []
        ok = True
        for i in range(nv):
            found = None
            for w_val in range(1, r_target + 1):
                trial = eqs + fixed + [minus_const(w_forms[i], Q(w_val))]
                rest = [w_forms[j] for j in range(i + 1, nv)]
                if _feasible(trial, rest, d):
                    found = w_val
                    fixed.append(minus_const(w_forms[i], Q(w_val)))
                    break
            if found is None:
                ok = False
                break
        if not ok:
            continue
        weights = [int(-form[0]) for form in fixed]
        ws = WeightSystem(weights, r_target)
        if is_weighted_homogeneous(f, ws):
            return ws
    return None


# -- graded dimensions and the verdict ------------------------------------


def graded_dims(md, ws):
    """Weighted-degree dimension table of the Milnor algebra.

    Valid because the Jacobian ideal of a weighted-homogeneous f is
    weighted-homogeneous, so the standard monomial basis is graded."""
    if not is_weighted_homogeneous(md.f, ws):
        raise ValueError("f is not weighted-homogeneous for the given weights")
    dims = {}
    for e in md.basis:
        deg = ws.weighted_degree(e)
        dims[deg] = dims.get(deg, 0) + 1
    return dims


class HollandMondResult:
    __slots__ = ("holds", "witnesses", "checked")

    def __init__(self, holds, witnesses, checked):
        self.holds = holds
        self.witnesses = witnesses  # list of (i, degree, dim) that failed
        self.checked = checked  # list of (i, degree, dim) for all i in range

    def __repr__(self):
        return f"HollandMondResult(holds={self.holds}, witnesses={self.witnesses})"


def holland_mond_verdict(f, md, ws):
    """Graded-dimension criterion for weight-visible inputs.

    HOLDS iff (O/J_f) has dimension zero in degree i*r - sum(w) for every
    i with 1 <= i <= n-1; an empty range (plane curves and below) holds
    vacuously.  Invariant under rescaling of the weight system."""
    if not is_weighted_homogeneous(f, ws):
        raise ValueError("f is not weighted-homogeneous for the given weights")
    nv = f.nvars
    n = nv - 1
    dims = graded_dims(md, ws)
    wsum = sum(ws.weights)
    checked = []
    witnesses = []
    for i in range(1, n):
        deg = i * ws.degree - wsum
        dim = dims.get(deg, 0) if deg >= 0 else 0
        checked.append((i, deg, dim))
        if dim != 0:
            witnesses.append((i, deg, dim))
    return HollandMondResult(not witnesses, witnesses, checked)
