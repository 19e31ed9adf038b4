"""Dense exact linear algebra over the rationals.

Matrices are lists of row lists with rational entries.  Everything is
deterministic: pivots are chosen by first-nonzero scan in fixed row and
column order, never by magnitude.
"""

from fractions import Fraction

import mpmath

from .errors import IrrationalExponentError
from .rationals import Q

# -- basic matrix/vector helpers ---------------------------------------


def zeros(r, c):
    return [[Q(0)] * c for _ in range(r)]


def eye(n):
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Q(1)
    return m


def mat_copy(a):
    return [row[:] for row in a]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c):
    c = Q(c)
    return [[c * x for x in row] for row in a]


def mat_mul(a, b):
    n, k = len(a), len(b)
    m = len(b[0]) if k else 0
    bt = list(zip(*b))
    out = []
    for row in a:
        out.append(
            [sum((row[t] * col[t] for t in range(k)), Q(0)) for col in bt]
        )
    return out


def mat_vec(a, v):
    return [sum((row[j] * v[j] for j in range(len(v))), Q(0)) for row in a]


def transpose(a):
    return [list(row) for row in zip(*a)]


def mat_eq(a, b):
    return a == b


def is_zero_matrix(a):
    return all(x == 0 for row in a for x in row)


def mat_pow(a, n):
    result = eye(len(a))
    base = a
    while n:
        if n & 1:
            result = mat_mul(result, base)
        n >>= 1
        if n:
            base = mat_mul(base, base)
    return result


def trace(a):
    return sum((a[i][i] for i in range(len(a))), Q(0))


# -- elimination --------------------------------------------------------


def rref(a):
    """Reduced row echelon form.  Returns (R, pivot_columns)."""
    m = mat_copy(a)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pr = None
        for i in range(r, rows):
            if m[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a):
    if not a:
        return 0
    return len(rref(a)[1])


def kernel(a, ncols=None):
    """Basis of the right kernel {v : a v = 0} as a list of vectors."""
    if not a:
        return [
            [Q(1) if i == j else Q(0) for i in range(ncols)] for j in range(ncols)
        ]
    ncols = len(a[0]) if ncols is None else ncols
    r, pivots = rref(a)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [Q(0)] * ncols
        v[fc] = Q(1)
        for i, pc in enumerate(pivots):
            v[pc] = -r[i][fc]
        basis.append(v)
    return basis


def solve(a, b):
    """One solution of a x = b, or None when inconsistent."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    aug = [a[i][:] + [b[i]] for i in range(rows)]
    r, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [Q(0)] * cols
    for i, pc in enumerate(pivots):
        x[pc] = r[i][cols]
    return x


def solve_many(a, bs):
    """Solutions of a x = b for each column b in bs; None if any fails."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    k = len(bs[0]) if rows else 0
    aug = [a[i][:] + list(bs[i]) for i in range(rows)]
    r, pivots = rref(aug)
    if any(p >= cols for p in pivots):
        return None
    out = zeros(cols, k)
    for i, pc in enumerate(pivots):
        for j in range(k):
            out[pc][j] = r[i][cols + j]
    return out


def inverse(a):
    n = len(a)
    x = solve_many(a, eye(n))
    if x is None:
        raise ZeroDivisionError("matrix is singular")
    return x


def in_span(basis, v):
    """True when v lies in the span of the given vectors."""
    if all(x == 0 for x in v):
        return True
    if not basis:
        return False
    a = transpose(basis)
    return solve(a, list(v)) is not None


def column_space_basis(vectors):
    """Subset-free basis of the span of the given vectors (deterministic)."""
    basis = []
    rows = []
    for v in vectors:
        cand = rows + [list(v)]
        if rank(cand) > len(rows):
            rows = cand
            basis.append(list(v))
    return basis


# -- univariate polynomial helpers (coefficient lists, low to high) -----


def poly_normalize(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_add(p, q):
    n = max(len(p), len(q))
    out = [Q(0)] * n
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return poly_normalize(out)


def poly_mul(p, q):
    if not p or not q:
        return []
    out = [Q(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return poly_normalize(out)


def poly_scale(p, c):
    c = Q(c)
    return poly_normalize([c * x for x in p])


def poly_divmod(p, q):
    """Division with remainder in Q[x]."""
    p = list(p)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    out = [Q(0)] * max(0, len(p) - len(q) + 1)
    lead = q[-1]
    while len(p) >= len(q) and p:
        if p[-1] == 0:
            p.pop()
            continue
        c = p[-1] / lead
        d = len(p) - len(q)
        out[d] = c
        for i, b in enumerate(q):
            p[d + i] -= c * b
        p.pop()
    return poly_normalize(out), poly_normalize(p)


def poly_gcd(p, q):
    p, q = list(p), list(q)
    while q:
        _, r = poly_divmod(p, q)
        p, q = q, r
    if p:
        lead = p[-1]
        p = [c / lead for c in p]
    return p


def poly_diff(p):
    return poly_normalize([i * c for i, c in enumerate(p)][1:])


def poly_eval(p, x):
    acc = Q(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_xgcd(p, q):
    """(g, u, v) with u p + v q = g, g monic."""
    r0, r1 = list(p), list(q)
    u0, u1 = [Q(1)], []
    v0, v1 = [], [Q(1)]
    while r1:
        quo, rem = poly_divmod(r0, r1)
        r0, r1 = r1, rem
        u0, u1 = u1, poly_add(u0, poly_scale(poly_mul(quo, u1), -1))
        v0, v1 = v1, poly_add(v0, poly_scale(poly_mul(quo, v1), -1))
    if r0:
        lead = r0[-1]
        r0 = [c / lead for c in r0]
        u0 = [c / lead for c in u0]
        v0 = [c / lead for c in v0]
    return r0, u0, v0


def squarefree_part(p):
    g = poly_gcd(p, poly_diff(p))
    if len(g) <= 1:
        out = list(p)
    else:
        out, _ = poly_divmod(p, g)
    if out:
        lead = out[-1]
        out = [c / lead for c in out]
    return out


def matpoly_eval(p, a):
    """Evaluate a coefficient-list polynomial at a square matrix (Horner)."""
    n = len(a)
    acc = zeros(n, n)
    for c in reversed(p):
        acc = mat_mul(acc, a)
        for i in range(n):
            acc[i][i] += c
    return acc


# -- characteristic polynomial ------------------------------------------


def charpoly(a):
    """Characteristic polynomial det(xI - A), coefficients low to high.

    Similarity reduction to Hessenberg form followed by the standard
    leading-minor recurrence; exact over Q.
    """
    n = len(a)
    h = mat_copy(a)
    for j in range(n - 2):
        piv = None
        for i in range(j + 1, n):
            if h[i][j] != 0:
                piv = i
                break
        if piv is None:
            continue
        if piv != j + 1:
            h[j + 1], h[piv] = h[piv], h[j + 1]
            for row in h:
                row[j + 1], row[piv] = row[piv], row[j + 1]
        pv = h[j + 1][j]
        for i in range(j + 2, n):
            if h[i][j] == 0:
                continue
            f = h[i][j] / pv
            h[i] = [x - f * y for x, y in zip(h[i], h[j + 1])]
            for row in h:
                row[j + 1] += f * row[i]
    # p[k] = charpoly of leading k x k block
    polys = [[Q(1)]]
    for k in range(1, n + 1):
        term = poly_mul([-h[k - 1][k - 1], Q(1)], polys[k - 1])
        prod = Q(1)
        for i in range(k - 2, -1, -1):
            prod *= h[i + 1][i]
            term = poly_add(term, poly_scale(polys[i], -h[i][k - 1] * prod))
        polys.append(term)
    p = polys[n]
    return p + [Q(1)] * (n + 1 - len(p)) if len(p) < n + 1 else p


# -- rational eigenvalue extraction -------------------------------------


def _mpf_to_rational(x, max_den):
    """Best rational approximation via continued fractions."""
    f = Fraction(mpmath.nstr(x, 30, strip_zeros=False)).limit_denominator(max_den)
    return Q(f.numerator, f.denominator)


def rational_roots(p, max_den=10**6):
    """All roots of p assuming they are rational.

    Returns {root: multiplicity}.  Raises IrrationalExponentError when the
    polynomial does not split over Q (after exact verification of every
    candidate produced by high-precision numeric isolation).
    """
    p = poly_normalize(list(p))
    if len(p) <= 1:
        return {}
    sf = squarefree_part(p)
    deg = len(sf) - 1
    if deg == 0:
        return {}
    candidates = set()
    if deg == 1:
        candidates.add(-sf[0] / sf[1])
    else:
        with mpmath.workdps(60):
            coeffs = [mpmath.mpf(int(c.numerator)) / mpmath.mpf(int(c.denominator))
                      for c in reversed(sf)]
            roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=200)
        for r in roots:
            if abs(mpmath.im(r)) > mpmath.mpf("1e-25"):
                continue
            for den in (max_den, 10**9, 10**12):
                cand = _mpf_to_rational(mpmath.re(r), den)
                if poly_eval(sf, cand) == 0:
                    candidates.add(cand)
                    break
    result = {}
    rem = list(p)
    for root in sorted(candidates):
        mult = 0
        while True:
            quo, r = poly_divmod(rem, [-root, Q(1)])
            if r:
                break
            rem = quo
            mult += 1
        if mult:
            result[root] = mult
    if len(rem) > 1:
        raise IrrationalExponentError(
            "characteristic polynomial has a non-rational root; "
            "increase truncation or report a bug"
        )
    return result


def generalized_eigenspaces(a):
    """[(eigenvalue, multiplicity, basis)] sorted by eigenvalue.

    Requires the characteristic polynomial to split over Q."""
    n = len(a)
    roots = rational_roots(charpoly(a))
    out = []
    total = 0
    for lam in sorted(roots):
        mult = roots[lam]
        shifted = mat_copy(a)
        for i in range(n):
            shifted[i][i] -= lam
        basis = kernel(mat_pow(shifted, mult), n)
        if len(basis) != mult:
            raise IrrationalExponentError(
                f"generalized eigenspace dimension mismatch at {lam}"
            )
        out.append((lam, mult, basis))
        total += mult
    if total != n:
        raise IrrationalExponentError("eigenvalue multiplicities do not sum to size")
    return out


def jordan_chevalley(a):
    """Exact decomposition a = S + N with S semisimple, N nilpotent, SN = NS.

    Newton iteration on the squarefree part of the characteristic
    polynomial; no eigenvalue computation needed."""
    n = len(a)
    p = charpoly(a)
    q = squarefree_part(p)
    if len(q) <= 1:
        return mat_copy(a), zeros(n, n)
    g, u, _ = poly_xgcd(poly_diff(q), q)
    if len(g) != 1:
        # q and q' share a factor only if q was not squarefree
        raise ValueError("squarefree part validation failed")
    s = mat_copy(a)
    for _ in range(n.bit_length() + 1):
        qs = matpoly_eval(q, s)
        if is_zero_matrix(qs):
            break
        corr = mat_mul(qs, matpoly_eval(u, s))
        s = mat_sub(s, corr)
    else:
        raise ValueError("Jordan-Chevalley iteration did not converge")
    return s, mat_sub(a, s)


def is_nilpotent(a):
    n = len(a)
    p = charpoly(a)
    return all(c == 0 for c in p[:-1])
