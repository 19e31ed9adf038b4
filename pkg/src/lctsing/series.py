"""Truncated Laurent series in one variable s over exact rationals.

Every series carries its own precision: coefficients of powers below
`prec` are exact, everything above is unknown.  Matrices over series are
plain lists of lists.  The lattice routines implement column echelon over
the power series ring with valuation pivoting, which is all the Gauss-
Manin engine needs: bases come out lower triangular with monic s-power
diagonal, so solving against them is forward substitution.
"""

from .errors import ConsistencyError, TruncationError
from .rationals import Q

BIG = 10**9  # effectively infinite precision


class SS:
    """Scalar truncated Laurent series: sum(c[t] * s**(lo+t)), exact below prec."""

    __slots__ = ("lo", "c", "prec")

    def __init__(self, lo, c, prec):
        # normalize: strip leading zeros and anything at or above prec
        n = len(c)
        keep_hi = min(n, max(0, prec - lo))
        start = 0
        while start < keep_hi and c[start] == 0:
            start += 1
        if start >= keep_hi:
            self.lo = prec
            self.c = []
        else:
            end = keep_hi
            while end > start and c[end - 1] == 0:
                end -= 1
            self.lo = lo + start
            self.c = c[start:end]
        self.prec = prec

    @classmethod
    def zero(cls, prec=BIG):
        return cls(prec, [], prec)

    @classmethod
    def const(cls, q, prec=BIG):
        return cls(0, [Q(q)], prec)

    @classmethod
    def monomial(cls, q, k, prec=BIG):
        return cls(k, [Q(q)], prec)

    def is_zero(self):
        return not self.c

    def val(self):
        """Valuation, or None when zero within the window."""
        return self.lo if self.c else None

    def val_eff(self):
        return self.lo if self.c else self.prec

    def coeff(self, p):
        if p >= self.prec:
            raise TruncationError(f"coefficient of s^{p} beyond precision {self.prec}")
        i = p - self.lo
        if 0 <= i < len(self.c):
            return self.c[i]
        return Q(0)

    def __add__(self, other):
        prec = min(self.prec, other.prec)
        if not self.c:
            return SS(other.lo, list(other.c), prec)
        if not other.c:
            return SS(self.lo, list(self.c), prec)
        lo = min(self.lo, other.lo)
        hi = max(self.lo + len(self.c), other.lo + len(other.c))
        c = [Q(0)] * (hi - lo)
        for i, x in enumerate(self.c):
            c[self.lo - lo + i] = x
        for i, x in enumerate(other.c):
            c[other.lo - lo + i] += x
        return SS(lo, c, prec)

    def __neg__(self):
        s = SS.__new__(SS)
        s.lo, s.c, s.prec = self.lo, [-x for x in self.c], self.prec
        return s

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        prec = min(self.prec + other.val_eff(), other.prec + self.val_eff())
        if not self.c or not other.c:
            return SS.zero(prec)
        lo = self.lo + other.lo
        n = min(len(self.c) + len(other.c) - 1, max(0, prec - lo))
        c = [Q(0)] * n
        for i, x in enumerate(self.c):
            if x == 0 or i >= n:
                continue
            jmax = min(len(other.c), n - i)
            for j in range(jmax):
                y = other.c[j]
                if y != 0:
                    c[i + j] += x * y
        return SS(lo, c, prec)

    def scale(self, q):
        q = Q(q)
        if q == 0:
            return SS.zero(self.prec)
        s = SS.__new__(SS)
        s.lo, s.c, s.prec = self.lo, [q * x for x in self.c], self.prec
        return s

    def divide(self, other):
        """Laurent division self / other; other must be nonzero in window."""
        if not other.c:
            raise ZeroDivisionError("division by a series that is zero within precision")
        if not self.c:
            return SS.zero(min(self.prec, other.prec) - other.lo)
        va, vb = self.lo, other.lo
        prec = min(self.prec, other.prec + va - vb) - vb
        n = max(0, prec - (va - vb))
        a, b = self.c, other.c
        inv0 = 1 / b[0]
        q = [Q(0)] * n
        for t in range(n):
            acc = a[t] if t < len(a) else Q(0)
            for j in range(max(0, t - len(b) + 1), t):
                if q[j] != 0:
                    acc -= q[j] * b[t - j]
            q[t] = acc * inv0
        return SS(va - vb, q, prec)

    def shift(self, k):
        s = SS.__new__(SS)
        s.lo, s.c, s.prec = self.lo + k, list(self.c), self.prec + k
        return s

    def s_dds(self):
        """s * d/ds: multiplies the coefficient of s^k by k."""
        c = [(self.lo + i) * x for i, x in enumerate(self.c)]
        return SS(self.lo, c, self.prec)

    def trunc(self, prec):
        return SS(self.lo, list(self.c), min(self.prec, prec))

    def eq_upto(self, other, upto):
        lo = min(self.lo if self.c else upto, other.lo if other.c else upto)
        for p in range(lo, upto):
            if self.coeff(p) != other.coeff(p):
                return False
        return True

    def __repr__(self):
        if not self.c:
            return f"SS(0; prec {self.prec})"
        body = " + ".join(f"({x})s^{self.lo + i}" for i, x in enumerate(self.c) if x != 0)
        return f"SS({body}; prec {self.prec})"


# -- series matrices as lists of lists of SS ------------------------------


def smat_zero(r, c, prec=BIG):
    return [[SS.zero(prec) for _ in range(c)] for _ in range(r)]


def smat_eye(n, prec=BIG):
    m = smat_zero(n, n, prec)
    for i in range(n):
        m[i][i] = SS.const(1, prec)
    return m


def smat_from_layers(layers, lo, prec):
    """layers[t] is a rational matrix, the coefficient of s^(lo+t)."""
    r = len(layers[0])
    c = len(layers[0][0]) if r else 0
    out = []
    for i in range(r):
        row = []
        for j in range(c):
            coeffs = [layers[t][i][j] for t in range(len(layers))]
            row.append(SS(lo, coeffs, prec))
        out.append(row)
    return out


def smat_coeff(m, p):
    return [[e.coeff(p) for e in row] for row in m]


def smat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def smat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def smat_mul(a, b):
    n, k = len(a), len(b)
    mcols = len(b[0]) if k else 0
    out = []
    for i in range(n):
        arow = a[i]
        row = []
        for j in range(mcols):
            acc = None
            for t in range(k):
                x = arow[t]
                y = b[t][j]
                if x.is_zero() or y.is_zero():
                    continue
                p = x * y
                acc = p if acc is None else acc + p
            if acc is None:
                prec = min(
                    min(x.prec + b[t][j].val_eff() for t, x in enumerate(arow)),
                    min(b[t][j].prec + arow[t].val_eff() for t in range(k)),
                ) if k else BIG
                acc = SS.zero(prec)
            row.append(acc)
        out.append(row)
    return out


def smat_mul_const(c, m):
    """Rational matrix times series matrix."""
    n, k = len(c), len(m)
    mcols = len(m[0]) if k else 0
    out = []
    for i in range(n):
        row = []
        for j in range(mcols):
            acc = None
            for t in range(k):
                q = c[i][t]
                if q == 0 or m[t][j].is_zero():
                    continue
                p = m[t][j].scale(q)
                acc = p if acc is None else acc + p
            if acc is None:
                prec = min(m[t][j].prec for t in range(k)) if k else BIG
                acc = SS.zero(prec)
            row.append(acc)
        out.append(row)
    return out


def smat_shift(m, k):
    return [[e.shift(k) for e in row] for row in m]


def smat_trunc(m, prec):
    return [[e.trunc(prec) for e in row] for row in m]


def smat_s_dds(m):
    return [[e.s_dds() for e in row] for row in m]


def smat_min_prec(m):
    return min(e.prec for row in m for e in row)


def smat_min_val(m):
    vals = [e.val() for row in m for e in row if not e.is_zero()]
    return min(vals) if vals else None


def smat_inv_unit(a, prec=None):
    """Inverse of a series matrix with invertible constant term.

    Coefficient recursion X_0 = A_0^{-1}, X_k = -X_0 sum A_{k-j} X_j."""
    from .linalg import inverse, mat_mul, mat_sub, zeros as qzeros

    n = len(a)
    if prec is None:
        prec = smat_min_prec(a)
    if smat_min_val(a) != 0:
        raise ValueError("matrix is not a unit (valuation != 0)")
    layers = [smat_coeff(a, p) for p in range(prec)]
    x0 = inverse(layers[0])
    xs = [x0]
    for k in range(1, prec):
        acc = qzeros(n, n)
        for j in range(k):
            acc = mat_sub(acc, mat_mul(layers[k - j], xs[j]))
        xs.append(mat_mul(x0, acc))
    return smat_from_layers(xs, 0, prec)


# -- lattice machinery ----------------------------------------------------


def lattice_echelon(cols, nrows):
    """Forward column echelon over the power series ring.

    cols: list of SS-vectors.  Picks, for each row in order, the remaining
    column of minimal valuation in that row, normalizes its pivot to a
    monic s-power, and clears the row in all remaining columns.  Returns
    the list of pivot columns ordered by row, so the resulting basis
    matrix is lower triangular with s^(v_r) on the diagonal.

    Raises ConsistencyError when the columns do not span a full lattice."""
    cols = [list(col) for col in cols]
    remaining = list(range(len(cols)))
    out = []
    for r in range(nrows):
        best = None
        for c in remaining:
            v = cols[c][r].val()
            if v is None:
                continue
            if best is None or (v, c) < best:
                best = (v, c)
        if best is None:
            raise ConsistencyError(f"lattice columns do not span row {r}")
        v, cstar = best
        remaining.remove(cstar)
        piv = cols[cstar]
        unit = piv[r].shift(-v)
        piv = [e.divide(unit) for e in piv]
        for c in remaining:
            e = cols[c][r]
            if e.is_zero():
                continue
            q = e.divide(piv[r])
            cols[c] = [a - (q * b) for a, b in zip(cols[c], piv)]
        out.append(piv)
    return out


def lattice_solve(pcols, bcols):
    """Solve P X = B where P is the echelon output (lower triangular with
    monic s-power diagonal).  Forward substitution; entries of X may be
    Laurent (negative valuation signals B outside the lattice)."""
    n = len(pcols)
    out = []
    for b in bcols:
        x = [None] * n
        resid = list(b)
        for r in range(n):
            xr = resid[r].divide(pcols[r][r])
            x[r] = xr
            if not xr.is_zero():
                col = pcols[r]
                for i in range(r + 1, n):
                    if not col[i].is_zero():
                        resid[i] = resid[i] - (xr * col[i])
        out.append(x)
    return out  # list of coordinate vectors, one per input column
