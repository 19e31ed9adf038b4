"""Gauss-Manin engine: t-action on the Brieskorn lattice, saturation,
V-filtration, spectrum, monodromy data, and the eigenvalue-zero structure
used by the obstruction tests.

Model.  The Brieskorn lattice H'' is free of rank mu over microdifferential
series in s = dt^{-1}, with basis [m_i dx] for the monomial basis m_i of
the Milnor algebra.  Writing t[g dx] with g = sum(c_j m_j) + sum(b_l d_l f)
and using [df ^ eta] = s[d eta] gives the reduction rule

    [g dx] = sum_j c_j [m_j dx] + s [div(b) dx],

which iterated to depth K produces the matrix A(s) of t.  The operator
T = dt t acts on coordinate vectors as T = s d/ds + s^{-1} A(s); repeatedly
enlarging H'' by T(H'') reaches the saturation L, the smallest T-stable
lattice containing H''.  The residue of T on L has rational eigenvalues.
After splitting off generalized eigenspaces of the residue and removing all
non-resonant couplings by a series gauge, the grading by (eigenvalue + s-power)
is T-invariant and realizes the V-filtration on the finite model L/s^m L.
Spectral numbers are read off as the induced filtration profile of the
image of H'' modulo the image of sH''.

Truncation discipline.  x-degrees follow a per-level schedule derived from
the division order drop (each s-level reduction lowers the x-order by at
most Delta+1, with Delta the worst generator order), so dropped terms
provably cannot influence the retained s-range.  s-precision is tracked
exactly per series entry, and the final spectrum must be stable under a
model-depth increase before it is accepted.
"""

import itertools

from .errors import ConsistencyError, TruncationError
from .linalg import (
    column_space_basis,
    eye,
    generalized_eigenspaces,
    in_span,
    inverse,
    is_nilpotent,
    mat_mul,
    rank,
    zeros,
)
from .localalg import LocalReducer, milnor_data
from .poly import Polynomial, exp_add, exp_deg
from .quasihom import is_weighted_homogeneous
from .rationals import Q
from .series import (
    SS,
    lattice_echelon,
    lattice_solve,
    smat_coeff,
    smat_from_layers,
    smat_inv_unit,
    smat_min_prec,
    smat_mul,
    smat_mul_const,
    smat_s_dds,
)


class Spectrum:
    """Sorted multiset of exact rational spectral numbers."""

    __slots__ = ("pairs",)

    def __init__(self, pairs):
        merged = {}
        for a, m in pairs:
            a = Q(a)
            merged[a] = merged.get(a, 0) + int(m)
        self.pairs = tuple(sorted(merged.items()))

    def total(self):
        return sum(m for _, m in self.pairs)

    def values(self):
        """All spectral numbers with multiplicity, ascending."""
        out = []
        for a, m in self.pairs:
            out.extend([a] * m)
        return out

    def alpha1(self):
        return self.pairs[0][0]

    def alpha2(self):
        vals = self.values()
        return vals[1] if len(vals) > 1 else None

    def is_symmetric(self, n):
        """Invariance under a -> (n-1) - a."""
        center = Q(n - 1)
        flipped = {}
        for a, m in self.pairs:
            flipped[center - a] = m
        return flipped == dict(self.pairs)

    def has_integer(self):
        return any(a.denominator == 1 for a, _ in self.pairs)

    def shift_all(self, c):
        return Spectrum([(a + c, m) for a, m in self.pairs])

    def __eq__(self, other):
        return isinstance(other, Spectrum) and self.pairs == other.pairs

    def __iter__(self):
        return iter(self.pairs)

    def __repr__(self):
        body = ", ".join(f"{a}:{m}" for a, m in self.pairs)
        return f"Spectrum({body})"


class BrieskornModel:
    """Matrix A(s) of the t-action on the Milnor basis of H''.

    layers[k] is the rational mu x mu coefficient of s^k; entries are valid
    for all powers below `order`."""

    __slots__ = ("milnor", "layers", "order", "x_degree_bound")

    def __init__(self, milnor, layers, order, x_degree_bound):
        self.milnor = milnor
        self.layers = layers
        self.order = order
        self.x_degree_bound = x_degree_bound

    @property
    def t_matrix_layers(self):
        return self.layers


def t_matrix(md, f, K, Dx=None):
    """Compute A(s) mod s^K by iterated division against the Jacobian ideal.

    x-degrees are capped per level by the rigorous schedule
    cap_k = d_B + (K-1-k) * (Delta+1); an explicit Dx overrides the caps
    uniformly (expert knob; the engine's stability certificate still applies)."""
    if K < 1:
        raise ValueError("K must be at least 1")
    sb = md.jacobian_sb
    dB = md.top_degree
    delta = 0
    for g, row in zip(sb.generators, sb.transform):
        h_ord = min(int(t.order()) for t in row if not t.is_zero())
        delta = max(delta, int(g.order()) - h_ord)
    step = delta + 1
    if Dx is not None:
        if Dx < f.total_degree():
            raise ValueError("Dx must be at least deg f")
        caps = [Dx] * K
    else:
        caps = [dB + (K - 1 - k) * step for k in range(K)]
    # generator tails and transforms must be valid up to the deepest cap
    md = md.at_least(max(caps) + 1)
    sb = md.jacobian_sb
    mu = md.mu
    nv = md.nvars
    reducer = LocalReducer(md)
    layers = [zeros(mu, mu) for _ in range(K)]
    for i, mono in enumerate(md.basis):
        g = {}
        for e, c in f.terms.items():
            e2 = exp_add(e, mono)
            if exp_deg(e2) <= caps[0]:
                g[e2] = c
        for k in range(K):
            cvec, quots = reducer.reduce(g, caps[k])
            col = layers[k]
            for j in range(mu):
                if cvec[j] != 0:
                    col[j][i] = cvec[j]
            if k == K - 1:
                break
            nxt_cap = caps[k + 1]
            b = [Polynomial.zero(nv) for _ in range(nv)]
            for qi, qd in enumerate(quots):
                if not qd:
                    continue
                qpoly = Polynomial(nv, qd)
                for l in range(nv):
                    t = sb.transform[qi][l]
                    if not t.is_zero():
                        b[l] = b[l] + qpoly.mul_trunc(t, nxt_cap + 1)
            g = {}
            for l in range(nv):
                for e, c in b[l].diff(l).terms.items():
                    if exp_deg(e) > nxt_cap:
                        continue
                    prev = g.get(e)
                    if prev is None:
                        g[e] = c
                    else:
                        s = prev + c
                        if s == 0:
                            del g[e]
                        else:
                            g[e] = s
    if not is_nilpotent(layers[0]):
        raise ConsistencyError("constant term of the t-matrix is not nilpotent")
    return BrieskornModel(md, layers, K, max(caps))


class SaturatedModel:
    """Saturation L of H'' under T = dt t, with the matrix of T on L.

    pcols: triangular lattice basis (columns, in H''-coordinates)
    t_op:  series matrix of T on that basis
    residue: constant term of t_op
    pinv_cols: coordinates of the H''-basis vectors inside the lattice"""

    __slots__ = ("bm", "pcols", "pivot_vals", "t_op", "residue", "steps",
                 "pinv_cols", "_models")

    def __init__(self, bm, pcols, pivot_vals, t_op, residue, steps, pinv_cols):
        self.bm = bm
        self.pcols = pcols
        self.pivot_vals = pivot_vals
        self.t_op = t_op
        self.residue = residue
        self.steps = steps
        self.pinv_cols = pinv_cols
        self._models = {}


def _apply_t_operator(a_smat, col):
    """T(col) = s * d/ds(col) + s^{-1} * A(s) * col on coordinate vectors."""
    n = len(col)
    out = []
    for i in range(n):
        acc = col[i].s_dds()
        prod = None
        for j in range(n):
            x = a_smat[i][j]
            y = col[j]
            if x.is_zero() or y.is_zero():
                continue
            p = x * y
            prod = p if prod is None else prod + p
        if prod is not None:
            acc = acc + prod.shift(-1)
        else:
            prec = min(min(a_smat[i][j].prec for j in range(n)),
                       min(c.prec for c in col)) - 1
            acc = acc.trunc(min(acc.prec, prec))
        out.append(acc)
    return out


def saturate(bm, max_steps=40):
    """Smallest T-stable lattice containing H''.

    Iterates L := L + T(L) with column echelon over the series ring until
    T(L) lies inside L (all solve coordinates have nonnegative valuation)."""
    mu = bm.milnor.mu
    W = bm.order
    a_smat = smat_from_layers(bm.layers, 0, W)
    pcols = [[SS.const(1, W) if i == j else SS.zero(W) for i in range(mu)]
             for j in range(mu)]
    steps = 0
    while True:
        tcols = [_apply_t_operator(a_smat, col) for col in pcols]
        coords = lattice_solve(pcols, tcols)
        bad = False
        for vec in coords:
            for e in vec:
                v = e.val()
                if v is not None and v < 0:
                    bad = True
                    break
            if bad:
                break
        if not bad:
            break
        if steps >= max_steps:
            raise TruncationError("lattice saturation did not stabilize")
        pcols = lattice_echelon(pcols + tcols, mu)
        steps += 1
    # matrix of T on the lattice basis: column c are the coordinates of T(col_c)
    t_op = [[coords[c][r] for c in range(mu)] for r in range(mu)]
    if smat_min_prec(t_op) < 1:
        raise TruncationError("saturation exhausted series precision")
    residue = smat_coeff(t_op, 0)
    unit_cols = [[SS.const(1, W) if i == j else SS.zero(W) for i in range(mu)]
                 for j in range(mu)]
    pinv = lattice_solve(pcols, unit_cols)
    for vec in pinv:
        for e in vec:
            v = e.val()
            if v is not None and v < 0:
                raise ConsistencyError("H'' basis vector escapes the saturation")
    pivot_vals = [pcols[r][r].val() for r in range(mu)]
    return SaturatedModel(bm, pcols, pivot_vals, t_op, residue, steps, pinv)


# -- eigen decomposition, resonance removal, finite model -----------------


class _ModelData:
    """Finite model of the saturation with a T-invariant rational grading."""

    def __init__(self, sm, depth):
        self.sm = sm
        self.depth = depth
        self._build()

    def _build(self):
        sm = self.sm
        mu = sm.bm.milnor.mu
        m = self.depth
        eig = generalized_eigenspaces(sm.residue)
        lam_of_coord = []
        cols = []
        blocks = []
        pos = 0
        for lam, mult, basis in eig:
            blocks.append((lam, pos, mult))
            for v in basis:
                cols.append(v)
                lam_of_coord.append(lam)
            pos += mult
        qmat = [[cols[j][i] for j in range(mu)] for i in range(mu)]
        qinv = inverse(qmat)
        self.lam = lam_of_coord
        self.blocks = blocks

        xq = smat_mul_const(qinv, smat_mul_const_right(sm.t_op, qmat))
        prec = smat_min_prec(xq)
        if prec < m:
            raise TruncationError("insufficient s-precision for the model depth")
        rhat = smat_coeff(xq, 0)
        nil = [[rhat[i][j] - (self.lam[i] if i == j else Q(0)) for j in range(mu)]
               for i in range(mu)]
        self.nilres = nil

        # gauge away non-resonant couplings order by order
        phi_inv_total = None
        for k in range(1, m):
            ck = smat_coeff(xq, k)
            fmat, nonzero = self._solve_gauge(ck, k, mu)
            if not nonzero:
                continue
            phi_layers = [eye(mu)] + [zeros(mu, mu)] * (k - 1) + [fmat]
            phi = smat_from_layers(phi_layers, 0, prec)
            phi_inv = smat_inv_unit(phi, prec)
            xq = smat_mul(phi_inv, smat_add_s(smat_s_dds(phi), smat_mul(xq, phi)))
            phi_inv_total = (
                phi_inv if phi_inv_total is None else smat_mul(phi_inv, phi_inv_total)
            )
            ck2 = smat_coeff(xq, k)
            for i in range(mu):
                for j in range(mu):
                    if self.lam[i] - self.lam[j] + k != 0 and ck2[i][j] != 0:
                        raise ConsistencyError("gauge failed to remove a coupling")
        self.xq = xq

        # transport the H'' basis into the graded coordinates
        hmat = [[sm.pinv_cols[i][r] for i in range(mu)] for r in range(mu)]
        y = smat_mul_const(qinv, hmat)
        if phi_inv_total is not None:
            y = smat_mul(phi_inv_total, y)
        if smat_min_prec(y) < m:
            raise TruncationError("insufficient s-precision for the lattice image")
        self.ymat = y

        # model coordinates (k, j), graded by beta = lam[j] + k, ascending
        rows = []
        for k in range(m):
            for j in range(mu):
                rows.append((self.lam[j] + k, k, j))
        rows.sort(key=lambda t: (t[0], t[1], t[2]))
        self.rows = rows
        self.row_index = {(k, j): idx for idx, (beta, k, j) in enumerate(rows)}

        self._w_columns = None
        self._profile = None

    def _solve_gauge(self, ck, k, mu):
        """Solve (ad_R + k) F = -C on the non-resonant entry positions.

        Entrywise division by lam_i - lam_j + k plus a nilpotent correction
        iterated to its fixed point."""
        lam = self.lam
        nil = self.nilres
        denom = [[lam[i] - lam[j] + k for j in range(mu)] for i in range(mu)]
        target = [[-ck[i][j] if denom[i][j] != 0 else Q(0) for j in range(mu)]
                  for i in range(mu)]
        if all(x == 0 for row in target for x in row):
            return None, False
        fmat = [[target[i][j] / denom[i][j] if denom[i][j] != 0 else Q(0)
                 for j in range(mu)] for i in range(mu)]
        for _ in range(2 * mu + 2):
            adn = mat_sub_q(mat_mul(nil, fmat), mat_mul(fmat, nil))
            nxt = [[(target[i][j] - adn[i][j]) / denom[i][j]
                    if denom[i][j] != 0 else Q(0)
                    for j in range(mu)] for i in range(mu)]
            if nxt == fmat:
                break
            fmat = nxt
        else:
            raise ConsistencyError("gauge fixed point iteration did not settle")
        return fmat, True

    # -- lattice image in model coordinates ----------------------------

    def w_columns(self):
        """Columns of the H'' image: index (shift a, basis i) -> model vector."""
        if self._w_columns is not None:
            return self._w_columns
        mu = len(self.lam)
        m = self.depth
        cols = {}
        for a in range(m):
            for i in range(mu):
                vec = [Q(0)] * len(self.rows)
                nonzero = False
                for idx, (beta, k, j) in enumerate(self.rows):
                    if k - a < 0:
                        continue
                    c = self.ymat[j][i].coeff(k - a)
                    if c != 0:
                        vec[idx] = c
                        nonzero = True
                if nonzero or a == 0:
                    cols[(a, i)] = vec
        self._w_columns = cols
        return cols

    def filtration_profile(self):
        """Pivot grading of the echelon of [sH'' image | H'' image].

        Returns the list of pivot betas of the surviving H''-columns; those
        are the jumps of the induced V-filtration on H''/sH''."""
        if self._profile is not None:
            return self._profile
        cols = self.w_columns()
        mu = len(self.lam)
        m = self.depth
        ordering = [(a, i) for a in range(1, m) for i in range(mu) if (a, i) in cols]
        ordering += [(0, i) for i in range(mu)]
        pivots = {}
        betas = []
        for key in ordering:
            vec = list(cols[key])
            piv = self._reduce_column(vec, pivots)
            if piv is None:
                if key[0] == 0:
                    raise ConsistencyError(
                        "H'' basis column vanished modulo the shifted image"
                    )
                continue
            pivots[piv] = vec
            if key[0] == 0:
                betas.append(self.rows[piv][0])
        self._profile = betas
        return betas

    def _reduce_column(self, vec, pivots):
        n = len(vec)
        idx = 0
        while idx < n:
            if vec[idx] == 0:
                idx += 1
                continue
            piv = pivots.get(idx)
            if piv is None:
                inv = 1 / vec[idx]
                for t in range(idx, n):
                    if vec[t] != 0:
                        vec[t] = vec[t] * inv
                return idx
            f = vec[idx]
            for t in range(idx, n):
                if piv[t] != 0:
                    vec[t] = vec[t] - f * piv[t]
            idx += 1
        return None

    def lattice_membership_pivots(self):
        """Echelon of all H'' image columns alone (for H_0 extraction)."""
        cols = self.w_columns()
        mu = len(self.lam)
        m = self.depth
        ordering = [(a, i) for a in range(m) for i in range(mu) if (a, i) in cols]
        pivots = {}
        for key in ordering:
            vec = list(cols[key])
            piv = self._reduce_column(vec, pivots)
            if piv is not None:
                pivots[piv] = vec
        return pivots


def smat_mul_const_right(m, c):
    """Series matrix times rational matrix."""
    n = len(m)
    k = len(c)
    mcols = len(c[0]) if k else 0
    out = []
    for i in range(n):
        row = []
        for j in range(mcols):
            acc = None
            for t in range(k):
                q = c[t][j]
                if q == 0 or m[i][t].is_zero():
                    continue
                p = m[i][t].scale(q)
                acc = p if acc is None else acc + p
            if acc is None:
                prec = min(m[i][t].prec for t in range(k)) if k else 10**9
                acc = SS.zero(prec)
            row.append(acc)
        out.append(row)
    return out


def smat_add_s(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub_q(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _model(sm, depth):
    model = sm._models.get(depth)
    if model is None:
        model = _ModelData(sm, depth)
        sm._models[depth] = model
    return model


def spectrum(sm, bm, depth=None):
    """Spectral numbers with multiplicities from the saturated model.

    The multiplicity of alpha is the number of echelon pivots of the H''
    image at grading beta = alpha + 1 modulo the image of sH''."""
    md = bm.milnor
    if depth is None:
        depth = max(2, bm.order - _default_slack(md.nvars))
    model = _model(sm, depth)
    betas = model.filtration_profile()
    pairs = {}
    for beta in betas:
        alpha = beta - 1
        pairs[alpha] = pairs.get(alpha, 0) + 1
    sp = Spectrum(sorted(pairs.items()))
    n = md.nvars - 1
    if sp.total() != md.mu:
        raise ConsistencyError(
            f"spectrum multiplicities sum to {sp.total()}, expected mu = {md.mu}"
        )
    for a, _ in sp.pairs:
        if not (Q(-1) < a and a < Q(n)):
            raise ConsistencyError(f"spectral number {a} outside (-1, n)")
    return sp


def bp_spectrum_oracle(exponents):
    """Closed-form spectrum of sum(x_i^{a_i}): multiset of sum(k_i/a_i) - 1."""
    if any(a < 2 for a in exponents):
        raise ValueError("all exponents must be at least 2")
    pairs = {}
    for combo in itertools.product(*[range(1, a) for a in exponents]):
        alpha = sum(Q(k, a) for k, a in zip(combo, exponents)) - 1
        pairs[alpha] = pairs.get(alpha, 0) + 1
    return Spectrum(sorted(pairs.items()))


def qh_spectrum_oracle(md, ws):
    """Weighted-homogeneous spectrum: alpha(m) = (<w, m> + |w|)/r - 1 over
    the monomial basis."""
    if not is_weighted_homogeneous(md.f, ws):
        raise ValueError("f is not weighted-homogeneous for the given weights")
    wsum = sum(ws.weights)
    r = ws.degree
    pairs = {}
    for e in md.basis:
        alpha = Q(ws.weighted_degree(e) + wsum, r) - 1
        pairs[alpha] = pairs.get(alpha, 0) + 1
    return Spectrum(sorted(pairs.items()))


class MonodromyInfo:
    """Monodromy eigenvalue data derived from the spectrum.

    The eigenvalue attached to alpha is exp(-2 pi i alpha), stored exactly
    as alpha mod 1 in [0, 1)."""

    __slots__ = ("eigenvalues", "has_eigenvalue_one", "alpha1", "alpha2")

    def __init__(self, eigenvalues, has_eigenvalue_one, alpha1, alpha2):
        self.eigenvalues = eigenvalues
        self.has_eigenvalue_one = has_eigenvalue_one
        self.alpha1 = alpha1
        self.alpha2 = alpha2

    def __repr__(self):
        return (
            f"MonodromyInfo(has_eigenvalue_one={self.has_eigenvalue_one}, "
            f"alpha1={self.alpha1}, alpha2={self.alpha2})"
        )


def monodromy_info(sp):
    eig = {}
    for a, m in sp.pairs:
        num = int(a.numerator) % int(a.denominator)
        frac = Q(num, int(a.denominator))
        eig[frac] = eig.get(frac, 0) + m
    has_one = sp.has_integer()
    return MonodromyInfo(
        tuple(sorted(eig.items())), has_one, sp.alpha1(), sp.alpha2()
    )


class C0Structure:
    """Finite model of the eigenvalue-zero piece of V^{>-1}/V^{>0}.

    nilpotent_op is the induced t dt matrix on C^0 (the 2 pi i scalar of
    the monodromy logarithm is dropped; only images of subspaces are used).
    h0, n_image, s_span are bases inside C^0-coordinates; d0 is the class
    of the volume form [dx]."""

    __slots__ = ("dim", "nilpotent_op", "h0", "n_image", "s_span", "d0",
                 "h0_n_direct")

    def __init__(self, dim, nilpotent_op, h0, n_image, s_span, d0):
        self.dim = dim
        self.nilpotent_op = nilpotent_op
        self.h0 = h0
        self.n_image = n_image
        self.s_span = s_span
        self.d0 = d0
        if dim:
            self.h0_n_direct = (
                rank(transpose_q(self.h0 + self.n_image))
                == len(self.h0) + len(self.n_image)
                if (self.h0 or self.n_image)
                else True
            )
        else:
            self.h0_n_direct = True


def transpose_q(vectors):
    if not vectors:
        return []
    return [[v[i] for v in vectors] for i in range(len(vectors[0]))]


def c0_structure(sm, bm, depth=None):
    """Extract C^0, N(C^0), H_0, the unit-tail span S, and d0 = pi_0([dx])."""
    md = bm.milnor
    if depth is None:
        depth = max(2, bm.order - _default_slack(md.nvars))
    model = _model(sm, depth)
    mu = md.mu
    coords = [(k, j) for (beta, k, j) in model.rows if beta == 1]
    dim = len(coords)
    if dim == 0:
        return C0Structure(0, [], [], [], [], [])
    coord_index = {c: t for t, c in enumerate(coords)}

    # induced t dt operator: T - 1 restricted to the beta = 1 coordinates
    op = zeros(dim, dim)
    for tq, (kq, jq) in enumerate(coords):
        for tp, (kp, jp) in enumerate(coords):
            d = kp - kq
            if d < 0:
                continue
            c = model.xq[jp][jq].coeff(d)
            if d == 0 and jp == jq:
                c = c + kq - 1
            op[tp][tq] = c
    if not is_nilpotent(op):
        raise ConsistencyError("induced operator on C^0 is not nilpotent")

    def project(vec_model):
        return [vec_model[model.row_index[c]] for c in coords]

    pivots = model.lattice_membership_pivots()
    h0_vecs = []
    for piv_idx, vec in sorted(pivots.items()):
        if model.rows[piv_idx][0] >= 1:
            h0_vecs.append(project(vec))
    h0 = column_space_basis(h0_vecs)

    img = []
    for tq in range(dim):
        col = [op[tp][tq] for tp in range(dim)]
        img.append(col)
    n_image = column_space_basis(img)

    wcols = model.w_columns()
    s_vecs = []
    for i in range(1, mu):
        s_vecs.append(project(wcols[(0, i)]))
    s_span = column_space_basis(s_vecs)
    d0 = project(wcols[(0, 0)])
    return C0Structure(dim, op, h0, n_image, s_span, d0)


def lct_obstruction_membership(c0, variant):
    """Membership of the volume-form class in H_0 + N(C^0) (+ S).

    variant "dx": tests d0 itself (used when alpha_1 < 0 = alpha_2).
    variant "any_unit": tests the whole unit orbit [u dx]; since
    [u dx]_0 = u(0) d0 + pi_0([(u - u(0)) dx]) and the non-constant tail
    sweeps exactly S, the existential over units reduces to membership of
    d0 in H_0 + N(C^0) + S."""
    if c0.dim == 0:
        return True
    span = list(c0.h0) + list(c0.n_image)
    if variant == "any_unit":
        span += list(c0.s_span)
    elif variant != "dx":
        raise ValueError("variant must be 'dx' or 'any_unit'")
    return in_span(span, c0.d0)


# -- driver ---------------------------------------------------------------


def _default_slack(nvars):
    return 6 + nvars


class GaussManinResult:
    """Bundle of everything the verdict layer needs."""

    __slots__ = ("milnor", "bm", "sm", "spectrum", "monodromy", "depth",
                 "order", "x_degree_bound", "saturation_steps", "stable",
                 "_c0")

    def __init__(self, milnor, bm, sm, sp, depth, stable):
        self.milnor = milnor
        self.bm = bm
        self.sm = sm
        self.spectrum = sp
        self.monodromy = monodromy_info(sp)
        self.depth = depth
        self.order = bm.order
        self.x_degree_bound = bm.x_degree_bound
        self.saturation_steps = sm.steps
        self.stable = stable
        self._c0 = None

    def c0(self):
        if self._c0 is None:
            self._c0 = c0_structure(self.sm, self.bm, self.depth)
        return self._c0


def _single_run(md, f, depth, Dx, slack):
    order = depth + slack
    bm = t_matrix(md, f, order, Dx)
    sm = saturate(bm)
    sp = spectrum(sm, bm, depth)
    return bm, sm, sp


def gauss_manin_analysis(f, md=None, K=None, Dx=None, max_doublings=3):
    """Full spectrum pipeline with the composite stability certificate.

    Runs the engine at model depth K and K+1 and accepts only if the two
    spectra agree, the multiplicities sum to mu, every spectral number lies
    in (-1, n), the multiset is symmetric about (n-1)/2, and the smallest
    residue eigenvalue matches alpha_1 + 1.  On failure the depth doubles."""
    if md is None:
        md = milnor_data(f)
    n = f.nvars - 1
    depth = K if K is not None else n + 2
    depth = max(2, depth)
    slack = _default_slack(f.nvars)
    last_error = None
    for _ in range(max_doublings + 1):
        try:
            bm_a, sm_a, sp_a = _single_run(md, f, depth, Dx, slack)
            bm_b, sm_b, sp_b = _single_run(md, f, depth + 1, Dx, slack)
            if sp_a != sp_b:
                raise TruncationError(
                    f"spectrum changed between depths {depth} and {depth + 1}"
                )
            if not sp_a.is_symmetric(n):
                raise TruncationError("spectrum multiset is not symmetric")
            min_res = min(
                lam for lam, _, _ in generalized_eigenspaces(sm_a.residue)
            )
            if min_res != sp_a.alpha1() + 1:
                raise ConsistencyError(
                    "smallest residue eigenvalue does not match alpha_1 + 1"
                )
            return GaussManinResult(md, bm_a, sm_a, sp_a, depth, True)
        except TruncationError as exc:
            last_error = exc
            depth *= 2
    raise TruncationError(
        f"spectrum did not stabilize up to depth {depth // 2}: {last_error}"
    )
