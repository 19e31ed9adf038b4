"""Standard bases and normal forms in the local ring at the origin.

Division uses Mora's weak normal form with ecart selection, which yields
an exact certificate  unit * g = sum(quotients_i * generator_i) + remainder
with a unit that has nonzero constant term.  The remainder's leading term
is never divisible by a generator's leading term; tail terms are reduced
as far as a degree cap allows (a fully reduced tail together with an exact
polynomial identity does not always exist over a local ring).

Canonical fully reduced normal forms onto the Milnor basis are computed
separately by finite-dimensional linear algebra: for a zero-dimensional
ideal the normal form map factors through O/m^(d+1) where d is the top
degree of a standard monomial.
"""

import heapq

from .errors import NonIsolatedError, SmoothGermError, ConsistencyError
from .poly import (
    Polynomial,
    MonomialOrder,
    LOCAL_ORDER,
    exp_add,
    exp_sub,
    exp_divides,
    exp_deg,
)
from .rationals import Q


def _heap_key(exp):
    """Min-heap key that pops the largest monomial in the local order first."""
    return (sum(exp), exp[::-1])


class DivisionResult:
    """unit * g = sum(quotients[i] * generators[i]) + normal_form, exactly."""

    __slots__ = ("normal_form", "quotients", "unit")

    def __init__(self, normal_form, quotients, unit):
        self.normal_form = normal_form
        self.quotients = quotients
        self.unit = unit

    def check(self, g, generators):
        acc = self.unit * g
        for q, gen in zip(self.quotients, generators):
            acc = acc - q * gen
        return acc == self.normal_form


class StandardBasis:
    """Standard basis of an ideal in the local ring.

    transform[k] expresses generators[k] as a polynomial combination of
    the original generating tuple (exactly when trunc is None, otherwise
    modulo m^(trunc+1))."""

    __slots__ = ("generators", "order", "leads", "original", "transform",
                 "trunc")

    def __init__(self, generators, order, original, transform):
        self.generators = generators
        self.order = order
        self.original = original
        self.transform = transform
        self.leads = [g.leading(order) for g in generators]
        self.trunc = None

    @property
    def nvars(self):
        return self.generators[0].nvars

    def lead_exponents(self):
        return [e for e, _ in self.leads]


class _Reducer:
    __slots__ = ("poly", "lead_exp", "lead_coeff", "ecart", "unit", "quots")

    def __init__(self, poly, order, unit, quots):
        self.poly = poly
        self.lead_exp, self.lead_coeff = poly.leading(order)
        self.ecart = poly.total_degree() - exp_deg(self.lead_exp)
        self.unit = unit
        self.quots = quots


def _mora_weak_nf(g, generators, order, trunc=None):
    """Mora weak normal form with exact certificate tracking.

    Returns (unit, quotients, h): unit*g = sum(q_i gen_i) + h, where h is
    zero or has a leading term not divisible by any generator lead.

    With trunc = D every product is cut above total degree D, so the
    certificate holds modulo m^(D+1); used by the truncated completion."""
    ngen = len(generators)
    one = Polynomial.const(g.nvars, 1)
    zero = Polynomial.zero(g.nvars)
    base = [_Reducer(p, order, None, i) for i, p in enumerate(generators)]
    stored = []
    h = g
    unit = one
    quots = [zero] * ngen
    while not h.is_zero():
        lead_exp, lead_coeff = h.leading(order)
        h_ecart = h.total_degree() - exp_deg(lead_exp)
        cand = None
        cand_rank = None
        for rk, red in enumerate(base):
            if exp_divides(red.lead_exp, lead_exp):
                rank = (red.ecart, 0, rk)
                if cand_rank is None or rank < cand_rank:
                    cand, cand_rank = red, rank
        for rk, red in enumerate(stored):
            if exp_divides(red.lead_exp, lead_exp):
                rank = (red.ecart, 1, rk)
                if cand_rank is None or rank < cand_rank:
                    cand, cand_rank = red, rank
        if cand is None:
            break
        if cand.ecart > h_ecart:
            stored.append(
                _Reducer(h, order, unit, list(quots))
            )
        m_exp = exp_sub(lead_exp, cand.lead_exp)
        m_coeff = lead_coeff / cand.lead_coeff
        mono = Polynomial.monomial(g.nvars, m_exp, m_coeff)
        if trunc is None:
            h = h - mono * cand.poly
        else:
            h = (h - mono.mul_trunc(cand.poly, trunc)).truncate_deg(trunc)
        if cand.unit is None:  # original generator
            quots[cand.quots] = quots[cand.quots] + mono
        else:
            if trunc is None:
                unit = unit - mono * cand.unit
                for i in range(ngen):
                    quots[i] = quots[i] - mono * cand.quots[i]
            else:
                unit = unit - mono.mul_trunc(cand.unit, trunc)
                for i in range(ngen):
                    quots[i] = quots[i] - mono.mul_trunc(cand.quots[i], trunc)
    return unit, quots, h


def mora_division(g, sb, tail_bound=None):
    """Divide g by a standard basis with an exact unit certificate.

    Tail terms of the remainder are reduced (by plain generator
    subtractions, which preserve exactness) while their degree stays
    within tail_bound; any deeper reducible tail is left in place."""
    order = sb.order
    generators = sb.generators
    nv = g.nvars
    if g.is_zero():
        zero = Polynomial.zero(nv)
        return DivisionResult(zero, [zero] * len(generators), Polynomial.const(nv, 1))
    if tail_bound is None:
        gd = max(p.total_degree() for p in generators)
        tail_bound = max(2 * gd, g.total_degree()) + 2

    unit, quots, h = _mora_weak_nf(g, generators, order)
    leads = sb.leads
    nf_terms = {}
    guard = 0
    while not h.is_zero():
        guard += 1
        if guard > 200000:
            raise ConsistencyError("tail reduction failed to terminate")
        lead_exp, lead_coeff = h.leading(order)
        red = None
        red_i = None
        for i, (le, lc) in enumerate(leads):
            if exp_divides(le, lead_exp):
                red, red_i = (le, lc), i
                break
        if red is None:
            nf_terms[lead_exp] = nf_terms.get(lead_exp, Q(0)) + lead_coeff
            h = h - Polynomial.monomial(nv, lead_exp, lead_coeff)
            continue
        if exp_deg(lead_exp) > tail_bound:
            # beyond the cap: park the rest in the remainder unreduced
            for e, c in h.terms.items():
                nf_terms[e] = nf_terms.get(e, Q(0)) + c
            h = Polynomial.zero(nv)
            break
        m_exp = exp_sub(lead_exp, red[0])
        m_coeff = lead_coeff / red[1]
        mono = Polynomial.monomial(nv, m_exp, m_coeff)
        h = h - mono * generators[red_i]
        quots[red_i] = quots[red_i] + mono
    nf = Polynomial(nv, nf_terms)
    return DivisionResult(nf, quots, unit)


# -- standard basis computation -----------------------------------------


def _spair(pi, pj, order, nvars):
    (ei, ci), (ej, cj) = pi.leading(order), pj.leading(order)
    lcm = tuple(max(a, b) for a, b in zip(ei, ej))
    mi = Polynomial.monomial(nvars, exp_sub(lcm, ei), 1 / ci)
    mj = Polynomial.monomial(nvars, exp_sub(lcm, ej), 1 / cj)
    return mi * pi - mj * pj, mi, mj, lcm


def standard_basis(gens, order=LOCAL_ORDER, trunc=None):
    """Standard basis of the ideal generated by gens in the local ring.

    Buchberger completion with Mora weak normal forms.  Each returned
    generator carries an expression in terms of the input tuple.

    With trunc = D all arithmetic is cut above total degree D, which makes
    the completion run inside a finite-dimensional quotient.  When the
    ideal is zero-dimensional and the resulting staircase lies strictly
    below D (checked by milnor_data), the truncated elements still
    generate the ideal exactly: the dropped terms lie in m^(D+1), which is
    contained in the ideal once every monomial above the staircase is
    divisible by a computed lead (Krull intersection)."""
    if not isinstance(order, MonomialOrder):
        raise TypeError("order must be a MonomialOrder")
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("no nonzero generators")
    nv = gens[0].nvars
    zero = Polynomial.zero(nv)

    basis = []
    transform = []
    for i, g in enumerate(gens):
        basis.append(g if trunc is None else g.truncate_deg(trunc))
        transform.append(
            [Polynomial.const(nv, 1) if j == i else zero for j in range(len(gens))]
        )

    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]

    def pair_key(p):
        i, j = p
        (ei, _), (ej, _) = basis[i].leading(order), basis[j].leading(order)
        lcm = tuple(max(a, b) for a, b in zip(ei, ej))
        return (exp_deg(lcm), i, j)

    while pairs:
        pairs.sort(key=pair_key)
        i, j = pairs.pop(0)
        if trunc is not None:
            (ei, _), (ej, _) = basis[i].leading(order), basis[j].leading(order)
            lcm = tuple(max(a, b) for a, b in zip(ei, ej))
            if exp_deg(lcm) > trunc:
                continue
        sp, mi, mj, _ = _spair(basis[i], basis[j], order, nv)
        if trunc is not None:
            sp = sp.truncate_deg(trunc)
        if sp.is_zero():
            continue
        unit, quots, h = _mora_weak_nf(sp, basis, order, trunc)
        if h.is_zero():
            continue
        # transform row: h = unit*sp - sum quots_k * basis_k
        if trunc is None:
            row = [
                unit * (mi * transform[i][l]) - unit * (mj * transform[j][l])
                for l in range(len(gens))
            ]
            for k, q in enumerate(quots):
                if q.is_zero():
                    continue
                for l in range(len(gens)):
                    row[l] = row[l] - q * transform[k][l]
        else:
            row = []
            for l in range(len(gens)):
                a = unit.mul_trunc(mi.mul_trunc(transform[i][l], trunc), trunc)
                b = unit.mul_trunc(mj.mul_trunc(transform[j][l], trunc), trunc)
                row.append(a - b)
            for k, q in enumerate(quots):
                if q.is_zero():
                    continue
                for l in range(len(gens)):
                    row[l] = row[l] - q.mul_trunc(transform[k][l], trunc)
        basis.append(h)
        transform.append(row)
        new = len(basis) - 1
        pairs.extend((k, new) for k in range(new))

    # minimalize: drop elements whose lead is divisible by another lead
    order_key = lambda k: order.key(basis[k].leading(order)[0])
    keep = []
    for k in sorted(range(len(basis)), key=order_key, reverse=True):
        le = basis[k].leading(order)[0]
        if any(exp_divides(basis[k2].leading(order)[0], le) for k2 in keep):
            continue
        keep.append(k)
    keep.sort()
    sb = StandardBasis(
        [basis[k] for k in keep],
        order,
        list(gens),
        [transform[k] for k in keep],
    )
    sb.trunc = trunc
    return sb


def local_membership(g, sb):
    """Ideal membership in the local ring, with certificate.

    Returns (bool, DivisionResult); membership holds iff the weak normal
    form vanishes."""
    res = mora_division(g, sb)
    return res.normal_form.is_zero(), res


# -- Milnor data ---------------------------------------------------------


class MilnorData:
    """Standard basis of the Jacobian ideal plus the monomial basis of the
    Milnor algebra.  basis[0] is always the monomial 1."""

    __slots__ = ("f", "jacobian_sb", "mu", "basis", "basis_index", "top_degree",
                 "_nf_table", "_bigger")

    def __init__(self, f, jacobian_sb, basis):
        self.f = f
        self.jacobian_sb = jacobian_sb
        self.basis = basis
        self.basis_index = {e: i for i, e in enumerate(basis)}
        self.mu = len(basis)
        self.top_degree = max(exp_deg(e) for e in basis)
        self._nf_table = None
        self._bigger = None

    @property
    def nvars(self):
        return self.f.nvars

    def at_least(self, degree):
        """A view of the same data whose standard-basis truncation covers
        the requested degree (recomputed and cached when necessary)."""
        if self.jacobian_sb.trunc is None or self.jacobian_sb.trunc >= degree:
            return self
        if self._bigger is not None and self._bigger.jacobian_sb.trunc >= degree:
            return self._bigger
        enlarged = milnor_data(self.f, min_trunc=degree)
        if enlarged.basis != self.basis:
            raise ConsistencyError("staircase changed under a larger degree cap")
        self._bigger = enlarged
        return enlarged

    # canonical reduced normal form ------------------------------------

    def _build_nf_table(self):
        """NF vector for every monomial of degree <= top_degree.

        Monomials of larger degree lie in the Jacobian ideal, so their
        normal form is zero and they need no table entry."""
        sb = self.jacobian_sb
        leads = sb.leads
        gens = sb.generators
        nv = self.nvars
        d = self.top_degree
        monos = []

        def gen_monos(prefix, remaining, total):
            if len(prefix) == nv - 1:
                for k in range(remaining + 1):
                    monos.append(prefix + (k,))
                return
            for k in range(remaining + 1):
                gen_monos(prefix + (k,), remaining - k, total)

        gen_monos((), d, d)
        # ascending local order: largest degree first
        monos.sort(key=_heap_key, reverse=True)
        table = {}
        for m in monos:
            if m in self.basis_index:
                vec = [Q(0)] * self.mu
                vec[self.basis_index[m]] = Q(1)
                table[m] = vec
                continue
            hit = None
            for i, (le, lc) in enumerate(leads):
                if exp_divides(le, m):
                    hit = (i, le, lc)
                    break
            if hit is None:
                raise ConsistencyError("staircase inconsistency in NF table")
            i, le, lc = hit
            gamma = exp_sub(m, le)
            vec = [Q(0)] * self.mu
            for e, c in gens[i].terms.items():
                if e == le:
                    continue
                e2 = exp_add(gamma, e)
                if exp_deg(e2) > d:
                    continue
                sub = table[e2]
                f = c / lc
                for t in range(self.mu):
                    if sub[t] != 0:
                        vec[t] -= f * sub[t]
            table[m] = vec
        self._nf_table = table

    def nf_vector(self, p):
        """Coordinates of the canonical reduced normal form of p on basis."""
        if self._nf_table is None:
            self._build_nf_table()
        out = [Q(0)] * self.mu
        d = self.top_degree
        for e, c in p.terms.items():
            if exp_deg(e) > d:
                continue
            vec = self._nf_table[e]
            for t in range(self.mu):
                if vec[t] != 0:
                    out[t] += c * vec[t]
        return out

    def nf_polynomial(self, p):
        vec = self.nf_vector(p)
        nv = self.nvars
        terms = {self.basis[i]: vec[i] for i in range(self.mu) if vec[i] != 0}
        return Polynomial(nv, terms)


def _staircase(lead_exps, nv):
    """Standard monomials (closed under divisibility), or None when some
    variable has no pure power among the leads (infinite staircase)."""
    for i in range(nv):
        if not any(
            e[i] > 0 and all(e[j] == 0 for j in range(nv) if j != i)
            for e in lead_exps
        ):
            return None
    origin = (0,) * nv
    seen = {origin}
    queue = [origin]
    basis = []
    while queue:
        m = queue.pop()
        if any(exp_divides(le, m) for le in lead_exps):
            continue
        basis.append(m)
        for i in range(nv):
            m2 = m[:i] + (m[i] + 1,) + m[i + 1 :]
            if m2 not in seen:
                seen.add(m2)
                queue.append(m2)
    basis.sort(key=_heap_key)
    return basis


def milnor_data(f, min_trunc=None, max_doublings=5):
    """Milnor number and monomial basis of the Milnor algebra of f.

    The standard basis is computed with degree-truncated arithmetic and an
    adaptive cap: the result is accepted once the staircase is finite and
    its top degree lies strictly below the cap, which certifies that the
    truncated elements generate the Jacobian ideal exactly (dropped terms
    sit in a power of the maximal ideal already inside the ideal).

    Raises SmoothGermError when f has a nonzero linear part and
    NonIsolatedError when no finite staircase appears within the degree
    budget (in particular whenever the Milnor number is infinite)."""
    if f.constant_term() != 0:
        raise ValueError("f must vanish at the origin")
    if f.is_zero():
        raise NonIsolatedError("the zero polynomial does not define a hypersurface")
    if f.order() < 2:
        raise SmoothGermError("f has a nonzero linear part; the germ is smooth")
    nv = f.nvars
    jac = [f.diff(i) for i in range(nv)]
    if any(p.is_zero() for p in jac):
        # a variable is missing entirely: singular locus is positive-dimensional
        raise NonIsolatedError("the singular locus is positive-dimensional")
    trunc = 2 * f.total_degree() + nv + 2
    if min_trunc is not None:
        trunc = max(trunc, min_trunc)
    for _ in range(max_doublings + 1):
        sb = standard_basis(jac, LOCAL_ORDER, trunc=trunc)
        basis = _staircase(sb.lead_exponents(), nv)
        if basis is not None:
            top = max(exp_deg(e) for e in basis)
            if top + 1 <= trunc:
                return MilnorData(f, sb, basis)
        trunc *= 2
    raise NonIsolatedError(
        "no finite monomial staircase below degree "
        f"{trunc // 2}: the singularity is not isolated (or exceeds the "
        "degree budget)"
    )


def is_quasihomogeneous(f, md=None):
    """Saito's criterion: f lies in its Jacobian ideal in the local ring.

    Decided through the canonical normal form, which factors through a
    finite-dimensional quotient for the zero-dimensional Jacobian ideal;
    local_membership provides certificates when the caller wants them."""
    if md is None:
        md = milnor_data(f)
    return all(c == 0 for c in md.nf_vector(f))


# -- truncated division with quotient tracking ---------------------------


class LocalReducer:
    """Division against the Jacobian standard basis inside O/m^(cap+1).

    reduce() returns the basis coordinates of the normal form plus the
    quotients on the standard basis elements, everything truncated to the
    requested total degree.  Used by the Gauss-Manin engine, where
    truncation safety is handled by an explicit degree schedule."""

    __slots__ = ("md", "leads", "tails", "nvars")

    def __init__(self, md):
        self.md = md
        sb = md.jacobian_sb
        self.nvars = md.nvars
        self.leads = [(e, c) for e, c in sb.leads]
        self.tails = []
        for g, (le, lc) in zip(sb.generators, sb.leads):
            tail = [(e, c) for e, c in g.terms.items() if e != le]
            tail.sort(key=lambda t: _heap_key(t[0]))
            self.tails.append(tail)

    def reduce(self, terms, cap):
        """terms: dict exponent -> coefficient.  Returns (cvec, quotients)."""
        md = self.md
        basis_index = md.basis_index
        leads = self.leads
        tails = self.tails
        work = {}
        heap = []
        for e, c in terms.items():
            if exp_deg(e) <= cap and c != 0:
                work[e] = work.get(e, Q(0)) + c
                heapq.heappush(heap, _heap_key(e) + (e,))
        cvec = [Q(0)] * md.mu
        quots = [dict() for _ in leads]
        while heap:
            entry = heapq.heappop(heap)
            e = entry[-1]
            c = work.pop(e, None)
            if c is None or c == 0:
                continue
            idx = basis_index.get(e)
            if idx is not None:
                cvec[idx] += c
                continue
            hit = None
            for i, (le, lc) in enumerate(leads):
                if exp_divides(le, e):
                    hit = (i, le, lc)
                    break
            if hit is None:
                raise ConsistencyError("unreducible non-standard monomial")
            i, le, lc = hit
            gamma = exp_sub(e, le)
            coef = c / lc
            qd = quots[i]
            qd[gamma] = qd.get(gamma, Q(0)) + coef
            for e2, c2 in tails[i]:
                e3 = exp_add(gamma, e2)
                if exp_deg(e3) > cap:
                    continue
                prev = work.get(e3)
                if prev is None:
                    work[e3] = -coef * c2
                    heapq.heappush(heap, _heap_key(e3) + (e3,))
                else:
                    work[e3] = prev - coef * c2
        return cvec, quots
