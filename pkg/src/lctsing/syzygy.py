"""Syzygy modules of polynomial tuples.

Computed in the polynomial ring with a global order: Buchberger with
division bookkeeping, then one zero-reduction pass over all S-pairs of
the finished basis.  Every zero reduction of an S-pair yields a syzygy of
the basis, and rewriting through the transformation matrix turns these
into generators of the syzygy module of the original tuple (which stays
inside the basis, so the rewriting map is onto).  By flatness of
localization the same tuples generate the syzygy module over the local
ring.
"""

from .errors import ConsistencyError
from .poly import Polynomial, DEGREVLEX, exp_sub, exp_deg

MAX_PAIR_DEGREE_MARGIN = 0


def _global_divide(g, basis, order):
    """Plain division by a list of polynomials in a global order.

    Returns (quotients, remainder)."""
    nv = g.nvars
    zero = Polynomial.zero(nv)
    quots = [zero] * len(basis)
    rem = zero
    leads = [p.leading(order) for p in basis]
    h = g
    while not h.is_zero():
        lead_exp, lead_coeff = h.leading(order)
        hit = None
        for i, (le, lc) in enumerate(leads):
            if all(a <= b for a, b in zip(le, lead_exp)):
                hit = (i, le, lc)
                break
        if hit is None:
            mono = Polynomial.monomial(nv, lead_exp, lead_coeff)
            rem = rem + mono
            h = h - mono
            continue
        i, le, lc = hit
        mono = Polynomial.monomial(nv, exp_sub(lead_exp, le), lead_coeff / lc)
        quots[i] = quots[i] + mono
        h = h - mono * basis[i]
    return quots, rem


def _spair_data(pi, pj, order, nv):
    (ei, ci), (ej, cj) = pi.leading(order), pj.leading(order)
    lcm = tuple(max(a, b) for a, b in zip(ei, ej))
    mi = Polynomial.monomial(nv, exp_sub(lcm, ei), 1 / ci)
    mj = Polynomial.monomial(nv, exp_sub(lcm, ej), 1 / cj)
    return mi * pi - mj * pj, mi, mj, lcm


def groebner_with_transform(gens, order=DEGREVLEX, degree_cap=None):
    """Groebner basis plus expressions of its elements in the input tuple.

    S-pairs whose lcm degree exceeds degree_cap are discarded, so with a
    finite cap the result is a Groebner basis up to that degree (callers
    pass caps comfortably above every degree they care about)."""
    gens = list(gens)
    if not gens or all(g.is_zero() for g in gens):
        raise ValueError("no nonzero generators")
    nv = gens[0].nvars
    zero = Polynomial.zero(nv)
    basis = []
    transform = []
    for i, g in enumerate(gens):
        if g.is_zero():
            continue
        basis.append(g)
        transform.append(
            [Polynomial.const(nv, 1) if j == i else zero for j in range(len(gens))]
        )
    index_of = {id(b): k for k, b in enumerate(basis)}

    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]

    def lcm_deg(i, j):
        ei = basis[i].leading(order)[0]
        ej = basis[j].leading(order)[0]
        return exp_deg(tuple(max(a, b) for a, b in zip(ei, ej)))

    while pairs:
        pairs.sort(key=lambda p: (lcm_deg(*p), p[0], p[1]))
        i, j = pairs.pop(0)
        if degree_cap is not None and lcm_deg(i, j) > degree_cap:
            continue
        sp, mi, mj, _ = _spair_data(basis[i], basis[j], order, nv)
        if sp.is_zero():
            continue
        quots, rem = _global_divide(sp, basis, order)
        if rem.is_zero():
            continue
        row = [mi * transform[i][l] - mj * transform[j][l] for l in range(len(gens))]
        for k, q in enumerate(quots):
            if q.is_zero():
                continue
            for l in range(len(gens)):
                row[l] = row[l] - q * transform[k][l]
        basis.append(rem)
        transform.append(row)
        new = len(basis) - 1
        pairs.extend((k, new) for k in range(new))
    return basis, transform


def syzygies(gens, degree_bound=None):
    """Generators of the syzygy module of the given polynomial tuple.

    Each returned tuple v satisfies sum(v_l * gens_l) == 0 exactly; the
    identity is re-verified before returning."""
    gens = list(gens)
    nv = gens[0].nvars
    nz = [g for g in gens if not g.is_zero()]
    if not nz:
        raise ValueError("no nonzero generators")
    maxdeg = max(g.total_degree() for g in nz)
    if degree_bound is None:
        degree_bound = 2 * maxdeg + nv + 1
    if degree_bound < maxdeg:
        raise ValueError("degree_bound below the degree of the generators")

    order = DEGREVLEX
    zero = Polynomial.zero(nv)

    # indices of zero input polynomials get trivial unit syzygies
    nonzero_idx = [i for i, g in enumerate(gens) if not g.is_zero()]
    zero_idx = [i for i, g in enumerate(gens) if g.is_zero()]
    work_gens = [gens[i] for i in nonzero_idx]

    basis, transform = groebner_with_transform(
        work_gens, order, degree_cap=degree_bound + MAX_PAIR_DEGREE_MARGIN
    )

    raw = []
    for j in range(len(basis)):
        for i in range(j):
            sp, mi, mj, lcm = _spair_data(basis[i], basis[j], order, nv)
            if degree_bound is not None and exp_deg(lcm) > degree_bound:
                continue
            quots, rem = _global_divide(sp, basis, order)
            if not rem.is_zero():
                raise ConsistencyError("S-pair of a Groebner basis did not reduce")
            row = [
                mi * transform[i][l] - mj * transform[j][l]
                for l in range(len(work_gens))
            ]
            for k, q in enumerate(quots):
                if q.is_zero():
                    continue
                for l in range(len(work_gens)):
                    row[l] = row[l] - q * transform[k][l]
            if any(not p.is_zero() for p in row):
                raw.append(row)

    # deduplicate and re-embed into the full index set
    out = []
    seen = set()
    for row in raw:
        key = tuple(frozenset(p.terms.items()) for p in row)
        if key in seen:
            continue
        seen.add(key)
        full = [zero] * len(gens)
        for l, i in enumerate(nonzero_idx):
            full[i] = row[l]
        acc = Polynomial.zero(nv)
        for v, g in zip(full, gens):
            acc = acc + v * g
        if not acc.is_zero():
            raise ConsistencyError("computed tuple is not a syzygy")
        out.append(tuple(full))
    for i in zero_idx:
        unit = [zero] * len(gens)
        unit[i] = Polynomial.const(nv, 1)
        out.append(tuple(unit))
    return out
