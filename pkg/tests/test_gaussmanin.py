import pytest

from lctsing.gaussmanin import (
    C0Structure,
    Spectrum,
    _model,
    bp_spectrum_oracle,
    c0_structure,
    gauss_manin_analysis,
    lct_obstruction_membership,
    monodromy_info,
    qh_spectrum_oracle,
    saturate,
    t_matrix,
)
from lctsing.linalg import generalized_eigenspaces
from lctsing.localalg import milnor_data
from lctsing.poly import parse_polynomial
from lctsing.quasihom import detect_weights
from lctsing.rationals import Q

V3 = ["x", "y", "z"]
V2 = ["x", "y"]
V1 = ["x"]


def P(text, names=V3):
    return parse_polynomial(text, names)


def sp_of(pairs):
    return Spectrum([(Q(a) if "/" not in str(a) else Q(*map(int, str(a).split("/"))), m)
                     for a, m in pairs])


# -- t-matrix ------------------------------------------------------------------


def test_t_matrix_one_variable_square():
    f = P("x^2", V1)
    bm = t_matrix(milnor_data(f), f, 4)
    assert bm.layers[0][0][0] == 0
    assert bm.layers[1][0][0] == Q(1, 2)
    assert bm.layers[2][0][0] == 0


def test_t_matrix_sphere():
    f = P("x^2+y^2+z^2")
    bm = t_matrix(milnor_data(f), f, 4)
    assert bm.layers[1][0][0] == Q(3, 2)
    assert all(bm.layers[k][0][0] == 0 for k in (0, 2, 3))


def test_t_matrix_cubic_curve_diagonal():
    f = P("x^3+y^3", V2)
    md = milnor_data(f)
    bm = t_matrix(md, f, 3)
    # basis (1, x, y, xy) gives s * diag(2/3, 1, 1, 4/3)
    assert md.basis == [(0, 0), (1, 0), (0, 1), (1, 1)]
    assert all(x == 0 for row in bm.layers[0] for x in row)
    diag = [bm.layers[1][i][i] for i in range(4)]
    assert diag == [Q(2, 3), Q(1), Q(1), Q(4, 3)]
    off = [bm.layers[1][i][j] for i in range(4) for j in range(4) if i != j]
    assert all(x == 0 for x in off)


# -- saturation ------------------------------------------------------------------


def test_saturation_already_stable_for_weighted_cases():
    f = P("x^2+y^2+z^2")
    md = milnor_data(f)
    sm = saturate(t_matrix(md, f, 6))
    assert sm.steps == 0
    assert sm.residue == [[Q(3, 2)]]

    f2 = P("x^3+y^3", V2)
    sm2 = saturate(t_matrix(milnor_data(f2), f2, 6))
    assert sm2.steps == 0
    eig = {lam: mult for lam, mult, _ in generalized_eigenspaces(sm2.residue)}
    assert eig == {Q(2, 3): 1, Q(1): 2, Q(4, 3): 1}


def test_saturation_running_example_minimal_exponent(quintic):
    sm = quintic.gm.sm
    assert sm.steps >= 1
    eig = generalized_eigenspaces(sm.residue)
    assert min(lam for lam, _, _ in eig) == Q(7, 10)


def test_min_residue_eigenvalue_is_alpha1_plus_one(corpus):
    for name in ("t55_curve", "E7_curve", "cusp_fold"):
        entry = corpus[name]
        eig = generalized_eigenspaces(entry.gm.sm.residue)
        assert min(lam for lam, _, _ in eig) == entry.gm.spectrum.alpha1() + 1


# -- spectrum ---------------------------------------------------------------------


def test_spectrum_cubic_curve():
    f = P("x^3+y^3", V2)
    res = gauss_manin_analysis(f)
    assert res.spectrum == sp_of([("-1/3", 1), ("0", 2), ("1/3", 1)])


def test_spectrum_sphere():
    res = gauss_manin_analysis(P("x^2+y^2+z^2"))
    assert res.spectrum == sp_of([("1/2", 1)])


def test_spectrum_running_example_table(quintic):
    from corpus import QUINTIC_SPECTRUM

    got = [(str(a), m) for a, m in quintic.gm.spectrum.pairs]
    assert got == QUINTIC_SPECTRUM


# -- oracles ----------------------------------------------------------------------


def test_bp_oracle_examples():
    assert bp_spectrum_oracle([2, 2, 2]) == sp_of([("1/2", 1)])
    assert bp_spectrum_oracle([3, 3]) == sp_of([("-1/3", 1), ("0", 2), ("1/3", 1)])
    assert bp_spectrum_oracle([5]) == sp_of(
        [("-4/5", 1), ("-3/5", 1), ("-2/5", 1), ("-1/5", 1)]
    )
    with pytest.raises(ValueError):
        bp_spectrum_oracle([1, 2])


def test_qh_oracle_examples():
    f = P("x^2+y^2+z^2")
    md = milnor_data(f)
    assert qh_spectrum_oracle(md, detect_weights(f)) == sp_of([("1/2", 1)])
    f2 = P("x^3+y^3", V2)
    md2 = milnor_data(f2)
    assert qh_spectrum_oracle(md2, detect_weights(f2)) == sp_of(
        [("-1/3", 1), ("0", 2), ("1/3", 1)]
    )


def test_qh_oracle_matches_engine_on_corpus(corpus):
    for entry in corpus.values():
        ws = detect_weights(entry.f)
        if ws is None:
            continue
        assert entry.gm.spectrum == qh_spectrum_oracle(entry.md, ws), entry.name


# -- monodromy --------------------------------------------------------------------


def test_monodromy_running_example(quintic):
    info = quintic.gm.monodromy
    assert not info.has_eigenvalue_one
    assert info.alpha1 == Q(-3, 10)
    assert info.alpha2 == Q(-1, 10)


def test_monodromy_integer_spectral_number():
    info = monodromy_info(sp_of([("-1/3", 1), ("0", 2), ("1/3", 1)]))
    assert info.has_eigenvalue_one
    assert info.alpha1 == Q(-1, 3) and info.alpha2 == 0


def test_monodromy_eigenvalue_classes():
    info = monodromy_info(Spectrum([(Q(-1, 2), 1)]))
    assert info.eigenvalues == ((Q(1, 2), 1),)
    assert not info.has_eigenvalue_one


# -- C0 structure and membership ---------------------------------------------------


def test_c0_trivial_when_no_integer_spectral_number(quintic):
    c0 = quintic.gm.c0()
    assert c0.dim == 0
    assert lct_obstruction_membership(c0, "dx")
    assert lct_obstruction_membership(c0, "any_unit")


def test_c0_sphere_trivial():
    f = P("x^2+y^2+z^2")
    res = gauss_manin_analysis(f)
    assert res.c0().dim == 0


def test_c0_cubic_curve():
    f = P("x^3+y^3", V2)
    res = gauss_manin_analysis(f)
    c0 = res.c0()
    assert c0.dim == 2
    assert c0.n_image == []  # weighted-homogeneous: semisimple action
    assert all(x == 0 for x in c0.d0)  # [dx] has pure grading -1/3


def test_membership_synthetic():
    c0 = C0Structure(
        2,
        [[Q(0), Q(0)], [Q(0), Q(0)]],
        [[Q(0), Q(1)]],  # H0 = span e2
        [],
        [],
        [Q(1), Q(0)],  # d0 = e1
    )
    assert not lct_obstruction_membership(c0, "dx")
    assert not lct_obstruction_membership(c0, "any_unit")
    c0b = C0Structure(2, [[Q(0), Q(0)], [Q(0), Q(0)]], [[Q(0), Q(1)]], [], [],
                      [Q(0), Q(0)])
    assert lct_obstruction_membership(c0b, "dx")


def test_shifted_lattice_has_no_c0_component(corpus):
    """The image of s*H'' projects to zero in the alpha = 0 graded piece."""
    for name in ("fermat3", "t55_susp2"):
        entry = corpus[name]
        gm = entry.gm
        model = _model(gm.sm, gm.depth)
        coords = [(k, j) for (beta, k, j) in model.rows if beta == 1]
        if not coords:
            continue
        cols = model.w_columns()
        for (a, i), vec in cols.items():
            if a == 0:
                continue
            for c in coords:
                assert vec[model.row_index[c]] == 0


# -- engine invariants ---------------------------------------------------------------


def test_corpus_invariants(corpus):
    for entry in corpus.values():
        gm = entry.gm
        sp = gm.spectrum
        n = entry.f.nvars - 1
        assert sp.total() == entry.md.mu, entry.name
        assert sp.is_symmetric(n), entry.name
        assert all(Q(-1) < a and a < Q(n) for a, _ in sp.pairs), entry.name
        assert gm.stable
        assert gm.monodromy.has_eigenvalue_one == sp.has_integer()


def test_depth_stability_explicit():
    f = P("x^2*y+y^3", V2)
    md = milnor_data(f)
    r3 = gauss_manin_analysis(f, md, K=3)
    r4 = gauss_manin_analysis(f, md, K=4)
    assert r3.spectrum == r4.spectrum
