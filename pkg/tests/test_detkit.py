import numpy as np
import pytest

from szegokit import (CircleMeasure, FourierCoeffs, GridFunction, IndexedBasis,
                      InputError, NotPositiveDefiniteError, NumericalError,
                      bordered_ratio, gram_matrix, levinson_ratios, logdet_lu,
                      moment, moments_table)

from conftest import GM_COS, density_cos, density_poly, smooth_measures


def det_cofactor(M):
    """Independent determinant oracle by first-row cofactor expansion."""
    M = np.asarray(M)
    n = M.shape[0]
    if n == 1:
        return M[0, 0]
    total = 0.0 + 0.0j
    for j in range(n):
        minor = np.delete(np.delete(M, 0, axis=0), j, axis=1)
        total += (-1) ** j * M[0, j] * det_cofactor(minor)
    return total


def tridiag_dets(n_max):
    """D_n for the weight |1 - 0.5 e_1|^2 by the three-term cofactor recurrence."""
    # Toeplitz with diagonal 1.25 and off-diagonals -0.5
    dets = [1.25]
    dets.append(1.25 * 1.25 - 0.25)
    for _ in range(2, n_max + 1):
        dets.append(1.25 * dets[-1] - 0.25 * dets[-2])
    return np.array(dets)


def neg_base(n):
    return IndexedBasis.from_exponents([-j for j in range(1, n + 1)], dim=1)


# ---------------------------------------------------------------------------
# gram_matrix
# ---------------------------------------------------------------------------

def test_gram_toeplitz_block(mu_cos):
    base = neg_base(6)
    G = gram_matrix(base, base, mu_cos)
    for j in range(6):
        for k in range(6):
            assert G[j, k] == pytest.approx(moment(mu_cos, -(k + 1) + (j + 1)))
    assert np.max(np.abs(G - G.conj().T)) < 1e-14


def test_gram_trivial_cases(mu_lebesgue, mu_cos):
    e0 = IndexedBasis.from_exponents([0])
    assert gram_matrix(e0, e0, mu_lebesgue)[0, 0] == pytest.approx(1.0)
    em1 = IndexedBasis.from_exponents([-1])
    assert gram_matrix(e0, em1, mu_cos)[0, 0] == pytest.approx(0.5)


def test_gram_generic_path_matches_fast(mu_cos):
    # non-monomial tables force the grid path; compare against the moment path
    rng = np.random.default_rng(5)
    t1 = FourierCoeffs(1, {(k,): complex(*rng.standard_normal(2)) for k in range(-2, 3)}, (2,))
    t2 = FourierCoeffs(1, {(k,): complex(*rng.standard_normal(2)) for k in range(-2, 3)}, (2,))
    G = gram_matrix(IndexedBasis((t1,)), IndexedBasis((t2,)), mu_cos)[0, 0]
    expect = sum(t1.entry(a) * np.conj(t2.entry(b)) * moment(mu_cos, b - a)
                 for a in range(-2, 3) for b in range(-2, 3))
    assert G == pytest.approx(expect)


def test_gram_atoms_both_paths():
    mu = CircleMeasure.from_density(density_cos(64), atoms=(((0.3,), 0.25),))
    mono = IndexedBasis.from_exponents([0, 1])
    G_fast = gram_matrix(mono, mono, mu)
    # equivalent non-monomial encoding (coefficient 1 but an extra explicit 0 entry)
    tables = tuple(FourierCoeffs(1, {(k,): 1.0, (3,): 0.0}, (3,)) for k in (0, 1))
    G_slow = gram_matrix(IndexedBasis(tables), IndexedBasis(tables), mu)
    assert np.max(np.abs(G_fast - G_slow)) < 1e-12


# ---------------------------------------------------------------------------
# levinson_ratios
# ---------------------------------------------------------------------------

def test_levinson_lebesgue(mu_lebesgue):
    E = levinson_ratios(moments_table(mu_lebesgue, 16), 16)
    assert np.max(np.abs(E - 1.0)) < 1e-14


def test_levinson_vs_tridiagonal_oracle(mu_poly):
    n_max = 24
    E = levinson_ratios(moments_table(mu_poly, n_max), n_max)
    dets = tridiag_dets(n_max)
    expect = np.concatenate([[dets[0]], dets[1:] / dets[:-1]])
    assert np.max(np.abs(E - expect)) < 1e-12
    closed = [(1 - 0.25 ** (n + 2)) / (1 - 0.25 ** (n + 1)) for n in range(n_max + 1)]
    assert np.max(np.abs(E - np.array(closed))) < 1e-12


def test_levinson_decreases_to_gm(mu_cos):
    E = levinson_ratios(moments_table(mu_cos, 64), 64)
    assert np.all(E > 0)
    assert np.all(np.diff(E) <= 1e-14)
    assert abs(E[-1] - GM_COS) < 1e-12


def test_levinson_complex_moments_vs_cofactor():
    # a genuinely complex Hermitian positive case: density 2 + cos + sin shift
    n = 256
    t = np.arange(n) / n
    f = 2.0 + np.cos(2 * np.pi * t) + 0.5 * np.sin(2 * np.pi * t)
    mu = CircleMeasure.from_density(GridFunction((n,), f))
    mom = moments_table(mu, 4)
    E = levinson_ratios(mom, 3)
    for m in range(4):
        T = np.array([[moment(mu, k - j) for k in range(m + 1)] for j in range(m + 1)])
        D_m = det_cofactor(T).real
        D_prev = 1.0 if m == 0 else det_cofactor(T[:m, :m]).real
        assert E[m] == pytest.approx(D_m / D_prev, rel=1e-12)


def test_levinson_rejects_bad_input(mu_cos):
    mom = moments_table(mu_cos, 8)
    with pytest.raises(InputError, match="insufficient"):
        levinson_ratios(mom, 9)
    bad = FourierCoeffs(1, {(0,): -1.0}, (0,))
    with pytest.raises(NotPositiveDefiniteError, match="not positive definite"):
        levinson_ratios(bad, 0)
    skew = FourierCoeffs(1, {(0,): 1.0, (1,): 0.5, (-1,): 0.4}, (1,))
    with pytest.raises(InputError, match="conjugate-symmetric"):
        levinson_ratios(skew, 1)


# ---------------------------------------------------------------------------
# bordered_ratio
# ---------------------------------------------------------------------------

def test_border_e0_equals_levinson(mu_cos):
    E = levinson_ratios(moments_table(mu_cos, 32), 32)
    e0 = IndexedBasis.from_exponents([0])
    for n in (1, 4, 16, 32):
        r = bordered_ratio(e0, e0, neg_base(n), mu_cos)
        assert abs(r - E[n]) < 1e-10


def test_border_e1_lebesgue(mu_lebesgue):
    e1 = IndexedBasis.from_exponents([1])
    assert bordered_ratio(e1, e1, neg_base(8), mu_lebesgue) == pytest.approx(1.0)


def test_bordered_vs_full_lu_oracle(mu_poly):
    n = 32
    border = IndexedBasis.from_exponents([0, 1])
    ratio = bordered_ratio(border, border, neg_base(n), mu_poly)
    full_idx = [-j for j in range(1, n + 1)] + [0, 1]
    full = gram_matrix(IndexedBasis.from_exponents(full_idx),
                       IndexedBasis.from_exponents(full_idx), mu_poly)
    base = gram_matrix(neg_base(n), neg_base(n), mu_poly)
    oracle = logdet_lu(full).divide(logdet_lu(base))
    assert abs(ratio - oracle) < 1e-10


def test_bordered_all_presets_vs_lu():
    for name, mu in smooth_measures(256).items():
        border = IndexedBasis.from_exponents([0, 2])
        n = 16
        ratio = bordered_ratio(border, border, neg_base(n), mu)
        full_idx = [-j for j in range(1, n + 1)] + [0, 2]
        fb = IndexedBasis.from_exponents(full_idx)
        oracle = logdet_lu(gram_matrix(fb, fb, mu)).divide(
            logdet_lu(gram_matrix(neg_base(n), neg_base(n), mu)))
        assert abs(ratio - oracle) < 1e-9, name


def test_bordered_permutation_invariance(mu_cos):
    rows = IndexedBasis.from_exponents([0, 1, 3])
    cols = IndexedBasis.from_exponents([0, 2, 4])
    base = neg_base(12)
    r1 = bordered_ratio(rows, cols, base, mu_cos)
    perm = [2, 0, 1]
    rows_p = IndexedBasis.from_exponents([[0, 1, 3][i] for i in perm])
    cols_p = IndexedBasis.from_exponents([[0, 2, 4][i] for i in perm])
    r2 = bordered_ratio(rows_p, cols_p, base, mu_cos)
    assert abs(r1 - r2) < 1e-12 * max(1.0, abs(r1))


def test_bordered_size_mismatch(mu_cos):
    with pytest.raises(InputError, match="border size mismatch"):
        bordered_ratio(IndexedBasis.from_exponents([0]),
                       IndexedBasis.from_exponents([0, 1]), neg_base(4), mu_cos)


def test_bordered_singular_base():
    # two atoms support a rank-2 measure; a base of three exponentials is singular
    mu = CircleMeasure(GridFunction.zero((64,)), atoms=(((0.1,), 1.0), ((0.4,), 1.0)))
    e0 = IndexedBasis.from_exponents([0])
    with pytest.raises(NumericalError, match="base block singular"):
        bordered_ratio(e0, e0, neg_base(3), mu)


def test_bordered_complex_lu_path():
    # complex density conj(1 - 0.4 e_1): lower bidiagonal moments, D_n = 1
    n = 64
    t = np.arange(n) / n
    dens = np.conj(1 - 0.4 * np.exp(2j * np.pi * t))
    mu = CircleMeasure(GridFunction((n,), dens), positive=False)
    e0 = IndexedBasis.from_exponents([0])
    r = bordered_ratio(e0, e0, neg_base(8), mu)
    assert r == pytest.approx(1.0)


# ---------------------------------------------------------------------------
# logdet_lu
# ---------------------------------------------------------------------------

def test_logdet_identity():
    ld = logdet_lu(np.eye(5))
    assert ld.log_modulus == pytest.approx(0.0)
    assert ld.phase == pytest.approx(1.0)
    assert not ld.singular


def test_logdet_diag():
    ld = logdet_lu(np.diag([2.0, -3.0]))
    assert ld.log_modulus == pytest.approx(np.log(6.0))
    assert ld.phase == pytest.approx(-1.0)


def test_logdet_vs_cofactor_oracle():
    rng = np.random.default_rng(19)
    for _ in range(5):
        M = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        ld = logdet_lu(M)
        assert ld.value == pytest.approx(det_cofactor(M), rel=1e-12)
    M8 = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
    sign, logabs = np.linalg.slogdet(M8)
    ld8 = logdet_lu(M8)
    assert ld8.log_modulus == pytest.approx(logabs, rel=1e-12)
    assert ld8.phase == pytest.approx(sign, rel=1e-12)


def test_logdet_singular():
    ld = logdet_lu(np.zeros((3, 3)))
    assert ld.singular
    with pytest.raises(NumericalError):
        _ = ld.value
    with pytest.raises(NumericalError):
        ld.divide(logdet_lu(np.eye(3)))


def test_logdet_rejects_rectangular():
    with pytest.raises(InputError):
        logdet_lu(np.zeros((2, 3)))
