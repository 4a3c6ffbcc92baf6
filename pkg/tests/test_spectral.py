"""Spectral operator tests: eigenfunction identities, independent
finite-difference / convolution / quadrature oracles, and the Jacobian
identity suite."""

import numpy as np
import pytest

from mla.spectral import (
    FieldNorms,
    GridMismatchError,
    NonZeroMeanError,
    ScalarField,
    SpectralGrid,
    deriv,
    divergence,
    field_from_json,
    field_to_json,
    helmholtz_inv,
    inner,
    inv_laplacian,
    jacobian,
    laplacian,
    norms,
    velocity_from_stream,
)

GRID = SpectralGrid(32)


def rel_err(got, want):
    scale = np.max(np.abs(want))
    if scale == 0:
        return np.max(np.abs(got))
    return np.max(np.abs(got - want)) / scale


def field_dist(f, g):
    return norms(f - g).l2


# ---------------------------------------------------------------------
# grid and field construction
# ---------------------------------------------------------------------

def test_grid_validation():
    with pytest.raises(ValueError):
        SpectralGrid(7)
    with pytest.raises(ValueError):
        SpectralGrid(6)
    with pytest.raises(ValueError):
        SpectralGrid(16, dealias_fraction=0)


def test_zero_mean_enforced_by_construction():
    c = np.zeros((32, 32), dtype=np.complex128)
    c[0, 0] = 1e-16
    f = ScalarField(GRID, c)
    assert f.coeffs[0, 0] == 0
    c[0, 0] = 0.5
    with pytest.raises(NonZeroMeanError):
        ScalarField(GRID, c)


def test_harmonic_coefficients():
    f = ScalarField.harmonic(GRID, 1, 0)
    assert f.coeff(1, 0) == pytest.approx(0.5)
    assert f.coeff(-1, 0) == pytest.approx(0.5)
    g = ScalarField.harmonic(GRID, 0, 2, amplitude=3.0, kind="sin")
    assert g.coeff(0, 2) == pytest.approx(3.0 / 2j)
    x1, x2 = GRID.physical_nodes()
    assert rel_err(f.to_physical(), np.cos(x1)) < 1e-13
    assert rel_err(g.to_physical(), 3.0 * np.sin(2 * x2)) < 1e-13


def test_random_field_is_hermitian_and_zero_mean():
    rng = np.random.default_rng(0)
    f = ScalarField.random(GRID, rng)
    assert f.is_hermitian(tol=0.0)  # canonicalized, not just close
    assert f.coeffs[0, 0] == 0


def test_grid_mismatch_raises():
    f = ScalarField.harmonic(SpectralGrid(16), 1, 0)
    g = ScalarField.harmonic(SpectralGrid(32), 1, 0)
    with pytest.raises(GridMismatchError):
        jacobian(f, g)
    with pytest.raises(GridMismatchError):
        f + g


# ---------------------------------------------------------------------
# laplacian / inverses
# ---------------------------------------------------------------------

def test_laplacian_eigenfunction():
    f = ScalarField.harmonic(GRID, 1, 0)
    assert field_dist(laplacian(f), -1.0 * f) < 1e-14


@pytest.mark.parametrize("s", [1, 2, 5])
def test_laplacian_kolmogorov_mode(s):
    # -nu Lap(psi_s) = F_s hinges on Lap cos(s x2) = -s^2 cos(s x2)
    f = ScalarField.harmonic(GRID, 0, s)
    assert field_dist(laplacian(f), -float(s * s) * f) < 1e-12


def test_laplacian_matches_finite_differences():
    # Oracle: second-order 5-point stencil on a 512^2 grid.
    n = 512
    grid = SpectralGrid(n)
    rng = np.random.default_rng(7)
    f = ScalarField.random(grid, rng, amplitude=1.0, decay=1.5)
    phys = f.to_physical()
    h = 2 * np.pi / n
    fd = (
        np.roll(phys, 1, axis=0) + np.roll(phys, -1, axis=0)
        + np.roll(phys, 1, axis=1) + np.roll(phys, -1, axis=1)
        - 4 * phys
    ) / h**2
    spectral = laplacian(f).to_physical()
    err = np.linalg.norm(spectral - fd) / np.linalg.norm(spectral)
    assert err < 1e-4


def test_inv_laplacian_example():
    f = ScalarField.harmonic(GRID, 1, 1)  # cos(x1+x2), |k|^2 = 2
    assert field_dist(inv_laplacian(f), -0.5 * f) < 1e-14


def test_inv_laplacian_roundtrip_random():
    rng = np.random.default_rng(3)
    worst = 0.0
    for _ in range(100):
        f = ScalarField.random(GRID, rng)
        worst = max(worst, field_dist(laplacian(inv_laplacian(f)), f))
        worst = max(worst, field_dist(inv_laplacian(laplacian(f)), f))
    assert worst < 1e-13


def test_inv_laplacian_rejects_nonzero_mean():
    # mutate the coefficient array behind the constructor's pin to
    # exercise the operator-level guard
    g = ScalarField.zeros(GRID)
    g.coeffs[0, 0] = 1e-6
    with pytest.raises(NonZeroMeanError):
        inv_laplacian(g)


def test_helmholtz_inv_alpha0_is_identity():
    rng = np.random.default_rng(11)
    f = ScalarField.random(GRID, rng)
    assert field_dist(helmholtz_inv(f, 0.0), f) == 0


@pytest.mark.parametrize("k,alpha", [((3, 0), 0.5), ((2, 2), 1.0)])
def test_helmholtz_inv_symbol(k, alpha):
    f = ScalarField.harmonic(GRID, *k)
    ksq = k[0] ** 2 + k[1] ** 2
    assert field_dist(helmholtz_inv(f, alpha), (1.0 / (1 + alpha**2 * ksq)) * f) < 1e-14


def test_helmholtz_roundtrip_random():
    alpha = 0.37
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(25):
        f = ScalarField.random(GRID, rng)
        g = helmholtz_inv(f, alpha)
        back = g - alpha**2 * laplacian(g)  # (I - a^2 Lap) g
        worst = max(worst, field_dist(back, f))
    assert worst < 1e-13


def test_diagonal_operators_commute():
    rng = np.random.default_rng(13)
    f = ScalarField.random(GRID, rng)
    a = helmholtz_inv(laplacian(f), 0.3)
    b = laplacian(helmholtz_inv(f, 0.3))
    assert np.max(np.abs(a.coeffs - b.coeffs)) < 1e-15 * np.max(np.abs(a.coeffs))


# ---------------------------------------------------------------------
# jacobian
# ---------------------------------------------------------------------

def test_jacobian_closed_form_cos_cos():
    # J(cos x1, cos x2) = sin x1 sin x2
    f = ScalarField.harmonic(GRID, 1, 0)
    g = ScalarField.harmonic(GRID, 0, 1)
    x1, x2 = GRID.physical_nodes()
    expected = np.sin(x1) * np.sin(x2)
    assert rel_err(jacobian(f, g).to_physical(), expected) < 1e-13


@pytest.mark.parametrize("s,k1,k2", [(2, 1, 0), (3, 2, 1), (1, 4, -2)])
def test_jacobian_kolmogorov_coupling(s, k1, k2):
    # J(cos s x2, cos(k1 x1 + k2 x2)) = -k1 s sin(s x2) sin(k1 x1 + k2 x2)
    a = ScalarField.harmonic(GRID, 0, s)
    b = ScalarField.harmonic(GRID, k1, k2)
    x1, x2 = GRID.physical_nodes()
    expected = -k1 * s * np.sin(s * x2) * np.sin(k1 * x1 + k2 * x2)
    assert rel_err(jacobian(a, b).to_physical(), expected) < 1e-12


def test_jacobian_self_is_zero():
    rng = np.random.default_rng(17)
    for _ in range(10):
        a = ScalarField.random(GRID, rng)
        assert norms(jacobian(a, a)).l2 < 1e-12 * norms(a).l2 ** 2


def _convolution_jacobian(a, b):
    """Term-by-term convolution oracle: J_k = sum_{p+q=k} (p2 q1 - p1 q2) a_p b_q."""
    grid = a.grid
    out = {}
    nz_a = list(zip(*np.nonzero(a.coeffs)))
    nz_b = list(zip(*np.nonzero(b.coeffs)))
    wav = grid.wavenumbers
    for ia in nz_a:
        p = (wav[ia[0]], wav[ia[1]])
        ca = a.coeffs[ia]
        for ib in nz_b:
            q = (wav[ib[0]], wav[ib[1]])
            cb = b.coeffs[ib]
            k = (p[0] + q[0], p[1] + q[1])
            out[k] = out.get(k, 0.0) + (p[1] * q[0] - p[0] * q[1]) * ca * cb
    c = np.zeros_like(a.coeffs)
    cutoff = grid.dealias_cutoff
    for (k1, k2), val in out.items():
        if abs(k1) < cutoff and abs(k2) < cutoff:
            c[grid.index_of(k1, k2)] = val
    c[0, 0] = 0.0
    return ScalarField(grid, c)


def test_jacobian_matches_convolution_oracle():
    # Fields supported well inside the cutoff: the dealiased product is exact.
    rng = np.random.default_rng(23)
    for _ in range(5):
        a = ScalarField.random(GRID, rng, decay=2.0)
        b = ScalarField.random(GRID, rng, decay=2.0)
        # truncate support to |k|_inf <= 4 so p+q stays inside the cutoff
        keep = (np.abs(GRID.k1) <= 4) & (np.abs(GRID.k2) <= 4)
        a = ScalarField(GRID, np.where(keep, a.coeffs, 0.0))
        b = ScalarField(GRID, np.where(keep, b.coeffs, 0.0))
        ref = _convolution_jacobian(a, b)
        got = jacobian(a, b)
        scale = norms(a).l2 * norms(b).l2
        assert field_dist(got, ref) < 1e-12 * max(1.0, scale)


def test_jacobian_identity_suite_small():
    # Antisymmetry, mean-zero pairings, cyclic identity on random fields.
    rng = np.random.default_rng(29)
    for _ in range(20):
        a = ScalarField.random(GRID, rng)
        b = ScalarField.random(GRID, rng)
        c = ScalarField.random(GRID, rng)
        scale = norms(a).l2 * norms(b).l2
        assert norms(jacobian(a, b) + jacobian(b, a)).l2 < 1e-12 * scale

        # raw physical-space mean (the spectral mean is pinned by design)
        j_raw = (
            deriv(a, 1).to_physical() * deriv(b, 2).to_physical()
            - deriv(a, 2).to_physical() * deriv(b, 1).to_physical()
        )
        assert abs(np.mean(j_raw)) < 1e-12 * scale
        assert abs(inner(jacobian(a, b), b)) < 1e-12 * scale * norms(b).l2
        lhs = inner(jacobian(a, b), c)
        rhs = inner(jacobian(b, c), a)
        assert abs(lhs - rhs) < 1e-12 * max(abs(lhs), abs(rhs), scale)


# ---------------------------------------------------------------------
# velocity / divergence
# ---------------------------------------------------------------------

def test_velocity_from_stream_example():
    psi = ScalarField.harmonic(GRID, 0, 1)  # cos x2
    u = velocity_from_stream(psi)
    x1, x2 = GRID.physical_nodes()
    assert rel_err(u.u1.to_physical(), np.sin(x2)) < 1e-13
    assert norms(u.u2).l2 < 1e-14


def test_velocity_divergence_free():
    rng = np.random.default_rng(31)
    for _ in range(50):
        psi = ScalarField.random(GRID, rng)
        u = velocity_from_stream(psi)
        assert norms(divergence(u)).l2 < 1e-14 * max(1.0, norms(psi).h1_semi)


def test_kolmogorov_stream_velocity_profile():
    # psi_s is the vorticity of the stationary velocity: lifting through
    # the inverse Laplacian must reproduce the sinusoidal x1-directed flow.
    nu, lam, s = 0.7, 2.0, 3
    amp = nu * lam * s / (np.sqrt(2.0) * np.pi)
    psi_s = ScalarField.harmonic(GRID, 0, s, amplitude=-amp)
    u = velocity_from_stream(inv_laplacian(psi_s))
    x1, x2 = GRID.physical_nodes()
    v0 = nu * lam / (np.sqrt(2.0) * np.pi) * np.sin(s * x2)
    assert rel_err(u.u1.to_physical(), v0) < 1e-12
    assert norms(u.u2).l2 < 1e-13


# ---------------------------------------------------------------------
# norms
# ---------------------------------------------------------------------

def test_norms_cosine_quadrature_oracle():
    f = ScalarField.harmonic(GRID, 1, 0)
    n = GRID.n_modes
    # trapezoid rule is exact for trigonometric polynomials on the torus
    quad = np.sum(f.to_physical() ** 2) * (2 * np.pi / n) ** 2
    got = norms(f)
    assert got.l2**2 == pytest.approx(quad, rel=1e-13)
    assert got.l2**2 == pytest.approx(2 * np.pi**2, rel=1e-13)
    assert got.l2 == pytest.approx(np.sqrt(2.0) * np.pi, rel=1e-13)


def test_poincare_inequality():
    rng = np.random.default_rng(37)
    for _ in range(50):
        f = ScalarField.random(GRID, rng)
        m = norms(f)
        assert m.h1_semi >= m.l2 * (1 - 1e-12)


def test_norms_zero_field():
    assert norms(ScalarField.zeros(GRID)) == FieldNorms(0.0, 0.0, 0.0)


def test_h_norms_quadrature_oracle():
    rng = np.random.default_rng(41)
    f = ScalarField.random(GRID, rng)
    n = GRID.n_modes
    w = (2 * np.pi / n) ** 2
    g1 = deriv(f, 1).to_physical()
    g2 = deriv(f, 2).to_physical()
    grad_sq = np.sum(g1**2 + g2**2) * w
    lap_sq = np.sum(laplacian(f).to_physical() ** 2) * w
    m = norms(f)
    assert m.h1_semi**2 == pytest.approx(grad_sq, rel=1e-12)
    assert m.h2_semi**2 == pytest.approx(lap_sq, rel=1e-12)


# ---------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------

def test_field_json_roundtrip_bit_exact():
    rng = np.random.default_rng(43)
    f = ScalarField.random(GRID, rng)
    g = field_from_json(field_to_json(f))
    assert g.grid == f.grid
    assert np.array_equal(g.coeffs, f.coeffs)


def test_field_json_rejects_unknown_format():
    with pytest.raises(ValueError):
        field_from_json('{"format": "something-else"}')


def test_field_json_half_spectrum_axis_line():
    # modes on the k2 = 0 line keep only k1 > 0 representatives
    f = ScalarField.harmonic(GRID, 3, 0, amplitude=2.0, kind="sin")
    g = field_from_json(field_to_json(f))
    assert np.array_equal(g.coeffs, f.coeffs)
    import json

    doc = json.loads(field_to_json(f))
    assert all(k2 > 0 or (k2 == 0 and k1 > 0) for k1, k2, _, _ in doc["modes"])


def test_wavevector_bounds_validation():
    with pytest.raises(ValueError):
        GRID.index_of(17, 0)  # beyond n/2 = 16
    assert GRID.index_of(-16, 16) == (16, 16)
