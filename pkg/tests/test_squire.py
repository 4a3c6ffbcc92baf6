"""Oblique-wave pipeline tests: setup closed forms, reduction identities
against direct substitution, lifted-mode residuals on the full mode
equations, the a=0 spectrum against the diffusion oracle and a full
differential-algebraic pencil, and triple counting against brute force."""

import numpy as np
import pytest
import scipy.linalg

from mla.squire import (
    CountWindow,
    DEFAULT_WINDOW,
    Mode1DProfile,
    SquireTriple,
    a0_mode_pressure_norms,
    a0_stability_spectrum,
    admissible_triples,
    build_3d_setup,
    count_triples,
    hat_problem,
    lambda2_threshold,
    lambda3_driver,
    lift_mode,
    lineareq2_residuals,
    lower_bound_dim3d,
    reconstruct_omega2,
    solve_hat_mode,
    squire_reduce,
    triple_threshold_margin,
)

S, ALPHA, NU, DSTAR = 6, 0.0, 1.0, 0.2


def driver_setup(s=S, alpha=ALPHA, nu=NU, delta=DSTAR):
    return build_3d_setup(s, lambda3_driver(s, alpha, delta), nu, alpha)


# ---------------------------------------------------------------------
# setup
# ---------------------------------------------------------------------

def test_setup_norms_and_grashof():
    setup = build_3d_setup(3, 2.5, 0.4, 0.1)
    assert setup.forcing.l2_section() == pytest.approx(0.4**2 * 2.5 * 9, rel=1e-12)
    assert setup.f_l2 == pytest.approx(0.4**2 * 2.5 * 9, rel=1e-12)
    assert setup.grashof == pytest.approx(2.5 * 9)


def test_setup_u0_is_filtered_v0():
    setup = build_3d_setup(4, 1.0, 1.0, 0.3)
    assert setup.u0_amp == pytest.approx(setup.v0_amp / (1 + 0.09 * 16), rel=1e-14)
    zero_alpha = build_3d_setup(4, 1.0, 1.0, 0.0)
    assert zero_alpha.u0_amp == zero_alpha.v0_amp


def test_setup_profiles_are_single_mode():
    setup = build_3d_setup(2, 1.0, 1.0, 0.0)
    nz = np.nonzero(setup.stationary.coeffs)[0] - setup.stationary.m_max
    assert sorted(nz) == [-2, 2]


def test_triple_validation():
    with pytest.raises(ValueError):
        SquireTriple(a=0, b=1, r=0)
    t = SquireTriple(a=3, b=4, r=1)
    assert t.a_hat == pytest.approx(5.0)
    assert t.a_hat**2 == pytest.approx(t.a**2 + t.b**2)


# ---------------------------------------------------------------------
# reduction identities
# ---------------------------------------------------------------------

def _synthetic_mode(a, b, m_max=6, seed=0):
    rng = np.random.default_rng(seed)
    m = np.arange(-m_max, m_max + 1)
    w3 = rng.standard_normal(2 * m_max + 1) + 1j * rng.standard_normal(2 * m_max + 1)
    w2 = rng.standard_normal(2 * m_max + 1) + 1j * rng.standard_normal(2 * m_max + 1)
    # choose omega1 to satisfy incompressibility exactly
    w1 = -(b * w2 + m * w3) / a
    q = rng.standard_normal(2 * m_max + 1) + 1j * rng.standard_normal(2 * m_max + 1)
    return Mode1DProfile(a=a, b=b, m_max=m_max, omega1=w1, omega2=w2,
                         omega3=w3, q=q, c=0.3 + 0.2j)


def test_reduce_b0_is_identity():
    mode = _synthetic_mode(3, 0)
    red = squire_reduce(SquireTriple(a=3, b=0, r=0), mode)
    assert red.a_hat == pytest.approx(3.0)
    assert np.max(np.abs(red.omega1_hat - mode.omega1)) < 1e-15 * np.max(np.abs(mode.omega1))
    assert np.allclose(red.q_hat, mode.q, rtol=0, atol=0)
    assert red.c_hat == mode.c


def test_reduce_three_four_five():
    mode = _synthetic_mode(3, 4)
    red = squire_reduce(SquireTriple(a=3, b=4, r=0), mode)
    assert red.a_hat == pytest.approx(5.0)
    want = (3 * mode.omega1 + 4 * mode.omega2) / 5.0
    assert np.max(np.abs(red.omega1_hat - want)) < 1e-14
    assert np.max(np.abs(red.q_hat - mode.q * 5.0 / 3.0)) < 1e-14
    assert red.delta_scale == pytest.approx(5.0 / 3.0)


def test_reduced_true_mode_satisfies_hat_equations():
    setup = driver_setup()
    triple = SquireTriple(a=3, b=1, r=0)
    mode = lift_mode(triple, solve_hat_mode(triple, setup), setup)
    red = squire_reduce(triple, mode)
    res = lineareq2_residuals(red, setup)
    assert max(res.values()) < 1e-10


# ---------------------------------------------------------------------
# omega2 reconstruction
# ---------------------------------------------------------------------

def test_reconstruct_b0_gives_zero():
    setup = driver_setup()
    triple = SquireTriple(a=3, b=0, r=0)
    q = np.ones(2 * 20 + 1, dtype=complex)
    w2 = reconstruct_omega2(triple, q, setup, c=0.5j, m_max=20)
    assert np.max(np.abs(w2)) == 0.0


def test_reconstruct_requires_unstable_phase():
    setup = driver_setup()
    triple = SquireTriple(a=3, b=1, r=0)
    with pytest.raises(ValueError):
        reconstruct_omega2(triple, np.ones(41, dtype=complex), setup,
                           c=-0.5j, m_max=20)


def test_reconstruct_truncation_converged():
    setup = driver_setup()
    triple = SquireTriple(a=3, b=1, r=0)
    mode = lift_mode(triple, solve_hat_mode(triple, setup), setup)
    M = mode.m_max
    q_big = np.zeros(2 * (2 * M) + 1, dtype=complex)
    q_big[2 * M - M: 2 * M + M + 1] = mode.q
    w2_big = reconstruct_omega2(triple, q_big, setup, mode.c, 2 * M)
    inner = w2_big[2 * M - M: 2 * M + M + 1]
    scale = np.max(np.abs(mode.omega2))
    assert np.max(np.abs(inner - mode.omega2)) < 1e-9 * scale
    outer = np.abs(np.concatenate([w2_big[: 2 * M - M], w2_big[2 * M + M + 1:]]))
    assert np.max(outer) < 1e-9 * scale


# ---------------------------------------------------------------------
# lifting
# ---------------------------------------------------------------------

def test_lift_b0_embeds_2d_mode():
    setup = driver_setup()
    triple = SquireTriple(a=3, b=0, r=0)
    mode = lift_mode(triple, solve_hat_mode(triple, setup), setup)
    assert np.max(np.abs(mode.omega2)) == 0.0
    assert max(mode.residuals.values()) < 1e-8


def test_lift_reflection_same_growth():
    setup = driver_setup()
    up = SquireTriple(a=3, b=1, r=0)
    dn = SquireTriple(a=3, b=-1, r=0)
    mode_up = lift_mode(up, solve_hat_mode(up, setup), setup)
    mode_dn = lift_mode(dn, solve_hat_mode(dn, setup), setup)
    assert mode_up.growth_rate == pytest.approx(mode_dn.growth_rate, rel=1e-12)
    assert mode_up.growth_rate > 0


def test_lift_rejects_stable_input():
    setup = build_3d_setup(S, 1.0, NU, ALPHA)  # tiny amplitude: stable
    triple = SquireTriple(a=3, b=0, r=0)
    res = solve_hat_mode(triple, setup)
    assert res.sigma_hat < 0
    with pytest.raises(ValueError):
        lift_mode(triple, res, setup)


def test_lift_residuals_across_admissible_band():
    # all in-region a_hat values at s=6 with r=0
    setup = driver_setup()
    for (a, b) in ((1, 1), (2, 0), (2, 1), (2, 2), (3, 0), (3, 1)):
        triple = SquireTriple(a=a, b=b, r=0)
        res2d = solve_hat_mode(triple, setup)
        assert res2d.sigma_hat > 0
        mode = lift_mode(triple, res2d, setup)
        assert max(mode.residuals.values()) < 1e-8
        assert mode.incompressibility_residual() < 1e-10


def test_threshold_wiring_per_triple():
    # sqrt2 a/a_hat >= 1 whenever |b| <= a, with equality at |b| = a
    for (a, b) in ((1, 1), (2, 0), (3, 2), (5, 5)):
        margin = triple_threshold_margin(SquireTriple(a=a, b=b, r=0))
        assert margin >= -1e-15
    # and the effective amplitude clears the rescaled threshold numerically
    s, alpha, delta = 6, 0.1, 0.2
    from mla.stability import capital_lambda

    lam3 = lambda3_driver(s, alpha, delta)
    lam2 = lambda2_threshold(s, alpha, delta)
    for (a, b) in ((1, 1), (2, 1), (3, 0)):
        tr = SquireTriple(a=a, b=b, r=0)
        cap_eff = (tr.a / tr.a_hat) * capital_lambda(lam3, s, alpha)
        assert cap_eff >= capital_lambda(lam2, s, alpha) * (1 - 1e-12)


def test_hat_problem_uses_rescaled_amplitude():
    from mla.stability import capital_lambda

    tr = SquireTriple(a=3, b=4, r=1)
    prob = hat_problem(tr, 6, 100.0, 0.0)
    assert prob.t == pytest.approx(5.0)
    assert prob.capital_lambda == pytest.approx(
        0.6 * capital_lambda(100.0, 6, 0.0), rel=1e-14
    )


# ---------------------------------------------------------------------
# a = 0 line
# ---------------------------------------------------------------------

def test_a0_b0_pure_diffusion():
    vals = a0_stability_spectrum(0, S, 100.0, NU, ALPHA, k_cutoff=12)
    m = np.arange(-12, 13)
    targets = np.sort(np.concatenate([-NU * m[m != 0] ** 2.0] * 2))
    got = np.sort(vals.real)
    assert np.max(np.abs(got - targets)) < 1e-12
    assert np.max(np.abs(vals.imag)) < 1e-12


@pytest.mark.parametrize("b", [1, 2])
def test_a0_no_unstable_at_twice_threshold(b):
    lam = 2.0 * lambda2_threshold(2, 0.0, 0.3)
    vals = a0_stability_spectrum(b, 2, lam, 1.0, 0.0, k_cutoff=24)
    assert np.max(vals.real) < 1e-10
    qn = a0_mode_pressure_norms(b, 2, lam, 1.0, 0.0, 24)
    assert np.max(qn) < 1e-10


def test_a0_matches_full_pencil_oracle():
    # independent route: the constrained (omega, q) pencil solved by QZ
    b, s, lam, nu, alpha, M = 1, 2, 40.0, 1.0, 0.2, 8
    setup = build_3d_setup(s, lam, nu, alpha, m_max=M)
    m = np.arange(-M, M + 1).astype(float)
    n = 2 * M + 1
    ksq = b * b + m**2
    D = -nu * ksq
    H = 1.0 / (1.0 + alpha**2 * ksq)
    cdu = np.zeros((n, n), dtype=complex)
    amp = setup.u0_amp * s
    for i in range(n):
        if i - s >= 0:
            cdu[i, i - s] += amp / 2
        if i + s < n:
            cdu[i, i + s] += amp / 2
    A = np.zeros((4 * n, 4 * n), dtype=complex)
    B = np.zeros((4 * n, 4 * n), dtype=complex)
    w1, w2, w3, q = range(4)

    def blk(i, j):
        return slice(i * n, (i + 1) * n), slice(j * n, (j + 1) * n)

    A[blk(0, w1)] = np.diag(D)
    A[blk(0, w3)] = -(cdu * H[None, :])
    B[blk(0, w1)] = np.eye(n)
    A[blk(1, w2)] = np.diag(D)
    A[blk(1, q)] = -1j * b * np.eye(n)
    B[blk(1, w2)] = np.eye(n)
    A[blk(2, w3)] = np.diag(D)
    A[blk(2, q)] = np.diag(-1j * m)
    B[blk(2, w3)] = np.eye(n)
    A[blk(3, w2)] = 1j * b * np.eye(n)
    A[blk(3, w3)] = np.diag(1j * m)

    vals = scipy.linalg.eigvals(A, B)
    finite = np.sort(vals[np.isfinite(vals)].real)
    reduced = np.sort(a0_stability_spectrum(b, s, lam, nu, alpha, M).real)
    assert len(finite) == len(reduced)
    assert np.max(np.abs(finite - reduced)) < 1e-8


# ---------------------------------------------------------------------
# triple counting
# ---------------------------------------------------------------------

def test_count_window_validation():
    with pytest.raises(ValueError):
        CountWindow(c2=0.1, c3=0.3, c4=0.2)
    # the (0.1, 0.2, 0.3) rectangle pokes outside the region: the corner
    # (0.3, 0.1) has 0.09 + 0.81 = 0.90 < 1 on the shifted circle
    with pytest.raises(ValueError):
        CountWindow(c2=0.1, c3=0.2, c4=0.3, delta_star=0.2)
    CountWindow(c2=0.105, c3=0.46, c4=0.56, delta_star=0.2)  # valid


def test_count_matches_bruteforce():
    w = DEFAULT_WINDOW
    s = 10
    brute = 0
    for a in range(1, 12):
        for b in range(-a, a + 1):
            if (w.c3 * s) ** 2 <= a * a + b * b <= (w.c4 * s) ** 2:
                brute += 2 * int(w.c2 * s) + 1
    assert count_triples(s, w).count == brute
    trs = admissible_triples(s, w)
    assert len(trs) == brute


def test_count_b_reflection_symmetry():
    trs = admissible_triples(20, DEFAULT_WINDOW)
    keys = set((t.a, t.b, t.r) for t in trs)
    for t in trs:
        assert (t.a, -t.b, t.r) in keys


def test_count_density_converges():
    fits = {s: count_triples(s).c5_fit for s in (50, 100, 200, 400)}
    for s in (50, 100, 200):
        assert abs(fits[s] / fits[400] - 1.0) < 0.10
    # the empirical density lands on the full-window candidate, twice the
    # half-window one; both are reported, neither adjudicated
    tc = count_triples(400)
    assert tc.c5_fit == pytest.approx(tc.c5_fullwindow, rel=0.05)
    assert tc.c5_fullwindow == pytest.approx(2.0 * tc.c5_halfwindow, rel=1e-12)


# ---------------------------------------------------------------------
# 3-D lower bound
# ---------------------------------------------------------------------

def test_lower_bound_3d_gamma_limit():
    g, alpha, c6 = 1000.0, 0.05, 0.02
    near_one = lower_bound_dim3d(g, alpha, 1.0 - 1e-12, c6)
    assert near_one.value == pytest.approx(c6 * g, rel=1e-9)


def test_lower_bound_3d_consistency_at_coupling():
    alpha, c6 = 0.05, 0.02
    g = alpha**-3
    for gamma in (0.2, 0.5, 0.8):
        res = lower_bound_dim3d(g, alpha, gamma, c6)
        assert res.value == pytest.approx(c6 / alpha**3, rel=1e-12)
        assert res.raw_count == pytest.approx(c6 / alpha**3, rel=1e-12)


def test_lower_bound_3d_validation():
    with pytest.raises(ValueError):
        lower_bound_dim3d(10.0, 0.0, 0.5, 1.0)
    with pytest.raises(ValueError):
        lower_bound_dim3d(10.0, 0.1, 1.5, 1.0)
    rep = lower_bound_dim3d(10.0, 0.1, 0.5, 1.0)
    assert "(G/alpha)^(3/2)" in rep.upper_form
