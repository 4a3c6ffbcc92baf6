"""Oblique-wave reduction on the 3-torus.

Linear modes omega(x3) e^{i(a x1 + b x2 - a c t)} of the linearization
about the shear profile v0(x3) = (1/(sqrt2 pi)) nu lam sin(s x3) e1 reduce,
for a != 0, to a 2-D problem in (omega1_hat, omega3_hat, q_hat) with

    a_hat^2 = a^2 + b^2,  omega1_hat = (a omega1 + b omega2)/a_hat,
    omega3_hat = omega3,  q_hat = q a_hat/a,  c_hat = c,

and dissipation rescaled by a_hat/a.  The reduced problem is the plain
2-D chain analysis with column wavenumber t' = a_hat and amplitude
Lambda_eff = (a/a_hat) Lambda, so unstable 2-D chain modes lift back to
unstable 3-D modes: omega2 solves a coercive 1-D system and
omega1 = (a_hat omega1_hat - b omega2)/a completes incompressibility.

Everything here works on x3-Fourier coefficient arrays indexed by
m in [-m_max, m_max]; the shear multiplies by sin/cos(s x3), i.e. couples
m -> m +- s only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .stability import (
    EigensolverError,
    RecurrenceProblem,
    StabilityResult,
    capital_lambda,
    lambda_interval,
    principal_sigma,
    region_contains_point,
)

__all__ = [
    "SquireTriple",
    "Setup3D",
    "Profile1D",
    "Mode1DProfile",
    "Reduced2D",
    "CountWindow",
    "TripleCount",
    "LowerBound3D",
    "build_3d_setup",
    "hat_problem",
    "solve_hat_mode",
    "squire_reduce",
    "reconstruct_omega2",
    "lift_mode",
    "lineareq3_residuals",
    "lineareq2_residuals",
    "a0_stability_spectrum",
    "a0_mode_pressure_norms",
    "admissible_triples",
    "count_triples",
    "lambda2_threshold",
    "lambda3_driver",
    "lower_bound_dim3d",
    "DEFAULT_WINDOW",
]

_SQRT2PI = math.sqrt(2.0) * math.pi


@dataclass(frozen=True)
class SquireTriple:
    """Wave triple (a, b, r): a >= 1 (the a=0 line is handled separately),
    b any integer, r the chain residue."""

    a: int
    b: int
    r: int

    def __post_init__(self):
        if self.a < 1:
            raise ValueError(f"a must be a positive integer, got {self.a}")

    @property
    def a_hat(self) -> float:
        return math.hypot(self.a, self.b)


@dataclass(frozen=True, eq=False)
class Profile1D:
    """x3-profile as Fourier coefficients on integer modes |m| <= m_max."""

    m_max: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=np.complex128)
        if c.shape != (2 * self.m_max + 1,):
            raise ValueError("coefficient array length must be 2*m_max + 1")
        object.__setattr__(self, "coeffs", c)

    def l2_section(self) -> float:
        """L2 norm over a 2pi x 2pi section (the 2-D convention, under
        which the forcing norm is nu^2 lam s^2)."""
        return float(2.0 * math.pi * np.linalg.norm(self.coeffs))


@dataclass(frozen=True, eq=False)
class Setup3D:
    """Shear-flow data: forcing and stationary profiles plus amplitudes.

    u0 = (I - alpha^2 Lap)^{-1} v0 divides the single +-s mode by
    (1 + alpha^2 s^2); both profiles depend on x3 only, so the stationary
    advection term vanishes structurally.
    """

    s: int
    lam: float
    nu: float
    alpha: float
    forcing: Profile1D
    stationary: Profile1D

    @property
    def f_amp(self) -> float:
        return self.nu**2 * self.lam * self.s**2 / _SQRT2PI

    @property
    def v0_amp(self) -> float:
        return self.nu * self.lam / _SQRT2PI

    @property
    def u0_amp(self) -> float:
        return self.v0_amp / (1.0 + self.alpha**2 * self.s**2)

    @property
    def f_l2(self) -> float:
        return self.nu**2 * self.lam * self.s**2

    @property
    def grashof(self) -> float:
        return self.lam * self.s**2


def _sin_profile(amp: float, s: int, m_max: int) -> Profile1D:
    c = np.zeros(2 * m_max + 1, dtype=np.complex128)
    c[m_max + s] = amp / 2j
    c[m_max - s] = -amp / 2j
    return Profile1D(m_max, c)


def build_3d_setup(s: int, lam: float, nu: float, alpha: float,
                   m_max: int | None = None) -> Setup3D:
    """Forcing f1 = (1/(sqrt2 pi)) nu^2 lam s^2 sin(s x3) and the
    stationary profile v0 = (1/(sqrt2 pi)) nu lam sin(s x3)."""
    if s < 1 or lam <= 0 or nu <= 0 or alpha < 0:
        raise ValueError("require s >= 1, lam > 0, nu > 0, alpha >= 0")
    M = 4 * s + 16 if m_max is None else m_max
    f_amp = nu**2 * lam * s**2 / _SQRT2PI
    v_amp = nu * lam / _SQRT2PI
    return Setup3D(
        s=s, lam=lam, nu=nu, alpha=alpha,
        forcing=_sin_profile(f_amp, s, M),
        stationary=_sin_profile(v_amp, s, M),
    )


# ---------------------------------------------------------------------
# mode-space operators
# ---------------------------------------------------------------------

def _modes(m_max: int) -> np.ndarray:
    return np.arange(-m_max, m_max + 1)


def _conv_sin(amp: float, s: int, m_max: int) -> np.ndarray:
    """Multiplication by amp sin(s x3) as a matrix on mode coefficients."""
    n = 2 * m_max + 1
    c = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        if i - s >= 0:
            c[i, i - s] += amp / 2j       # e^{+is x3} shifts m-s -> m
        if i + s < n:
            c[i, i + s] -= amp / 2j
    return c


def _conv_cos(amp: float, s: int, m_max: int) -> np.ndarray:
    n = 2 * m_max + 1
    c = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        if i - s >= 0:
            c[i, i - s] += amp / 2.0
        if i + s < n:
            c[i, i + s] += amp / 2.0
    return c


def _wave_tables(setup: Setup3D, a_hat_sq: float, m_max: int):
    """Diagonal symbols and shear convolutions for a wave with a^2+b^2 =
    a_hat_sq: mode Laplacian D, filter H, u0- and u0'-multiplication."""
    m = _modes(m_max)
    ksq = a_hat_sq + m.astype(np.float64) ** 2
    D = -ksq
    H = 1.0 / (1.0 + setup.alpha**2 * ksq)
    conv_u0 = _conv_sin(setup.u0_amp, setup.s, m_max)
    conv_du0 = _conv_cos(setup.u0_amp * setup.s, setup.s, m_max)
    return m, D, H, conv_u0, conv_du0


@dataclass(frozen=True, eq=False)
class Mode1DProfile:
    """Full 3-D mode (omega1, omega2, omega3, q)(x3) on the (a, b) wave
    with phase speed c; incompressibility holds to 1e-10 by construction."""

    a: int
    b: int
    m_max: int
    omega1: np.ndarray
    omega2: np.ndarray
    omega3: np.ndarray
    q: np.ndarray
    c: complex
    sigma_hat: float = math.nan
    residuals: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        res = self.incompressibility_residual()
        if res > 1e-10:
            raise ValueError(f"mode is not incompressible: residual {res}")

    def incompressibility_residual(self) -> float:
        m = _modes(self.m_max)
        div = (1j * self.a * self.omega1 + 1j * self.b * self.omega2
               + 1j * m * self.omega3)
        scale = max(
            np.linalg.norm(self.omega1), np.linalg.norm(self.omega2),
            np.linalg.norm(self.omega3), 1e-300,
        )
        return float(np.linalg.norm(div) / scale)

    @property
    def growth_rate(self) -> float:
        """-Re(i a c): positive for unstable modes."""
        return float(-np.real(1j * self.a * self.c))


@dataclass(frozen=True, eq=False)
class Reduced2D:
    """Squire-reduced data (omega1_hat, omega3_hat, q_hat, c_hat) with the
    dissipation rescale a_hat/a recorded."""

    a_hat: float
    delta_scale: float
    m_max: int
    omega1_hat: np.ndarray
    omega3_hat: np.ndarray
    q_hat: np.ndarray
    c_hat: complex


def squire_reduce(triple: SquireTriple, mode: Mode1DProfile) -> Reduced2D:
    """(omega1_hat, omega3_hat, q_hat, c_hat) from a 3-D mode; a != 0."""
    a, b = triple.a, triple.b
    ah = triple.a_hat
    return Reduced2D(
        a_hat=ah,
        delta_scale=ah / a,
        m_max=mode.m_max,
        omega1_hat=(a * mode.omega1 + b * mode.omega2) / ah,
        omega3_hat=mode.omega3.copy(),
        q_hat=mode.q * (ah / a),
        c_hat=mode.c,
    )


# ---------------------------------------------------------------------
# residual evaluators (these encode the linearized equations themselves
# and double as the oracles for every construction below)
# ---------------------------------------------------------------------

def _relative(parts: list[np.ndarray]) -> float:
    total = parts[0].copy()
    for p in parts[1:]:
        total = total + p
    scale = max(float(np.linalg.norm(p)) for p in parts)
    if scale == 0.0:
        return float(np.linalg.norm(total))
    return float(np.linalg.norm(total) / scale)


def lineareq3_residuals(mode: Mode1DProfile, setup: Setup3D) -> dict:
    """Relative residuals of the four mode equations on the (a, b) wave:

        nu D w1 - i a (u0 H w1 - c w1) - i a q - u0' H w3 = 0
        nu D w2 - i a (u0 H w2 - c w2) - i b q            = 0
        nu D w3 - i a (u0 H w3 - c w3) - q'               = 0
        i a w1 + i b w2 + w3'                             = 0
    """
    a, b = mode.a, mode.b
    ah_sq = float(a * a + b * b)
    m, D, H, cu, cdu = _wave_tables(setup, ah_sq, mode.m_max)
    nu, c = setup.nu, mode.c
    w1, w2, w3, q = mode.omega1, mode.omega2, mode.omega3, mode.q

    eq1 = _relative([
        nu * D * w1, -1j * a * (cu @ (H * w1)), 1j * a * c * w1,
        -1j * a * q, -(cdu @ (H * w3)),
    ])
    eq2 = _relative([
        nu * D * w2, -1j * a * (cu @ (H * w2)), 1j * a * c * w2,
        -1j * b * q,
    ])
    eq3 = _relative([
        nu * D * w3, -1j * a * (cu @ (H * w3)), 1j * a * c * w3,
        -1j * m * q,
    ])
    eq4 = mode.incompressibility_residual()
    return {"eq1": eq1, "eq2": eq2, "eq3": eq3, "eq4": eq4}


def lineareq2_residuals(reduced: Reduced2D, setup: Setup3D) -> dict:
    """Relative residuals of the reduced system (dissipation scaled by
    a_hat/a, filter unchanged):

        nu (ah/a) D w1h - i ah (u0 H w1h - c w1h) - i ah qh - u0' H w3h = 0
        nu (ah/a) D w3h - i ah (u0 H w3h - c w3h) - qh'                 = 0
        i ah w1h + w3h'                                                 = 0
    """
    ah = reduced.a_hat
    m, D, H, cu, cdu = _wave_tables(setup, ah * ah, reduced.m_max)
    nu_eff = setup.nu * reduced.delta_scale
    c = reduced.c_hat
    w1, w3, q = reduced.omega1_hat, reduced.omega3_hat, reduced.q_hat

    eq1 = _relative([
        nu_eff * D * w1, -1j * ah * (cu @ (H * w1)), 1j * ah * c * w1,
        -1j * ah * q, -(cdu @ (H * w3)),
    ])
    eq2 = _relative([
        nu_eff * D * w3, -1j * ah * (cu @ (H * w3)), 1j * ah * c * w3,
        -1j * m * q,
    ])
    div = 1j * ah * w1 + 1j * m * w3
    eq3 = float(np.linalg.norm(div)
                / max(np.linalg.norm(w1), np.linalg.norm(w3), 1e-300))
    return {"eq1": eq1, "eq2": eq2, "eq3": eq3}


# ---------------------------------------------------------------------
# the 2-D hat problem and the lift
# ---------------------------------------------------------------------

def hat_problem(triple: SquireTriple, s: int, lam: float, alpha: float,
                n_trunc: int = 64) -> RecurrenceProblem:
    """Chain problem of the reduced 2-D operator: column wavenumber
    t' = a_hat and amplitude Lambda_eff = (a/a_hat) Lambda."""
    cap_eff = (triple.a / triple.a_hat) * capital_lambda(lam, s, alpha)
    return RecurrenceProblem(
        s=s, t=triple.a_hat, r=triple.r, capital_lambda=cap_eff,
        alpha=alpha, n_trunc=n_trunc,
    )


def solve_hat_mode(triple: SquireTriple, setup: Setup3D) -> StabilityResult:
    """Principal chain eigenvalue of the reduced problem for this triple."""
    return principal_sigma(hat_problem(triple, setup.s, setup.lam, setup.alpha))


def reconstruct_omega2(triple: SquireTriple, q: np.ndarray, setup: Setup3D,
                       c: complex, m_max: int) -> np.ndarray:
    """Solve -(nu D + i a c - i a u0 H) w2 = -i b q on the mode grid.

    Requires Re(i a c) < 0 (an unstable mode), which makes the operator
    coercive; a near-singular solve is reported as an error since it
    would contradict that.
    """
    a, b = triple.a, triple.b
    if np.real(1j * a * c) >= 0:
        raise ValueError(
            f"reconstruction requires Re(iac) < 0, got {np.real(1j * a * c)}"
        )
    _, D, H, cu, _ = _wave_tables(setup, triple.a_hat**2, m_max)
    n = 2 * m_max + 1
    T = (np.diag(setup.nu * D + 1j * a * c * np.ones(n))
         - 1j * a * (cu * H[None, :]))
    rhs = 1j * b * q
    w2 = np.linalg.solve(T, rhs)
    rhs_norm = float(np.linalg.norm(rhs))
    if rhs_norm > 0:
        res = float(np.linalg.norm(T @ w2 - rhs)) / rhs_norm
        if res > 1e-10:
            raise EigensolverError(
                f"omega2 solve residual {res} (near-singular system; "
                "parameters contradict coercivity)"
            )
    return w2


def _profile_m_max(two_d: StabilityResult, s: int, r: int,
                   floor: int) -> int:
    """Truncation so every eigenvector entry above 1e-14 of the peak fits,
    plus one shear coupling of margin."""
    e = np.abs(two_d.eigenvector)
    keep = np.nonzero(e > 1e-14 * e.max())[0]
    n_keep = int(np.max(np.abs(two_d.offsets[keep])))
    return max(floor, s * (n_keep + 1) + abs(r) + s)


def lift_mode(triple: SquireTriple, two_d: StabilityResult, setup: Setup3D,
              m_max: int | None = None,
              residual_tol: float = 1e-8) -> Mode1DProfile:
    """Lift an unstable reduced-chain mode to the full 3-torus.

    The chain eigenvector gives the reduced vorticity profile; the
    divergence-free pair (omega1_hat, omega3_hat) comes from its stream
    function, q_hat from the omega3_hat equation (row m = 0 from the
    omega1_hat equation), omega2 from the coercive solve, and omega1
    from the reduction identity.  All four mode equations are then
    evaluated and must hold to ``residual_tol``.
    """
    if two_d.sigma_hat <= 0:
        raise ValueError("lift requires an unstable 2-D mode (sigma_hat > 0)")
    a, b, r = triple.a, triple.b, triple.r
    ah = triple.a_hat
    s, nu, alpha = setup.s, setup.nu, setup.alpha

    nu_eff = nu * ah / a
    sigma = nu_eff * two_d.sigma_hat
    c = 1j * sigma / ah

    M = m_max if m_max is not None else _profile_m_max(two_d, s, r, 4 * s + 16)
    m, D, H, cu, cdu = _wave_tables(setup, ah * ah, M)

    # vorticity coefficients w_m from the chain eigenvector
    w = np.zeros(2 * M + 1, dtype=np.complex128)
    for n_off, e in zip(two_d.offsets, two_d.eigenvector):
        mm = s * int(n_off) + r
        if abs(mm) <= M:
            ksq = ah * ah + mm * mm
            g = (ksq - s * s) / (ksq + alpha**2 * ksq**2)
            w[M + mm] = e / g

    ksq = ah * ah + m.astype(np.float64) ** 2
    w1h = 1j * m * w / ksq
    w3h = -1j * ah * w / ksq

    # q_hat from the omega3_hat equation for m != 0
    rhs3 = nu_eff * D * w3h - 1j * ah * (cu @ (H * w3h)) + 1j * ah * c * w3h
    qh = np.zeros_like(w)
    nz = m != 0
    qh[nz] = rhs3[nz] / (1j * m[nz])
    # m = 0 row of the omega1_hat equation pins q_hat(0)
    i0 = M
    rhs1_0 = (nu_eff * D[i0] * w1h[i0] - 1j * ah * (cu @ (H * w1h))[i0]
              + 1j * ah * c * w1h[i0] - (cdu @ (H * w3h))[i0])
    qh[i0] = rhs1_0 / (1j * ah)

    q = qh * (a / ah)
    w2 = reconstruct_omega2(triple, q, setup, c, M)
    w1 = (ah * w1h - b * w2) / a

    mode = Mode1DProfile(
        a=a, b=b, m_max=M, omega1=w1, omega2=w2, omega3=w3h.copy(), q=q,
        c=c, sigma_hat=two_d.sigma_hat,
    )
    res = lineareq3_residuals(mode, setup)
    if max(res.values()) > residual_tol:
        raise EigensolverError(
            f"lifted mode residuals {res} exceed {residual_tol}"
        )
    object.__setattr__(mode, "residuals", res)
    return mode


# ---------------------------------------------------------------------
# a = 0 stability
# ---------------------------------------------------------------------

def a0_stability_spectrum(b: int, s: int, lam: float, nu: float, alpha: float,
                          k_cutoff: int,
                          return_modes: bool = False):
    """Spectrum of the a = 0 linearized generator on divergence-free modes.

    For b != 0 the states are (omega1, omega3) on |m| <= k_cutoff with
    omega2 = -(m/b) omega3 and the pressure eliminated; for b = 0 the
    states are (omega1, omega2) with the m = 0 means removed (zero-mean
    condition).  Eigenvalues are returned sorted by descending real part.
    """
    setup = build_3d_setup(s, lam, nu, alpha, m_max=k_cutoff)
    M = k_cutoff
    m = _modes(M).astype(np.float64)
    n = 2 * M + 1
    if b != 0:
        ksq = b * b + m**2
        D = -nu * ksq
        H = 1.0 / (1.0 + alpha**2 * ksq)
        cdu = _conv_cos(setup.u0_amp * s, s, M)
        gen = np.zeros((2 * n, 2 * n), dtype=np.complex128)
        gen[:n, :n] = np.diag(D)
        gen[:n, n:] = -(cdu * H[None, :])
        gen[n:, n:] = np.diag(D)
    else:
        keep = m != 0
        D = -nu * m[keep] ** 2
        k = len(D)
        gen = np.zeros((2 * k, 2 * k), dtype=np.complex128)
        gen[:k, :k] = np.diag(D)
        gen[k:, k:] = np.diag(D)
    vals, vecs = scipy.linalg.eig(gen)
    order = np.argsort(-vals.real)
    vals, vecs = vals[order], vecs[:, order]
    if return_modes:
        return vals, vecs
    return vals


def a0_mode_pressure_norms(b: int, s: int, lam: float, nu: float, alpha: float,
                           k_cutoff: int) -> np.ndarray:
    """Least-squares pressure per a = 0 eigenmode (should vanish: the
    periodic pressure solving both momentum rows is q = 0)."""
    if b == 0:
        return np.zeros(2 * (2 * k_cutoff))
    vals, vecs = a0_stability_spectrum(b, s, lam, nu, alpha, k_cutoff,
                                       return_modes=True)
    M = k_cutoff
    m = _modes(M).astype(np.float64)
    n = 2 * M + 1
    ksq = b * b + m**2
    D = -nu * ksq
    out = np.empty(len(vals))
    for j, mu in enumerate(vals):
        w1 = vecs[:n, j]
        w3 = vecs[n:, j]
        w2 = -(m / b) * w3
        rhs2 = (D - mu) * w2   # = i b q
        rhs3 = (D - mu) * w3   # = i m q
        # least squares for q_m over the two rows
        q = (np.conj(1j * b) * rhs2 + np.conj(1j * m) * rhs3) / (b * b + m**2)
        scale = max(np.linalg.norm(w1), np.linalg.norm(w3), 1e-300)
        out[j] = np.linalg.norm(q) / scale
    return out


# ---------------------------------------------------------------------
# triple counting and the 3-D lower bound
# ---------------------------------------------------------------------

@dataclass(frozen=True)
class CountWindow:
    """Rectangle |r| <= c2 s, c3 s <= t' <= c4 s inside the instability
    region at delta_star; corners are validated in the s-normalized
    continuum at construction and against the integer region inside
    count pipelines."""

    c2: float
    c3: float
    c4: float
    delta_star: float = 0.2

    def __post_init__(self):
        if not (0 < self.c2 and 0 < self.c3 < self.c4):
            raise ValueError("require 0 < c2 and 0 < c3 < c4")
        for x in (self.c3, self.c4):
            for y in (-self.c2, 0.0, self.c2):
                if not region_contains_point(self.delta_star, 1.0, x, y):
                    raise ValueError(
                        f"rectangle corner ({x}, {y}) falls outside the "
                        f"region at delta={self.delta_star}"
                    )

    def c5_halfwindow(self) -> float:
        """(1/4) pi c2 (c4^2 - c3^2): quarter-annulus sector density with
        the residue window weighted as c2 s values."""
        return 0.25 * math.pi * self.c2 * (self.c4**2 - self.c3**2)

    def c5_fullwindow(self) -> float:
        """(1/2) pi c2 (c4^2 - c3^2): the same sector with the full
        2 c2 s + 1 residue window; the empirical density lands here."""
        return 0.5 * math.pi * self.c2 * (self.c4**2 - self.c3**2)


#: c2 = 0.105 keeps the +-c2 s corners inside the region (which needs
#: c3 > sqrt(c2 (2 - c2)) = 0.446) while the floor(c2 s) window stays
#: nearly proportional across s; (0.46, 0.56) is the widest annulus that
#: then fits under sqrt(1/3 - c2^2).
DEFAULT_WINDOW = CountWindow(c2=0.105, c3=0.46, c4=0.56, delta_star=0.2)


@dataclass(frozen=True)
class TripleCount:
    s: int
    count: int
    c5_fit: float
    c5_halfwindow: float
    c5_fullwindow: float


def admissible_triples(s: int, window: CountWindow = DEFAULT_WINDOW
                       ) -> list[SquireTriple]:
    """Integer (a, b, r) with c3 s <= sqrt(a^2+b^2) <= c4 s, |r| <= c2 s,
    |b| <= a (inclusive bounds, tiny tolerance against float boundaries).

    Each emitted chain (a_hat, r) is re-verified against the region at
    this s; the rectangle-in-region construction guarantee makes a
    failure here a geometry bug worth surfacing loudly.
    """
    eps = 1e-9
    lo = (window.c3 * s) ** 2 * (1 - eps)
    hi = (window.c4 * s) ** 2 * (1 + eps)
    r_hi = int(math.floor(window.c2 * s * (1 + eps)))
    a_max = int(math.floor(window.c4 * s * (1 + eps))) + 1
    out = []
    for a in range(1, a_max + 1):
        for b in range(-a, a + 1):
            if lo <= a * a + b * b <= hi:
                for r in range(-r_hi, r_hi + 1):
                    tr = SquireTriple(a=a, b=b, r=r)
                    if not region_contains_point(window.delta_star, s,
                                                 tr.a_hat, r):
                        raise RuntimeError(
                            f"window triple {tr} fell outside the region "
                            f"at s={s}; window {window} is inconsistent"
                        )
                    out.append(tr)
    return out


def count_triples(s: int, window: CountWindow = DEFAULT_WINDOW) -> TripleCount:
    """Exact enumeration (vectorized) plus the density fit count/s^3."""
    eps = 1e-9
    lo = (window.c3 * s) ** 2 * (1 - eps)
    hi = (window.c4 * s) ** 2 * (1 + eps)
    a_max = int(math.floor(window.c4 * s * (1 + eps))) + 1
    a = np.arange(1, a_max + 1)[:, None]
    b = np.arange(-a_max, a_max + 1)[None, :]
    ssq = a * a + b * b
    pairs = int(np.sum((np.abs(b) <= a) & (ssq >= lo) & (ssq <= hi)))
    r_values = 2 * int(math.floor(window.c2 * s * (1 + eps))) + 1
    count = pairs * r_values
    return TripleCount(
        s=s, count=count, c5_fit=count / s**3,
        c5_halfwindow=window.c5_halfwindow(), c5_fullwindow=window.c5_fullwindow(),
    )


def lambda2_threshold(s: int, alpha: float, delta: float) -> float:
    """Amplitude above which every in-region chain is unstable (the upper
    edge of the neutral-threshold window)."""
    return lambda_interval(s, delta, alpha)[1]


def lambda3_driver(s: int, alpha: float, delta: float) -> float:
    """sqrt(2) lambda2(s): the extra sqrt(2) covers the worst dissipation
    rescale a_hat/a <= sqrt(2) over triples with |b| <= a."""
    return math.sqrt(2.0) * lambda2_threshold(s, alpha, delta)


def triple_threshold_margin(triple: SquireTriple) -> float:
    """sqrt(2) a / a_hat - 1 >= 0 for |b| <= a: the per-triple check that
    the sqrt(2)-boosted amplitude clears the rescaled threshold."""
    return math.sqrt(2.0) * triple.a / triple.a_hat - 1.0


@dataclass(frozen=True)
class LowerBound3D:
    g: float
    alpha: float
    gamma: float
    c6: float
    value: float
    raw_count: float
    upper_form: str

    def as_dict(self) -> dict:
        return {
            "g": self.g, "alpha": self.alpha, "gamma": self.gamma,
            "c6": self.c6, "value": self.value, "raw_count": self.raw_count,
            "upper_form": self.upper_form,
        }


def lower_bound_dim3d(g: float, alpha: float, gamma: float,
                      c6: float) -> LowerBound3D:
    """c6 G^gamma / alpha^(3(1-gamma)) in the small-alpha regime.

    c6 is an input (the analysis leaves it symbolic; the count pipeline's
    c5 is the documented default).  ``raw_count`` is c6/alpha^3, the mode
    count at s = 1/alpha; with G = alpha^-3 the bound equals it for every
    gamma.  The paired upper bound c8 (G/alpha)^(3/2) is reported as a
    formula only.
    """
    if alpha <= 0:
        raise ValueError("the bound is the small-alpha regime; alpha > 0 required")
    if not (0 < gamma < 1):
        raise ValueError(f"gamma must lie in (0,1), got {gamma}")
    if g <= 0 or c6 <= 0:
        raise ValueError("require G > 0 and c6 > 0")
    return LowerBound3D(
        g=g, alpha=alpha, gamma=gamma, c6=c6,
        value=c6 * g**gamma / alpha ** (3.0 * (1.0 - gamma)),
        raw_count=c6 / alpha**3,
        upper_form="c8 * (G/alpha)^(3/2), sharp exponent in (1, 3/2)",
    )
