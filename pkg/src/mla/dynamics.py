"""Time integration of the vorticity model on the torus.

The evolved variable is the vorticity-like scalar psi satisfying

    psi_t - nu Lap(psi) + J(Lap^{-1} psi, (I - alpha^2 Lap)^{-1} psi) = F,

driven by the single-mode Kolmogorov forcing
F = -(1/(sqrt(2) pi)) nu^2 lam s^3 cos(s x2).  Diffusion is integrated
exactly per mode (exponential integrating factor); the Jacobian term and
forcing are handled by a two-stage second-order exponential scheme whose
fixed points are exactly stationary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .spectral import (
    ScalarField,
    SpectralGrid,
    VectorField2,
    helmholtz_inv,
    inv_laplacian,
    jacobian,
    laplacian,
    norms,
    velocity_from_stream,
)

__all__ = [
    "ModelParams",
    "ForcingSpec",
    "SolverState",
    "TrajectoryDiagnostics",
    "AsymptoticReport",
    "NumericalError",
    "TimeStepError",
    "kolmogorov_forcing",
    "forcing_velocity",
    "stationary_psi",
    "grashof",
    "rhs",
    "dt_max",
    "step_imex",
    "run",
    "check_asymptotic_bounds",
    "initial_state",
    "energy",
]


class NumericalError(RuntimeError):
    """NaN/Inf encountered or a solver invariant broke during stepping."""


class TimeStepError(ValueError):
    """Requested dt violates the advective CFL heuristic."""


@dataclass(frozen=True)
class ModelParams:
    """Viscosity nu > 0, filter length alpha >= 0, and the spectral grid."""

    nu: float
    alpha: float
    grid: SpectralGrid

    def __post_init__(self):
        if self.nu <= 0:
            raise ValueError(f"nu must be positive, got {self.nu}")
        if self.alpha < 0:
            raise ValueError(f"alpha must be nonnegative, got {self.alpha}")


@dataclass(frozen=True)
class ForcingSpec:
    """Kolmogorov forcing wavenumber s >= 1 and amplitude parameter lam > 0."""

    s: int
    lam: float

    def __post_init__(self):
        if self.s < 1:
            raise ValueError(f"s must be a positive integer, got {self.s}")
        if self.lam <= 0:
            raise ValueError(f"lam must be positive, got {self.lam}")


@dataclass(frozen=True, eq=False)
class SolverState:
    psi: ScalarField
    time: float
    params: ModelParams


@dataclass(eq=False)
class TrajectoryDiagnostics:
    """Sampled filtered-field norms along a run.

    ``avg_grad_sq[i]`` is the running time average of |grad phi|^2 over
    the run window [t_start, times[i]], accumulated by the trapezoid rule
    at every step (not just at samples).
    """

    times: np.ndarray
    phi_l2: np.ndarray
    grad_phi_l2: np.ndarray
    avg_grad_sq: np.ndarray
    final_state: SolverState | None = field(default=None, repr=False)

    CSV_HEADER = "time,phi_l2,grad_phi_l2,avg_grad_sq"

    def __len__(self):
        return len(self.times)

    def csv_rows(self):
        for i in range(len(self.times)):
            yield (
                f"{self.times[i]!r},{self.phi_l2[i]!r},"
                f"{self.grad_phi_l2[i]!r},{self.avg_grad_sq[i]!r}"
            )


def _check_spec_on_grid(spec: ForcingSpec, grid: SpectralGrid) -> None:
    if spec.s >= grid.dealias_cutoff:
        raise ValueError(
            f"forcing wavenumber s={spec.s} is at or beyond the dealias "
            f"cutoff {grid.dealias_cutoff}"
        )


def kolmogorov_forcing(spec: ForcingSpec, params: ModelParams) -> ScalarField:
    """F = -(1/(sqrt(2) pi)) nu^2 lam s^3 cos(s x2): two nonzero modes."""
    _check_spec_on_grid(spec, params.grid)
    amp = -(params.nu**2) * spec.lam * spec.s**3 / (math.sqrt(2.0) * math.pi)
    return ScalarField.harmonic(params.grid, 0, spec.s, amplitude=amp)


def forcing_velocity(spec: ForcingSpec, params: ModelParams) -> VectorField2:
    """The divergence-free velocity forcing whose curl is the scalar forcing."""
    return velocity_from_stream(inv_laplacian(kolmogorov_forcing(spec, params)))


def stationary_psi(spec: ForcingSpec, params: ModelParams) -> ScalarField:
    """psi_s = -(1/(sqrt(2) pi)) nu lam s cos(s x2), the Kolmogorov steady state."""
    _check_spec_on_grid(spec, params.grid)
    amp = -params.nu * spec.lam * spec.s / (math.sqrt(2.0) * math.pi)
    return ScalarField.harmonic(params.grid, 0, spec.s, amplitude=amp)


def grashof(spec: ForcingSpec) -> float:
    """G = lam * s^2 (first Stokes eigenvalue 1 on the torus)."""
    return spec.lam * spec.s**2


def _nonlinear(psi: ScalarField, params: ModelParams,
               forcing: ScalarField) -> ScalarField:
    return forcing - jacobian(inv_laplacian(psi), helmholtz_inv(psi, params.alpha))


def rhs(state: SolverState, forcing: ScalarField) -> ScalarField:
    """nu Lap(psi) - J(Lap^{-1} psi, (I-a^2 Lap)^{-1} psi) + F."""
    if forcing.grid != state.psi.grid:
        raise ValueError("forcing grid does not match state grid")
    return state.params.nu * laplacian(state.psi) + _nonlinear(
        state.psi, state.params, forcing
    )


def dt_max(state: SolverState, cfl: float = 0.5) -> float:
    """Advective limit dt <= cfl / (max|u| k_max); inf for a quiescent field."""
    u = velocity_from_stream(inv_laplacian(state.psi))
    speed = np.sqrt(u.u1.to_physical() ** 2 + u.u2.to_physical() ** 2)
    umax = float(np.max(speed))
    grid = state.psi.grid
    kmax = float(np.max(np.abs(grid.wavenumbers[np.abs(grid.wavenumbers) < grid.dealias_cutoff])))
    if umax * kmax == 0.0:
        return math.inf
    return cfl / (umax * kmax)


def _phi1(z: np.ndarray) -> np.ndarray:
    """(e^z - 1)/z, series for small |z| to dodge cancellation."""
    out = np.empty_like(z)
    small = np.abs(z) < 1e-2
    zs = z[small]
    out[small] = 1 + zs / 2 + zs**2 / 6 + zs**3 / 24 + zs**4 / 120 + zs**5 / 720
    zl = z[~small]
    out[~small] = np.expm1(zl) / zl
    return out


def _phi2(z: np.ndarray) -> np.ndarray:
    """(e^z - 1 - z)/z^2, series for small |z|."""
    out = np.empty_like(z)
    small = np.abs(z) < 1e-2
    zs = z[small]
    out[small] = (0.5 + zs / 6 + zs**2 / 24 + zs**3 / 120 + zs**4 / 720
                  + zs**5 / 5040)
    zl = z[~small]
    out[~small] = (np.expm1(zl) - zl) / zl**2
    return out


@lru_cache(maxsize=8)
def _etd_tables(grid: SpectralGrid, nu: float, dt: float):
    z = -nu * dt * grid.k_sq
    return np.exp(z), dt * _phi1(z), dt * _phi2(z)


def step_imex(state: SolverState, dt: float, forcing: ScalarField) -> SolverState:
    """One step of the exponential two-stage scheme.

    Per mode, with z = -nu |k|^2 dt:

        a     = e^z psi + dt phi1(z) N(psi)
        psi'  = a + dt phi2(z) (N(a) - N(psi))

    Steady states (N balancing diffusion exactly) are fixed points of the
    update, and smooth solutions converge at second order.  Callers are
    responsible for the advective limit dt <= dt_max(state); see run().
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    params = state.params
    exp_z, w1, w2 = _etd_tables(params.grid, params.nu, dt)
    psi = state.psi
    n0 = _nonlinear(psi, params, forcing)
    a = ScalarField(params.grid, exp_z * psi.coeffs + w1 * n0.coeffs)
    na = _nonlinear(a, params, forcing)
    new = ScalarField(params.grid, a.coeffs + w2 * (na.coeffs - n0.coeffs))
    if not np.all(np.isfinite(new.coeffs)):
        raise NumericalError(
            f"non-finite coefficients after step at t={state.time}: "
            f"max|psi|={np.max(np.abs(psi.coeffs))}, dt={dt}"
        )
    return SolverState(psi=new, time=state.time + dt, params=params)


def _sample_invariants(psi: ScalarField, t: float) -> None:
    if not psi.is_hermitian(tol=1e-10):
        raise NumericalError(f"Hermitian symmetry lost at t={t}")
    if psi.coeffs[0, 0] != 0:
        raise NumericalError(f"zero mean lost at t={t}")


def run(state: SolverState, t_final: float, dt: float, forcing: ScalarField,
        sample_every: int = 1, cfl: float = 0.5,
        check_cfl: bool = True) -> TrajectoryDiagnostics:
    """Integrate to t_final with fixed dt, sampling every ``sample_every`` steps.

    The number of steps is round((t_final - t0)/dt); there is no partial
    final step.  The CFL heuristic is enforced at the start and at every
    sample.  Returns diagnostics with the final state attached.
    """
    if sample_every < 1:
        raise ValueError("sample_every must be a positive integer")
    n_steps = int(round((t_final - state.time) / dt))
    if n_steps <= 0:
        empty = np.empty(0)
        return TrajectoryDiagnostics(empty, empty.copy(), empty.copy(),
                                     empty.copy(), final_state=state)

    alpha = state.params.alpha
    t0 = state.time
    times, phis, grads, avgs = [], [], [], []

    def grad_sq(s: SolverState) -> float:
        return norms(helmholtz_inv(s.psi, alpha)).h1_semi ** 2

    if check_cfl and dt > dt_max(state, cfl):
        raise TimeStepError(
            f"dt={dt} exceeds advective limit {dt_max(state, cfl)} at start"
        )
    acc = 0.0
    g_prev = grad_sq(state)
    for i in range(n_steps):
        state = step_imex(state, dt, forcing)
        g_now = grad_sq(state)
        acc += 0.5 * (g_prev + g_now) * dt
        g_prev = g_now
        if (i + 1) % sample_every == 0:
            _sample_invariants(state.psi, state.time)
            if check_cfl and dt > dt_max(state, cfl):
                raise TimeStepError(
                    f"dt={dt} exceeds advective limit at t={state.time}"
                )
            phi = helmholtz_inv(state.psi, alpha)
            m = norms(phi)
            times.append(state.time)
            phis.append(m.l2)
            grads.append(m.h1_semi)
            avgs.append(acc / (state.time - t0))
    return TrajectoryDiagnostics(
        np.asarray(times), np.asarray(phis), np.asarray(grads),
        np.asarray(avgs), final_state=state,
    )


@dataclass(frozen=True)
class AsymptoticReport:
    """Tail-window check of the dissipative a-priori bounds.

    ``phi_sq_bound`` is |f|^2/(lambda1 nu^2) against the tail max of
    |phi(t)|^2; ``avg_bound`` is |f|^2/nu^2 against the tail of the running
    time average of |grad phi|^2.  Margins are bound minus measured value
    (nonnegative means the bound holds).
    """

    tail_start: float
    tail_count: int
    phi_sq_tail_max: float
    phi_sq_bound: float
    phi_margin: float
    avg_tail_max: float
    avg_bound: float
    avg_margin: float

    @property
    def ok(self) -> bool:
        return self.phi_margin >= 0 and self.avg_margin >= 0

    def as_dict(self) -> dict:
        return {
            "tail_start": self.tail_start,
            "tail_count": self.tail_count,
            "phi_sq_tail_max": self.phi_sq_tail_max,
            "phi_sq_bound": self.phi_sq_bound,
            "phi_margin": self.phi_margin,
            "avg_tail_max": self.avg_tail_max,
            "avg_bound": self.avg_bound,
            "avg_margin": self.avg_margin,
            "ok": self.ok,
        }


def check_asymptotic_bounds(diag: TrajectoryDiagnostics, f_l2: float, nu: float,
                            lambda1: float = 1.0,
                            tail_fraction: float = 0.5) -> AsymptoticReport:
    """Report whether the sampled tail satisfies the dissipative bounds.

    The limsup statements are checked as inequalities over the last
    ``tail_fraction`` of the samples; the caller is responsible for the
    run being long enough that transients have decayed.
    """
    if len(diag) == 0:
        raise ValueError("diagnostics are empty")
    start = int(len(diag) * (1.0 - tail_fraction))
    start = min(start, len(diag) - 1)
    phi_sq_tail = diag.phi_l2[start:] ** 2
    avg_tail = diag.avg_grad_sq[start:]
    phi_bound = f_l2**2 / (lambda1 * nu**2)
    avg_bound = f_l2**2 / nu**2
    return AsymptoticReport(
        tail_start=float(diag.times[start]),
        tail_count=len(diag) - start,
        phi_sq_tail_max=float(np.max(phi_sq_tail)),
        phi_sq_bound=phi_bound,
        phi_margin=float(phi_bound - np.max(phi_sq_tail)),
        avg_tail_max=float(np.max(avg_tail)),
        avg_bound=avg_bound,
        avg_margin=float(avg_bound - np.max(avg_tail)),
    )


def initial_state(params: ModelParams, seed: int = 0,
                  amplitude: float = 1e-3) -> SolverState:
    """Small random Hermitian perturbation of rest; seed recorded by callers."""
    rng = np.random.default_rng(seed)
    psi = ScalarField.random(params.grid, rng, amplitude=amplitude)
    return SolverState(psi=psi, time=0.0, params=params)


def energy(psi: ScalarField, alpha: float) -> float:
    """|phi|^2 + alpha^2 |grad phi|^2 for phi = (I - a^2 Lap)^{-1} psi.

    This alpha-weighted functional is the one that decays monotonically
    under zero forcing.
    """
    m = norms(helmholtz_inv(psi, alpha))
    return m.l2**2 + alpha**2 * m.h1_semi**2
