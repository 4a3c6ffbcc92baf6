"""Linear stability of the Kolmogorov steady state on the torus.

The linearization about the single-mode steady state couples, for each
column wavenumber t and residue r, the chain of modes k = (t, s n + r).
In the variables e_n = a_{t,sn+r} (kappa_n^2 - s^2)/(kappa_n^2 +
alpha^2 kappa_n^4) the chain obeys the three-term recurrence

    d_n e_n + e_{n-1} - e_{n+1} = 0,
    d_n = (kappa_n^2 + alpha^2 kappa_n^4)(kappa_n^2 + sigma_hat)
          / (Lambda t (kappa_n^2 - s^2)),
    kappa_n^2 = t^2 + (s n + r)^2,

which is linear in sigma_hat and therefore rearranges exactly into the
generalized eigenproblem  A e = sigma_hat B e  with A tridiagonal and
B = diag(kappa^2 + alpha^2 kappa^4) > 0:

    -B_n kappa_n^2 e_n + Lambda t (kappa_n^2 - s^2)(e_{n+1} - e_{n-1})
        = sigma_hat B_n e_n.

Decaying eigenvectors with sigma_hat > 0 are unstable modes (growth rate
nu * sigma_hat), each of multiplicity two (the cosine- and sine-family
coefficients satisfy the same equations).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.integrate
import scipy.linalg

__all__ = [
    "EigensolverError",
    "BracketError",
    "RegionSpec",
    "RecurrenceProblem",
    "GeneralizedEigSystem",
    "StabilityResult",
    "LowerBound2D",
    "capital_lambda",
    "region_contains",
    "region_contains_point",
    "lattice_points",
    "count_lattice",
    "region_area",
    "optimize_delta",
    "build_recurrence_system",
    "principal_sigma",
    "unstable_sigma",
    "lambda0_threshold",
    "lu_interval",
    "lambda_interval",
    "full_linearization_matrix",
    "full_linearization_spectrum",
    "lower_bound_dim2d",
    "derived_lower_coefficient",
    "stability_sweep",
    "LOWER_COEFF_ALPHA0",
    "LOWER_COEFF_SMALL_ALPHA",
    "A_DELTA_MAX",
]

#: Reality tolerance: an eigenvalue counts as real when
#: |Im| < SIGMA_REAL_TOL * (1 + |Re|).
SIGMA_REAL_TOL = 1e-10
#: Eigenvector tail threshold below which a mode counts as decaying.
DECAY_TAIL_TOL = 1e-8
#: Residual ceiling for an accepted eigenpair.
RESIDUAL_TOL = 1e-8

#: Two-digit lower-bound coefficients (dimension >= coeff * G^(2/3)).
LOWER_COEFF_ALPHA0 = 0.006
LOWER_COEFF_SMALL_ALPHA = 0.0018
#: max over delta of a(delta) * delta^(4/3), to the reported two digits.
A_DELTA_MAX = 0.012

_INV_SQRT3 = 1.0 / math.sqrt(3.0)


class EigensolverError(RuntimeError):
    """Dense eigensolve failed or returned no usable eigenpair."""


class BracketError(RuntimeError):
    """Bisection bracket does not straddle a sign change."""


def capital_lambda(lam: float, s: int, alpha: float) -> float:
    """Rescaled forcing amplitude lam / (2 sqrt(2) pi (1 + alpha^2 s^2))."""
    if s < 1 or lam <= 0:
        raise ValueError("require s >= 1 and lam > 0")
    return lam / (2.0 * math.sqrt(2.0) * math.pi * (1.0 + alpha**2 * s**2))


# ---------------------------------------------------------------------
# instability region and lattice counting
# ---------------------------------------------------------------------

@dataclass(frozen=True)
class RegionSpec:
    """Region parameters: opening delta in (0, 1/sqrt(3)) and wavenumber s."""

    delta: float
    s: int

    def __post_init__(self):
        if not (0.0 < self.delta < _INV_SQRT3):
            raise ValueError(f"delta must lie in (0, 1/sqrt(3)), got {self.delta}")
        if self.s < 1:
            raise ValueError(f"s must be a positive integer, got {self.s}")

    @property
    def r_min(self) -> float:
        return -self.s / 6.0

    @property
    def r_max(self) -> float:
        return self.s / 6.0


def region_contains_point(delta: float, s: float, t: float, r: float) -> bool:
    """Membership test with real-valued (t, r); all inequalities literal."""
    return (
        t * t + r * r < s * s / 3.0
        and t * t + (r - s) * (r - s) > s * s
        and t * t + (r + s) * (r + s) > s * s
        and t >= delta * s
        and -s / 6.0 < r < s / 6.0
    )


def region_contains(spec: RegionSpec, t: int, r: int) -> bool:
    """Integer lattice membership; strict/non-strict exactly as defined."""
    s = spec.s
    # integer-exact forms of the circle and window constraints
    return (
        3 * (t * t + r * r) < s * s
        and t * t + (r - s) * (r - s) > s * s
        and t * t + (r + s) * (r + s) > s * s
        and t >= spec.delta * s
        and -s < 6 * r < s
    )


def lattice_points(spec: RegionSpec) -> list[tuple[int, int]]:
    """All integer pairs in the region, enumerated over the bounding box."""
    s = spec.s
    t_hi = int(math.floor(s * _INV_SQRT3)) + 1
    r_hi = s // 6 + 1
    t = np.arange(1, t_hi + 1)
    r = np.arange(-r_hi, r_hi + 1)
    T, R = np.meshgrid(t, r, indexing="ij")
    mask = (
        (3 * (T * T + R * R) < s * s)
        & (T * T + (R - s) ** 2 > s * s)
        & (T * T + (R + s) ** 2 > s * s)
        & (T >= spec.delta * s)
        & (-s < 6 * R)
        & (6 * R < s)
    )
    return [(int(a), int(b)) for a, b in zip(T[mask], R[mask])]


def count_lattice(spec: RegionSpec) -> int:
    return len(lattice_points(spec))


def _section_halfwidth(x: float) -> float:
    """Half-width of the (s-normalized) region section at abscissa x."""
    inner = 1.0 / 3.0 - x * x
    if inner <= 0.0:
        return 0.0
    return min(1.0 / 6.0, math.sqrt(inner), 1.0 - math.sqrt(max(0.0, 1.0 - x * x)))


def region_area(delta: float) -> float:
    """Area a(delta) of the s-normalized region (so |A(delta)| = a * s^2).

    The x-section of the region is the symmetric interval |y| <
    min(1/6, sqrt(1/3 - x^2), 1 - sqrt(1 - x^2)), so the area reduces to a
    1-D adaptive quadrature with the section crossover listed as a
    breakpoint (relative accuracy well below 1e-6).
    """
    if not (0.0 < delta < _INV_SQRT3):
        raise ValueError(f"delta must lie in (0, 1/sqrt(3)), got {delta}")
    crossover = math.sqrt(11.0) / 6.0
    pts = [crossover] if delta < crossover else []
    val, _ = scipy.integrate.quad(
        lambda x: 2.0 * _section_halfwidth(x), delta, _INV_SQRT3,
        points=pts, limit=200, epsabs=1e-13, epsrel=1e-10,
    )
    return val


def optimize_delta(n_coarse: int = 80, tol: float = 1e-7) -> tuple[float, float]:
    """Maximize a(delta) * delta^(4/3): coarse scan then golden-section."""

    def h(d: float) -> float:
        return region_area(d) * d ** (4.0 / 3.0)

    deltas = np.linspace(1e-3, _INV_SQRT3 - 1e-9, n_coarse)
    values = [h(d) for d in deltas]
    i = int(np.argmax(values))
    lo = deltas[max(0, i - 1)]
    hi = deltas[min(n_coarse - 1, i + 1)]
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = h(c), h(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = h(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = h(d)
    x = 0.5 * (a + b)
    return x, h(x)


# ---------------------------------------------------------------------
# the three-term recurrence as a generalized eigenproblem
# ---------------------------------------------------------------------

@dataclass(frozen=True)
class RecurrenceProblem:
    """Chain parameters (s, t, r, Lambda, alpha) and index truncation.

    ``t`` is the column wavenumber of the chain: a positive integer for
    the plain torus analysis, and the real value a_hat = sqrt(a^2 + b^2)
    for chains produced by the oblique-wave reduction.
    """

    s: int
    t: float
    r: int
    capital_lambda: float
    alpha: float = 0.0
    n_trunc: int = 64

    def __post_init__(self):
        if self.s < 1:
            raise ValueError(f"s must be >= 1, got {self.s}")
        if self.t <= 0:
            raise ValueError(f"t must be positive, got {self.t}")
        if self.capital_lambda <= 0:
            raise ValueError(f"capital_lambda must be positive, got {self.capital_lambda}")
        if self.alpha < 0:
            raise ValueError(f"alpha must be nonnegative, got {self.alpha}")
        if self.n_trunc < 1:
            raise ValueError(f"n_trunc must be >= 1, got {self.n_trunc}")
        k2 = self.kappa_sq(self.n_trunc)
        if np.any(np.abs(k2 - self.s**2) <= 1e-12 * self.s**2):
            raise ValueError(
                f"singular chain: kappa_n^2 = s^2 for some |n| <= {self.n_trunc}"
            )

    def offsets(self, n_trunc: int | None = None) -> np.ndarray:
        m = self.n_trunc if n_trunc is None else n_trunc
        return np.arange(-m, m + 1)

    def kappa_sq(self, n_trunc: int | None = None) -> np.ndarray:
        n = self.offsets(n_trunc)
        return self.t**2 + (self.s * n + self.r) ** 2


@dataclass(frozen=True, eq=False)
class GeneralizedEigSystem:
    """A e = sigma_hat B e: A tridiagonal with antisymmetric off-pattern.

    Row n of A is  diag_a[n] e_n + off_a[n] (e_{n+1} - e_{n-1}); B is the
    positive diagonal diag_b.
    """

    diag_a: np.ndarray
    off_a: np.ndarray
    diag_b: np.ndarray

    @property
    def size(self) -> int:
        return len(self.diag_a)

    def dense(self) -> tuple[np.ndarray, np.ndarray]:
        n = self.size
        A = np.diag(self.diag_a.astype(np.float64))
        idx = np.arange(n - 1)
        A[idx, idx + 1] = self.off_a[:-1]
        A[idx + 1, idx] = -self.off_a[1:]
        return A, np.diag(self.diag_b.astype(np.float64))

    def apply_a(self, e: np.ndarray) -> np.ndarray:
        out = self.diag_a * e
        out[:-1] += self.off_a[:-1] * e[1:]
        out[1:] -= self.off_a[1:] * e[:-1]
        return out

    def residual(self, sigma_hat: float, e: np.ndarray) -> float:
        be = self.diag_b * e
        return float(np.linalg.norm(self.apply_a(e) - sigma_hat * be)
                     / np.linalg.norm(be))

    def refine(self, sigma_hat: float, e: np.ndarray,
               iterations: int = 2) -> tuple[float, np.ndarray]:
        """Banded inverse iteration + Rayleigh quotient on (A, B).

        The dense eigensolve runs in the balanced B^{-1}A coordinates;
        a couple of O(n) refinement sweeps push the generalized residual
        to its floating-point floor.
        """
        import scipy.linalg as sla

        n = self.size
        best_sig, best_vec = sigma_hat, e
        best_res = self.residual(sigma_hat, e)
        sig, vec = sigma_hat, e
        for _ in range(iterations):
            ab = np.zeros((3, n))
            ab[0, 1:] = self.off_a[:-1]
            ab[1, :] = self.diag_a - sig * self.diag_b
            ab[2, :-1] = -self.off_a[1:]
            try:
                w = sla.solve_banded((1, 1), ab, self.diag_b * vec)
            except np.linalg.LinAlgError:
                break  # exactly singular: current pair is already converged
            if not np.all(np.isfinite(w)):
                break
            vec = w / np.max(np.abs(w))
            denom = float(vec @ (self.diag_b * vec))
            sig = float(vec @ self.apply_a(vec)) / denom
            res = self.residual(sig, vec)
            if res < best_res:
                best_sig, best_vec, best_res = sig, vec, res
            if best_res < 1e-13:
                break
        return best_sig, best_vec


def build_recurrence_system(prob: RecurrenceProblem,
                            n_trunc: int | None = None) -> GeneralizedEigSystem:
    k2 = prob.kappa_sq(n_trunc)
    b = k2 + prob.alpha**2 * k2**2
    return GeneralizedEigSystem(
        diag_a=-b * k2,
        off_a=prob.capital_lambda * prob.t * (k2 - prob.s**2),
        diag_b=b,
    )


def d_coefficient(prob: RecurrenceProblem, n: int, sigma_hat: float) -> float:
    """Reconstruct d_n from the assembled system (for cross-checks)."""
    sys = build_recurrence_system(prob)
    i = n + prob.n_trunc
    return (sigma_hat * sys.diag_b[i] - sys.diag_a[i]) / sys.off_a[i]


@dataclass(frozen=True, eq=False)
class StabilityResult:
    """Principal real eigenvalue of a chain, with its decaying eigenvector."""

    sigma_hat: float
    capital_lambda: float
    eigen_residual: float
    eigenvector: np.ndarray
    offsets: np.ndarray
    n_trunc_used: int

    def __post_init__(self):
        if not self.eigen_residual < RESIDUAL_TOL:
            raise EigensolverError(
                f"eigen residual {self.eigen_residual} exceeds {RESIDUAL_TOL}"
            )


def _largest_real_decaying(sys: GeneralizedEigSystem):
    """Largest real eigenvalue whose eigenvector decays at the truncation edge."""
    m = (sys.diag_a / sys.diag_b)[:, None] * np.eye(sys.size)
    idx = np.arange(sys.size - 1)
    m[idx, idx + 1] = sys.off_a[:-1] / sys.diag_b[:-1]
    m[idx + 1, idx] = -sys.off_a[1:] / sys.diag_b[1:]
    try:
        vals, vecs = scipy.linalg.eig(m)
    except Exception as exc:  # pragma: no cover - LAPACK failure surface
        raise EigensolverError(f"dense eigensolve failed: {exc}") from exc
    best = None
    for j in range(len(vals)):
        lam = vals[j]
        if abs(lam.imag) >= SIGMA_REAL_TOL * (1.0 + abs(lam.real)):
            continue
        v = vecs[:, j]
        peak = np.max(np.abs(v))
        tail = max(abs(v[0]), abs(v[-1]))
        if tail >= DECAY_TAIL_TOL * peak:
            continue  # truncation-contaminated
        if best is None or lam.real > best[0]:
            best = (float(lam.real), np.real(v / v[np.argmax(np.abs(v))]))
    return best


def principal_sigma(prob: RecurrenceProblem, max_trunc: int = 1024) -> StabilityResult:
    """Track the monotone real branch, doubling n_trunc until it settles.

    Raises EigensolverError if no real decaying eigenvalue exists at any
    truncation or the doubling fails to converge below 1e-10.
    """
    prev = None
    trunc = prob.n_trunc
    while trunc <= max_trunc:
        sys = build_recurrence_system(prob, trunc)
        got = _largest_real_decaying(sys)
        if got is not None:
            sigma, vec = got
            sigma, vec = sys.refine(sigma, vec)
            if prev is not None and abs(sigma - prev) < 1e-10 * (1.0 + abs(sigma)):
                return StabilityResult(
                    sigma_hat=sigma,
                    capital_lambda=prob.capital_lambda,
                    eigen_residual=sys.residual(sigma, vec),
                    eigenvector=vec,
                    offsets=prob.offsets(trunc),
                    n_trunc_used=trunc,
                )
            prev = sigma
        trunc *= 2
    raise EigensolverError(
        f"eigenvalue did not converge by n_trunc={max_trunc} "
        f"(last sigma_hat={prev})"
    )


def unstable_sigma(prob: RecurrenceProblem) -> StabilityResult | None:
    """Principal eigenvalue if it is unstable (sigma_hat > 0), else None."""
    res = principal_sigma(prob)
    return res if res.sigma_hat > 0.0 else None


def lu_interval(s: int, delta: float, alpha: float) -> tuple[float, float]:
    """Two-sided window for the neutral threshold Lambda_0.

    alpha = 0 uses the sharper pair (delta^2 s / sqrt2, 5 s/(3 sqrt3 delta^2));
    alpha >= 0 the pair with the (1 + alpha^2 s^2) factor and constant
    55 sqrt5 / (63 sqrt2).
    """
    if alpha == 0.0:
        return (
            delta**2 * s / math.sqrt(2.0),
            5.0 / (3.0 * math.sqrt(3.0)) * s / delta**2,
        )
    fac = 1.0 + alpha**2 * s**2
    return (
        delta**2 * s * fac / math.sqrt(2.0),
        55.0 * math.sqrt(5.0) / (63.0 * math.sqrt(2.0)) * s * fac / delta**2,
    )


def lambda_interval(s: int, delta: float, alpha: float) -> tuple[float, float]:
    """The same window stated for the amplitude lam instead of Lambda."""
    if alpha == 0.0:
        return (
            2.0 * math.pi * delta**2 * s,
            20.0 * math.pi / (3.0 * math.sqrt(6.0)) * s / delta**2,
        )
    fac = (1.0 + alpha**2 * s**2) ** 2
    return (
        2.0 * math.pi * delta**2 * s * fac,
        110.0 * math.sqrt(5.0) * math.pi / 63.0 * s * fac / delta**2,
    )


def lambda0_threshold(s: int, t: float, r: int, alpha: float,
                      delta: float) -> float:
    """Bisection for the Lambda with sigma_hat(Lambda) = 0, to 1e-8 relative.

    The bracket is the two-sided window widened by a factor of 10 on each
    side; a missing sign change raises BracketError rather than guessing.
    """
    lo_ref, hi_ref = lu_interval(s, delta, alpha)
    lo, hi = lo_ref / 10.0, hi_ref * 10.0

    def sig(lam_cap: float) -> float:
        return principal_sigma(
            RecurrenceProblem(s=s, t=t, r=r, capital_lambda=lam_cap, alpha=alpha)
        ).sigma_hat

    f_lo, f_hi = sig(lo), sig(hi)
    if not (f_lo < 0.0 < f_hi):
        raise BracketError(
            f"sigma_hat does not change sign on [{lo}, {hi}]: "
            f"endpoints ({f_lo}, {f_hi})"
        )
    while hi - lo > 1e-8 * 0.5 * (hi + lo):
        mid = 0.5 * (lo + hi)
        if sig(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------
# dense oracle: the full linearization over the half-lattice
# ---------------------------------------------------------------------

def _half_lattice(k_cutoff: int) -> list[tuple[int, int]]:
    ks = []
    for k2 in range(1, k_cutoff + 1):
        ks.append((0, k2))
    for k1 in range(1, k_cutoff + 1):
        for k2 in range(-k_cutoff, k_cutoff + 1):
            ks.append((k1, k2))
    return ks


def full_linearization_matrix(s: int, lam: float, alpha: float,
                              k_cutoff: int):
    """Coefficient matrix of the linearization on the half-lattice box.

    Valid for both the cosine- and sine-family coefficient vectors (the
    two families satisfy identical equations); eigenvalues are sigma_hat.
    Requires k_cutoff >= 3s so each in-region chain keeps at least the
    |n| <= 1 neighbours.
    """
    if k_cutoff < 3 * s:
        raise ValueError(f"k_cutoff={k_cutoff} too small, need >= 3s = {3 * s}")
    lam_cap = capital_lambda(lam, s, alpha)
    keys = _half_lattice(k_cutoff)
    index = {k: i for i, k in enumerate(keys)}
    n = len(keys)
    m = np.zeros((n, n))

    def g(k1: int, k2: int) -> float:
        ksq = k1 * k1 + k2 * k2
        return (ksq - s * s) / (ksq + alpha**2 * ksq**2)

    for (k1, k2), i in index.items():
        m[i, i] = -(k1 * k1 + k2 * k2)
        if k1 == 0:
            continue  # single-variable modes: no coupling, neutral/stable line
        up = (k1, k2 + s)
        dn = (k1, k2 - s)
        if up in index:
            m[i, index[up]] += lam_cap * k1 * g(*up)
        if dn in index:
            m[i, index[dn]] -= lam_cap * k1 * g(*dn)
    return m, index


def full_linearization_spectrum(s: int, lam: float, nu: float, alpha: float,
                                k_cutoff: int) -> np.ndarray:
    """All sigma_hat eigenvalues of the dense linearization matrix.

    Each eigenvalue of the coefficient matrix is reported twice: the
    cosine and sine coefficient families obey the same equation, so the
    operator carries every chain eigenvalue with multiplicity two.
    ``nu`` only sets the dimensional growth rate sigma = nu * sigma_hat
    and does not affect sigma_hat.
    """
    if nu <= 0:
        raise ValueError(f"nu must be positive, got {nu}")
    m, _ = full_linearization_matrix(s, lam, alpha, k_cutoff)
    vals = scipy.linalg.eigvals(m)
    both = np.concatenate([vals, vals])
    return both[np.argsort(-both.real)]


# ---------------------------------------------------------------------
# dimension lower bound
# ---------------------------------------------------------------------

@dataclass(frozen=True)
class LowerBound2D:
    """coeff * G^(2/3) with the regime's two-digit coefficient, plus the
    symbolic small-alpha window whose constants the analysis leaves free."""

    g: float
    alpha: float
    coefficient: float
    value: float
    regime: str
    alpha_regime_forms: dict

    def as_dict(self) -> dict:
        return {
            "g": self.g,
            "alpha": self.alpha,
            "coefficient": self.coefficient,
            "value": self.value,
            "regime": self.regime,
            "alpha_regime_forms": self.alpha_regime_forms,
        }


def lower_bound_dim2d(g: float, alpha: float) -> LowerBound2D:
    """Attractor-dimension lower bound coeff * G^(2/3).

    alpha = 0 uses 0.006; 0 < alpha << 1 (the G ~ alpha^-3 regime) uses
    0.0018.  The pure alpha-scaling forms C1/alpha^2 and
    C2 alpha^-2 (log 1/alpha)^(1/3) are reported symbolically: C1 and C2
    are structurally unspecified.
    """
    if g <= 0:
        raise ValueError(f"G must be positive, got {g}")
    if alpha < 0:
        raise ValueError(f"alpha must be nonnegative, got {alpha}")
    coeff = LOWER_COEFF_ALPHA0 if alpha == 0.0 else LOWER_COEFF_SMALL_ALPHA
    regime = "alpha=0" if alpha == 0.0 else "small-alpha"
    forms = {
        "lower": "C1 / alpha^2",
        "upper": "C2 / alpha^2 * (log(1/alpha))^(1/3)",
        "C1": None,
        "C2": None,
        "note": "C1, C2 unspecified by the analysis",
    }
    return LowerBound2D(
        g=g, alpha=alpha, coefficient=coeff, value=coeff * g ** (2.0 / 3.0),
        regime=regime, alpha_regime_forms=forms,
    )


def derived_lower_coefficient(alpha_zero: bool,
                              a_delta_max: float = A_DELTA_MAX) -> float:
    """Provenance of the two-digit coefficients:

    2 (3 sqrt6 / (20 pi))^(2/3) * max a(delta) delta^(4/3)  for alpha = 0,
    2 (63 / (440 sqrt5 pi))^(2/3) * the same max              for small alpha.
    """
    if alpha_zero:
        base = 3.0 * math.sqrt(6.0) / (20.0 * math.pi)
    else:
        base = 63.0 / (440.0 * math.sqrt(5.0) * math.pi)
    return 2.0 * base ** (2.0 / 3.0) * a_delta_max


# ---------------------------------------------------------------------
# sweep driver
# ---------------------------------------------------------------------

def stability_sweep(s: int, alpha: float, delta: float, lam: float,
                    compute_lambda0: bool = True) -> list[dict]:
    """Chain scan over the region bounding box.

    One row per (t, r): principal sigma_hat at Lambda(lam), region
    membership, and (for in-region pairs) the neutral threshold Lambda_0.
    Rows are emitted in fixed (t, r) order for reproducible output.
    """
    spec = RegionSpec(delta=delta, s=s)
    lam_cap = capital_lambda(lam, s, alpha)
    t_hi = int(math.floor(s * _INV_SQRT3)) + 1
    r_hi = s // 6 + 1
    rows = []
    for t in range(1, t_hi + 1):
        for r in range(-r_hi, r_hi + 1):
            in_region = region_contains(spec, t, r)
            try:
                prob = RecurrenceProblem(
                    s=s, t=t, r=r, capital_lambda=lam_cap, alpha=alpha
                )
                sigma = principal_sigma(prob).sigma_hat
            except (ValueError, EigensolverError):
                sigma = math.nan
            lam0 = math.nan
            if in_region and compute_lambda0:
                lam0 = lambda0_threshold(s, t, r, alpha, delta)
            rows.append({
                "s": s, "t": t, "r": r, "alpha": alpha, "delta": delta,
                "lambda": lam, "capital_lambda": lam_cap,
                "sigma_hat": sigma, "lambda0": lam0,
                "in_region": in_region,
            })
    return rows
