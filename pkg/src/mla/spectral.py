"""Truncated Fourier representation of zero-mean scalars on the square torus.

Fields live on [0, 2pi]^2, so wavevectors are integer pairs and the
coefficient convention is

    f(x) = sum_k c_k exp(i k.x),   c_{-k} = conj(c_k),   c_0 = 0.

Coefficients are stored in numpy FFT layout (``coeffs[i1, i2]`` holds the
mode ``(k1[i1], k2[i2])`` with ``k = fftfreq(n) * n``).  All linear
operators are Fourier multipliers; only the Jacobian goes through physical
space, with the 2/3-rule (configurable fraction) applied to its result.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple

import numpy as np

__all__ = [
    "GridMismatchError",
    "NonZeroMeanError",
    "SpectralGrid",
    "ScalarField",
    "VectorField2",
    "FieldNorms",
    "laplacian",
    "inv_laplacian",
    "helmholtz_inv",
    "jacobian",
    "velocity_from_stream",
    "divergence",
    "norms",
    "inner",
    "deriv",
    "field_to_json",
    "field_from_json",
    "save_field",
    "load_field",
]

#: First eigenvalue of the Stokes operator on the 2pi square torus
#: (least nonzero integer |k|^2).  Overridable in the bound evaluators,
#: where sphere eigenvalues n(n+1) enter instead.
LAMBDA1_TORUS = 1.0

_MEAN_TOL = 1e-14


def _hermitianize(c: np.ndarray) -> np.ndarray:
    """Project onto exact Hermitian symmetry: c_{-k} = conj(c_k).

    Physical-space transforms of real data are Hermitian only to roundoff;
    pinning the symmetry exactly makes the half-spectrum representation
    canonical (and serialization bit-exact).
    """
    flipped = np.conj(np.roll(np.flip(c), (1, 1), axis=(0, 1)))
    return 0.5 * (c + flipped)


class GridMismatchError(ValueError):
    """Operands live on different spectral grids."""


class NonZeroMeanError(ValueError):
    """A zero-mean field was required but the (0,0) coefficient is not 0."""


@dataclass(frozen=True)
class SpectralGrid:
    """Square spectral grid: ``n_modes`` modes per dimension on [0, 2pi]^2.

    ``dealias_fraction`` is the cutoff fraction of the Nyquist wavenumber;
    modes with max(|k1|, |k2|) >= dealias_fraction * n_modes/2 are dropped
    by the dealiasing mask (2/3-rule by default).
    """

    n_modes: int
    dealias_fraction: Fraction = Fraction(2, 3)

    def __post_init__(self):
        if self.n_modes < 8 or self.n_modes % 2 != 0:
            raise ValueError(f"n_modes must be even and >= 8, got {self.n_modes}")
        frac = Fraction(self.dealias_fraction)
        if not (0 < frac <= 1):
            raise ValueError(f"dealias_fraction must lie in (0, 1], got {frac}")
        object.__setattr__(self, "dealias_fraction", frac)

    @cached_property
    def wavenumbers(self) -> np.ndarray:
        """Integer wavenumbers in FFT order, shape (n_modes,)."""
        return np.fft.fftfreq(self.n_modes, d=1.0 / self.n_modes).astype(np.int64)

    @cached_property
    def k1(self) -> np.ndarray:
        return self.wavenumbers[:, None].astype(np.float64)

    @cached_property
    def k2(self) -> np.ndarray:
        return self.wavenumbers[None, :].astype(np.float64)

    @cached_property
    def k_sq(self) -> np.ndarray:
        return self.k1**2 + self.k2**2

    @property
    def dealias_cutoff(self) -> float:
        """Largest |k_i| kept is the biggest integer strictly below this."""
        return float(self.dealias_fraction) * self.n_modes / 2.0

    @cached_property
    def dealias_mask(self) -> np.ndarray:
        c = self.dealias_cutoff
        k = np.abs(self.wavenumbers)
        return (k[:, None] < c) & (k[None, :] < c)

    def index_of(self, k1: int, k2: int) -> tuple[int, int]:
        n = self.n_modes
        if abs(k1) > n // 2 or abs(k2) > n // 2:
            raise ValueError(f"wavevector ({k1},{k2}) not representable at n_modes={n}")
        return (k1 % n, k2 % n)

    def physical_nodes(self) -> tuple[np.ndarray, np.ndarray]:
        x = 2.0 * np.pi * np.arange(self.n_modes) / self.n_modes
        return np.meshgrid(x, x, indexing="ij")


@dataclass(frozen=True, eq=False)
class ScalarField:
    """Zero-mean real scalar on the torus, stored spectrally.

    The (0,0) coefficient is pinned to exactly 0 at construction; inputs
    whose mean coefficient exceeds 1e-14 (relative) are rejected.
    """

    grid: SpectralGrid
    coeffs: np.ndarray

    def __post_init__(self):
        n = self.grid.n_modes
        c = np.asarray(self.coeffs, dtype=np.complex128)
        if c.shape != (n, n):
            raise ValueError(f"coeffs shape {c.shape} does not match grid ({n},{n})")
        scale = max(1.0, float(np.max(np.abs(c))) if c.size else 1.0)
        if abs(c[0, 0]) > _MEAN_TOL * scale:
            raise NonZeroMeanError(
                f"mean coefficient {c[0, 0]} exceeds tolerance {_MEAN_TOL * scale}"
            )
        c = c.copy()
        c[0, 0] = 0.0
        object.__setattr__(self, "coeffs", c)

    # -- constructors -------------------------------------------------

    @classmethod
    def zeros(cls, grid: SpectralGrid) -> "ScalarField":
        return cls(grid, np.zeros((grid.n_modes, grid.n_modes), dtype=np.complex128))

    @classmethod
    def harmonic(cls, grid: SpectralGrid, k1: int, k2: int, amplitude: float = 1.0,
                 kind: str = "cos") -> "ScalarField":
        """amplitude * cos(k.x) or amplitude * sin(k.x) as a field."""
        if (k1, k2) == (0, 0):
            raise ValueError("harmonic requires a nonzero wavevector")
        if abs(k1) >= grid.dealias_cutoff or abs(k2) >= grid.dealias_cutoff:
            raise ValueError(
                f"wavevector ({k1},{k2}) is beyond the dealias cutoff "
                f"{grid.dealias_cutoff}"
            )
        c = np.zeros((grid.n_modes, grid.n_modes), dtype=np.complex128)
        if kind == "cos":
            cp = amplitude / 2.0
        elif kind == "sin":
            cp = amplitude / 2.0j
        else:
            raise ValueError(f"kind must be 'cos' or 'sin', got {kind!r}")
        c[grid.index_of(k1, k2)] += cp
        c[grid.index_of(-k1, -k2)] += np.conj(cp)
        return cls(grid, c)

    @classmethod
    def from_modes(cls, grid: SpectralGrid,
                   modes: dict[tuple[int, int], complex]) -> "ScalarField":
        """Build from half-spectrum coefficients; conjugates filled in."""
        c = np.zeros((grid.n_modes, grid.n_modes), dtype=np.complex128)
        for (k1, k2), val in modes.items():
            c[grid.index_of(k1, k2)] = val
            c[grid.index_of(-k1, -k2)] = np.conj(val)
        return cls(grid, c)

    @classmethod
    def from_physical(cls, grid: SpectralGrid, values: np.ndarray,
                      demean: bool = True, dealias: bool = True) -> "ScalarField":
        vals = np.asarray(values, dtype=np.float64)
        c = _hermitianize(np.fft.fft2(vals) / vals.size)
        if demean:
            c[0, 0] = 0.0
        if dealias:
            c = np.where(grid.dealias_mask, c, 0.0)
        return cls(grid, c)

    @classmethod
    def random(cls, grid: SpectralGrid, rng: np.random.Generator,
               amplitude: float = 1.0, decay: float = 1.0) -> "ScalarField":
        """Random smooth Hermitian field, spectrum ~ exp(-decay * |k|)."""
        phys = rng.standard_normal((grid.n_modes, grid.n_modes))
        c = _hermitianize(np.fft.fft2(phys) / phys.size)
        c *= np.exp(-decay * np.sqrt(grid.k_sq))
        c[0, 0] = 0.0
        c = np.where(grid.dealias_mask, c, 0.0)
        f = cls(grid, c)
        l2 = norms(f).l2
        return f * (amplitude / l2) if l2 > 0 else f

    # -- basic queries ------------------------------------------------

    def coeff(self, k1: int, k2: int) -> complex:
        return complex(self.coeffs[self.grid.index_of(k1, k2)])

    def to_physical(self) -> np.ndarray:
        return np.real(np.fft.ifft2(self.coeffs)) * self.coeffs.size

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        c = self.coeffs
        flipped = np.conj(np.roll(np.flip(c), (1, 1), axis=(0, 1)))
        scale = max(1.0, float(np.max(np.abs(c))))
        return bool(np.max(np.abs(c - flipped)) <= tol * scale)

    # -- arithmetic ---------------------------------------------------

    def _require_same_grid(self, other: "ScalarField") -> None:
        if self.grid != other.grid:
            raise GridMismatchError(
                f"grids differ: {self.grid} vs {other.grid}"
            )

    def __add__(self, other: "ScalarField") -> "ScalarField":
        self._require_same_grid(other)
        return ScalarField(self.grid, self.coeffs + other.coeffs)

    def __sub__(self, other: "ScalarField") -> "ScalarField":
        self._require_same_grid(other)
        return ScalarField(self.grid, self.coeffs - other.coeffs)

    def __mul__(self, scalar: float) -> "ScalarField":
        return ScalarField(self.grid, self.coeffs * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> "ScalarField":
        return ScalarField(self.grid, -self.coeffs)


@dataclass(frozen=True, eq=False)
class VectorField2:
    """Tangent vector field (u1, u2); divergence-free when stream-derived."""

    u1: ScalarField
    u2: ScalarField

    def __post_init__(self):
        if self.u1.grid != self.u2.grid:
            raise GridMismatchError("vector components on different grids")

    @property
    def grid(self) -> SpectralGrid:
        return self.u1.grid

    def l2(self) -> float:
        return float(np.sqrt(norms(self.u1).l2 ** 2 + norms(self.u2).l2 ** 2))


class FieldNorms(NamedTuple):
    l2: float
    h1_semi: float
    h2_semi: float


# ---------------------------------------------------------------------
# Fourier-multiplier operators
# ---------------------------------------------------------------------

def deriv(f: ScalarField, axis: int) -> ScalarField:
    """Spectral partial derivative along axis 1 or 2."""
    if axis == 1:
        mult = 1j * f.grid.k1
    elif axis == 2:
        mult = 1j * f.grid.k2
    else:
        raise ValueError(f"axis must be 1 or 2, got {axis}")
    return ScalarField(f.grid, f.coeffs * mult)


def laplacian(f: ScalarField) -> ScalarField:
    return ScalarField(f.grid, -f.grid.k_sq * f.coeffs)


def inv_laplacian(f: ScalarField) -> ScalarField:
    """Inverse Laplacian on zero-mean fields: c_k -> -c_k / |k|^2."""
    if abs(f.coeffs[0, 0]) > _MEAN_TOL:
        raise NonZeroMeanError("inv_laplacian requires a zero-mean field")
    ksq = f.grid.k_sq.copy()
    ksq[0, 0] = 1.0
    out = -f.coeffs / ksq
    out[0, 0] = 0.0
    return ScalarField(f.grid, out)


def helmholtz_inv(f: ScalarField, alpha: float) -> ScalarField:
    """(I - alpha^2 Laplacian)^{-1}: c_k -> c_k / (1 + alpha^2 |k|^2)."""
    if alpha < 0:
        raise ValueError(f"alpha must be nonnegative, got {alpha}")
    return ScalarField(f.grid, f.coeffs / (1.0 + alpha**2 * f.grid.k_sq))


def jacobian(a: ScalarField, b: ScalarField) -> ScalarField:
    """Pseudospectral J(a,b) = d1(a) d2(b) - d2(a) d1(b), dealiased.

    Inputs are masked before the transform so that retained modes of the
    product are alias-free whenever the inputs are supported inside the
    cutoff; the mean of the result is pinned to exactly zero.
    """
    a._require_same_grid(b)
    grid = a.grid
    mask = grid.dealias_mask
    n_sq = a.coeffs.size

    def phys(c):
        return np.real(np.fft.ifft2(np.where(mask, c, 0.0))) * n_sq

    a1 = phys(1j * grid.k1 * a.coeffs)
    a2 = phys(1j * grid.k2 * a.coeffs)
    b1 = phys(1j * grid.k1 * b.coeffs)
    b2 = phys(1j * grid.k2 * b.coeffs)
    prod = a1 * b2 - a2 * b1
    c = _hermitianize(np.fft.fft2(prod) / n_sq)
    c = np.where(mask, c, 0.0)
    c[0, 0] = 0.0
    return ScalarField(grid, c)


def velocity_from_stream(psi: ScalarField) -> VectorField2:
    """u = (-d2 psi, d1 psi); divergence-free by construction."""
    return VectorField2(u1=-deriv(psi, 2), u2=deriv(psi, 1))


def divergence(u: VectorField2) -> ScalarField:
    return deriv(u.u1, 1) + deriv(u.u2, 2)


def norms(f: ScalarField) -> FieldNorms:
    """Parseval L2, H1- and H2-seminorms (volume (2pi)^2)."""
    w = np.abs(f.coeffs) ** 2
    vol = (2.0 * np.pi) ** 2
    ksq = f.grid.k_sq
    return FieldNorms(
        l2=float(np.sqrt(vol * np.sum(w))),
        h1_semi=float(np.sqrt(vol * np.sum(ksq * w))),
        h2_semi=float(np.sqrt(vol * np.sum(ksq**2 * w))),
    )


def inner(f: ScalarField, g: ScalarField) -> float:
    """L2 inner product of two real fields."""
    f._require_same_grid(g)
    vol = (2.0 * np.pi) ** 2
    return float(np.real(np.sum(f.coeffs * np.conj(g.coeffs))) * vol)


# ---------------------------------------------------------------------
# Serialization: self-describing JSON container, bit-exact round trip
# ---------------------------------------------------------------------

FIELD_FORMAT = "mla-field-v1"


def _half_spectrum_keys(grid: SpectralGrid):
    """One representative per conjugate pair: k2 > 0, or k2 == 0 and k1 > 0."""
    half = grid.n_modes // 2
    for k2 in range(0, half + 1):
        for k1 in range(-half, half + 1):
            if k2 == 0 and k1 <= 0:
                continue
            yield (k1, k2)


def field_to_json(f: ScalarField) -> str:
    """Serialize the independent half-spectrum (nonzero modes only).

    Floats pass through ``repr`` via the json encoder, so the round trip
    is bit-exact.
    """
    modes = []
    for k1, k2 in _half_spectrum_keys(f.grid):
        c = f.coeffs[f.grid.index_of(k1, k2)]
        if c != 0:
            modes.append([k1, k2, float(c.real), float(c.imag)])
    doc = {
        "format": FIELD_FORMAT,
        "n_modes": f.grid.n_modes,
        "dealias_fraction": str(f.grid.dealias_fraction),
        "modes": modes,
    }
    return json.dumps(doc)


def field_from_json(text: str) -> ScalarField:
    doc = json.loads(text)
    if doc.get("format") != FIELD_FORMAT:
        raise ValueError(f"unrecognized field container: {doc.get('format')!r}")
    grid = SpectralGrid(int(doc["n_modes"]), Fraction(doc["dealias_fraction"]))
    c = np.zeros((grid.n_modes, grid.n_modes), dtype=np.complex128)
    for k1, k2, re, im in doc["modes"]:
        val = complex(re, im)
        c[grid.index_of(int(k1), int(k2))] = val
        c[grid.index_of(-int(k1), -int(k2))] = np.conj(val)
    return ScalarField(grid, c)


def save_field(f: ScalarField, path) -> None:
    with open(path, "w") as fh:
        fh.write(field_to_json(f))


def load_field(path) -> ScalarField:
    with open(path) as fh:
        return field_from_json(fh.read())
