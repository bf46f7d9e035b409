"""Physical parameters, potentials, grids, and the dilation-operator algebra.

All spectral work happens in dimensionless form: the operator

    -d^2/dx^2 + alpha/(x+b)^2 + lambda^2 x^2,   lambda = m omega / hbar,

whose eigenvalues eps relate to physical energies by E = eps hbar^2 / (2 m).
PhysicalParams owns that conversion; SpikedPotential holds (alpha, lambda^2, b).

The dilation operator d = -i hbar (x d/dx + 1/2) generates scale rather than
shift transformations and satisfies [x, d] = i hbar x.  Its discrete action
here is test-scaffolding: centered differences with one-sided stencils at the
first and last interior node, applied to smooth functions that vanish near
both ends.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "PhysicalParams",
    "SpikedPotential",
    "HalfLineGrid",
    "Wavefunction",
    "ComplexWavefunction",
    "AFFINE_ALPHA",
    "eval_potential",
    "dilation_apply",
    "dilation_generator_apply",
    "commutator_residual",
]

# Coefficient of the inverse-square term produced by symmetrizing the kinetic
# energy in the scale variable d = p x: always 3/4 on the half-line.
AFFINE_ALPHA = 0.75


@dataclass(frozen=True)
class PhysicalParams:
    """Mass m, angular frequency omega, and Planck constant hbar.

    The oscillator scale lambda = m omega / hbar and the quantum hbar*omega
    are derived on demand, never stored.
    """

    mass: float = 1.0
    omega: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if self.mass <= 0.0:
            raise ValueError(f"mass must be > 0, got {self.mass}")
        if self.hbar <= 0.0:
            raise ValueError(f"hbar must be > 0, got {self.hbar}")
        if self.omega < 0.0:
            raise ValueError(f"omega must be >= 0, got {self.omega}")

    @property
    def lam(self) -> float:
        """Oscillator scale lambda = m omega / hbar."""
        return self.mass * self.omega / self.hbar

    @property
    def quantum(self) -> float:
        """Energy quantum hbar * omega."""
        return self.hbar * self.omega

    def energy_from_dimensionless(self, eps):
        """Physical energy E = eps hbar^2 / (2 m)."""
        return eps * self.hbar**2 / (2.0 * self.mass)

    def dimensionless_from_energy(self, energy):
        """Dimensionless eigenvalue eps = 2 m E / hbar^2."""
        return 2.0 * self.mass * energy / self.hbar**2


@dataclass(frozen=True)
class SpikedPotential:
    """The family V(x) = alpha/(x+b)^2 + lambda2 x^2 on x > -b.

    alpha = 3/4 whenever the inverse-square spike comes from quantizing a
    kinetic term in scale variables; lambda2 = 0 gives the free particle and
    b > 0 moves the domain endpoint away from the oscillator symmetry point.
    """

    alpha: float = AFFINE_ALPHA
    lambda2: float = 0.0
    b: float = 0.0

    def __post_init__(self):
        if self.lambda2 < 0.0:
            raise ValueError(f"lambda2 must be >= 0, got {self.lambda2}")
        if self.b < 0.0:
            raise ValueError(f"b must be >= 0, got {self.b}")


def free_particle_potential() -> SpikedPotential:
    """Half-line free particle: pure 3/4 x^-2 spike."""
    return SpikedPotential(alpha=AFFINE_ALPHA, lambda2=0.0, b=0.0)


def half_oscillator_potential(params: PhysicalParams) -> SpikedPotential:
    """Half harmonic oscillator in dimensionless form."""
    return SpikedPotential(alpha=AFFINE_ALPHA, lambda2=params.lam**2, b=0.0)


def shifted_oscillator_potential(params: PhysicalParams, b: float) -> SpikedPotential:
    """Oscillator with the domain endpoint moved to x = -b."""
    return SpikedPotential(alpha=AFFINE_ALPHA, lambda2=params.lam**2, b=b)


def eval_potential(pot: SpikedPotential, x):
    """Evaluate V(x) = alpha/(x+b)^2 + lambda2 x^2.

    Raises ValueError if any x + b <= 0 (on top of the singularity).
    Accepts scalars or arrays.
    """
    arr = np.asarray(x, dtype=float)
    shifted = arr + pot.b
    if np.any(shifted <= 0.0):
        raise ValueError(f"potential requires x + b > 0; violated for b={pot.b}")
    out = pot.alpha / shifted**2 + pot.lambda2 * arr**2
    if arr.ndim == 0:
        return float(out)
    return out


@dataclass(frozen=True)
class HalfLineGrid:
    """Uniform interior grid on (0, xmax) with implicit Dirichlet endpoints.

    Spacing h = xmax/(npoints+1); nodes x_i = i h for i = 1..npoints, so the
    singular point x = 0 is never a node and the boundary values at 0 and
    xmax are implicit zeros.
    """

    xmax: float
    npoints: int

    def __post_init__(self):
        if self.xmax <= 0.0:
            raise ValueError(f"xmax must be > 0, got {self.xmax}")
        if self.npoints < 16:
            raise ValueError(f"npoints must be >= 16, got {self.npoints}")

    @property
    def h(self) -> float:
        return self.xmax / (self.npoints + 1)

    @property
    def nodes(self) -> np.ndarray:
        return self.h * np.arange(1, self.npoints + 1)


@dataclass(frozen=True)
class Wavefunction:
    """Real-valued samples psi(x_i) on a half-line grid."""

    grid: HalfLineGrid
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (self.grid.npoints,):
            raise ValueError(
                f"values must have length {self.grid.npoints}, got shape {vals.shape}"
            )
        object.__setattr__(self, "values", vals)

    def norm(self) -> float:
        """Trapezoidal L2 norm; endpoint values are the implicit zeros."""
        return math.sqrt(self.grid.h * float(np.sum(self.values**2)))

    def normalized(self) -> "Wavefunction":
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize the zero wavefunction")
        return Wavefunction(self.grid, self.values / n)


@dataclass(frozen=True)
class ComplexWavefunction:
    """Complex-valued grid function stored as a pair of real grids."""

    real: Wavefunction
    imag: Wavefunction

    def __post_init__(self):
        if self.real.grid != self.imag.grid:
            raise ValueError("real and imaginary parts must share a grid")


def _cubic_sample(psi: Wavefunction, points: np.ndarray) -> np.ndarray:
    """Sample psi at arbitrary points by 4-point Lagrange cubic interpolation.

    The grid is extended by its implicit zeros at x = 0 and x = xmax and by
    zero ghost nodes beyond; points outside [0, xmax] evaluate to zero.
    """
    grid = psi.grid
    h, n = grid.h, grid.npoints
    padded = np.zeros(n + 4)
    padded[2 : n + 2] = psi.values  # padded[m + 1] holds node m (node 0 is x=0)
    t_all = points / h
    inside = (points >= 0.0) & (points <= grid.xmax)
    m = np.clip(np.floor(t_all).astype(int), 0, n)
    t = np.where(inside, t_all - m, 0.0)
    w0 = -t * (t - 1.0) * (t - 2.0) / 6.0
    w1 = (t * t - 1.0) * (t - 2.0) / 2.0
    w2 = -t * (t + 1.0) * (t - 2.0) / 2.0
    w3 = t * (t * t - 1.0) / 6.0
    out = w0 * padded[m] + w1 * padded[m + 1] + w2 * padded[m + 2] + w3 * padded[m + 3]
    return np.where(inside, out, 0.0)


def dilation_apply(psi: Wavefunction, s: float) -> Wavefunction:
    """Unitary dilation (U(s) psi)(x) = e^{s/2} psi(e^s x).

    Off-grid samples come from cubic interpolation; the function is treated
    as zero outside [0, xmax], so the norm is preserved only up to
    interpolation and support-truncation error (small for |s| <= 0.2 on
    functions supported well inside the box).
    """
    stretched = math.exp(s) * psi.grid.nodes
    return Wavefunction(psi.grid, math.exp(0.5 * s) * _cubic_sample(psi, stretched))


def _first_derivative(values: np.ndarray, h: float) -> np.ndarray:
    """Second-order first derivative: centered inside, one-sided at the ends."""
    dv = np.empty_like(values)
    dv[1:-1] = (values[2:] - values[:-2]) / (2.0 * h)
    dv[0] = (-3.0 * values[0] + 4.0 * values[1] - values[2]) / (2.0 * h)
    dv[-1] = (3.0 * values[-1] - 4.0 * values[-2] + values[-3]) / (2.0 * h)
    return dv


def dilation_generator_apply(
    psi: Wavefunction, params: PhysicalParams
) -> ComplexWavefunction:
    """Apply d = -i hbar (x d/dx + 1/2) to a real grid function.

    The result is purely imaginary for real input; it is returned as a
    (real, imaginary) pair of grids with the real part identically zero.
    """
    x = psi.grid.nodes
    dpsi = _first_derivative(psi.values, psi.grid.h)
    imag = -params.hbar * (x * dpsi + 0.5 * psi.values)
    zero = Wavefunction(psi.grid, np.zeros_like(imag))
    return ComplexWavefunction(real=zero, imag=Wavefunction(psi.grid, imag))


def commutator_residual(psi: Wavefunction, params: PhysicalParams) -> float:
    """L2 norm of ([x, d] - i hbar x) psi under the discrete operators.

    For the exact operators the commutator equals i hbar x, so the residual
    vanishes; discretely it decays as O(h^2) for smooth psi vanishing near
    both boundaries.
    """
    x = psi.grid.nodes
    v = psi.values
    h = psi.grid.h
    hbar = params.hbar
    # x (d psi) and d (x psi) are both purely imaginary; work with the
    # imaginary parts g1 = -hbar (x v' + v/2), g2 = -hbar (x (xv)' + xv/2).
    g1 = -hbar * (x * _first_derivative(v, h) + 0.5 * v)
    g2 = -hbar * (x * _first_derivative(x * v, h) + 0.5 * x * v)
    resid = x * g1 - g2 - hbar * x * v
    return math.sqrt(h * float(np.sum(resid**2)))
