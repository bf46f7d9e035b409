"""Closed-form eigenstates on the half-line.

Free particle with the 3/4 x^-2 spike: a continuum phi_k(x) = (kx)^{1/2}
J1(kx) with E_k = k^2 hbar^2 / (2m).  Half harmonic oscillator: bound states

    phi_n(x) = sqrt(2(n+1)) (m omega/hbar) x^{3/2} e^{-m omega x^2 / 2 hbar}
               1F1(-n, 2, m omega x^2 / hbar),       E_n = 2(n+1) hbar omega,

reached through the ansatz phi = x^{beta+1} e^{-lambda x^2/2} v(lambda x^2)
with alpha = beta(beta+1).  Two quantization conditions terminate the Kummer
series; both admissible (condition, beta) pairs assemble the same functions
and the same spectrum.  Normalization constants are recomputed from the
closed-form integral of Gaussian-weighted Kummer products rather than
hard-coded, which turns the algebra into something testable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import PhysicalParams
from .specfun import KummerParams, bessel_j1, gamma_fn, kummer_1f1, pochhammer

__all__ = [
    "BRANCH_FIRST",
    "BRANCH_SECOND",
    "ScatteringState",
    "KummerReduction",
    "AnalyticEigenstate",
    "free_eigenfunction",
    "free_energy",
    "ho_energy",
    "ho_eigenfunction",
    "normalization_constant",
    "landau_integral",
    "quantization_energies",
]

BRANCH_FIRST = "first-condition"  # beta = +1/2
BRANCH_SECOND = "second-condition"  # beta = -3/2

_BRANCH_BETA = {BRANCH_FIRST: 0.5, BRANCH_SECOND: -1.5}


def _check_branch(branch: str) -> float:
    if branch not in _BRANCH_BETA:
        raise ValueError(f"branch must be one of {sorted(_BRANCH_BETA)}, got {branch!r}")
    return _BRANCH_BETA[branch]


# ---------------------------------------------------------------------------
# free particle
# ---------------------------------------------------------------------------


def free_eigenfunction(k: float, x):
    """Continuum eigenfunction phi_k(x) = (kx)^{1/2} J1(kx); zero at x = 0."""
    if k <= 0.0:
        raise ValueError(f"wavenumber k must be > 0, got {k}")
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0.0):
        raise ValueError("free_eigenfunction requires x >= 0")
    kx = k * arr
    out = np.sqrt(kx) * bessel_j1(kx)
    if arr.ndim == 0:
        return float(out)
    return out


def free_energy(k: float, params: PhysicalParams) -> float:
    """Continuum energy E_k = k^2 hbar^2 / (2 m)."""
    if k <= 0.0:
        raise ValueError(f"wavenumber k must be > 0, got {k}")
    return k**2 * params.hbar**2 / (2.0 * params.mass)


@dataclass(frozen=True)
class ScatteringState:
    """Free-particle continuum state of wavenumber k > 0."""

    k: float
    energy: float

    @classmethod
    def build(cls, k: float, params: PhysicalParams) -> "ScatteringState":
        return cls(k=k, energy=free_energy(k, params))

    def __post_init__(self):
        if self.k <= 0.0 or self.energy <= 0.0:
            raise ValueError("scattering states require k > 0 and energy > 0")

    def evaluate(self, x):
        return free_eigenfunction(self.k, x)


# ---------------------------------------------------------------------------
# half harmonic oscillator
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KummerReduction:
    """Bookkeeping of the reduction to Kummer's equation.

    beta solves alpha = beta(beta+1) with alpha = 3/4, so beta is exactly
    +1/2 or -3/2; the Kummer second parameter is c = beta + 3/2, the first
    is (beta + 3/2)/2 - mu/2 with mu = k^2/(2 lambda), and the argument is
    y = lambda x^2.
    """

    beta: float
    mu: float
    gamma_c: float
    y: float

    def __post_init__(self):
        if abs(self.beta * (self.beta + 1.0) - 0.75) > 1e-12:
            raise ValueError(f"beta must solve beta(beta+1) = 3/4, got {self.beta}")
        if abs(self.gamma_c - (self.beta + 1.5)) > 1e-12:
            raise ValueError("gamma_c must equal beta + 3/2")

    @classmethod
    def build(cls, beta: float, k2: float, lam: float, x: float) -> "KummerReduction":
        return cls(beta=beta, mu=k2 / (2.0 * lam), gamma_c=beta + 1.5, y=lam * x**2)


def ho_energy(n: int, params: PhysicalParams) -> float:
    """Bound-state energy E_n = 2(n+1) hbar omega, n = 0, 1, 2, ..."""
    if n < 0 or n != int(n):
        raise ValueError(f"n must be a nonnegative integer, got {n}")
    return 2.0 * (n + 1) * params.quantum


def landau_integral(n: int, m: int, gamma: float, rate: float) -> float:
    """Closed form of int_0^inf x^{2 gamma - 1} e^{-rate x^2} 1F1(-n; gamma, rate x^2) 1F1(-m; gamma, rate x^2) dx.

    Equals (1/2) n! Gamma(gamma) / (rate^gamma (gamma)_n) when n = m and
    vanishes otherwise.  This generalizes the standard Gaussian-weighted
    Laguerre orthogonality integral; the exponential-rate parameter is
    called ``rate`` to avoid colliding with the ansatz exponent beta.
    """
    if n < 0 or m < 0 or n != int(n) or m != int(m):
        raise ValueError("n and m must be nonnegative integers")
    if gamma <= 0.0:
        raise ValueError(f"gamma must be > 0, got {gamma}")
    if rate <= 0.0:
        raise ValueError(f"rate must be > 0, got {rate}")
    if n != m:
        return 0.0
    return 0.5 * gamma_fn(n + 1.0) * gamma_fn(gamma) / (rate**gamma * pochhammer(gamma, n))


def normalization_constant(n: int, branch: str, params: PhysicalParams) -> float:
    """Normalization constant of phi_n, computed from the closed-form integral.

    The first condition assembles phi_n = A_n x^{3/2} e^{-lambda x^2/2}
    1F1(-n,2,lambda x^2); the second carries an explicit lambda prefactor,
    phi_n = lambda B_n x^{3/2} (...), so B_n = A_n / lambda.  Evaluating the
    normalization integral gives A_n = lambda sqrt(2(n+1)) and
    B_n = sqrt(2(n+1)).
    """
    _check_branch(branch)
    if n < 0 or n != int(n):
        raise ValueError(f"n must be a nonnegative integer, got {n}")
    lam = params.lam
    if lam <= 0.0:
        raise ValueError("normalization requires omega > 0")
    a_n = 1.0 / math.sqrt(landau_integral(n, n, 2.0, lam))
    if branch == BRANCH_FIRST:
        return a_n
    return a_n / lam


def ho_eigenfunction(n: int, branch: str, params: PhysicalParams, x):
    """Bound-state eigenfunction phi_n(x) for x > 0.

    Both quantization branches produce the identical function: the second
    condition's constant carries the lambda prefactor that the first
    condition's constant absorbs.
    """
    beta = _check_branch(branch)
    if n < 0 or n != int(n):
        raise ValueError(f"n must be a nonnegative integer, got {n}")
    lam = params.lam
    if lam <= 0.0:
        raise ValueError("bound states require omega > 0")
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0.0):
        raise ValueError("ho_eigenfunction requires x > 0")
    y = lam * arr**2
    # exponent beta + 1 is 3/2 on the first branch and -beta = 3/2 on the
    # second; both reduce to x^{3/2}
    poly = kummer_1f1(KummerParams(a=-float(n), c=beta + 1.5 if branch == BRANCH_FIRST else 0.5 - beta), y)
    body = arr**1.5 * np.exp(-0.5 * y) * poly
    const = normalization_constant(n, branch, params)
    if branch == BRANCH_SECOND:
        const = lam * const
    out = const * body
    if arr.ndim == 0:
        return float(out)
    return out


def quantization_energies(branch: str, beta: float, count: int, params: PhysicalParams | None = None):
    """First ``count`` energies of an admissible (branch, beta) pair.

    The first condition requires beta = +1/2 and gives E_n = (2n + beta +
    3/2) hbar omega; the second requires beta = -3/2 and gives E_n = (2n -
    beta + 1/2) hbar omega.  Both evaluate to 2(n+1) hbar omega.  The
    crossed pairs are rejected: they lead to 1F1 with c a nonpositive
    integer, where the function is undefined.  With params omitted the
    energies are returned in units of hbar omega.
    """
    _check_branch(branch)
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    expected = _BRANCH_BETA[branch]
    if abs(beta - expected) > 1e-12:
        raise ValueError(
            f"inadmissible pair: branch {branch!r} requires beta = {expected}, got {beta}"
        )
    quantum = 1.0 if params is None else params.quantum
    if branch == BRANCH_FIRST:
        return [(2.0 * n + beta + 1.5) * quantum for n in range(count)]
    return [(2.0 * n - beta + 0.5) * quantum for n in range(count)]


@dataclass(frozen=True)
class AnalyticEigenstate:
    """Bound state of the half oscillator: index, branch, constant, energy."""

    n: int
    branch: str
    beta: float
    norm_constant: float
    energy: float
    params: PhysicalParams

    @classmethod
    def build(cls, n: int, branch: str, params: PhysicalParams) -> "AnalyticEigenstate":
        beta = _check_branch(branch)
        return cls(
            n=n,
            branch=branch,
            beta=beta,
            norm_constant=normalization_constant(n, branch, params),
            energy=ho_energy(n, params),
            params=params,
        )

    def evaluate(self, x):
        return ho_eigenfunction(self.n, self.branch, self.params, x)
