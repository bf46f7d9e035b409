"""Quantum models on the half-line.

Closed-form eigenstates of the free particle and the half harmonic
oscillator with the 3/4 x^-2 spike, a finite-difference eigensolver for the
whole spiked-potential family including the endpoint-shifted oscillator,
and a verification suite cross-checking the two.
"""

__version__ = "0.1.0"

from .analytic import (
    BRANCH_FIRST,
    BRANCH_SECOND,
    AnalyticEigenstate,
    KummerReduction,
    ScatteringState,
    free_eigenfunction,
    free_energy,
    ho_eigenfunction,
    ho_energy,
    landau_integral,
    normalization_constant,
    quantization_energies,
)
from .eigensolve import (
    SpectrumResult,
    TridiagonalOperator,
    build_hamiltonian,
    refine_spectrum,
    solve_spectrum,
    sweep_b,
)
from .model import (
    AFFINE_ALPHA,
    ComplexWavefunction,
    HalfLineGrid,
    PhysicalParams,
    SpikedPotential,
    Wavefunction,
    commutator_residual,
    dilation_apply,
    dilation_generator_apply,
    eval_potential,
    free_particle_potential,
    half_oscillator_potential,
    shifted_oscillator_potential,
)
from .specfun import (
    KummerParams,
    QuadratureRule,
    bessel_j1,
    bessel_j1_zero,
    build_quadrature,
    gamma_fn,
    kummer_1f1,
    laguerre_l1,
    pochhammer,
)
from .verify import (
    ClosureReport,
    ResidualEntry,
    closure_check,
    commutator_report,
    gaussian_bump,
    orthonormality_matrix,
    residual_report,
    standard_bump,
)

__all__ = [
    "__version__",
    "AFFINE_ALPHA",
    "AnalyticEigenstate",
    "BRANCH_FIRST",
    "BRANCH_SECOND",
    "ClosureReport",
    "ComplexWavefunction",
    "HalfLineGrid",
    "KummerParams",
    "KummerReduction",
    "PhysicalParams",
    "QuadratureRule",
    "ResidualEntry",
    "ScatteringState",
    "SpectrumResult",
    "SpikedPotential",
    "TridiagonalOperator",
    "Wavefunction",
    "bessel_j1",
    "bessel_j1_zero",
    "build_hamiltonian",
    "build_quadrature",
    "closure_check",
    "commutator_report",
    "commutator_residual",
    "dilation_apply",
    "dilation_generator_apply",
    "eval_potential",
    "free_eigenfunction",
    "free_energy",
    "free_particle_potential",
    "gamma_fn",
    "gaussian_bump",
    "half_oscillator_potential",
    "ho_eigenfunction",
    "ho_energy",
    "kummer_1f1",
    "laguerre_l1",
    "landau_integral",
    "normalization_constant",
    "orthonormality_matrix",
    "pochhammer",
    "quantization_energies",
    "refine_spectrum",
    "residual_report",
    "shifted_oscillator_potential",
    "solve_spectrum",
    "standard_bump",
    "sweep_b",
]
