"""Self-contained special functions and quadrature.

Everything the closed-form eigenstates need, with no dependency beyond
numpy: the gamma function for positive arguments, Pochhammer symbols,
the Bessel function J1 and its positive zeros, the terminating
confluent hypergeometric function 1F1(-n, c, y), and Gauss-Legendre /
uniform quadrature rules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "KummerParams",
    "QuadratureRule",
    "gamma_fn",
    "pochhammer",
    "bessel_j1",
    "bessel_j1_zero",
    "kummer_1f1",
    "laguerre_l1",
    "build_quadrature",
]


# ---------------------------------------------------------------------------
# gamma / Pochhammer
# ---------------------------------------------------------------------------

# Lanczos approximation, g = 7, 9 terms.  Relative error below 3e-14 for
# z > 0 (checked against 30-digit reference values on (0, 50]).
_LANCZOS_G = 7.0
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma_fn(z: float) -> float:
    """Gamma function for z > 0.

    Positive integers are evaluated as exact factorials; everything else
    goes through a fixed-coefficient Lanczos sum.  Arguments in (0, 1/2)
    are shifted up with Gamma(z) = Gamma(z+1)/z rather than reflected, so
    no trigonometric reflection is ever needed.

    Raises
    ------
    ValueError
        If z <= 0.
    """
    z = float(z)
    if z <= 0.0:
        raise ValueError(f"gamma_fn requires z > 0, got {z}")
    if z == math.floor(z) and z <= 171.0:
        return float(math.factorial(int(z) - 1))
    if z < 0.5:
        return gamma_fn(z + 1.0) / z
    w = z - 1.0
    acc = _LANCZOS_C[0]
    for i in range(1, len(_LANCZOS_C)):
        acc += _LANCZOS_C[i] / (w + i)
    t = w + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (w + 0.5) * math.exp(-t) * acc


def pochhammer(g: float, n: int) -> float:
    """Rising factorial (g)_n = g (g+1) ... (g+n-1), with (g)_0 = 1.

    Computed as the explicit product, which is exact for the small n that
    occur in bound-state normalizations.  Requires g > 0 and n >= 0.
    """
    if g <= 0.0:
        raise ValueError(f"pochhammer requires g > 0, got {g}")
    if n < 0 or n != int(n):
        raise ValueError(f"pochhammer requires integer n >= 0, got {n}")
    out = 1.0
    for i in range(int(n)):
        out *= g + i
    return out


# ---------------------------------------------------------------------------
# Bessel J1
# ---------------------------------------------------------------------------

_J1_CROSSOVER = 9.0
_J1_SERIES_TERMS = 30

# Large-argument Hankel form: J1(x) = sqrt(2/(pi x)) (P cos(chi) - Q sin(chi))
# with chi = x - 3 pi / 4.  P and x*Q are smooth functions of t = (8/x)^2 on
# [0, 1]; the Chebyshev coefficients below (in s = 2t - 1) were fitted against
# 40-digit reference values of J1 and Y1.  Max abs error of the assembled J1
# is 4e-14 over x >= 8.
_J1_FIT_SCALE = 8.0
_THREE_PI_4 = 2.356194490192344928846982537459627163

_J1_ASYM_P = (
    1.0009030408600137, 0.0008989898330859408, -3.987284300488908e-06,
    6.177633960644299e-08, -1.8718907491063005e-09, 8.81689865958012e-11,
    -5.704863640312135e-12, 4.699195511971488e-13, -4.6842236516879917e-14,
    5.4526692893914976e-15, -7.220931799593593e-16, 1.065603854257966e-16,
    -1.6735071050617454e-17,
)
_J1_ASYM_XQ = (
    0.3742222965562826, -0.0007702178839325664, 7.3108922063643636e-06,
    -1.6767825107266737e-07, 6.5833546621203705e-09, -3.7490909505389723e-10,
    2.81217503588047e-11, -2.6114525358910222e-12, 2.877421126095661e-13,
    -3.648996180387058e-14, 5.206381106903487e-15, -8.204305408270649e-16,
    1.3619157898244473e-16,
)


def _clenshaw(coeffs, s):
    """Evaluate a Chebyshev series at s (array-safe) via Clenshaw recurrence."""
    b1 = np.zeros_like(s)
    b2 = np.zeros_like(s)
    for ck in coeffs[:0:-1]:
        b1, b2 = 2.0 * s * b1 - b2 + ck, b1
    return s * b1 - b2 + coeffs[0]


def _j1_series(x):
    """Ascending power series for J1; accurate to ~1e-13 up to x ~ 10."""
    x = np.asarray(x, dtype=float)
    q = 0.25 * x * x
    term = 0.5 * x
    out = term.copy()
    for j in range(1, _J1_SERIES_TERMS):
        term = term * (-q) / (j * (j + 1))
        out = out + term
    return out


def _j1_asymptotic(x):
    """Hankel large-argument form of J1, valid for x >= 8."""
    x = np.asarray(x, dtype=float)
    s = 2.0 * (_J1_FIT_SCALE / x) ** 2 - 1.0
    p = _clenshaw(_J1_ASYM_P, s)
    q = _clenshaw(_J1_ASYM_XQ, s) / x
    chi = x - _THREE_PI_4
    return np.sqrt(2.0 / (np.pi * x)) * (p * np.cos(chi) - q * np.sin(chi))


def bessel_j1(x):
    """Bessel function of the first kind, order one.

    Power series below the crossover at x = 9, Hankel asymptotic form with
    fitted modulus functions above it; the two branches agree to better than
    1e-12 at the seam.  Accepts scalars or arrays; odd symmetry is applied
    for negative arguments.
    """
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    sign = np.where(arr < 0.0, -1.0, 1.0)
    ax = np.abs(arr)
    out = np.empty_like(ax)
    lo = ax < _J1_CROSSOVER
    if lo.any():
        out[lo] = _j1_series(ax[lo])
    hi = ~lo
    if hi.any():
        out[hi] = _j1_asymptotic(ax[hi])
    out *= sign
    if scalar:
        return float(out[0])
    return out.reshape(np.shape(x))


def bessel_j1_zero(j: int) -> float:
    """j-th positive zero of J1 (j >= 1), by bracketing and bisection.

    The McMahon estimate (j + 1/4) pi - 3 / (8 (j + 1/4) pi) seeds a
    bracket of half-width 0.5, which always isolates a single zero since
    consecutive zeros are separated by more than pi.
    """
    if j < 1 or j != int(j):
        raise ValueError(f"bessel_j1_zero requires integer j >= 1, got {j}")
    beta = (int(j) + 0.25) * math.pi
    guess = beta - 3.0 / (8.0 * beta)
    lo, hi = guess - 0.5, guess + 0.5
    flo, fhi = bessel_j1(lo), bessel_j1(hi)
    if flo * fhi > 0.0:  # never seen for j >= 1; widen defensively
        lo, hi = guess - 0.8, guess + 0.8
        flo, fhi = bessel_j1(lo), bessel_j1(hi)
    assert flo * fhi < 0.0, f"failed to bracket J1 zero #{j}"
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo < 1e-13 or not (lo < mid < hi):
            break
        fmid = bessel_j1(mid)
        if flo * fmid <= 0.0:
            hi = mid
        else:
            lo, flo = mid, fmid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# Terminating confluent hypergeometric function
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KummerParams:
    """Parameters (a, c) of 1F1(a, c, y) restricted to the terminating case.

    Only a = -n with integer n >= 0 is supported: those are the parameter
    values at which the series ends after n+1 terms and the function is a
    polynomial.  c must not be zero or a negative integer, where 1F1 is
    undefined.
    """

    a: float
    c: float
    terminating: bool = True

    def __post_init__(self):
        if self.c <= 0.0 and self.c == math.floor(self.c):
            raise ValueError(
                f"1F1 is undefined for c = {self.c} (zero or negative integer)"
            )
        if self.terminating:
            n = -self.a
            if n < 0.0 or abs(n - round(n)) > 1e-9:
                raise ValueError(
                    f"terminating 1F1 requires a = -n with integer n >= 0, got a = {self.a}"
                )

    @property
    def degree(self) -> int:
        """Polynomial degree n of the terminating series."""
        return int(round(-self.a))


def kummer_1f1(p: KummerParams, y):
    """Terminating 1F1(-n, c, y) evaluated as a Horner polynomial.

    The series 1 + (a/c) y + a(a+1)/(c(c+1)) y^2/2! + ... ends after n+1
    terms when a = -n; the coefficients are built by recurrence and the
    polynomial evaluated in Horner form.  Non-terminating parameters are
    rejected.  Accepts scalar or array y.
    """
    if not p.terminating:
        raise ValueError("only terminating 1F1 is supported (a must be -n)")
    n = p.degree
    coeffs = [1.0]
    for j in range(n):
        coeffs.append(coeffs[-1] * (p.a + j) / ((p.c + j) * (j + 1.0)))
    arr = np.asarray(y, dtype=float)
    scalar = arr.ndim == 0
    acc = np.full_like(np.atleast_1d(arr), coeffs[-1])
    for ck in coeffs[-2::-1]:
        acc = acc * np.atleast_1d(arr) + ck
    if scalar:
        return float(acc[0])
    return acc.reshape(np.shape(y))


def laguerre_l1(n: int, y):
    """Associated Laguerre polynomial L_n^(1)(y) by three-term recurrence.

    Independent evaluation path for the terminating Kummer function through
    1F1(-n, 2, y) = n! L_n^(1)(y) / (2)_n.
    """
    if n < 0 or n != int(n):
        raise ValueError(f"laguerre_l1 requires integer n >= 0, got {n}")
    arr = np.asarray(y, dtype=float)
    lm1 = np.ones_like(arr)
    if n == 0:
        return lm1 if arr.ndim else 1.0
    lm = 2.0 - arr
    for m in range(1, int(n)):
        lm1, lm = lm, ((2.0 * m + 2.0 - arr) * lm - (m + 1.0) * lm1) / (m + 1.0)
    return lm if arr.ndim else float(lm)


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------

KIND_GAUSS = "gauss-legendre"
KIND_UNIFORM = "uniform"


@dataclass(frozen=True)
class QuadratureRule:
    """Immutable quadrature rule: strictly increasing nodes, positive weights."""

    nodes: np.ndarray
    weights: np.ndarray
    kind: str = KIND_GAUSS

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.shape != weights.shape or nodes.ndim != 1:
            raise ValueError("nodes and weights must be 1-d arrays of equal length")
        if not np.all(np.diff(nodes) > 0.0):
            raise ValueError("quadrature nodes must be strictly increasing")
        if not np.all(weights > 0.0):
            raise ValueError("quadrature weights must be positive")
        nodes.flags.writeable = False
        weights.flags.writeable = False
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    def integrate(self, f) -> float:
        """Apply the rule to a callable f evaluated at the nodes."""
        return float(np.dot(self.weights, f(self.nodes)))


def _legendre_eval(n: int, x: np.ndarray):
    """Legendre polynomial P_n and derivative P_n' by upward recurrence."""
    p0 = np.ones_like(x)
    p1 = x.copy()
    for m in range(2, n + 1):
        p0, p1 = p1, ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m
    dp = n * (x * p1 - p0) / (x * x - 1.0)
    return p1, dp


def build_quadrature(kind: str, npoints: int, domain: tuple[float, float]) -> QuadratureRule:
    """Build a quadrature rule on a finite interval.

    ``gauss-legendre``: nodes are Legendre roots found by Newton iteration
    from the cosine initial guess, then mapped affinely onto the domain;
    exact for polynomials of degree 2*npoints - 1.  ``uniform``: composite
    midpoint rule (truncated-domain workhorse for plotting-grade integrals).
    """
    a, b = float(domain[0]), float(domain[1])
    if not (math.isfinite(a) and math.isfinite(b)) or a >= b:
        raise ValueError(f"domain must be finite with a < b, got {domain}")
    if npoints < 2:
        raise ValueError(f"npoints must be >= 2, got {npoints}")
    if kind == KIND_UNIFORM:
        h = (b - a) / npoints
        nodes = a + (np.arange(npoints) + 0.5) * h
        weights = np.full(npoints, h)
        return QuadratureRule(nodes, weights, kind)
    if kind != KIND_GAUSS:
        raise ValueError(f"unknown quadrature kind {kind!r}")
    k = np.arange(npoints)
    x = np.cos(np.pi * (k + 0.75) / (npoints + 0.5))
    converged = False
    for _ in range(100):
        p1, dp = _legendre_eval(npoints, x)
        dx = p1 / dp
        x = x - dx
        if np.max(np.abs(dx)) < 5e-16:
            converged = True
            break
    assert converged, f"Legendre node iteration failed for npoints={npoints}"
    _, dp = _legendre_eval(npoints, x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    order = np.argsort(x)
    x, w = x[order], w[order]
    nodes = 0.5 * (a + b) + 0.5 * (b - a) * x
    weights = 0.5 * (b - a) * w
    return QuadratureRule(nodes, weights, kind)
