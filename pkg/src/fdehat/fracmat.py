"""Operational matrices of Riemann-Liouville fractional integration.

For a hat basis ``psi_0..psi_n`` the matrix ``P`` has entry ``P[k, j]`` equal
to the fractional integral of order ``alpha`` of ``psi_k`` evaluated at node
``t_j``. Applying it to a coefficient vector therefore yields the node values
of the fractional integral of the expansion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import mpmath
import numpy as np

from . import kernels
from .basis import BasisKind, Grid
from .errors import DimensionError, DomainError

# g = 7, nine terms: ~15 significant digits for real arguments
_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
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
_SQRT_2PI = math.sqrt(2.0 * math.pi)


def gamma_fn(x: float) -> float:
    """Euler gamma function for ``x > 0`` (Lanczos approximation)."""
    x = float(x)
    if not x > 0.0 or not math.isfinite(x):
        raise DomainError(f"gamma_fn is only defined here for finite x > 0, got {x!r}")
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * gamma_fn(1.0 - x))
    x -= 1.0
    acc = _LANCZOS_COEFFS[0]
    for k in range(1, len(_LANCZOS_COEFFS)):
        acc += _LANCZOS_COEFFS[k] / (x + k)
    t = x + _LANCZOS_G + 0.5
    return _SQRT_2PI * t ** (x + 0.5) * math.exp(-t) * acc


# The closed-form entries are differences of powers that cancel to several
# orders of magnitude at large index, so the sequences are evaluated in a
# private 32-digit context and rounded once.
_HP = mpmath.MPContext()
_HP.dps = 32


def _pw(x, e):
    return _HP.zero if x == 0 else _HP.power(x, e)


def _to_array(values) -> np.ndarray:
    out = np.array([float(v) for v in values], dtype=np.float64)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=64)
def ghf_sequences(n: int, alpha: float):
    """``(zeta, rho)`` with ``zeta[i]``, i = 1..n and ``rho[i]``, i = 1..n-1.

    Index 0 of each array is a zero placeholder.
    """
    a = _HP.mpf(alpha)
    p = a + 1
    zeta = [_HP.zero] + [_pw(i, a) * (a - i + 1) + _pw(i - 1, p) for i in range(1, n + 1)]
    rho = [_HP.zero] + [_pw(i + 1, p) - 2 * _pw(i, p) + _pw(i - 1, p) for i in range(1, n)]
    return _to_array(zeta), _to_array(rho)


@lru_cache(maxsize=64)
def mhf_sequences(n: int, alpha: float):
    """``(beta, eta, xi)`` sequences of the modified-hat matrix.

    ``beta[i]`` for i = 1..n (index 0 is a placeholder), ``eta[i]`` for
    i = 0..n-1, and ``xi[i + 1]`` for i = -1..n-2 (shifted by one so the
    ``xi_{-1}`` term sits at index 0).
    """
    a = _HP.mpf(alpha)
    p = a + 1
    beta = [_HP.zero, a * (3 + 2 * a)]
    for i in range(2, n + 1):
        beta.append(_pw(i, p) * (2 * i - 6 - 3 * a) + 2 * _pw(i, a) * (1 + a) * (2 + a)
                    - _pw(i - 2, p) * (2 * i - 2 + a))
    eta = [4 * (1 + a)]
    for i in range(1, n):
        eta.append(4 * (_pw(i - 1, p) * (i + 1 + a) - _pw(i + 1, p) * (i - 1 - a)))
    xi = [-a, _pw(2, p) * (2 - a), _pw(3, p) * (4 - a) - 6 * (2 + a)]
    for i in range(2, n - 1):
        xi.append(_pw(i + 2, p) * (2 * i + 2 - a) - 6 * _pw(i, p) * (2 + a)
                  - _pw(i - 2, p) * (2 * i - 2 + a))
    return _to_array(beta[:n + 1]), _to_array(eta[:n]), _to_array(xi[:n])


@dataclass(frozen=True)
class OperationalMatrix:
    grid: Grid
    alpha: float
    entries: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        return self.grid.n + 1


def _check_alpha(alpha) -> float:
    alpha = float(alpha)
    if not alpha > 0.0 or not math.isfinite(alpha):
        raise DomainError(f"alpha must be positive, got {alpha!r}")
    return alpha


def _frozen(grid, alpha, entries) -> OperationalMatrix:
    entries.setflags(write=False)
    return OperationalMatrix(grid, alpha, entries)


def op_matrix_ghf(grid: Grid, alpha: float) -> OperationalMatrix:
    if grid.kind is not BasisKind.GHF:
        raise DomainError("op_matrix_ghf needs a GHF grid")
    alpha = _check_alpha(alpha)
    zeta, rho = ghf_sequences(grid.n, alpha)
    scale = grid.h ** alpha / gamma_fn(alpha + 2.0)
    return _frozen(grid, alpha, kernels.fill_ghf(zeta, rho, scale))


def op_matrix_mhf(grid: Grid, alpha: float) -> OperationalMatrix:
    if grid.kind is not BasisKind.MHF:
        raise DomainError("op_matrix_mhf needs an MHF grid")
    alpha = _check_alpha(alpha)
    beta, eta, xi = mhf_sequences(grid.n, alpha)
    scale = grid.h ** alpha / (2.0 * gamma_fn(alpha + 3.0))
    return _frozen(grid, alpha, kernels.fill_mhf(beta, eta, xi, scale))


def op_matrix(grid: Grid, alpha: float) -> OperationalMatrix:
    if grid.kind is BasisKind.GHF:
        return op_matrix_ghf(grid, alpha)
    return op_matrix_mhf(grid, alpha)


def apply_integration(P: OperationalMatrix, coeffs) -> np.ndarray:
    """Node values of the fractional integral of the expansion ``coeffs``."""
    c = np.asarray(coeffs, dtype=np.float64)
    if c.shape != (P.size,):
        raise DimensionError(f"expected {P.size} coefficients, got shape {c.shape}")
    return c @ P.entries


# --------------------------------------------------------------------------
# quadrature oracle
# --------------------------------------------------------------------------

_GRADING = 10


@lru_cache(maxsize=16)
def _gauss_legendre(points: int):
    return np.polynomial.legendre.leggauss(points)


def _sample(y, s: np.ndarray) -> np.ndarray:
    try:
        vals = np.asarray(y(s), dtype=np.float64)
        if vals.shape == s.shape:
            return vals
    except Exception:
        pass
    return np.array([float(y(float(v))) for v in s])


def rl_integral_oracle(y, alpha: float, t: float, points: int = 64,
                       panels: int = 4, breakpoints=None) -> float:
    """Riemann-Liouville integral ``(I^alpha y)(t)`` by quadrature.

    The substitution ``u = (t - s)**alpha`` turns the weakly singular kernel
    into a constant, leaving ``(1/Gamma(alpha+1)) * int_0^{t^alpha}
    y(t - u**(1/alpha)) du``, which is integrated with composite
    Gauss-Legendre rules of ``points`` nodes on ``panels`` equal panels.
    ``breakpoints`` are abscissae in ``s`` where ``y`` has a kink; each one
    becomes an extra panel boundary so every panel sees a smooth integrand.
    The panel touching ``u = 0`` is further refined geometrically, because the
    map ``u -> u**(1/alpha)`` has a weak endpoint singularity of its own.
    """
    alpha = float(alpha)
    t = float(t)
    if not alpha > 0.0:
        raise DomainError(f"alpha must be positive, got {alpha!r}")
    if not t >= 0.0:
        raise DomainError(f"t must be non-negative, got {t!r}")
    if points < 8 or panels < 1:
        raise DomainError("need at least 8 quadrature points and one panel")
    if t == 0.0:
        return 0.0
    upper = t ** alpha
    cuts = {0.0, upper}
    for b in breakpoints if breakpoints is not None else ():
        if 0.0 < b < t:
            cuts.add((t - b) ** alpha)
    cuts = np.array(sorted(cuts))
    edges = np.concatenate([np.linspace(lo, hi, panels + 1)[:-1]
                            for lo, hi in zip(cuts[:-1], cuts[1:])] + [cuts[-1:]])
    # s = t - u**(1/alpha) is only finitely smooth at u = 0 when 1/alpha is
    # not an integer, so the first panel is split geometrically toward 0
    if _GRADING and (1.0 / alpha) != round(1.0 / alpha):
        first = edges[1] * 0.5 ** np.arange(_GRADING, 0, -1)
        edges = np.concatenate([edges[:1], first, edges[1:]])
    x, w = _gauss_legendre(int(points))
    lo, hi = edges[:-1, None], edges[1:, None]
    u = 0.5 * (hi - lo) * x[None, :] + 0.5 * (hi + lo)
    weights = 0.5 * (hi - lo) * w[None, :]
    s = t - u.ravel() ** (1.0 / alpha)
    vals = _sample(y, np.clip(s, 0.0, t))
    return float(np.sum(weights.ravel() * vals)) / math.gamma(alpha + 1.0)
