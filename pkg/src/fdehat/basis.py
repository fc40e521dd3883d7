"""Generalised (piecewise-linear) and modified (piecewise-quadratic) hat bases.

Both families live on a uniform partition of ``[0, tau]`` into ``n``
subintervals of width ``h = tau / n`` and are cardinal at the nodes, so the
coefficients of an expansion are simply the sampled node values.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import DimensionError, DomainError, ParityError

_SNAP = 8.0 * np.finfo(np.float64).eps
_EDGE_SLACK = 1e-12


class BasisKind(enum.Enum):
    GHF = "ghf"
    MHF = "mhf"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise DomainError(f"unknown basis {value!r}; expected 'ghf' or 'mhf'") from None

    @property
    def quadratic(self) -> bool:
        return self is BasisKind.MHF


@dataclass(frozen=True)
class Grid:
    tau: float
    n: int
    kind: BasisKind

    @property
    def h(self) -> float:
        return self.tau / self.n

    @property
    def nodes(self) -> np.ndarray:
        return np.arange(self.n + 1) * self.h

    def node(self, j: int) -> float:
        return j * self.h

    def check_t(self, t: float) -> float:
        """Validate a time point, absorbing round-off just past either end."""
        t = float(t)
        slack = _EDGE_SLACK * self.tau
        if not (-slack <= t <= self.tau + slack):
            raise DomainError(f"t={t!r} outside [0, {self.tau}]")
        return min(max(t, 0.0), self.tau)


def make_grid(tau: float, n: int, kind: BasisKind | str) -> Grid:
    kind = BasisKind.parse(kind)
    tau = float(tau)
    if not np.isfinite(tau) or tau <= 0.0:
        raise DomainError(f"tau must be positive, got {tau!r}")
    if int(n) != n or n < 1:
        raise DomainError(f"n must be an integer >= 1, got {n!r}")
    n = int(n)
    if kind is BasisKind.MHF and n % 2:
        raise ParityError(
            f"modified hat functions need an even number of subintervals, got n={n}")
    return Grid(tau, n, kind)


def _scaled(grid: Grid, t: float) -> float:
    s = grid.check_t(t) / grid.h
    k = round(s)
    if abs(s - k) <= _SNAP * max(1.0, s):
        return float(k)
    return s


def eval_hat(grid: Grid, i: int, t: float) -> float:
    """Value of the ``i``-th basis function of ``grid`` at ``t``."""
    n = grid.n
    if int(i) != i or not 0 <= i <= n:
        raise DomainError(f"basis index {i!r} outside 0..{n}")
    i = int(i)
    s = _scaled(grid, t)
    if grid.kind is BasisKind.GHF:
        # right-hand piece wins at the shared knot
        if i < n and i <= s <= i + 1:
            return (i + 1) - s
        if i > 0 and i - 1 <= s <= i:
            return s - (i - 1)
        return 0.0
    if i == 0:
        return 0.5 * (s - 1.0) * (s - 2.0) if s <= 2.0 else 0.0
    if i % 2 == 1:
        if i - 1 <= s <= i + 1:
            return -(s - (i - 1)) * (s - (i + 1))
        return 0.0
    if i < n and i <= s <= i + 2:
        return 0.5 * (s - (i + 1)) * (s - (i + 2))
    if i - 2 <= s <= i:
        return 0.5 * (s - (i - 1)) * (s - (i - 2))
    return 0.0


@dataclass(frozen=True)
class HatExpansion:
    grid: Grid
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.float64)
        if c.shape != (self.grid.n + 1,):
            raise DimensionError(
                f"expected {self.grid.n + 1} coefficients, got shape {c.shape}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    def __call__(self, t):
        return eval_expansion(self, t)


def interpolate(grid: Grid, y) -> HatExpansion:
    return HatExpansion(grid, [float(y(grid.node(j))) for j in range(grid.n + 1)])


def eval_expansion(exp: HatExpansion, t):
    """Evaluate ``sum_i coeffs[i] * psi_i(t)`` for a scalar or array ``t``.

    Only the two (linear) or three (quadratic) basis functions whose support
    contains ``t`` contribute; the containing cell is found by index
    arithmetic rather than a search.
    """
    scalar = np.ndim(t) == 0
    ts = _check_times(exp.grid, t)
    out = kernels.eval_expansions(exp.coeffs[None, :], exp.grid.h,
                                  exp.grid.kind.quadratic, ts)[0]
    return float(out[0]) if scalar else out


def eval_many(grid: Grid, coeffs: np.ndarray, t) -> np.ndarray:
    """Evaluate several expansions sharing ``grid``; ``coeffs`` is ``(r, n+1)``."""
    coeffs = np.ascontiguousarray(coeffs, dtype=np.float64)
    if coeffs.ndim != 2 or coeffs.shape[1] != grid.n + 1:
        raise DimensionError(f"coefficient block of shape {coeffs.shape} does not fit n={grid.n}")
    return kernels.eval_expansions(coeffs, grid.h, grid.kind.quadratic,
                                   _check_times(grid, t))


def hat_function(grid: Grid, i: int):
    """Array-friendly callable for the ``i``-th basis function."""
    if not 0 <= i <= grid.n:
        raise DomainError(f"basis index {i!r} outside 0..{grid.n}")
    unit = np.zeros(grid.n + 1)
    unit[i] = 1.0
    return HatExpansion(grid, unit)


def _check_times(grid: Grid, t) -> np.ndarray:
    ts = np.atleast_1d(np.asarray(t, dtype=np.float64)).ravel()
    slack = _EDGE_SLACK * grid.tau
    if ts.size and (not np.all(np.isfinite(ts)) or ts.min() < -slack
                    or ts.max() > grid.tau + slack):
        raise DomainError(f"time points must lie in [0, {grid.tau}]")
    return np.ascontiguousarray(np.clip(ts, 0.0, grid.tau))
