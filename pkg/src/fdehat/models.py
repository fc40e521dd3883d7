"""Built-in problems: two systems with known solutions and a seasonal SEIRS model."""

from __future__ import annotations

import math
from dataclasses import astuple, dataclass, fields

import numpy as np

from .errors import DomainError
from .solver import FDEProblem

SQRT_PI = math.sqrt(math.pi)
# Caputo half-derivatives of t^2.5 and t^3 carry these factors
C_EX1_Y1 = 15.0 * SQRT_PI / 16.0
C_EX1_Y2 = 16.0 / (5.0 * SQRT_PI)


def example1() -> FDEProblem:
    """Nonlinear pair of order 1/2 on [0, 1] with solution (t^2.5, t^3)."""

    def f1(t, y):
        return math.sqrt(t) * y[0] - y[1] + C_EX1_Y1 * t * t

    def f2(t, y):
        return C_EX1_Y2 * y[0] + y[1] * y[1] - t ** 6

    return FDEProblem(
        alpha=0.5, tau=1.0, rhs=(f1, f2), y0=(0.0, 0.0),
        exact=(lambda t: t ** 2.5, lambda t: t ** 3),
        name="example1",
    )


def example2(alpha: float = 1.0) -> FDEProblem:
    """Linear forced pair on [0, 10]; the exact solution is known only for alpha = 1."""
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha!r}")

    def f1(t, y):
        return y[0] - 2.0 * y[1] + 4.0 * math.cos(t) - 2.0 * math.sin(t)

    def f2(t, y):
        return 3.0 * y[0] - 4.0 * y[1] + 5.0 * math.cos(t) - 5.0 * math.sin(t)

    exact = None
    if alpha == 1.0:
        exact = (lambda t: math.cos(t) + math.sin(t), lambda t: 2.0 * math.cos(t))
    return FDEProblem(alpha=float(alpha), tau=10.0, rhs=(f1, f2), y0=(1.0, 2.0),
                      exact=exact, name="example2")


@dataclass(frozen=True)
class SeirsParams:
    """Rates are per year. Defaults are a seasonal RSV calibration."""

    mu: float = 0.0113
    nu: float = 36.0
    gamma_r: float = 1.8
    epsilon: float = 91.0
    b0: float = 88.25
    b1: float = 0.17
    c1: float = 0.17
    phi: float = math.pi / 2
    alpha: float = 0.993

    def __post_init__(self):
        for name in ("mu", "nu", "gamma_r", "epsilon", "b0"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0.0):
                raise DomainError(f"{name} must be a non-negative rate, got {v!r}")
        for name in ("b1", "c1"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise DomainError(f"{name} must lie in [0, 1], got {v!r}")
        if not math.isfinite(self.phi):
            raise DomainError(f"phi must be finite, got {self.phi!r}")
        if not 0.0 < self.alpha <= 1.0:
            raise DomainError(f"alpha must lie in (0, 1], got {self.alpha!r}")


@dataclass(frozen=True)
class SeirsState:
    S: float = 0.4081
    E: float = 0.0110
    I: float = 0.0278
    R: float = 0.5531

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not (math.isfinite(v) and v >= 0.0):
                raise DomainError(f"initial {f.name} must be non-negative, got {v!r}")

    def as_array(self) -> np.ndarray:
        return np.array(astuple(self), dtype=np.float64)


SEIRS_LABELS = ("S", "E", "I", "R")


def seirs_beta(p: SeirsParams, t: float) -> float:
    return p.b0 * (1.0 + p.b1 * math.cos(2.0 * math.pi * t + p.phi))


def seirs_lambda(p: SeirsParams, t: float) -> float:
    return p.mu * (1.0 + p.c1 * math.cos(2.0 * math.pi * t + p.phi))


def seirs_problem(p: SeirsParams | None = None, y0: SeirsState | None = None,
                  tau: float = 5.0) -> FDEProblem:
    p = p or SeirsParams()
    y0 = y0 or SeirsState()

    def f_s(t, y):
        return seirs_lambda(p, t) - p.mu * y[0] - seirs_beta(p, t) * y[0] * y[2] + p.gamma_r * y[3]

    def f_e(t, y):
        return seirs_beta(p, t) * y[0] * y[2] - (p.mu + p.epsilon) * y[1]

    def f_i(t, y):
        return p.epsilon * y[1] - (p.mu + p.nu) * y[2]

    def f_r(t, y):
        return p.nu * y[2] - (p.mu + p.gamma_r) * y[3]

    return FDEProblem(alpha=p.alpha, tau=float(tau), rhs=(f_s, f_e, f_i, f_r),
                      y0=y0.as_array(), name="seirs", params=astuple(p))


BUILTIN_MODELS = ("example1", "example2", "seirs")
