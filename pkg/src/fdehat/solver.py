"""Collocation solver for systems of Caputo fractional ODEs of order <= 1.

The Caputo derivative of every component is expanded in the chosen hat
basis, ``D^alpha y_i = sum_j a_ij psi_j``. Fractional integration through the
operational matrix gives the node values ``Y_ij = sum_k a_ik P[k, j] + y_i(0)``
and collocation at the nodes requires ``a_ij = f_i(t_j, Y_1j, ..., Y_mj)``.

Because column ``j`` of ``P`` only involves rows up to ``j`` (linear hats) or
``j + 1`` for odd ``j`` (quadratic hats), the collocation system decouples
into a cascade: ``n`` systems of size ``m`` or ``n/2`` systems of size ``2m``.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import kernels
from .basis import BasisKind, Grid, eval_many, make_grid
from .errors import ConfigurationError, DimensionError, DomainError, NumericalError
from .fracmat import OperationalMatrix, op_matrix
from .newton import NewtonConfig, find_roots, minimize_residual, solve_block_newton

Rhs = Callable[[float, np.ndarray], float]


@dataclass(frozen=True)
class FDEProblem:
    """``D^alpha y_i(t) = rhs[i](t, y)`` on ``[0, tau]`` with ``y(0) = y0``.

    ``rhs`` callables receive the time and the full state vector and return a
    float. ``exact``, when given, holds one callable per component.
    """

    alpha: float
    tau: float
    rhs: Sequence[Rhs]
    y0: np.ndarray
    exact: Sequence[Callable[[float], float]] | None = None
    name: str = "custom"
    params: tuple = field(default=(), compare=False)

    def __post_init__(self):
        y0 = np.array(self.y0, dtype=np.float64).ravel()
        y0.setflags(write=False)
        object.__setattr__(self, "y0", y0)
        object.__setattr__(self, "rhs", tuple(self.rhs))
        if not 0.0 < self.alpha <= 1.0:
            raise DomainError(f"alpha must lie in (0, 1], got {self.alpha!r}")
        if not self.tau > 0.0:
            raise DomainError(f"tau must be positive, got {self.tau!r}")
        if len(self.rhs) != y0.size or y0.size < 1:
            raise DimensionError(
                f"{len(self.rhs)} right-hand sides for {y0.size} initial values")
        if self.exact is not None:
            object.__setattr__(self, "exact", tuple(self.exact))
            if len(self.exact) != y0.size:
                raise DimensionError("exact solution must have one function per component")
            for i, (ex, v) in enumerate(zip(self.exact, y0)):
                if abs(ex(0.0) - v) > 1e-12:
                    raise ConfigurationError(
                        f"exact[{i}](0) = {ex(0.0)!r} differs from y0[{i}] = {v!r}")

    @property
    def m(self) -> int:
        return self.y0.size

    def f(self, t: float, y: np.ndarray) -> np.ndarray:
        return np.array([fi(t, y) for fi in self.rhs], dtype=np.float64)

    def signature(self):
        return (self.name, self.m, float(self.alpha), float(self.tau),
                tuple(self.y0.tolist()), self.params)


@dataclass(frozen=True)
class Solution:
    problem: FDEProblem
    grid: Grid
    matrix: OperationalMatrix = field(repr=False)
    A: np.ndarray = field(repr=False)
    Y: np.ndarray = field(repr=False)
    residual_norm: float
    block_iterations: np.ndarray = field(repr=False)
    runtime_seconds: float = 0.0
    unconverged_blocks: tuple = ()

    @property
    def converged(self) -> bool:
        return not self.unconverged_blocks

    def evaluate(self, t) -> np.ndarray:
        """All components at ``t``; shape ``(m, len(t))``."""
        return eval_many(self.grid, self.Y, t)


def node_values(A, P: OperationalMatrix, y0) -> np.ndarray:
    A = np.ascontiguousarray(A, dtype=np.float64)
    y0 = np.ascontiguousarray(y0, dtype=np.float64).ravel()
    if A.ndim != 2 or A.shape[1] != P.size or A.shape[0] != y0.size:
        raise DimensionError(
            f"coefficients {A.shape} do not fit matrix size {P.size} and {y0.size} components")
    return kernels.node_values(A, np.ascontiguousarray(P.entries), y0,
                               P.grid.kind.quadratic)


def _collocation_rhs(problem: FDEProblem, ts, Y: np.ndarray) -> np.ndarray:
    out = np.empty_like(Y)
    for c, t in enumerate(ts):
        out[:, c] = problem.f(t, Y[:, c])
    return out


def _blocks(grid: Grid):
    if grid.kind is BasisKind.GHF:
        return [[j] for j in range(1, grid.n + 1)]
    return [[j, j + 1] for j in range(1, grid.n, 2)]


def _prepare(problem: FDEProblem, kind, n: int):
    grid = make_grid(problem.tau, n, kind)
    P = op_matrix(grid, problem.alpha)
    a0 = problem.f(0.0, problem.y0)
    if not np.all(np.isfinite(a0)):
        raise DomainError("right-hand side is not finite at t = 0")
    return grid, P, a0


def solve_fde_system(problem: FDEProblem, kind: BasisKind | str, n: int,
                     cfg: NewtonConfig | None = None, select_root: bool = True,
                     best_effort: bool = False) -> Solution:
    """Solve ``problem`` on ``n`` subintervals by the block cascade.

    Each block is started from the previous block's coefficients. Nonlinear
    right-hand sides can give a block several real roots, and on coarse grids
    the warm start may land on a spurious one that later leaves a block with
    no real root at all. With ``select_root`` further roots are sought by
    deflated Newton from the warm start and from the coefficients that keep
    the state at its previous node value; the root with the smallest state
    jump is kept.

    A block with no real root raises, unless ``best_effort`` is set: then the
    least-squares minimiser of its residual is used, the block number is
    listed in ``Solution.unconverged_blocks``, and its iteration count is -1.
    """
    cfg = cfg or NewtonConfig()
    kind = BasisKind.parse(kind)
    grid, P, a0 = _prepare(problem, kind, n)
    start = time.perf_counter()
    m, h, y0 = problem.m, grid.h, problem.y0
    E = P.entries
    A = np.zeros((m, n + 1))
    A[:, 0] = a0
    known = np.outer(a0, E[0])  # contributions of already solved rows
    blocks = _blocks(grid)
    iterations = np.zeros(len(blocks), dtype=np.int64)
    guess = np.repeat(a0[:, None], len(blocks[0]), axis=1)
    y_prev = y0.copy()
    unconverged = []
    for b, cols in enumerate(blocks):
        lo, hi = cols[0], cols[-1] + 1
        local = E[lo:hi, lo:hi]
        base = known[:, lo:hi] + y0[:, None]
        ts = [c * h for c in cols]
        width = hi - lo

        def residual(x, base=base, local=local, ts=ts, width=width):
            X = x.reshape(m, width)
            return (X - _collocation_rhs(problem, ts, base + X @ local)).ravel()

        starts = [guess.ravel()]
        failures = []
        if select_root:
            # coefficients that would leave every state at its previous node value
            starts.append(np.linalg.solve(local.T, (y_prev[:, None] - base).T).T.ravel())
            found = find_roots(residual, starts, cfg, failures=failures)
        else:
            found = find_roots(residual, starts, cfg, max_roots=1, failures=failures)
        best = None
        for x, its in found:
            X = x.reshape(m, width)
            jump = float(np.max(np.abs(base + X @ local - y_prev[:, None])))
            if best is None or jump < best[0]:
                best = (jump, X, its)
        if best is None:
            if not best_effort:
                exc = failures[0]
                exc.block, exc.t = b + 1, ts[-1]
                raise exc
            x, _ = minimize_residual(residual, starts[0])
            best = (None, x.reshape(m, width), -1)
            unconverged.append(b + 1)
        _, X, its = best
        A[:, lo:hi] = X
        known[:, hi:] += X @ E[lo:hi, hi:]
        iterations[b] = its
        guess = X
        y_prev = base[:, -1] + X @ local[:, -1]
    Y = node_values(A, P, y0)
    runtime = time.perf_counter() - start
    return _assemble(problem, grid, P, A, Y, iterations, runtime, tuple(unconverged))


def solve_fde_monolithic(problem: FDEProblem, kind: BasisKind | str, n: int,
                         cfg: NewtonConfig | None = None) -> Solution:
    """Solve the full ``m (n + 1)`` collocation system in one Newton run.

    Only meant for small ``n``; it exists to check the cascade.
    """
    cfg = cfg or NewtonConfig()
    kind = BasisKind.parse(kind)
    grid, P, a0 = _prepare(problem, kind, n)
    m, y0 = problem.m, problem.y0
    ts = grid.nodes

    def residual(x):
        X = x.reshape(m, n + 1)
        return (X - _collocation_rhs(problem, ts, node_values(X, P, y0))).ravel()

    start = time.perf_counter()
    guess = np.repeat(a0[:, None], n + 1, axis=1)
    x, its, _ = solve_block_newton(residual, guess.ravel(), cfg, full_output=True)
    A = x.reshape(m, n + 1)
    Y = node_values(A, P, y0)
    return _assemble(problem, grid, P, A, Y, np.array([its]), time.perf_counter() - start)


def _assemble(problem, grid, P, A, Y, iterations, runtime, unconverged=()) -> Solution:
    A = np.array(A)
    for arr in (A, Y, iterations):
        arr.setflags(write=False)
    return Solution(problem, grid, P, A, Y, _defect(problem, P, A), iterations, runtime,
                    unconverged)


def eval_solution(sol: Solution, i: int, t) -> float:
    """Component ``i`` (1-based) of the solution at ``t``."""
    if int(i) != i or not 1 <= i <= sol.problem.m:
        raise DomainError(f"component index {i!r} outside 1..{sol.problem.m}")
    out = eval_many(sol.grid, sol.Y[int(i) - 1:int(i)], t)[0]
    return float(out[0]) if np.ndim(t) == 0 else out


def residual_check(sol: Solution) -> float:
    """Largest collocation defect ``|a_ij - f_i(t_j, Y_.j)|``.

    The node values are rebuilt from ``sol.A`` rather than taken from the
    cascade, so this is an independent replay of the discrete equations.
    """
    return _defect(sol.problem, sol.matrix, sol.A)


def _defect(problem: FDEProblem, P: OperationalMatrix, A) -> float:
    Y = node_values(A, P, problem.y0)
    worst = float(np.max(np.abs(np.asarray(A) - _collocation_rhs(problem, P.grid.nodes, Y))))
    return worst if math.isfinite(worst) else math.inf
