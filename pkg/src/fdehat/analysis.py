"""Node errors, observed convergence orders and grid-refinement studies."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .basis import BasisKind
from .errors import ConfigurationError, FdeHatError
from .newton import NewtonConfig
from .solver import FDEProblem, Solution, solve_fde_system


@dataclass
class ConvergenceRow:
    n: int
    errors: list[float] = field(default_factory=list)
    orders: list[float | None] = field(default_factory=list)
    runtime_seconds: float = 0.0
    failure: str | None = None

    @property
    def failed(self) -> bool:
        return self.failure is not None


def max_node_error(sol: Solution) -> np.ndarray:
    exact = sol.problem.exact
    if exact is None:
        raise ConfigurationError(f"problem {sol.problem.name!r} has no exact solution")
    nodes = sol.grid.nodes
    ref = np.array([[ex(t) for t in nodes] for ex in exact])
    return np.max(np.abs(ref - sol.Y), axis=1)


def convergence_order(e_n: float, e_2n: float) -> float | None:
    """``log2(e_n / e_2n)``, or None when either error is zero or not finite."""
    if not (e_n > 0 and e_2n > 0) or not (math.isfinite(e_n) and math.isfinite(e_2n)):
        return None
    return math.log2(e_n / e_2n)


def _row(problem, kind, n, cfg) -> ConvergenceRow:
    try:
        sol = solve_fde_system(problem, kind, n, cfg)
    except FdeHatError as exc:
        return ConvergenceRow(n, failure=str(exc))
    return ConvergenceRow(n, max_node_error(sol).tolist(), [], sol.runtime_seconds)


def run_convergence_study(problem: FDEProblem, kind: BasisKind | str, n_list,
                          cfg: NewtonConfig | None = None,
                          workers: int = 1) -> list[ConvergenceRow]:
    """One row per entry of the doubling ladder ``n_list``.

    A row whose solve fails is kept with ``failure`` set, and the orders that
    would need it are None.
    """
    if problem.exact is None:
        raise ConfigurationError(f"problem {problem.name!r} has no exact solution")
    n_list = [int(n) for n in n_list]
    if not n_list:
        raise ConfigurationError("empty n ladder")
    for a, b in zip(n_list, n_list[1:]):
        if b != 2 * a:
            raise ConfigurationError(f"ladder must double between rows, got {a} -> {b}")
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            rows = list(pool.map(lambda n: _row(problem, kind, n, cfg), n_list))
    else:
        rows = [_row(problem, kind, n, cfg) for n in n_list]
    for cur, nxt in zip(rows, rows[1:]):
        if cur.failed or nxt.failed:
            cur.orders = [None] * problem.m
        else:
            cur.orders = [convergence_order(a, b) for a, b in zip(cur.errors, nxt.errors)]
    return rows


def cross_basis_deviation(a: Solution, b: Solution, sample_count: int = 401) -> float:
    """Largest component-wise gap between two solutions at equispaced times."""
    if a.problem.signature() != b.problem.signature():
        raise ConfigurationError("solutions belong to different problems")
    if sample_count < 2:
        raise ConfigurationError("need at least two sample points")
    ts = np.linspace(0.0, a.problem.tau, int(sample_count))
    return float(np.max(np.abs(a.evaluate(ts) - b.evaluate(ts))))


def range_report(sol: Solution, lo: float = 0.0, hi: float = 1.0) -> dict[int, tuple[float, float]]:
    """Per-component (min, max) of node values that fall outside ``[lo, hi]``.

    Components that stay inside are omitted.
    """
    out = {}
    for i, row in enumerate(sol.Y, start=1):
        if row.min() < lo or row.max() > hi:
            out[i] = (float(row.min()), float(row.max()))
    return out
