"""Damped Newton iteration with a forward-difference Jacobian."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError, SingularJacobianError

PIVOT_RTOL = 1e-14


@dataclass(frozen=True)
class NewtonConfig:
    tol: float = 1e-12
    max_iter: int = 50
    fd_step_scale: float = 1.49e-8
    max_halvings: int = 20

    def __post_init__(self):
        if not self.tol > 0:
            raise DomainError(f"tol must be positive, got {self.tol!r}")
        if self.max_iter < 1:
            raise DomainError(f"max_iter must be >= 1, got {self.max_iter!r}")
        if not self.fd_step_scale > 0:
            raise DomainError(f"fd_step_scale must be positive, got {self.fd_step_scale!r}")
        if self.max_halvings < 0:
            raise DomainError(f"max_halvings must be >= 0, got {self.max_halvings!r}")


def gauss_solve(J: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve ``J x = b`` by Gaussian elimination with partial pivoting.

    Raises SingularJacobianError when a pivot is below ``PIVOT_RTOL`` times
    the largest entry of ``J``.
    """
    M = np.array(J, dtype=np.float64)
    x = np.array(b, dtype=np.float64)
    d = x.shape[0]
    scale = np.max(np.abs(M)) if M.size else 0.0
    threshold = PIVOT_RTOL * scale
    for c in range(d):
        p = c + int(np.argmax(np.abs(M[c:, c])))
        if not abs(M[p, c]) > threshold:
            raise SingularJacobianError(
                f"Jacobian pivot {M[p, c]:.3e} in column {c} below {threshold:.3e}")
        if p != c:
            M[[c, p]] = M[[p, c]]
            x[[c, p]] = x[[p, c]]
        f = M[c + 1:, c] / M[c, c]
        M[c + 1:, c:] -= f[:, None] * M[c, c:]
        x[c + 1:] -= f * x[c]
    for c in range(d - 1, -1, -1):
        x[c] = (x[c] - M[c, c + 1:] @ x[c + 1:]) / M[c, c]
    return x


def fd_jacobian(residual, x: np.ndarray, r: np.ndarray, step_scale: float) -> np.ndarray:
    d = x.shape[0]
    J = np.empty((d, d))
    for k in range(d):
        # a power-of-two step keeps x + dx exact in binary, so affine
        # residuals get an exact Jacobian column
        dx = 2.0 ** round(math.log2(step_scale * max(1.0, abs(x[k]))))
        xp = x.copy()
        xp[k] += dx
        # actual representable increment
        J[:, k] = (np.asarray(residual(xp), dtype=np.float64) - r) / (xp[k] - x[k])
    return J


def _norm(r) -> float:
    return float(np.max(np.abs(r))) if r.size else 0.0


def solve_block_newton(residual, guess, cfg: NewtonConfig | None = None,
                       full_output: bool = False):
    """Find ``x`` with ``max|residual(x)| <= cfg.tol``.

    Each step is halved until the residual norm strictly decreases, at most
    ``cfg.max_halvings`` times. With ``full_output`` the return value is
    ``(x, iterations, residual_norm)``.
    """
    cfg = cfg or NewtonConfig()
    x = np.array(guess, dtype=np.float64).ravel()
    r = np.asarray(residual(x), dtype=np.float64)
    if r.shape != x.shape:
        raise DomainError(f"residual maps R^{x.size} to shape {r.shape}")
    norm = _norm(r)
    iterations = 0
    while not norm <= cfg.tol:
        if iterations >= cfg.max_iter:
            raise ConvergenceError(
                f"no convergence after {cfg.max_iter} Newton iterations "
                f"(residual {norm:.3e})", best=x, residual_norm=norm)
        J = fd_jacobian(residual, x, r, cfg.fd_step_scale)
        try:
            step = gauss_solve(J, -r)
        except SingularJacobianError as exc:
            exc.best, exc.residual_norm = x, norm
            raise
        lam = 1.0
        for _ in range(cfg.max_halvings + 1):
            xn = x + lam * step
            rn = np.asarray(residual(xn), dtype=np.float64)
            nn = _norm(rn)
            if nn < norm:
                break
            lam *= 0.5
        else:
            raise ConvergenceError(
                f"line search found no decrease after {cfg.max_halvings} halvings "
                f"(residual {norm:.3e})", best=x, residual_norm=norm)
        x, r, norm = xn, rn, nn
        iterations += 1
    if full_output:
        return x, iterations, norm
    return x


def _deflated(residual, roots, shift=1.0):
    roots = [np.asarray(r) for r in roots]

    def g(x):
        factor = 1.0
        for r in roots:
            factor *= 1.0 / float(np.sum((x - r) ** 2)) + shift
        return np.asarray(residual(x), dtype=np.float64) * factor

    return g


def _same(x, r) -> bool:
    return bool(np.max(np.abs(x - r)) <= 1e-8 * max(1.0, float(np.max(np.abs(r)))))


def find_roots(residual, starts, cfg: NewtonConfig | None = None,
               search_cfg: NewtonConfig | None = None, max_roots: int = 4,
               failures: list | None = None):
    """Collect distinct roots of ``residual`` by deflated Newton.

    From each start the plain residual is solved first; every root found is
    then divided out (``F(x) * prod(1/|x - r|^2 + 1)``) and Newton is rerun
    from the same start, until it fails, repeats a root, or ``max_roots``
    are known. Each root is polished on the undeflated residual with ``cfg``.
    Returns ``[(x, iterations), ...]`` in discovery order. Exceptions from
    the undeflated first attempts are appended to ``failures`` when given.
    """
    cfg = cfg or NewtonConfig()
    search_cfg = search_cfg or NewtonConfig(tol=cfg.tol, max_iter=min(cfg.max_iter, 20),
                                            fd_step_scale=cfg.fd_step_scale, max_halvings=8)
    found = []
    for start in starts:
        start = np.asarray(start, dtype=np.float64).ravel()
        while len(found) < max_roots:
            known = [x for x, _ in found]
            if any(_same(start, r) for r in known):
                break  # deflation is singular at a known root
            try:
                if known:
                    x = solve_block_newton(_deflated(residual, known), start, search_cfg)
                    x, its, _ = solve_block_newton(residual, x, cfg, full_output=True)
                else:
                    x, its, _ = solve_block_newton(residual, start, cfg, full_output=True)
            except (ConvergenceError, SingularJacobianError) as exc:
                if not known and failures is not None:
                    failures.append(exc)
                break
            if any(_same(x, r) for r in known):
                break
            found.append((x, its))
    return found


def minimize_residual(residual, guess):
    """Least-squares fallback for blocks without a real root.

    Returns the Levenberg-Marquardt minimiser of ``|residual|_2`` started at
    ``guess`` and its residual infinity-norm.
    """
    from scipy.optimize import least_squares

    x0 = np.asarray(guess, dtype=np.float64).ravel()
    fit = least_squares(residual, x0, method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15)
    return fit.x, _norm(np.asarray(residual(fit.x)))
