"""Shared reference data and oracle wrappers for the test-suite."""

import numpy as np

from fdehat import make_grid, rl_integral_oracle
from fdehat.basis import hat_function


def oracle_row(grid, alpha, k):
    """Quadrature values of I^alpha psi_k at every node of ``grid``."""
    psi = hat_function(grid, k)
    kinks = grid.nodes
    return np.array([rl_integral_oracle(psi, alpha, t, breakpoints=kinks) for t in grid.nodes])


def oracle_matrix(kind, n, alpha, tau=1.0):
    grid = make_grid(tau, n, kind)
    return grid, np.array([oracle_row(grid, alpha, k) for k in range(n + 1)])


def trapezoid_matrix(n, h):
    """Columns hold composite trapezoid weights for int_0^{jh}."""
    W = np.zeros((n + 1, n + 1))
    for j in range(1, n + 1):
        W[0, j] = W[j, j] = h / 2
        W[1:j, j] = h
    return W


def simpson_column(n, h, j):
    """Composite Simpson weights for int_0^{jh}, j even."""
    w = np.zeros(n + 1)
    for a in range(0, j, 2):
        w[a] += h / 3
        w[a + 1] += 4 * h / 3
        w[a + 2] += h / 3
    return w


# Table for the nonlinear test system with the t^2.5, t^3 solution.
# Rows: n, e1 (GHF), rho1, e2, rho2, e1 (MHF), rho1, e2, rho2.
TABLE_EXAMPLE1 = [
    (2, 1.68e-1, 2.32, 2.24e-1, 1.91, 2.08e-2, 4.48, 4.57e-2, 3.99),
    (4, 3.37e-2, 2.13, 5.97e-2, 2.00, 9.33e-4, 3.45, 2.87e-3, 3.69),
    (8, 7.68e-3, 2.02, 1.49e-2, 1.99, 8.51e-5, 3.47, 2.23e-4, 2.86),
    (16, 1.89e-3, 1.98, 3.74e-3, 1.99, 7.69e-6, 3.48, 3.08e-5, 2.93),
    (32, 4.79e-4, 1.98, 9.43e-4, 1.99, 6.88e-7, 3.49, 4.03e-6, 2.96),
    (64, 1.21e-4, 1.98, 2.37e-4, 1.99, 6.12e-8, 3.50, 5.16e-7, 2.98),
    (128, 3.06e-5, 1.99, 5.97e-5, 2.00, 5.42e-9, 3.50, 6.53e-8, 2.99),
    (256, 7.70e-6, 2.00, 1.49e-5, 1.99, 4.80e-10, 3.50, 8.21e-9, 3.01),
    (512, 1.93e-6, None, 3.75e-6, None, 4.25e-11, None, 1.02e-9, None),
]

# Same layout for the linear system with alpha = 1.
TABLE_EXAMPLE2 = [
    (2, 2.33e+0, 2.22, 2.15e+0, 3.01, 2.03e+0, 1.26, 1.87e+0, 1.53),
    (4, 5.01e-1, 1.93, 2.67e-1, 2.31, 8.47e-1, 3.23, 6.49e-1, 2.48),
    (8, 1.31e-1, 2.04, 5.38e-2, 1.86, 9.00e-2, 3.67, 1.16e-1, 3.94),
    (16, 3.18e-2, 1.94, 1.48e-2, 1.95, 7.05e-3, 4.07, 7.56e-3, 3.87),
    (32, 8.29e-3, 2.00, 3.82e-3, 1.99, 4.20e-4, 4.04, 9.63e-4, 3.72),
    (64, 2.07e-3, 2.00, 9.63e-4, 2.00, 2.55e-5, 4.00, 3.91e-5, 3.83),
    (128, 5.17e-4, 2.00, 2.41e-4, 2.00, 1.59e-6, 4.00, 2.74e-6, 3.91),
    (256, 1.29e-4, 2.00, 6.03e-5, 2.01, 9.93e-8, 4.00, 1.82e-7, 3.96),
    (512, 3.23e-5, None, 1.50e-5, None, 6.20e-9, None, 1.17e-8, None),
]

# The MHF e2 cell at n=32 of the linear table repeats the GHF n=64 e2 value;
# its own neighbouring orders (3.87 and 3.72) put the true value near 5.2e-4.
SUSPECT_CELLS = {("example2", "mhf", 32, 1)}

LADDER = [2 ** k for k in range(1, 10)]


def table_columns(table, kind):
    off = 1 if kind == "ghf" else 5
    errors = {row[0]: (row[off], row[off + 2]) for row in table}
    orders = {row[0]: (row[off + 1], row[off + 3]) for row in table}
    return errors, orders
