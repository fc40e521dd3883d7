"""Spectral collocation for systems of Caputo fractional ODEs on hat-function bases."""

from .analysis import (ConvergenceRow, convergence_order, cross_basis_deviation,
                       max_node_error, run_convergence_study)
from .basis import (BasisKind, Grid, HatExpansion, eval_expansion, eval_hat,
                    interpolate, make_grid)
from .errors import (ConfigurationError, ConvergenceError, DimensionError, DomainError,
                     FdeHatError, NumericalError, ParityError, RenderError,
                     SingularJacobianError)
from .fracmat import (OperationalMatrix, apply_integration, gamma_fn, op_matrix,
                      op_matrix_ghf, op_matrix_mhf, rl_integral_oracle)
from .models import (SeirsParams, SeirsState, example1, example2, seirs_beta,
                     seirs_lambda, seirs_problem)
from .newton import NewtonConfig, solve_block_newton
from .solver import (FDEProblem, Solution, eval_solution, node_values, residual_check,
                     solve_fde_monolithic, solve_fde_system)

__version__ = "0.1.0"
