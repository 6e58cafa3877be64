"""Finite-dimensional quantum model of a price-limited stock market."""

from .dynamics import (EvolutionParams, Potential, Trajectory, hamiltonian_at,
                       integrate_tdse, most_probable_return, propagate_static,
                       propagator, top_returns)
from .errors import (DimensionMismatchError, InvalidArgumentError, ModelError,
                     NormalizationError, NormDriftError, NumericConsistencyError)
from .gaussian import GaussianSpec, check_ruzzi, g_alpha, g_vector, gaussian_state
from .lattice import (Grid, State, delta, dft_forward, dft_inverse, inner_product,
                      make_grid, normalize, probabilities, trend_basis)
from .operators import (EigenSystem, Operator, eigendecompose, expectation, price,
                        rate_of_return, trend)

__version__ = "0.1.0"
