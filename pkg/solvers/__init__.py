from .results import FitResult
from .base_solver import BaseSolver, SolveRecord
from .lamm_solver import LammConfig, LammSolver, solve_weighted_l1, marginal_smoothed_quantiles, kkt_residual
from .admm_solver import AdmmConfig, AdmmState, AdmmSolver, NormalSystem, solve_cqr_admm
from .irw import run_reweighting, solve_irw, solve_irw_admm
from .estimator import Method, EstimatorFit, CompositeQuantileEstimator

__all__ = [
    'FitResult', 'BaseSolver', 'SolveRecord',
    'LammConfig', 'LammSolver', 'solve_weighted_l1', 'marginal_smoothed_quantiles', 'kkt_residual',
    'AdmmConfig', 'AdmmState', 'AdmmSolver', 'NormalSystem', 'solve_cqr_admm',
    'run_reweighting', 'solve_irw', 'solve_irw_admm',
    'Method', 'EstimatorFit', 'CompositeQuantileEstimator',
]
