from .report import LambdaRecord, TuneReport
from .lambda_grid import LambdaGrid, lambda_max, estimator_lambda_max, lambda_grid
from .bic import BicScore, bic, default_cn, select_by_bic
from .cross_validation import fold_assignment, cross_validate
from .pivotal import pivotal_draws, pivotal_lambda, tune_pivotal

__all__ = [
    'LambdaRecord', 'TuneReport',
    'LambdaGrid', 'lambda_max', 'estimator_lambda_max', 'lambda_grid',
    'BicScore', 'bic', 'default_cn', 'select_by_bic',
    'fold_assignment', 'cross_validate',
    'pivotal_draws', 'pivotal_lambda', 'tune_pivotal',
]
