from .exceptions import ScqrError, DomainError, ContractError, NumericalError
from .grid import QuantileGrid, quantile_grid, validate_level
from .kernels import KernelFamily, KernelSpec, as_kernel, kernel_cdf, kernel_pdf, kernel_abs_moment
from .penalties import PenaltyFamily, PenaltySpec, penalty_weight
from .operators import check_loss, soft_threshold, prox_check
from .dataset import Dataset

__all__ = [
    'ScqrError', 'DomainError', 'ContractError', 'NumericalError',
    'QuantileGrid', 'quantile_grid', 'validate_level',
    'KernelFamily', 'KernelSpec', 'as_kernel', 'kernel_cdf', 'kernel_pdf', 'kernel_abs_moment',
    'PenaltyFamily', 'PenaltySpec', 'penalty_weight',
    'check_loss', 'soft_threshold', 'prox_check',
    'Dataset',
]
