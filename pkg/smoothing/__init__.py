from .smoothed_loss import (
    SmoothedLossSpec,
    ParamVector,
    smoothed_check,
    loss_value,
    loss_gradient,
    loss_value_and_gradient,
    hessian_quadratic_form,
    composite_check_loss,
    composite_check_sum,
)
from .bandwidth import default_bandwidth

__all__ = [
    'SmoothedLossSpec', 'ParamVector', 'smoothed_check', 'loss_value', 'loss_gradient',
    'loss_value_and_gradient', 'hessian_quadratic_form', 'composite_check_loss',
    'composite_check_sum', 'default_bandwidth',
]
