from .scenarios import ErrorLaw, BenchMethod, TuningMode, Scenario, default_beta_star
from .data_generator import SimulatedSample, ar1_design, draw_errors, generate
from .metrics import model_error, selection_counts, ar1_quadratic_form
from .records import BenchRecord, BenchAggregate, RuntimeRow, aggregate
from .runner import BenchResult, BenchmarkRunner, run_benchmark, run_runtime_comparison
from .presets import PRESETS, Preset, get_preset

__all__ = [
    'ErrorLaw', 'BenchMethod', 'TuningMode', 'Scenario', 'default_beta_star',
    'SimulatedSample', 'ar1_design', 'draw_errors', 'generate',
    'model_error', 'selection_counts', 'ar1_quadratic_form',
    'BenchRecord', 'BenchAggregate', 'RuntimeRow', 'aggregate',
    'BenchResult', 'BenchmarkRunner', 'run_benchmark', 'run_runtime_comparison',
    'PRESETS', 'Preset', 'get_preset',
]
