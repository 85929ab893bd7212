"""
Configuration Module for SCQR
"""

from .settings import settings, Settings
from .logging_config import setup_logging, get_logger, log_solver_execution, LoggingConfig

__all__ = [
    'settings',
    'Settings',
    'setup_logging',
    'get_logger',
    'log_solver_execution',
    'LoggingConfig'
]
