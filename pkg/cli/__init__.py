"""
Command line interface for SCQR
"""

from .commands import cli, main, CliConfig

__all__ = ['cli', 'main', 'CliConfig']
