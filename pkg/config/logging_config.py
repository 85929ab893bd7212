"""
Logging Configuration for SCQR

Console output goes to stderr (command results own stdout). Records from
solver loggers carry a ``solver`` field; in JSON mode the fields passed via
``extra`` (iterations, final phi, KKT residual, ...) become JSON keys.
"""

import logging
import logging.handlers
import sys
from pathlib import Path
from typing import Optional

from pythonjsonlogger import jsonlogger

from utils.logger import get_logger

TEXT_FORMAT = '%(asctime)s - %(name)s [%(solver)s] - %(levelname)s - %(message)s'
JSON_FORMAT = '%(asctime)s %(levelname)s %(name)s %(solver)s %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


class ColoredFormatter(logging.Formatter):
    """Text formatter that colors the level name on terminals"""

    COLORS = {
        'DEBUG': '\033[36m',
        'INFO': '\033[32m',
        'WARNING': '\033[33m',
        'ERROR': '\033[31m',
        'CRITICAL': '\033[35m',
    }
    RESET = '\033[0m'

    def format(self, record):
        plain = record.levelname
        record.levelname = f"{self.COLORS.get(plain, '')}{plain}{self.RESET}"
        try:
            return super().format(record)
        finally:
            record.levelname = plain


class SolverLogFilter(logging.Filter):
    """
    Tag records with a solver name.

    Attached to a solver logger it stamps that solver's name; attached to a
    handler with ``solver_name=None`` it only fills in "-" for records that
    do not come from a solver, so the format strings can always use
    ``%(solver)s``.
    """

    def __init__(self, solver_name: Optional[str] = None):
        super().__init__()
        self.solver_name = solver_name

    def filter(self, record):
        if self.solver_name is not None:
            record.solver = self.solver_name
        elif not hasattr(record, 'solver'):
            record.solver = '-'
        return True


class LoggingConfig:
    """Installs the root handlers described by the ``logging`` settings section"""

    def __init__(self, config):
        self.config = config
        section = config.logging
        self.log_level = getattr(logging, section.log_level)
        self.log_format = section.log_format
        self.log_file = section.log_file
        self.max_bytes = section.log_max_size * 1024 * 1024
        self.backup_count = section.log_backup_count

    def _formatter(self, colored: bool) -> logging.Formatter:
        if self.log_format == "json":
            return jsonlogger.JsonFormatter(JSON_FORMAT, rename_fields={'levelname': 'level', 'asctime': 'timestamp'})
        if colored:
            return ColoredFormatter(TEXT_FORMAT, datefmt=DATE_FORMAT)
        return logging.Formatter(TEXT_FORMAT, datefmt=DATE_FORMAT)

    def _finish(self, handler: logging.Handler, colored: bool) -> logging.Handler:
        handler.setLevel(self.log_level)
        handler.setFormatter(self._formatter(colored))
        handler.addFilter(SolverLogFilter())
        return handler

    def setup_root_logger(self) -> logging.Logger:
        root_logger = logging.getLogger()
        root_logger.setLevel(self.log_level)
        root_logger.handlers.clear()

        console = logging.StreamHandler(sys.stderr)
        root_logger.addHandler(self._finish(console, colored=sys.stderr.isatty()))

        if self.log_file:
            Path(self.log_file).parent.mkdir(parents=True, exist_ok=True)
            rotating = logging.handlers.RotatingFileHandler(
                self.log_file, maxBytes=self.max_bytes, backupCount=self.backup_count, encoding='utf-8'
            )
            root_logger.addHandler(self._finish(rotating, colored=False))
        return root_logger

    def log_run_info(self, command: str):
        """Log the command and the effective solver/tuning configuration"""
        logger = get_logger("system")
        logger.info("scqr %s starting", command, extra={'command': command, 'settings': self.config.to_dict()})


def get_solver_logger(solver_name: str) -> logging.Logger:
    """Logger ``scqr.solver.<name>`` whose records carry ``solver=<name>``"""
    logger = get_logger(f"solver.{solver_name}")
    if not any(isinstance(f, SolverLogFilter) for f in logger.filters):
        logger.addFilter(SolverLogFilter(solver_name))
    return logger


def setup_logging(config, command: str = "run") -> LoggingConfig:
    logging_config = LoggingConfig(config)
    logging_config.setup_root_logger()
    logging_config.log_run_info(command)
    return logging_config


def log_solver_execution(solver_name: str, status: str, summary: Optional[dict] = None):
    """
    One record per finished solve. Non-converged runs are logged at
    WARNING; the summary dict travels as structured fields.
    """
    logger = get_solver_logger(solver_name)
    fields = dict(summary or {}, status=status)
    # LogRecord reserves "message"
    fields["detail"] = fields.pop("message", None)
    if status == "failed":
        logger.error("%s solve failed", solver_name, extra=fields)
    elif not fields.get("converged", True):
        logger.warning(
            "%s stopped without converging after %s iterations (%s)",
            solver_name, fields.get("iterations"), fields["detail"] or "no detail", extra=fields,
        )
    else:
        logger.info("%s %s in %s iterations", solver_name, status, fields.get("iterations"), extra=fields)


__all__ = [
    'LoggingConfig',
    'setup_logging',
    'log_solver_execution',
    'get_solver_logger',
    'get_logger',
    'ColoredFormatter',
    'SolverLogFilter'
]
