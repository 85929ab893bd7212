"""Logging utilities"""
import logging

ROOT = "scqr"


def get_logger(name: str) -> logging.Logger:
    if name == ROOT or name.startswith(ROOT + "."):
        return logging.getLogger(name)
    return logging.getLogger(f"{ROOT}.{name}")
