from .logger import get_logger
from .random_streams import stream
__all__ = ['get_logger', 'stream']
