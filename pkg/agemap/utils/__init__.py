"""Utilidades de agemap."""
from .logger import AgeMapLogger, get_logger, configure
from . import errors
