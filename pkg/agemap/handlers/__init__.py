"""Manejadores de subcomandos de la CLI."""
from .command_handler import (
    Command,
    CommandHandler,
    CommandHandlerRegistry,
    CompareHandler,
    CoreHandler,
    ParseHandler,
    RunHandler,
    SubclusterHandler,
    WeightsHandler,
)
