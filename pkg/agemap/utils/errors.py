"""
Jerarquía de errores de agemap.

Cada error lleva el código de salida que la CLI devuelve y, opcionalmente,
la etapa del pipeline en la que ocurrió.

Códigos de salida:
    0 éxito, 1 uso, 2 datos, 3 interno
"""

from typing import Optional


EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3


class AgeMapError(Exception):
    """Error base de agemap."""
    exit_code: int = EXIT_INTERNAL

    def __init__(self, message: str, stage: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.stage = stage

    def __str__(self) -> str:
        if self.stage:
            return f"[{self.stage}] {self.message}"
        return self.message


class UsageError(AgeMapError):
    """Uso incorrecto de la línea de comandos."""
    exit_code = EXIT_USAGE


class ConfigError(UsageError):
    """Configuración inválida o incompleta."""


class DataError(AgeMapError):
    """Los datos de entrada no permiten continuar."""
    exit_code = EXIT_DATA


class EncodingError(DataError):
    """La entrada no se puede decodificar como UTF-8."""


class FormatMismatch(DataError):
    """El formato declarado no coincide con el contenido."""


class MalformedRecord(DataError):
    """Registro sin etiqueta de fin (ER) o con estructura inválida."""

    def __init__(self, message: str, line: int, stage: Optional[str] = None):
        super().__init__(f"{message} (línea {line})", stage)
        self.line = line


class MissingYear(DataError):
    """El registro no tiene un año de publicación utilizable."""

    def __init__(self, message: str, line: int = 0, stage: Optional[str] = None):
        super().__init__(message, stage)
        self.line = line


class DuplicateDocId(DataError):
    """Dos documentos comparten el mismo identificador."""


class NoYearsAvailable(DataError):
    """Ninguna referencia tiene un año interpretable."""


class InvalidScheme(DataError):
    """Parámetros del esquema de pesos fuera de sus invariantes."""


class DegenerateSimilarity(DataError):
    """Todas las similitudes fuera de la diagonal son cero."""


class ZeroVariance(DataError):
    """Una de las matrices es constante fuera de la diagonal."""


class MismatchedDocs(DataError):
    """Las dos entradas no cubren el mismo conjunto de documentos."""


class TooShort(DataError):
    """La curva tiene menos de tres puntos."""


class EmptyCorpus(DataError):
    """No quedan documentos tras una etapa del pipeline."""


class InvalidInput(DataError):
    """Entrada estructuralmente inválida para una operación."""


class StageError(AgeMapError):
    """
    Error envuelto con el nombre de la etapa del pipeline que falló.
    Conserva el código de salida de la causa si es un AgeMapError.
    """

    def __init__(self, stage: str, cause: BaseException):
        super().__init__(str(getattr(cause, "message", cause)), stage)
        self.cause = cause
        if isinstance(cause, AgeMapError):
            self.exit_code = cause.exit_code
        else:
            self.exit_code = EXIT_INTERNAL
