"""
Utilidades de logging para agemap.

Patrón: Singleton (una única instancia del logger)
Principio SOLID: Single Responsibility

Los logs van a stderr; stdout queda libre para la salida de los
subcomandos que emiten un único archivo.
"""

import logging
import sys
from typing import Optional


class AgeMapLogger:
    """
    Logger singleton del pipeline de acoplamiento bibliográfico.
    Patrón: Singleton
    """
    _instance: Optional['AgeMapLogger'] = None
    _initialized: bool = False

    def __new__(cls, *args, **kwargs) -> 'AgeMapLogger':
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self, log_file: Optional[str] = None, level: int = logging.INFO):
        if AgeMapLogger._initialized:
            return

        self.logger = logging.getLogger("AgeMap")
        self.logger.setLevel(level)
        self.logger.propagate = False

        # Formato de logs
        self._formatter = logging.Formatter(
            '%(asctime)s - %(levelname)s - %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        )

        # Handler para consola (stderr)
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setFormatter(self._formatter)
        self.logger.addHandler(console_handler)
        self._file_handler: Optional[logging.FileHandler] = None

        if log_file:
            self.add_log_file(log_file)

        AgeMapLogger._initialized = True

    def add_log_file(self, log_file: str) -> None:
        """Agrega (una sola vez) un archivo de log en UTF-8."""
        if self._file_handler is not None:
            return
        try:
            self._file_handler = logging.FileHandler(log_file, encoding='utf-8')
            self._file_handler.setFormatter(self._formatter)
            self.logger.addHandler(self._file_handler)
        except OSError as e:
            self.logger.warning(f"No se pudo crear archivo de log: {e}")

    def set_level(self, level: int) -> None:
        """Cambia el nivel de detalle."""
        self.logger.setLevel(level)

    def info(self, message: str) -> None:
        """Log de información."""
        self.logger.info(message)

    def warning(self, message: str) -> None:
        """Log de advertencia."""
        self.logger.warning(message)

    def error(self, message: str) -> None:
        """Log de error."""
        self.logger.error(message)

    def debug(self, message: str) -> None:
        """Log de debug."""
        self.logger.debug(message)

    def stage_started(self, stage: str) -> None:
        """Log de inicio de etapa."""
        self.debug(f"▶️ Etapa '{stage}' iniciada")

    def stage_finished(self, stage: str, detail: str = "") -> None:
        """Log de fin de etapa."""
        suffix = f": {detail}" if detail else ""
        self.info(f"✅ Etapa '{stage}' completada{suffix}")

    def record_skipped(self, line: int, reason: str) -> None:
        """Log de registro descartado durante la lectura."""
        self.warning(f"⚠️ Registro omitido (línea {line}): {reason}")

    def documents_filtered(self, kept: int, removed: int, year_min: Optional[int], year_max: Optional[int]) -> None:
        """Log del filtro por año de publicación."""
        self.info(f"📅 Filtro {year_min}–{year_max}: {kept} documentos conservados, {removed} descartados")

    def documents_pruned(self, removed: int, remaining: int) -> None:
        """Log de la poda de documentos aislados."""
        self.info(f"✂️ {removed} documentos aislados eliminados, quedan {remaining}")

    def yearless_references(self, count: int) -> None:
        """Log de referencias sin año interpretable."""
        if count:
            self.warning(f"⚠️ {count} referencias sin año: reciben el peso mínimo")

    def cophenetic_fit(self, branch: str, value: float) -> None:
        """Log del ajuste cofenético de un árbol."""
        self.info(f"🌳 Ajuste cofenético [{branch}]: cpc = {value:.4f}")

    def clusters_found(self, branch: str, k: int, unassigned: int) -> None:
        """Log del resultado del corte dinámico."""
        self.info(f"🧩 [{branch}] {k} clusters ({unassigned} documentos sin asignar)")

    def comparison_summary(self, jaccard: float, cophenetic_r: Optional[float]) -> None:
        """Log de la comparación entre agrupamientos."""
        r_text = "n/d" if cophenetic_r is None else f"{cophenetic_r:.4f}"
        self.info(f"📊 Comparación: J = {jaccard:.4f}, r = {r_text}")

    def core_extracted(self, cluster_id: int, core_size: int, threshold: float) -> None:
        """Log de extracción del núcleo de un cluster."""
        self.info(f"🎯 Cluster {cluster_id}: núcleo de {core_size} referencias (CDM > {threshold:.2f})")

    def artifact_written(self, path: str) -> None:
        """Log de archivo generado."""
        self.debug(f"💾 Archivo escrito: {path}")


# Función de conveniencia para obtener el logger
def get_logger() -> AgeMapLogger:
    """Retorna la instancia singleton del logger."""
    return AgeMapLogger()


def configure(level: int = logging.INFO, log_file: Optional[str] = None) -> AgeMapLogger:
    """Ajusta nivel y archivo del logger singleton."""
    logger = get_logger()
    logger.set_level(level)
    if log_file:
        logger.add_log_file(log_file)
    return logger
