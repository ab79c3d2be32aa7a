"""
Manejadores de los subcomandos de la CLI.

Patrón: Strategy - una estrategia por subcomando
Patrón: Registry - el registro elige la estrategia por nombre
Principio SOLID:
    - Single Responsibility: cada handler atiende un subcomando
    - Open/Closed: fácil agregar nuevos subcomandos
    - Dependency Inversion: la CLI depende de la abstracción CommandHandler
"""

import argparse
import sys
from abc import ABC, abstractmethod
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from common.protocol import Artifact, ArtifactFactory, read_clusters, read_corpus, read_json

from ..analysis import build_incidence, confusion, core_report, curve_rows, pair_jaccard, reference_catalog
from ..config import PipelineConfig
from ..models import Clustering, ComparisonReport, CoreReport, Document, IncidenceMatrix, WeightScheme
from ..pipeline import AgeMapPipeline, parse_only
from ..utils.errors import DataError, InvalidInput, MismatchedDocs, TooShort
from ..utils.logger import get_logger

# Rango de años del subcomando weights cuando no se indica ninguno
DEFAULT_CURVE_YEARS = (1500, 2100)


class Command(Enum):
    """Subcomandos disponibles."""
    PARSE = "parse"
    RUN = "run"
    COMPARE = "compare"
    CORE = "core"
    WEIGHTS = "weights"
    SUBCLUSTER = "subcluster"


class CommandHandler(ABC):
    """
    Clase base abstracta para los subcomandos.
    Patrón: Strategy
    """

    @abstractmethod
    def handle(self, args: argparse.Namespace, config: PipelineConfig) -> int:
        """
        Ejecuta el subcomando.

        Args:
            args: Argumentos ya interpretados
            config: Configuración con las opciones de la CLI aplicadas

        Returns:
            Código de salida
        """
        pass


def emit(text: str) -> None:
    """Escribe la salida de un subcomando de archivo único en stdout."""
    sys.stdout.write(text)
    sys.stdout.flush()


def write_all(artifacts: Sequence[Artifact], out_dir: str) -> List[Path]:
    logger = get_logger()
    paths = []
    for artifact in artifacts:
        path = artifact.write(out_dir)
        logger.artifact_written(str(path))
        paths.append(path)
    return paths


def load_corpus(path: str) -> Tuple[List[Document], IncidenceMatrix]:
    """Documentos de un corpus.jsonl y su matriz de incidencia."""
    try:
        documents = [Document.from_dict(d) for d in read_corpus(path)]
    except FileNotFoundError:
        raise DataError(f"no existe el corpus: {path}")
    except (ValueError, KeyError) as e:
        raise DataError(f"corpus ilegible {path}: {e}")
    if not documents:
        raise DataError(f"el corpus {path} está vacío")
    _, incidence = build_incidence(documents)
    return documents, incidence


def run_scheme(scheme: WeightScheme, corpus_path: str, meta_path: Optional[str] = None) -> WeightScheme:
    """
    Completa el rango de años con el resuelto por la ejecución que produjo el
    corpus (run_meta.json junto al corpus, o meta_path). corpus.jsonl no
    guarda los documentos podados, cuyas referencias también fijan el rango.

    Raises:
        DataError: si meta_path no existe o no se puede leer
    """
    path = Path(meta_path) if meta_path else Path(corpus_path).with_name("run_meta.json")
    if not path.exists():
        if meta_path:
            raise DataError(f"no existe el archivo de metadatos: {meta_path}")
        return scheme
    try:
        resolved = read_json(path).get("resolved_scheme") or {}
    except ValueError as e:
        raise DataError(f"metadatos ilegibles {path}: {e}")
    y_min, y_max = resolved.get("year_min"), resolved.get("year_max")
    if y_min is None or y_max is None:
        return scheme
    get_logger().info(f"📅 Rango de años de {path}: {y_min}-{y_max}")
    return scheme.with_years(int(y_min), int(y_max))


def load_labels(path: str) -> Dict[str, int]:
    """Etiquetas por documento de un clusters_*.csv."""
    try:
        return dict(read_clusters(path))
    except FileNotFoundError:
        raise DataError(f"no existe el archivo de etiquetas: {path}")
    except (ValueError, KeyError) as e:
        raise DataError(f"archivo de etiquetas ilegible {path}: {e}")


def aligned(labels: Dict[str, int], doc_ids: Sequence[str]) -> Clustering:
    """Agrupamiento en el orden de doc_ids; ambos deben cubrir los mismos documentos."""
    if set(labels) != set(doc_ids):
        raise MismatchedDocs("las etiquetas no cubren los mismos documentos")
    return Clustering.from_labels([labels[d] for d in doc_ids], doc_ids)


def core_artifacts(report: CoreReport) -> List[Artifact]:
    data = report.to_dict()
    key = str(report.cluster_id).replace("/", "_")
    return [
        ArtifactFactory.create_core(key, data),
        ArtifactFactory.create_core_table(key, data["core"]),
        ArtifactFactory.create_knee_plot(key, [e.cum_weight for e in report.entries]),
        ArtifactFactory.create_histogram(key, data["age_histogram"]),
    ]


class ParseHandler(CommandHandler):
    """Solo lectura: corpus.jsonl e informe de calidad."""

    def handle(self, args: argparse.Namespace, config: PipelineConfig) -> int:
        config.validate()
        documents, quality = parse_only(config)
        artifacts = [
            ArtifactFactory.create_corpus(doc.to_dict() for doc in documents),
            ArtifactFactory.create_quality_report(quality.to_dict()),
        ]
        write_all(artifacts, config.output_dir)
        get_logger().info(f"📄 {len(documents)} documentos leídos")
        return 0


class RunHandler(CommandHandler):
    """Pipeline completo."""

    def handle(self, args: argparse.Namespace, config: PipelineConfig) -> int:
        config.validate()
        AgeMapPipeline(config).run()
        return 0


class CompareHandler(CommandHandler):
    """Compara dos archivos de etiquetas; JSON (o tabla de texto) en stdout."""

    def handle(self, args: argparse.Namespace, config: PipelineConfig) -> int:
        labels_a = load_labels(args.labels_a)
        labels_b = load_labels(args.labels_b)
        doc_ids = list(labels_a)
        a = aligned(labels_a, doc_ids)
        b = aligned(labels_b, doc_ids)
        report = ComparisonReport(
            jaccard=pair_jaccard(a, b),
            cophenetic_r=None,
            confusion=confusion(a, b),
            k_a=a.k,
            k_b=b.k,
        )
        get_logger().comparison_summary(report.jaccard, None)
        if args.table:
            emit(report.confusion.to_table(row_title="A", col_title="B"))
        else:
            emit(ArtifactFactory.create_comparison(report.to_dict()).content)
        return 0


class CoreHandler(CommandHandler):
    """Núcleos de cada cluster a partir de etiquetas y corpus."""

    def handle(self, args: argparse.Namespace, config: PipelineConfig) -> int:
        documents, incidence = load_corpus(args.corpus)
        clustering = aligned(load_labels(args.labels), incidence.doc_ids)
        scheme = run_scheme(config.scheme, args.corpus, args.meta)
        catalog = reference_catalog(documents)
        logger = get_logger()

        artifacts: List[Artifact] = []
        for label in sorted(k for k in clustering.sizes() if k != 0):
            try:
                report = core_report(
                    label, clustering.members(label), incidence, scheme,
                    override_threshold=config.thresholds.get(label),
                    bin_width=config.bin_width,
                    catalog=catalog,
                )
            except TooShort as e:
                logger.warning(f"⚠️ Cluster {label}: sin núcleo ({e.message})")
                continue
            logger.core_extracted(label, len(report.core), report.threshold)
            artifacts.extend(core_artifacts(report))
        write_all(artifacts, config.output_dir)
        return 0


class WeightsHandler(CommandHandler):
    """Curva (año, peso) en CSV por stdout."""

    def handle(self, args: argparse.Namespace, config: PipelineConfig) -> int:
        scheme = config.scheme.with_years(*DEFAULT_CURVE_YEARS)
        emit(ArtifactFactory.create_weight_curve(curve_rows(scheme)).content)
        return 0


class SubclusterHandler(CommandHandler):
    """
    Núcleo de la intersección de un cluster cBC (fila) con un cluster asBC
    (columna) de la tabla cruzada; JSON por stdout.
    """

    def handle(self, args: argparse.Namespace, config: PipelineConfig) -> int:
        documents, incidence = load_corpus(args.corpus)
        rows = aligned(load_labels(args.rows), incidence.doc_ids)
        cols = aligned(load_labels(args.cols), incidence.doc_ids)
        row, col = args.cell
        members = [
            i for i, (a, b) in enumerate(zip(rows.labels, cols.labels))
            if a == row and b == col
        ]
        if not members:
            raise InvalidInput(f"la celda ({row}, {col}) de la tabla cruzada está vacía")

        report = core_report(
            f"{row}/{col}", members, incidence, run_scheme(config.scheme, args.corpus, args.meta),
            override_threshold=args.threshold,
            bin_width=config.bin_width,
            catalog=reference_catalog(documents),
        )
        get_logger().core_extracted(col, len(report.core), report.threshold)
        emit(ArtifactFactory.create_core(f"{row}_{col}", report.to_dict()).content)
        return 0


class CommandHandlerRegistry:
    """
    Registro de manejadores de subcomandos.
    Patrón: Registry/Strategy
    Principio SOLID: Open/Closed - Fácil agregar nuevos manejadores
    """

    def __init__(self):
        self._handlers: Dict[Command, CommandHandler] = {}
        self._register_default_handlers()

    def _register_default_handlers(self) -> None:
        """Registra los manejadores por defecto."""
        self.register(Command.PARSE, ParseHandler())
        self.register(Command.RUN, RunHandler())
        self.register(Command.COMPARE, CompareHandler())
        self.register(Command.CORE, CoreHandler())
        self.register(Command.WEIGHTS, WeightsHandler())
        self.register(Command.SUBCLUSTER, SubclusterHandler())

    def register(self, command: Command, handler: CommandHandler) -> None:
        self._handlers[command] = handler

    def get_handler(self, command: Command) -> Optional[CommandHandler]:
        return self._handlers.get(command)

    def handle(self, command: Command, args: argparse.Namespace, config: PipelineConfig) -> int:
        """
        Ejecuta el subcomando con el manejador registrado.

        Returns:
            Código de salida del manejador
        """
        handler = self.get_handler(command)
        if handler is None:
            raise InvalidInput(f"subcomando sin manejador: {command.value}")
        return handler.handle(args, config)
