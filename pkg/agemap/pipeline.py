"""
Orquestador del análisis dual: acoplamiento clásico (cBC) y sensible a la
antigüedad (asBC) sobre el mismo corpus.

Patrón: Facade - una sola entrada para todas las etapas
Principio SOLID: Single Responsibility - cada etapa es un método

Etapas:
    ingest → filter → incidence → prune → weighting
    → {cbc, asbc}: coupling → clustering
    → compare → core → output

Las dos ramas y la lectura de archivos se ejecutan de forma concurrente
(asyncio.gather sobre asyncio.to_thread); las salidas son idénticas a las
de una ejecución secuencial.
"""

import asyncio
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from common.protocol import Artifact, ArtifactFactory

from . import __version__
from .analysis import (
    average_linkage,
    build_incidence,
    classical_similarity,
    compare_full,
    cophenetic,
    cophenetic_correlation,
    core_report,
    corpus_statistics,
    curve_rows,
    dynamic_cut,
    load_documents,
    parse_export,
    prune_isolated,
    reference_catalog,
    to_distance,
    weigh_matrix,
    weighted_similarity,
)
from .config import PipelineConfig
from .models import (
    Clustering,
    ComparisonReport,
    CoreReport,
    Dendrogram,
    DistanceMatrix,
    Document,
    IncidenceMatrix,
    QualityReport,
    SimilarityMatrix,
    WeightScheme,
)
from .utils.errors import AgeMapError, EmptyCorpus, StageError, TooShort
from .utils.logger import get_logger

CLASSICAL = "cbc"
AGE_SENSITIVE = "asbc"


@dataclass(frozen=True)
class BranchResult:
    """Resultado de una rama del análisis."""
    name: str
    similarity: SimilarityMatrix
    distance: DistanceMatrix
    tree: Dendrogram
    fit: Optional[float]
    clustering: Clustering


@dataclass
class PipelineResult:
    """Todo lo producido por una ejecución completa."""
    documents: List[Document]
    incidence: IncidenceMatrix
    scheme: WeightScheme
    classical: BranchResult
    weighted: BranchResult
    comparison: ComparisonReport
    cores: Dict[int, CoreReport]
    quality: QualityReport
    artifacts: List[Path] = field(default_factory=list)


class AgeMapPipeline:
    """
    Ejecuta el análisis completo a partir de una PipelineConfig.
    """

    def __init__(self, config: PipelineConfig):
        self.config = config
        self.quality = QualityReport()
        self.logger = get_logger()

    # ------------------------------------------------------------------
    # Ejecución
    # ------------------------------------------------------------------

    def run(self, write: bool = True) -> PipelineResult:
        """Ejecuta el pipeline y, si write, escribe los archivos."""
        return asyncio.run(self.run_async(write))

    async def run_async(self, write: bool = True) -> PipelineResult:
        documents = await self.ingest()
        documents = self._stage("filter", self.filter_documents, documents)
        _, incidence = self._stage("incidence", build_incidence, documents)
        documents, incidence = self._stage("prune", self.prune, documents, incidence)
        weighted_incidence = self._stage("weighting", weigh_matrix, incidence, incidence.universe, self.config.scheme)
        scheme = weighted_incidence.scheme
        self.logger.yearless_references(len(incidence.universe.yearless))
        self.quality.yearless_references = [ref.canonical for ref in incidence.universe.yearless]

        classical, weighted = await asyncio.gather(
            asyncio.to_thread(self.run_branch, CLASSICAL, lambda: classical_similarity(incidence)),
            asyncio.to_thread(
                self.run_branch, AGE_SENSITIVE,
                lambda: weighted_similarity(weighted_incidence, self.config.contribution),
            ),
        )

        comparison = self._stage(
            "compare", compare_full,
            classical.clustering, weighted.clustering, classical.tree, weighted.tree,
        )
        self.logger.comparison_summary(comparison.jaccard, comparison.cophenetic_r)

        cores = await self.extract_cores(weighted.clustering, incidence, scheme, documents)

        result = PipelineResult(
            documents=documents,
            incidence=incidence,
            scheme=scheme,
            classical=classical,
            weighted=weighted,
            comparison=comparison,
            cores=cores,
            quality=self.quality,
        )
        if write:
            result.artifacts = self._stage("output", self.write_artifacts, result)
        return result

    def _stage(self, name: str, func: Callable, *args):
        """Ejecuta una etapa envolviendo cualquier fallo con su nombre."""
        self.logger.stage_started(name)
        try:
            value = func(*args)
        except StageError:
            raise
        except Exception as e:
            raise StageError(name, e) from e
        self.logger.stage_finished(name)
        return value

    # ------------------------------------------------------------------
    # Etapas
    # ------------------------------------------------------------------

    def _read_file(self, path: str) -> Tuple[List[Document], QualityReport]:
        # un informe por archivo: se unen en el orden de entrada
        report = QualityReport()
        with open(path, "rb") as f:
            data = f.read()
        records = parse_export(
            data,
            self.config.input_format,
            strict=False,
            report=report,
            source=path,
            columns=self.config.csv_columns,
        )
        return load_documents(records, report, source=path), report

    async def ingest(self) -> List[Document]:
        """Lee todos los archivos de entrada en paralelo y une los documentos."""
        self.logger.stage_started("ingest")
        try:
            batches = await asyncio.gather(
                *(asyncio.to_thread(self._read_file, path) for path in self.config.inputs)
            )
        except Exception as e:
            raise StageError("ingest", e) from e

        documents, seen = [], set()
        for path, (batch, report) in zip(self.config.inputs, batches):
            self.quality.skipped_records.extend(report.skipped_records)
            for doc in batch:
                if doc.doc_id in seen:
                    self.logger.warning(f"⚠️ Documento repetido {doc.doc_id} en {path}: se conserva el primero")
                    self.quality.skip(0, f"documento repetido: {doc.doc_id}", path)
                    continue
                seen.add(doc.doc_id)
                documents.append(doc)
        self.logger.stage_finished("ingest", f"{len(documents)} documentos")
        return documents

    def filter_documents(self, documents: Sequence[Document]) -> List[Document]:
        """Conserva los documentos publicados dentro de [year_min, year_max]."""
        lo, hi = self.config.year_min, self.config.year_max
        kept = [
            doc for doc in documents
            if (lo is None or doc.pub_year >= lo) and (hi is None or doc.pub_year <= hi)
        ]
        kept_ids = {doc.doc_id for doc in kept}
        self.quality.filtered_out = [doc.doc_id for doc in documents if doc.doc_id not in kept_ids]
        self.logger.documents_filtered(len(kept), len(self.quality.filtered_out), lo, hi)
        if not kept:
            raise EmptyCorpus("no quedan documentos tras el filtro por año de publicación")
        return kept

    def prune(self, documents: Sequence[Document],
              incidence: IncidenceMatrix) -> Tuple[List[Document], IncidenceMatrix]:
        """
        Quita los documentos aislados. Las columnas de la matriz siguen siendo
        el universo completo, así que el rango de años de los pesos también.
        """
        pruned, removed = prune_isolated(incidence)
        self.quality.pruned = removed
        self.logger.documents_pruned(len(removed), pruned.n_docs)
        if pruned.n_docs < 2:
            raise EmptyCorpus("menos de 2 documentos comparten referencias")

        dropped = set(removed)
        documents = [doc for doc in documents if doc.doc_id not in dropped]
        self.quality.statistics = corpus_statistics(documents, pruned)
        return documents, pruned

    def run_branch(self, name: str, similarity: Callable[[], SimilarityMatrix]) -> BranchResult:
        """Similitud → distancia → árbol → ajuste cofenético → corte dinámico."""
        s = self._stage("coupling", similarity)
        d = self._stage("coupling", to_distance, s)
        tree = self._stage("clustering", average_linkage, d)
        try:
            fit = cophenetic_correlation(d, cophenetic(tree))
            self.logger.cophenetic_fit(name, fit)
        except AgeMapError as e:
            self.logger.warning(f"⚠️ [{name}] ajuste cofenético no disponible: {e.message}")
            fit = None
        clustering = self._stage("clustering", dynamic_cut, tree, d, self.config.cut)
        self.logger.clusters_found(name, clustering.k, clustering.unassigned)
        return BranchResult(name=name, similarity=s, distance=d, tree=tree, fit=fit, clustering=clustering)

    async def extract_cores(self, clustering: Clustering, incidence: IncidenceMatrix,
                            scheme: WeightScheme, documents: Sequence[Document]) -> Dict[int, CoreReport]:
        """Un informe de núcleo por cluster asBC, calculados en paralelo."""
        catalog = reference_catalog(documents)
        labels = sorted(label for label in clustering.sizes() if label != 0)

        def one(label: int) -> Optional[CoreReport]:
            try:
                report = core_report(
                    label, clustering.members(label), incidence, scheme,
                    override_threshold=self.config.thresholds.get(label),
                    bin_width=self.config.bin_width,
                    catalog=catalog,
                )
            except TooShort as e:
                self.logger.warning(f"⚠️ Cluster {label}: sin núcleo ({e.message})")
                return None
            self.logger.core_extracted(label, len(report.core), report.threshold)
            return report

        self.logger.stage_started("core")
        try:
            reports = await asyncio.gather(*(asyncio.to_thread(one, label) for label in labels))
        except Exception as e:
            raise StageError("core", e) from e
        self.logger.stage_finished("core", f"{sum(r is not None for r in reports)} núcleos")
        return {label: report for label, report in zip(labels, reports) if report is not None}

    # ------------------------------------------------------------------
    # Salida
    # ------------------------------------------------------------------

    def build_artifacts(self, result: PipelineResult) -> List[Artifact]:
        """Todos los archivos de la ejecución, en orden estable."""
        artifacts = [ArtifactFactory.create_corpus(doc.to_dict() for doc in result.documents)]

        for branch in (result.classical, result.weighted):
            clustering = branch.clustering
            artifacts.append(ArtifactFactory.create_clusters(branch.name, zip(clustering.doc_ids, clustering.labels)))
            artifacts.append(ArtifactFactory.create_dendrogram_json(branch.name, branch.tree.to_dict()))
            artifacts.append(ArtifactFactory.create_dendrogram_newick(branch.name, branch.tree.to_newick()))
            if self.config.dump_matrix:
                artifacts.append(ArtifactFactory.create_similarity(
                    branch.name, branch.similarity.doc_ids, branch.similarity.values,
                ))

        comparison = result.comparison.to_dict()
        comparison["cophenetic_fit"] = {CLASSICAL: result.classical.fit, AGE_SENSITIVE: result.weighted.fit}
        artifacts.append(ArtifactFactory.create_comparison(comparison))
        artifacts.append(ArtifactFactory.create_comparison_table(
            result.comparison.confusion.to_table(row_title="cBC", col_title="asBC")
        ))

        for label, report in result.cores.items():
            data = report.to_dict()
            artifacts.append(ArtifactFactory.create_core(label, data))
            artifacts.append(ArtifactFactory.create_core_table(label, data["core"]))
            artifacts.append(ArtifactFactory.create_knee_plot(label, [e.cum_weight for e in report.entries]))
            artifacts.append(ArtifactFactory.create_histogram(label, data["age_histogram"]))

        if result.scheme.is_resolved:
            artifacts.append(ArtifactFactory.create_weight_curve(curve_rows(result.scheme)))
        artifacts.append(ArtifactFactory.create_quality_report(result.quality.to_dict()))
        artifacts.append(ArtifactFactory.create_run_meta(self.run_meta(result)))
        return artifacts

    def run_meta(self, result: PipelineResult) -> Dict[str, object]:
        """Metadatos de la ejecución; el único archivo con marca de tiempo."""
        return {
            "version": __version__,
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "config": self.config.to_dict(),
            "resolved_scheme": result.scheme.to_dict(),
            "documents": len(result.documents),
            "clusters": {CLASSICAL: result.classical.clustering.k, AGE_SENSITIVE: result.weighted.clustering.k},
        }

    def write_artifacts(self, result: PipelineResult) -> List[Path]:
        out_dir = Path(self.config.output_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        paths = []
        for artifact in self.build_artifacts(result):
            path = artifact.write(out_dir)
            self.logger.artifact_written(str(path))
            paths.append(path)
        self.logger.info(f"💾 {len(paths)} archivos escritos en {out_dir}")
        return paths


def parse_only(config: PipelineConfig) -> Tuple[List[Document], QualityReport]:
    """Solo lectura: documentos e informe de calidad (subcomando parse)."""
    pipeline = AgeMapPipeline(config)
    documents = asyncio.run(pipeline.ingest())
    return documents, pipeline.quality
