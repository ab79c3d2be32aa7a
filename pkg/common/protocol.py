"""
Formatos de los archivos generados por agemap.
Define los tipos de artefacto y su serialización.

Patrón: Factory Method para crear artefactos
Principio SOLID: Single Responsibility - Solo maneja el formato de los archivos

Convenciones:
    - JSON en UTF-8, indentado
    - flotantes con 17 cifras significativas (%.17g) en JSON y CSV
    - todas las líneas terminan en "\\n"
"""

import io
import json
import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence, Tuple, Union

import pandas as pd

FLOAT_FORMAT = "%.17g"


class ArtifactType(Enum):
    """Tipos de archivo que produce el pipeline."""
    # Corpus
    CORPUS = "corpus"
    QUALITY_REPORT = "quality_report"

    # Agrupamiento
    CLUSTERS = "clusters"
    DENDROGRAM_JSON = "dendrogram_json"
    DENDROGRAM_NEWICK = "dendrogram_newick"
    SIMILARITY = "similarity"

    # Comparación
    COMPARISON = "comparison"
    COMPARISON_TABLE = "comparison_table"

    # Núcleos
    CORE = "core"
    CORE_TABLE = "core_table"
    KNEE_PLOT = "knee_plot"
    HISTOGRAM = "histogram"

    # Pesos y metadatos
    WEIGHT_CURVE = "weight_curve"
    RUN_META = "run_meta"


@dataclass(frozen=True)
class Artifact:
    """Un archivo de salida: tipo, nombre y contenido ya serializado."""
    type: ArtifactType
    name: str
    content: str

    def write(self, out_dir: Union[str, Path]) -> Path:
        """Escribe el artefacto en out_dir y devuelve la ruta."""
        path = Path(out_dir) / self.name
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(self.content)
        return path


JSON_INDENT = "  "


def _json_value(value: Any, level: int) -> str:
    if isinstance(value, float) and math.isfinite(value):
        text = FLOAT_FORMAT % value
        # 1.0 sigue siendo float al leerlo
        return text if any(c in text for c in ".e") else text + ".0"
    if isinstance(value, dict) and value:
        inner = JSON_INDENT * (level + 1)
        items = [
            f"{inner}{json.dumps(k if isinstance(k, str) else json.dumps(k), ensure_ascii=False)}: "
            f"{_json_value(v, level + 1)}"
            for k, v in value.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + JSON_INDENT * level + "}"
    if isinstance(value, (list, tuple)) and value:
        inner = JSON_INDENT * (level + 1)
        items = [inner + _json_value(v, level + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + JSON_INDENT * level + "]"
    return json.dumps(value, ensure_ascii=False)


def to_json(data: Any) -> str:
    """JSON indentado con salto de línea final; flotantes con %.17g como en CSV."""
    return _json_value(data, 0) + "\n"


def to_csv(rows: Iterable[Sequence[Any]], columns: Sequence[str]) -> str:
    """CSV con cabecera; flotantes con 17 cifras significativas."""
    frame = pd.DataFrame(list(rows), columns=list(columns))
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return buffer.getvalue()


class ArtifactFactory:
    """
    Factory para crear los archivos del pipeline.
    Patrón: Factory Method
    Principio SOLID: Open/Closed - Fácil agregar nuevos tipos de archivo

    Los métodos reciben datos planos (dicts, filas); no conocen los modelos.
    """

    @staticmethod
    def create_corpus(documents: Iterable[Dict[str, Any]]) -> Artifact:
        """Un documento JSON por línea."""
        lines = [json.dumps(doc, ensure_ascii=False) for doc in documents]
        content = "".join(line + "\n" for line in lines)
        return Artifact(type=ArtifactType.CORPUS, name="corpus.jsonl", content=content)

    @staticmethod
    def create_quality_report(data: Dict[str, Any]) -> Artifact:
        return Artifact(type=ArtifactType.QUALITY_REPORT, name="quality_report.json", content=to_json(data))

    @staticmethod
    def create_clusters(branch: str, rows: Iterable[Tuple[str, int]]) -> Artifact:
        """Etiquetas por documento (doc_id, label); 0 = sin asignar."""
        return Artifact(
            type=ArtifactType.CLUSTERS,
            name=f"clusters_{branch}.csv",
            content=to_csv(rows, ["doc_id", "label"]),
        )

    @staticmethod
    def create_dendrogram_json(branch: str, data: Dict[str, Any]) -> Artifact:
        return Artifact(type=ArtifactType.DENDROGRAM_JSON, name=f"dendrogram_{branch}.json", content=to_json(data))

    @staticmethod
    def create_dendrogram_newick(branch: str, newick: str) -> Artifact:
        return Artifact(
            type=ArtifactType.DENDROGRAM_NEWICK,
            name=f"dendrogram_{branch}.nwk",
            content=newick.rstrip("\n") + "\n",
        )

    @staticmethod
    def create_similarity(branch: str, doc_ids: Sequence[str], values) -> Artifact:
        """Matriz completa con doc_id en la cabecera de filas y columnas."""
        frame = pd.DataFrame(values, index=list(doc_ids), columns=list(doc_ids))
        buffer = io.StringIO()
        frame.to_csv(buffer, index_label="doc_id", float_format=FLOAT_FORMAT, lineterminator="\n")
        return Artifact(type=ArtifactType.SIMILARITY, name=f"similarity_{branch}.csv", content=buffer.getvalue())

    @staticmethod
    def create_comparison(data: Dict[str, Any]) -> Artifact:
        return Artifact(type=ArtifactType.COMPARISON, name="comparison.json", content=to_json(data))

    @staticmethod
    def create_comparison_table(table: str) -> Artifact:
        return Artifact(type=ArtifactType.COMPARISON_TABLE, name="comparison.txt", content=table)

    @staticmethod
    def create_core(cluster_id: Union[int, str], data: Dict[str, Any]) -> Artifact:
        return Artifact(type=ArtifactType.CORE, name=f"core_cluster_{cluster_id}.json", content=to_json(data))

    @staticmethod
    def create_core_table(cluster_id: Union[int, str], entries: Iterable[Dict[str, Any]]) -> Artifact:
        """Tabla del núcleo: rango, referencia, suma de pesos, título y categorías."""
        rows = [
            (
                e["rank"],
                e["reference"],
                "" if e.get("pub_year") is None else e["pub_year"],
                e["occurrence_count"],
                e["weight"],
                e["cum_weight"],
                e.get("title", ""),
                "; ".join(e.get("categories", [])),
            )
            for e in entries
        ]
        columns = ["rank", "reference", "pub_year", "occurrence_count", "weight", "cum_weight", "title", "categories"]
        return Artifact(type=ArtifactType.CORE_TABLE, name=f"core_cluster_{cluster_id}.csv", content=to_csv(rows, columns))

    @staticmethod
    def create_knee_plot(cluster_id: Union[int, str], curve: Sequence[float]) -> Artifact:
        """Curva (rango, CDM) completa."""
        rows = [(rank, float(value)) for rank, value in enumerate(curve, start=1)]
        return Artifact(
            type=ArtifactType.KNEE_PLOT,
            name=f"kneeplot_{cluster_id}.csv",
            content=to_csv(rows, ["rank", "cum_weight"]),
        )

    @staticmethod
    def create_histogram(cluster_id: Union[int, str], bins: Iterable[Dict[str, Any]]) -> Artifact:
        rows = [(b["bin_start"], b["count"]) for b in bins]
        return Artifact(
            type=ArtifactType.HISTOGRAM,
            name=f"histogram_{cluster_id}.csv",
            content=to_csv(rows, ["bin_start", "count"]),
        )

    @staticmethod
    def create_weight_curve(rows: Iterable[Tuple[int, float]]) -> Artifact:
        return Artifact(type=ArtifactType.WEIGHT_CURVE, name="weightcurve.csv", content=to_csv(rows, ["year", "weight"]))

    @staticmethod
    def create_run_meta(data: Dict[str, Any]) -> Artifact:
        return Artifact(type=ArtifactType.RUN_META, name="run_meta.json", content=to_json(data))


def read_corpus(path: Union[str, Path]) -> List[Dict[str, Any]]:
    """Lee un corpus.jsonl."""
    documents = []
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            if line.strip():
                documents.append(json.loads(line))
    return documents


def read_clusters(path: Union[str, Path]) -> List[Tuple[str, int]]:
    """Lee un CSV de etiquetas (doc_id, label)."""
    frame = pd.read_csv(path, dtype={"doc_id": str}, keep_default_na=False)
    missing = {"doc_id", "label"} - set(frame.columns)
    if missing:
        raise ValueError(f"faltan columnas en {path}: {', '.join(sorted(missing))}")
    return [(str(d), int(label)) for d, label in zip(frame["doc_id"], frame["label"])]


def read_json(path: Union[str, Path]) -> Dict[str, Any]:
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)
