"""
Modelos de los informes del pipeline: comparación de agrupamientos,
núcleos de referencias y calidad de los datos.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np

from .document import ReferenceKey


@dataclass(frozen=True)
class ConfusionMatrix:
    """
    Tabla cruzada de dos agrupamientos.
    Filas ordenadas por las etiquetas de A, columnas por las de B;
    la etiqueta 0 (sin asignar) ocupa una fila/columna reservada.
    """
    counts: np.ndarray = field(repr=False)
    row_labels: Tuple[int, ...]
    col_labels: Tuple[int, ...]

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def row_sums(self) -> Tuple[int, ...]:
        return tuple(int(v) for v in self.counts.sum(axis=1))

    @property
    def col_sums(self) -> Tuple[int, ...]:
        return tuple(int(v) for v in self.counts.sum(axis=0))

    @property
    def row_fracs(self) -> Tuple[float, ...]:
        total = self.total
        return tuple(v / total for v in self.row_sums) if total else ()

    @property
    def col_fracs(self) -> Tuple[float, ...]:
        total = self.total
        return tuple(v / total for v in self.col_sums) if total else ()

    def cell(self, row_label: int, col_label: int) -> int:
        """Recuento de la celda identificada por sus etiquetas."""
        if row_label not in self.row_labels or col_label not in self.col_labels:
            return 0
        return int(self.counts[self.row_labels.index(row_label), self.col_labels.index(col_label)])

    def to_table(self, row_title: str = "A", col_title: str = "B") -> str:
        """
        Tabla de texto alineada: recuentos, fila/columna Sum y fila/columna %.
        """
        def name(label: int) -> str:
            return "n/a" if label == 0 else str(label)

        header = [f"{row_title} \\ {col_title}"] + [name(c) for c in self.col_labels] + ["Sum", "%"]
        body: List[List[str]] = []
        for i, row_label in enumerate(self.row_labels):
            cells = [str(int(v)) for v in self.counts[i]]
            body.append([name(row_label)] + cells + [str(self.row_sums[i]), f"{self.row_fracs[i]:.2f}"])
        body.append(["Sum"] + [str(v) for v in self.col_sums] + [str(self.total), "1.00"])
        body.append(["%"] + [f"{v:.2f}" for v in self.col_fracs] + ["1.00", ""])

        rows = [header] + body
        widths = [max(len(r[c]) for r in rows) for c in range(len(header))]
        lines = []
        for r in rows:
            first = r[0].ljust(widths[0])
            rest = [r[c].rjust(widths[c]) for c in range(1, len(r))]
            lines.append("  ".join([first] + rest).rstrip())
        return "\n".join(lines) + "\n"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "row_labels": list(self.row_labels),
            "col_labels": list(self.col_labels),
            "counts": self.counts.astype(int).tolist(),
            "row_sums": list(self.row_sums),
            "col_sums": list(self.col_sums),
            "row_fracs": list(self.row_fracs),
            "col_fracs": list(self.col_fracs),
            "total": self.total,
        }


@dataclass(frozen=True)
class ComparisonReport:
    """Indicadores de semejanza entre dos agrupamientos del mismo corpus."""
    jaccard: float
    cophenetic_r: Optional[float]
    confusion: ConfusionMatrix
    k_a: int
    k_b: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "jaccard": self.jaccard,
            "cophenetic_r": self.cophenetic_r,
            "k_a": self.k_a,
            "k_b": self.k_b,
            "confusion": self.confusion.to_dict(),
        }


@dataclass(frozen=True)
class CoreEntry:
    """Referencia de un cluster con su peso acumulado (CDM)."""
    ref: ReferenceKey
    cum_weight: float
    occurrence_count: int
    rank: int
    weight: float
    title: str = ""
    categories: Tuple[str, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rank": self.rank,
            "reference": self.ref.canonical,
            "pub_year": self.ref.pub_year,
            "weight": self.weight,
            "occurrence_count": self.occurrence_count,
            "cum_weight": self.cum_weight,
            "title": self.title,
            "categories": list(self.categories),
        }


@dataclass(frozen=True)
class CoreReport:
    """Perfil de un cluster: ranking completo, rodilla, umbral y núcleo."""
    cluster_id: Union[int, str]
    entries: Tuple[CoreEntry, ...]
    knee_rank: int
    threshold: float
    threshold_source: str
    bin_width: int
    age_histogram: Dict[Optional[int], int]
    n_documents: int = 0

    @property
    def core(self) -> Tuple[CoreEntry, ...]:
        """Prefijo de entradas con peso acumulado estrictamente mayor que el umbral."""
        return tuple(e for e in self.entries if e.cum_weight > self.threshold)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "cluster_id": self.cluster_id,
            "n_documents": self.n_documents,
            "knee_rank": self.knee_rank,
            "threshold": self.threshold,
            "threshold_source": self.threshold_source,
            "bin_width": self.bin_width,
            "core_size": len(self.core),
            "core": [e.to_dict() for e in self.core],
            "age_histogram": [
                {"bin_start": "unknown" if start is None else start, "count": count}
                for start, count in self.age_histogram.items()
            ],
            "n_entries": len(self.entries),
        }


@dataclass
class QualityReport:
    """
    Informe de calidad de los datos, acumulado a lo largo del pipeline.
    """
    skipped_records: List[Dict[str, Any]] = field(default_factory=list)
    filtered_out: List[str] = field(default_factory=list)
    pruned: List[str] = field(default_factory=list)
    yearless_references: List[str] = field(default_factory=list)
    statistics: Dict[str, Any] = field(default_factory=dict)

    def skip(self, line: int, reason: str, source: str = "") -> None:
        """Registra un registro descartado."""
        entry: Dict[str, Any] = {"line": line, "reason": reason}
        if source:
            entry["source"] = source
        self.skipped_records.append(entry)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "skipped_records": list(self.skipped_records),
            "skipped_count": len(self.skipped_records),
            "filtered_out": list(self.filtered_out),
            "pruned": list(self.pruned),
            "yearless_references": {
                "count": len(self.yearless_references),
                "canonical": list(self.yearless_references),
            },
            "statistics": dict(self.statistics),
        }
