"""
Matrices del acoplamiento bibliográfico.

Las matrices de incidencia son dispersas (scipy.sparse CSR); las de
similitud y distancia guardan solo el triángulo superior en forma
condensada y se reflejan al leerlas.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse
from scipy.spatial.distance import squareform

from .document import ReferenceKey
from .scheme import WeightScheme


class SimilarityKind(Enum):
    """Tipo de acoplamiento."""
    CLASSICAL = "classical"
    AGE_SENSITIVE = "age_sensitive"


class Contribution(Enum):
    """Aporte de una referencia compartida al acoplamiento ponderado."""
    SQUARED = "squared"   # producto literal de los dos vectores ponderados
    LINEAR = "linear"     # un peso por referencia compartida


@dataclass(frozen=True)
class ReferenceUniverse:
    """
    Unión deduplicada de las referencias del corpus, ordenada por cadena
    canónica. index es una biyección canónica -> columna.
    """
    refs: Tuple[ReferenceKey, ...]
    index: Dict[str, int] = field(compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.refs)

    @property
    def years(self) -> List[Optional[int]]:
        """Año de cada columna (None si no es interpretable)."""
        return [ref.pub_year for ref in self.refs]

    @property
    def yearless(self) -> List[ReferenceKey]:
        """Referencias sin año interpretable."""
        return [ref for ref in self.refs if ref.pub_year is None]

    def column_of(self, canonical: str) -> int:
        return self.index[canonical]


@dataclass(frozen=True)
class IncidenceMatrix:
    """
    Matriz binaria documentos × referencias.
    La fila i corresponde a doc_ids[i].
    """
    doc_ids: Tuple[str, ...]
    matrix: sparse.csr_matrix = field(compare=False, repr=False)
    universe: ReferenceUniverse = field(compare=False, repr=False)

    @property
    def n_docs(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_refs(self) -> int:
        return self.matrix.shape[1]

    @property
    def rows(self) -> List[FrozenSet[int]]:
        """Conjunto de columnas de cada fila."""
        indptr, indices = self.matrix.indptr, self.matrix.indices
        return [
            frozenset(int(c) for c in indices[indptr[i]:indptr[i + 1]])
            for i in range(self.n_docs)
        ]

    def row_of(self, doc_id: str) -> int:
        return self.doc_ids.index(doc_id)

    def subset(self, rows: Sequence[int]) -> 'IncidenceMatrix':
        """Submatriz con las filas indicadas y el mismo universo de columnas."""
        rows = list(rows)
        return IncidenceMatrix(
            doc_ids=tuple(self.doc_ids[i] for i in rows),
            matrix=self.matrix[rows].tocsr(),
            universe=self.universe,
        )


@dataclass(frozen=True)
class WeightedIncidence:
    """
    Misma forma que IncidenceMatrix, pero cada celda guardada lleva el peso
    de su referencia. Las celdas nulas no se almacenan.
    """
    doc_ids: Tuple[str, ...]
    matrix: sparse.csr_matrix = field(compare=False, repr=False)
    binary: sparse.csr_matrix = field(compare=False, repr=False)
    column_weights: np.ndarray = field(compare=False, repr=False)
    scheme: WeightScheme = WeightScheme()

    @property
    def n_docs(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_refs(self) -> int:
        return self.matrix.shape[1]


@dataclass(frozen=True)
class SimilarityMatrix:
    """Matriz simétrica no negativa de acoplamiento (triángulo superior + diagonal)."""
    condensed: np.ndarray = field(repr=False)
    diagonal: np.ndarray = field(repr=False)
    kind: SimilarityKind
    doc_ids: Tuple[str, ...]

    @property
    def n(self) -> int:
        return len(self.doc_ids)

    @property
    def values(self) -> np.ndarray:
        """Matriz completa n×n."""
        full = squareform(self.condensed, checks=False) if self.n > 1 else np.zeros((self.n, self.n))
        full = np.array(full, dtype=np.float64)
        np.fill_diagonal(full, self.diagonal)
        return full

    @classmethod
    def from_dense(cls, values: np.ndarray, kind: SimilarityKind, doc_ids: Sequence[str]) -> 'SimilarityMatrix':
        values = np.asarray(values, dtype=np.float64)
        n = values.shape[0]
        iu = np.triu_indices(n, k=1)
        return cls(
            condensed=values[iu].copy(),
            diagonal=np.diag(values).copy(),
            kind=kind,
            doc_ids=tuple(doc_ids),
        )

    def __getitem__(self, pair: Tuple[int, int]) -> float:
        i, j = pair
        if i == j:
            return float(self.diagonal[i])
        return float(self.condensed[_condensed_index(self.n, i, j)])


@dataclass(frozen=True)
class DistanceMatrix:
    """Matriz simétrica de distancias con diagonal nula (forma condensada)."""
    condensed: np.ndarray = field(repr=False)
    doc_ids: Tuple[str, ...]

    @property
    def n(self) -> int:
        return len(self.doc_ids)

    @property
    def values(self) -> np.ndarray:
        if self.n < 2:
            return np.zeros((self.n, self.n))
        return np.array(squareform(self.condensed, checks=False), dtype=np.float64)

    @classmethod
    def from_dense(cls, values: np.ndarray, doc_ids: Optional[Sequence[str]] = None) -> 'DistanceMatrix':
        values = np.asarray(values, dtype=np.float64)
        n = values.shape[0]
        if doc_ids is None:
            doc_ids = [str(i) for i in range(n)]
        iu = np.triu_indices(n, k=1)
        return cls(condensed=values[iu].copy(), doc_ids=tuple(doc_ids))

    def __getitem__(self, pair: Tuple[int, int]) -> float:
        i, j = pair
        if i == j:
            return 0.0
        return float(self.condensed[_condensed_index(self.n, i, j)])


def _condensed_index(n: int, i: int, j: int) -> int:
    """Posición del par (i, j), i != j, en el vector condensado."""
    if i > j:
        i, j = j, i
    return n * i - i * (i + 1) // 2 + (j - i - 1)
