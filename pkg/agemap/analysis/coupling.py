"""
Acoplamiento bibliográfico clásico y sensible a la antigüedad.

    clásico:    S(i, j) = |refs(i) ∩ refs(j)|
    ponderado:  S(i, j) = Σ w(r)²  (cuadrático, producto de los vectores ponderados)
                S(i, j) = Σ w(r)   (lineal, un peso por referencia compartida)
"""

from typing import Union

import numpy as np

from ..models import (
    Contribution,
    DistanceMatrix,
    IncidenceMatrix,
    SimilarityKind,
    SimilarityMatrix,
    WeightedIncidence,
)
from ..utils.errors import DegenerateSimilarity


def _to_similarity(product, kind: SimilarityKind, doc_ids) -> SimilarityMatrix:
    dense = np.asarray(product.toarray(), dtype=np.float64)
    return SimilarityMatrix.from_dense(dense, kind, doc_ids)


def classical_similarity(m: IncidenceMatrix) -> SimilarityMatrix:
    """Número de referencias compartidas por cada par de documentos."""
    product = m.matrix @ m.matrix.T
    return _to_similarity(product, SimilarityKind.CLASSICAL, m.doc_ids)


def weighted_similarity(w: WeightedIncidence,
                        contribution: Union[Contribution, str] = Contribution.SQUARED) -> SimilarityMatrix:
    """Acoplamiento con cada referencia compartida ponderada por su antigüedad."""
    contribution = Contribution(contribution)
    if contribution is Contribution.LINEAR:
        product = w.binary @ w.matrix.T
    else:
        product = w.matrix @ w.matrix.T
    return _to_similarity(product, SimilarityKind.AGE_SENSITIVE, w.doc_ids)


def to_distance(s: SimilarityMatrix) -> DistanceMatrix:
    """
    d(i, j) = 1 - S(i, j) / S_max, con S_max la mayor similitud fuera de la
    diagonal.

    Raises:
        DegenerateSimilarity: si todas las similitudes fuera de la diagonal son 0
    """
    s_max = float(s.condensed.max()) if s.condensed.size else 0.0
    if s_max <= 0.0:
        raise DegenerateSimilarity("todas las similitudes fuera de la diagonal son cero")
    condensed = 1.0 - s.condensed / s_max
    # redondeo: el par máximo da exactamente 0 y ningún valor sale de [0, 1]
    np.clip(condensed, 0.0, 1.0, out=condensed)
    return DistanceMatrix(condensed=condensed, doc_ids=s.doc_ids)
