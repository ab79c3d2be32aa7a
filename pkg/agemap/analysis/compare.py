"""
Comparación cuantitativa de dos agrupamientos del mismo corpus.
"""

import numpy as np
from sklearn.metrics.cluster import contingency_matrix, pair_confusion_matrix

from ..models import Clustering, ComparisonReport, ConfusionMatrix, Dendrogram
from ..utils.errors import MismatchedDocs
from .hclust import cophenetic, cophenetic_correlation


def _check_same_documents(a: Clustering, b: Clustering) -> None:
    if len(a) != len(b) or (a.doc_ids and b.doc_ids and a.doc_ids != b.doc_ids):
        raise MismatchedDocs("los agrupamientos no cubren los mismos documentos")


def pair_jaccard(a: Clustering, b: Clustering) -> float:
    """
    J = n11 / (n11 + n10 + n01) sobre los pares de documentos.
    Los documentos sin asignar (0) en cualquiera de los dos quedan fuera.
    """
    _check_same_documents(a, b)
    la, lb = a.as_array(), b.as_array()
    assigned = (la != 0) & (lb != 0)
    if assigned.sum() < 2:
        return 0.0

    # pares ordenados: todos los recuentos van duplicados
    pairs = pair_confusion_matrix(la[assigned], lb[assigned])
    together = int(pairs[1, 1])
    denominator = together + int(pairs[1, 0]) + int(pairs[0, 1])
    if denominator == 0:
        return 0.0
    return together / denominator


def confusion(a: Clustering, b: Clustering) -> ConfusionMatrix:
    """Filas: etiquetas de a; columnas: etiquetas de b (0 primero si existe)."""
    _check_same_documents(a, b)
    la, lb = a.as_array(), b.as_array()
    counts = np.asarray(contingency_matrix(la, lb), dtype=np.int64)
    return ConfusionMatrix(
        counts=counts,
        row_labels=tuple(int(v) for v in np.unique(la)),
        col_labels=tuple(int(v) for v in np.unique(lb)),
    )


def compare_full(cluster_a: Clustering, cluster_b: Clustering,
                 tree_a: Dendrogram, tree_b: Dendrogram) -> ComparisonReport:
    """Jaccard de pares, tabla cruzada y correlación cofenética árbol contra árbol."""
    _check_same_documents(cluster_a, cluster_b)
    if tree_a.labels != tree_b.labels or (cluster_a.doc_ids and tree_a.labels != cluster_a.doc_ids):
        raise MismatchedDocs("los árboles no cubren los mismos documentos que los agrupamientos")

    return ComparisonReport(
        jaccard=pair_jaccard(cluster_a, cluster_b),
        cophenetic_r=cophenetic_correlation(cophenetic(tree_a), cophenetic(tree_b)),
        confusion=confusion(cluster_a, cluster_b),
        k_a=cluster_a.k,
        k_b=cluster_b.k,
    )
