"""
Modelos de la jerarquía de documentos y de los agrupamientos.

Los nodos siguen la convención de scipy: las hojas son 0..n-1 y la fusión
t crea el nodo n + t.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.cluster.hierarchy import to_tree

from ..utils.errors import InvalidInput


@dataclass(frozen=True)
class Merge:
    """Una fusión del árbol: dos nodos, altura y tamaño resultante."""
    left: int
    right: int
    height: float
    size: int


@dataclass(frozen=True)
class Dendrogram:
    """Lista ordenada de n_leaves - 1 fusiones."""
    n_leaves: int
    merges: Tuple[Merge, ...]
    doc_ids: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.n_leaves >= 1 and len(self.merges) != self.n_leaves - 1:
            raise InvalidInput(
                f"un árbol de {self.n_leaves} hojas necesita {self.n_leaves - 1} fusiones"
            )

    @property
    def heights(self) -> np.ndarray:
        return np.array([m.height for m in self.merges], dtype=np.float64)

    @property
    def root(self) -> int:
        return 2 * self.n_leaves - 2

    @property
    def labels(self) -> Tuple[str, ...]:
        return self.doc_ids or tuple(str(i) for i in range(self.n_leaves))

    def node_height(self, node: int) -> float:
        if node < self.n_leaves:
            return 0.0
        return self.merges[node - self.n_leaves].height

    def children(self, node: int) -> Tuple[int, int]:
        merge = self.merges[node - self.n_leaves]
        return merge.left, merge.right

    def members(self) -> List[List[int]]:
        """Hojas de cada nodo (índice = id de nodo), en orden ascendente."""
        nodes: List[List[int]] = [[i] for i in range(self.n_leaves)]
        for merge in self.merges:
            nodes.append(sorted(nodes[merge.left] + nodes[merge.right]))
        return nodes

    def internal_nodes(self, node: int) -> List[int]:
        """Nodos internos del subárbol con raíz en node (incluido)."""
        stack, found = [node], []
        while stack:
            current = stack.pop()
            if current >= self.n_leaves:
                found.append(current)
                stack.extend(self.children(current))
        return sorted(found)

    def to_linkage(self) -> np.ndarray:
        """Matriz de enlace en formato scipy (n-1, 4)."""
        z = np.zeros((len(self.merges), 4), dtype=np.float64)
        for t, merge in enumerate(self.merges):
            z[t] = (merge.left, merge.right, merge.height, merge.size)
        return z

    def to_newick(self) -> str:
        """Texto Newick con longitudes de rama (altura del padre - altura del hijo)."""
        if self.n_leaves == 1:
            return f"{_newick_label(self.labels[0])};"
        labels = self.labels

        def render(node, parent_height: float) -> str:
            length = parent_height - node.dist
            if node.is_leaf():
                return f"{_newick_label(labels[node.id])}:{length:.17g}"
            left = render(node.get_left(), node.dist)
            right = render(node.get_right(), node.dist)
            return f"({left},{right}):{length:.17g}"

        root = to_tree(self.to_linkage())
        left = render(root.get_left(), root.dist)
        right = render(root.get_right(), root.dist)
        return f"({left},{right});"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n_leaves": self.n_leaves,
            "doc_ids": list(self.labels),
            "merges": [
                {"left": m.left, "right": m.right, "height": m.height, "size": m.size}
                for m in self.merges
            ],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Dendrogram':
        return cls(
            n_leaves=int(data["n_leaves"]),
            merges=tuple(
                Merge(int(m["left"]), int(m["right"]), float(m["height"]), int(m["size"]))
                for m in data["merges"]
            ),
            doc_ids=tuple(data.get("doc_ids", [])),
        )


def _newick_label(label: str) -> str:
    """Cita la etiqueta si contiene caracteres reservados de Newick."""
    if any(ch in label for ch in " ()[]':;,"):
        return "'" + label.replace("'", "''") + "'"
    return label


@dataclass(frozen=True)
class Clustering:
    """
    Etiqueta entera por documento: 1..k son clusters, 0 es "sin asignar".
    """
    labels: Tuple[int, ...]
    doc_ids: Tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def k(self) -> int:
        return len({label for label in self.labels if label != 0})

    @property
    def unassigned(self) -> int:
        return sum(1 for label in self.labels if label == 0)

    def sizes(self) -> Dict[int, int]:
        """Tamaño de cada cluster (incluye 0 si hay documentos sin asignar)."""
        counts: Dict[int, int] = {}
        for label in self.labels:
            counts[label] = counts.get(label, 0) + 1
        return dict(sorted(counts.items()))

    def members(self, label: int) -> List[int]:
        """Índices de los documentos con la etiqueta dada."""
        return [i for i, value in enumerate(self.labels) if value == label]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.labels, dtype=np.int64)

    @classmethod
    def from_labels(cls, labels: Sequence[int], doc_ids: Optional[Sequence[str]] = None) -> 'Clustering':
        labels = tuple(int(v) for v in labels)
        if doc_ids is None:
            doc_ids = tuple(str(i) for i in range(len(labels)))
        return cls(labels=labels, doc_ids=tuple(doc_ids))


@dataclass(frozen=True)
class CutParams:
    """Parámetros del corte dinámico del árbol."""
    min_cluster_size: int = 10
    cut_quantile: float = 0.99
    deep_split: bool = True
    cut_height: Optional[float] = None

    def __post_init__(self):
        if self.min_cluster_size < 1:
            raise InvalidInput("min_cluster_size debe ser >= 1")
        if not 0.0 < self.cut_quantile < 1.0:
            raise InvalidInput("cut_quantile debe estar en (0, 1)")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "min_cluster_size": self.min_cluster_size,
            "cut_quantile": self.cut_quantile,
            "deep_split": self.deep_split,
            "cut_height": self.cut_height,
        }
