"""
Agrupamiento jerárquico por enlace promedio (UPGMA), distancias
cofenéticas y corte dinámico del árbol.

Empates: siempre gana el par de menor índice, de modo que el resultado
es el mismo en cualquier plataforma.
"""

from typing import Dict, List, Sequence

import numpy as np
from scipy.cluster.hierarchy import cophenet

from ..models import Clustering, CutParams, Dendrogram, DistanceMatrix, Merge
from ..utils.errors import InvalidInput, MismatchedDocs, ZeroVariance


def average_linkage(d: DistanceMatrix) -> Dendrogram:
    """
    Fusiona repetidamente el par de clusters con menor distancia media.

    El cluster resultante ocupa la casilla del menor de los dos índices; esa
    casilla coincide siempre con la hoja mínima del cluster, así que la
    búsqueda por filas de argmin aplica la regla de desempate.
    """
    n = d.n
    if n < 2:
        raise InvalidInput("el enlace promedio necesita al menos 2 documentos")

    dist = d.values.copy()
    np.fill_diagonal(dist, np.inf)
    sizes = np.ones(n, dtype=np.int64)
    node_id = np.arange(n)
    merges: List[Merge] = []

    for t in range(n - 1):
        i, j = divmod(int(np.argmin(dist)), n)
        height = float(dist[i, j])
        size = int(sizes[i] + sizes[j])
        merges.append(Merge(int(node_id[i]), int(node_id[j]), height, size))

        # Lance–Williams para el promedio ponderado por tamaño
        updated = (sizes[i] * dist[i] + sizes[j] * dist[j]) / size
        dist[i, :] = updated
        dist[:, i] = updated
        dist[i, i] = np.inf
        dist[j, :] = np.inf
        dist[:, j] = np.inf

        sizes[i] = size
        node_id[i] = n + t

    return Dendrogram(n_leaves=n, merges=tuple(merges), doc_ids=d.doc_ids)


def cophenetic(dg: Dendrogram) -> DistanceMatrix:
    """coph(i, j) = altura de la fusión más baja que une las hojas i y j."""
    if dg.n_leaves < 2:
        return DistanceMatrix(condensed=np.zeros(0), doc_ids=dg.labels)
    condensed = np.asarray(cophenet(dg.to_linkage()), dtype=np.float64)
    return DistanceMatrix(condensed=condensed, doc_ids=dg.labels)


def cophenetic_correlation(a: DistanceMatrix, b: DistanceMatrix) -> float:
    """
    Correlación de Pearson entre los triángulos superiores de a y b.

    Raises:
        MismatchedDocs: si las matrices no cubren los mismos documentos
        ZeroVariance: si alguna es constante fuera de la diagonal
    """
    if a.n != b.n or a.doc_ids != b.doc_ids:
        raise MismatchedDocs("las matrices de distancia no cubren los mismos documentos")
    x = np.asarray(a.condensed, dtype=np.float64)
    y = np.asarray(b.condensed, dtype=np.float64)
    if x.size == 0 or np.ptp(x) == 0.0 or np.ptp(y) == 0.0:
        raise ZeroVariance("una de las matrices es constante fuera de la diagonal")

    r = float(np.corrcoef(x, y)[0, 1])
    return min(1.0, max(-1.0, r))


class _TreeCutter:
    """
    Corte dinámico en tres pasos:

    1. corte estático a la altura h*
    2. las ramas menores que min_cluster_size se disuelven: cada hoja se une
       al cluster superviviente de menor distancia media (o queda con
       etiqueta 0 si no sobrevive ninguno)
    3. (deep_split) cada cluster superviviente cuyo rango de alturas supera
       h*/2 se vuelve a cortar al mismo cuantil de sus propias alturas,
       recursivamente, solo si todas las piezas alcanzan min_cluster_size
    """

    def __init__(self, dg: Dendrogram, d: DistanceMatrix, params: CutParams):
        self.dg = dg
        self.dist = d.values
        self.params = params
        self.members = dg.members()

    def size(self, node: int) -> int:
        return len(self.members[node])

    def nearest(self, leaf: int, nodes: Sequence[int]) -> int:
        """Posición en nodes de la rama de menor distancia media a leaf."""
        means = [float(self.dist[leaf, self.members[node]].mean()) for node in nodes]
        return int(np.argmin(means))

    def static_cut(self, node: int, height: float) -> List[int]:
        """Ramas maximales del subárbol de node con altura <= height."""
        branches, stack = [], [node]
        while stack:
            current = stack.pop()
            if self.dg.node_height(current) <= height:
                branches.append(current)
            else:
                left, right = self.dg.children(current)
                stack.extend((right, left))
        return sorted(branches, key=lambda b: self.members[b][0])

    def refine(self, node: int, level: float) -> List[int]:
        internal = self.dg.internal_nodes(node)
        if not internal:
            return [node]
        heights = np.array([self.dg.node_height(v) for v in internal])
        if self.dg.node_height(node) - heights.min() <= level / 2:
            return [node]

        recut = float(np.quantile(heights, self.params.cut_quantile))
        pieces = self.static_cut(node, recut)
        if len(pieces) < 2 or any(self.size(p) < self.params.min_cluster_size for p in pieces):
            return [node]
        return [sub for p in pieces for sub in self.refine(p, recut)]

    def cut(self) -> List[int]:
        params = self.params
        if params.cut_height is not None:
            level = float(params.cut_height)
        else:
            level = float(np.quantile(self.dg.heights, params.cut_quantile))

        branches = self.static_cut(self.dg.root, level)
        surviving = [b for b in branches if self.size(b) >= params.min_cluster_size]
        if not surviving:
            return [0] * self.dg.n_leaves

        dissolved: Dict[int, List[int]] = {b: [] for b in surviving}
        for branch in branches:
            if branch in dissolved:
                continue
            for leaf in self.members[branch]:
                dissolved[surviving[self.nearest(leaf, surviving)]].append(leaf)

        clusters: List[List[int]] = []
        for branch in surviving:
            pieces = self.refine(branch, level) if params.deep_split else [branch]
            groups = [list(self.members[p]) for p in pieces]
            # las hojas absorbidas van a la pieza más cercana de su cluster
            for leaf in dissolved[branch]:
                groups[self.nearest(leaf, pieces)].append(leaf)
            clusters.extend(groups)

        labels = [0] * self.dg.n_leaves
        for index, leaves in enumerate(clusters, start=1):
            for leaf in leaves:
                labels[leaf] = index
        return _compact(labels)


def _compact(labels: Sequence[int]) -> List[int]:
    """Renumera 1..k por tamaño descendente; empates por hoja mínima."""
    groups: Dict[int, List[int]] = {}
    for leaf, label in enumerate(labels):
        if label:
            groups.setdefault(label, []).append(leaf)
    order = sorted(groups, key=lambda g: (-len(groups[g]), groups[g][0]))
    mapping = {old: new for new, old in enumerate(order, start=1)}
    return [mapping.get(label, 0) for label in labels]


def dynamic_cut(dg: Dendrogram, d: DistanceMatrix, params: CutParams = CutParams()) -> Clustering:
    """Extrae clusters del árbol según la forma de sus ramas."""
    if d.n != dg.n_leaves:
        raise MismatchedDocs("el árbol y la matriz de distancias tienen tamaños distintos")
    if dg.n_leaves == 1:
        labels = [1 if params.min_cluster_size <= 1 else 0]
    else:
        labels = _TreeCutter(dg, d, params).cut()
    return Clustering.from_labels(labels, dg.labels)
