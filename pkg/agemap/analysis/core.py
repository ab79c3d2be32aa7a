"""
Núcleo de referencias de un cluster.

Cada referencia citada en el cluster recibe su peso acumulado (CDM):
peso por antigüedad × número de documentos del cluster que la citan. La
curva descendente de CDM se corta en su rodilla (o en un umbral manual)
y el núcleo son las entradas por encima del umbral.
"""

from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..models import CoreEntry, CoreReport, Document, IncidenceMatrix, WeightScheme
from ..utils.errors import InvalidInput, TooShort
from .weighting import reference_weights, resolve_scheme

# Fracción de la caída total por debajo de la cual la curva se trata como recta
LINEAR_TOLERANCE = 1e-9


def reference_catalog(docs: Iterable[Document]) -> Dict[str, Document]:
    """Documentos del corpus indexados por la clave con la que se los cita."""
    catalog: Dict[str, Document] = {}
    for doc in docs:
        if doc.cited_as and doc.cited_as not in catalog:
            catalog[doc.cited_as] = doc
    return catalog


def _scheme_for(m: IncidenceMatrix, scheme: WeightScheme) -> WeightScheme:
    if scheme.uniform and all(y is None for y in m.universe.years):
        return scheme
    return resolve_scheme(scheme, m.universe)


def cumulative_weights(cluster: Iterable[int], m: IncidenceMatrix, scheme: WeightScheme,
                       catalog: Optional[Mapping[str, Document]] = None) -> List[CoreEntry]:
    """
    Entradas de todas las referencias citadas por al menos un documento del
    cluster, por CDM descendente (empates por cadena canónica).
    """
    rows = sorted(set(int(r) for r in cluster))
    if not rows:
        return []
    scheme = _scheme_for(m, scheme)
    weights = reference_weights(scheme, m.universe.years)
    counts = np.asarray(m.matrix[rows].getnnz(axis=0)).ravel()

    ranked: List[Tuple[float, int, int]] = []
    for column in np.flatnonzero(counts):
        count = int(counts[column])
        ranked.append((float(weights[column]) * count, count, int(column)))
    refs = m.universe.refs
    ranked.sort(key=lambda item: (-item[0], refs[item[2]].canonical))

    entries = []
    for rank, (cum_weight, count, column) in enumerate(ranked, start=1):
        ref = refs[column]
        source = catalog.get(ref.canonical) if catalog else None
        entries.append(CoreEntry(
            ref=ref,
            cum_weight=cum_weight,
            occurrence_count=count,
            rank=rank,
            weight=float(weights[column]),
            title=source.title if source else "",
            categories=source.categories if source else (),
        ))
    return entries


def detect_knee(curve: Sequence[float]) -> Tuple[int, float]:
    """
    Rodilla de una curva descendente: el punto más alejado de la cuerda que
    une el primero y el último. Si ese punto queda bajo la cuerda es el
    primero del tramo plano y la rodilla es el rango anterior.

    Returns:
        (rango 1-based, valor en ese rango)

    Raises:
        TooShort: con menos de 3 puntos
    """
    values = np.asarray(curve, dtype=np.float64)
    n = values.size
    if n < 3:
        raise TooShort(f"la curva necesita al menos 3 puntos (tiene {n})")

    head, tail = values[0], values[-1]
    drop = head - tail
    if drop <= 0:
        return n, float(tail)

    ranks = np.arange(n, dtype=np.float64)
    # distancia con signo a la cuerda; positiva por encima
    signed = ((n - 1) * (values - head) - (tail - head) * ranks) / np.hypot(n - 1, tail - head)
    distance = np.abs(signed)
    best = int(np.argmax(distance))
    if distance[best] < LINEAR_TOLERANCE * drop:
        return n, float(tail)

    rank = best + 1
    if signed[best] < 0 and rank > 1:
        rank -= 1
    return rank, float(values[rank - 1])


def age_histogram(entries: Iterable[CoreEntry], bin_width: int) -> Dict[Optional[int], int]:
    """Recuento por intervalos de bin_width años; None para las referencias sin año."""
    counts: Dict[Optional[int], int] = {}
    for entry in entries:
        year = entry.ref.pub_year
        key = None if year is None else (year // bin_width) * bin_width
        counts[key] = counts.get(key, 0) + 1
    dated = sorted(k for k in counts if k is not None)
    ordered = {k: counts[k] for k in dated}
    if None in counts:
        ordered[None] = counts[None]
    return ordered


def core_report(cluster_id: int, cluster: Iterable[int], m: IncidenceMatrix, scheme: WeightScheme,
                override_threshold: Optional[float] = None, bin_width: int = 5,
                catalog: Optional[Mapping[str, Document]] = None) -> CoreReport:
    """
    Ranking, umbral y núcleo de un cluster. Con override_threshold se usa ese
    umbral en lugar de la rodilla.
    """
    if bin_width < 1:
        raise InvalidInput("bin_width debe ser >= 1")
    rows = sorted(set(int(r) for r in cluster))
    entries = cumulative_weights(rows, m, scheme, catalog)

    if override_threshold is not None:
        threshold = float(override_threshold)
        knee_rank = sum(1 for e in entries if e.cum_weight > threshold)
        source = "override"
    else:
        knee_rank, threshold = detect_knee([e.cum_weight for e in entries])
        source = "knee"

    core = [e for e in entries if e.cum_weight > threshold]
    return CoreReport(
        cluster_id=cluster_id,
        entries=tuple(entries),
        knee_rank=knee_rank,
        threshold=threshold,
        threshold_source=source,
        bin_width=bin_width,
        age_histogram=age_histogram(core, bin_width),
        n_documents=len(rows),
    )
