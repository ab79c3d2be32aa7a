"""
Matriz de incidencia publicación–referencia.

Construye el universo de referencias (unión ordenada por cadena canónica),
la matriz binaria dispersa y la poda de documentos aislados.
"""

from typing import Dict, List, Sequence, Tuple

import numpy as np
from scipy import sparse

from ..models import Document, IncidenceMatrix, ReferenceKey, ReferenceUniverse
from ..utils.errors import DuplicateDocId, NoYearsAvailable


def build_universe(docs: Sequence[Document]) -> ReferenceUniverse:
    """Unión deduplicada de referencias; columnas en orden canónico."""
    chosen: Dict[str, ReferenceKey] = {}
    for doc in docs:
        for ref in doc.references:
            known = chosen.get(ref.canonical)
            # el texto original más pequeño hace el resultado independiente del orden
            if known is None or ref.raw < known.raw:
                chosen[ref.canonical] = ref
    refs = tuple(chosen[c] for c in sorted(chosen))
    return ReferenceUniverse(refs=refs, index={ref.canonical: i for i, ref in enumerate(refs)})


def build_incidence(docs: Sequence[Document]) -> Tuple[ReferenceUniverse, IncidenceMatrix]:
    """
    Celda (d, r) = 1 si el documento d cita la referencia r.

    Raises:
        DuplicateDocId: si dos documentos comparten identificador
    """
    seen = set()
    for doc in docs:
        if doc.doc_id in seen:
            raise DuplicateDocId(f"identificador de documento repetido: {doc.doc_id}")
        seen.add(doc.doc_id)

    universe = build_universe(docs)
    indptr = [0]
    indices: List[int] = []
    for doc in docs:
        columns = sorted({universe.index[ref.canonical] for ref in doc.references})
        indices.extend(columns)
        indptr.append(len(indices))

    data = np.ones(len(indices), dtype=np.int64)
    matrix = sparse.csr_matrix(
        (data, np.asarray(indices, dtype=np.int64), np.asarray(indptr, dtype=np.int64)),
        shape=(len(docs), len(universe)),
    )
    incidence = IncidenceMatrix(
        doc_ids=tuple(doc.doc_id for doc in docs),
        matrix=matrix,
        universe=universe,
    )
    return universe, incidence


def prune_isolated(m: IncidenceMatrix) -> Tuple[IncidenceMatrix, List[str]]:
    """
    Elimina, en una sola pasada, los documentos que no comparten ninguna
    referencia con otro documento. El universo de columnas no cambia.
    """
    if m.n_docs == 0:
        return m, []
    shared = (m.matrix @ m.matrix.T).tolil()
    shared.setdiag(0)
    shared = shared.tocsr()
    shared.eliminate_zeros()
    partners = shared.getnnz(axis=1)
    keep = np.flatnonzero(partners > 0)
    removed = [m.doc_ids[i] for i in np.flatnonzero(partners == 0)]
    if not removed:
        return m, []
    return m.subset(keep.tolist()), removed


def year_range(u: ReferenceUniverse) -> Tuple[int, int]:
    """
    Mínimo y máximo de los años interpretables del universo.

    Raises:
        NoYearsAvailable: si ninguna referencia tiene año
    """
    years = [y for y in u.years if y is not None]
    if not years:
        raise NoYearsAvailable("ninguna referencia tiene un año interpretable")
    return min(years), max(years)


def corpus_statistics(docs: Sequence[Document], m: IncidenceMatrix) -> Dict[str, object]:
    """Resumen del corpus para el informe de calidad."""
    counts = np.asarray(m.matrix.getnnz(axis=1)) if m.n_docs else np.zeros(0)
    years = [y for y in m.universe.years if y is not None]
    return {
        "documents": m.n_docs,
        "references": m.n_refs,
        "incidence_nonzeros": int(m.matrix.nnz),
        "mean_references_per_document": float(counts.mean()) if counts.size else 0.0,
        "reference_year_span": [min(years), max(years)] if years else None,
        "source_year_span": [min(d.pub_year for d in docs), max(d.pub_year for d in docs)] if docs else None,
    }
