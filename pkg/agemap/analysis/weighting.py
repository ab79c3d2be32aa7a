"""
Pesos por antigüedad de las referencias.

    s = exp_lo + (exp_hi - exp_lo) * (y - y_min) / (y_max - y_min)
    v = base ** s
    w = w_lo + (w_hi - w_lo) * (v - base**exp_lo) / (base**exp_hi - base**exp_lo)

Los años fuera de [y_min, y_max] se recortan al rango. Con y_min = y_max
todos los pesos valen w_hi.
"""

from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse

from ..models import IncidenceMatrix, ReferenceUniverse, WeightedIncidence, WeightScheme
from .corpus import year_range


def resolve_scheme(scheme: WeightScheme, universe: ReferenceUniverse) -> WeightScheme:
    """Completa el rango de años del esquema con el del corpus."""
    if scheme.is_resolved:
        return scheme
    y_min, y_max = year_range(universe)
    return scheme.with_years(y_min, y_max)


def weight_curve(scheme: WeightScheme, years) -> np.ndarray:
    """Pesos vectorizados para un arreglo de años."""
    years = np.asarray(years, dtype=np.float64)
    if scheme.uniform:
        return np.ones_like(years)
    y_min, y_max = scheme.year_span
    if y_min == y_max:
        return np.full_like(years, scheme.w_hi)

    clamped = np.clip(years, y_min, y_max)
    s = scheme.exp_lo + (scheme.exp_hi - scheme.exp_lo) * (clamped - y_min) / (y_max - y_min)
    # (b^s - b^lo) / (b^hi - b^lo) sin cancelación: exacto en ambos extremos
    log_base = np.log(scheme.base)
    fraction = (
        np.exp((s - scheme.exp_hi) * log_base)
        * np.expm1((scheme.exp_lo - s) * log_base)
        / np.expm1((scheme.exp_lo - scheme.exp_hi) * log_base)
    )
    return scheme.w_lo + (scheme.w_hi - scheme.w_lo) * fraction


def weight_of(scheme: WeightScheme, y: int) -> float:
    """Peso de una referencia publicada en el año y."""
    return float(weight_curve(scheme, [y])[0])


def reference_weights(scheme: WeightScheme, years: Sequence[Optional[int]]) -> np.ndarray:
    """Peso por columna; las referencias sin año reciben w_lo (1 si es uniforme)."""
    floor = 1.0 if scheme.uniform else scheme.w_lo
    known = np.array([y for y in years if y is not None], dtype=np.float64)
    known_weights = weight_curve(scheme, known) if known.size else known
    out = np.full(len(years), floor, dtype=np.float64)
    mask = np.array([y is not None for y in years], dtype=bool)
    if mask.any():
        out[mask] = known_weights
    return out


def weigh_matrix(m: IncidenceMatrix, u: ReferenceUniverse, scheme: WeightScheme) -> WeightedIncidence:
    """
    Sustituye cada 1 de la columna r por el peso de la referencia r.
    Las celdas nulas siguen sin almacenarse.
    """
    # el esquema uniforme no necesita años
    if not scheme.uniform or any(y is not None for y in u.years):
        scheme = resolve_scheme(scheme, u)
    weights = reference_weights(scheme, u.years)
    binary = m.matrix.astype(np.float64).tocsr()
    weighted = (binary @ sparse.diags(weights, format="csr")).tocsr()
    weighted.sort_indices()
    return WeightedIncidence(
        doc_ids=m.doc_ids,
        matrix=weighted,
        binary=binary,
        column_weights=weights,
        scheme=scheme,
    )


def curve_rows(scheme: WeightScheme) -> List[Tuple[int, float]]:
    """Filas (año, peso) para cada año del rango del esquema."""
    y_min, y_max = scheme.year_span
    years = np.arange(y_min, y_max + 1)
    return [(int(y), float(w)) for y, w in zip(years, weight_curve(scheme, years))]
