"""Modelos de datos de agemap."""
from .document import RawRecord, ReferenceKey, Document
from .scheme import WeightScheme
from .matrices import (
    Contribution,
    DistanceMatrix,
    IncidenceMatrix,
    ReferenceUniverse,
    SimilarityKind,
    SimilarityMatrix,
    WeightedIncidence,
)
from .tree import Clustering, CutParams, Dendrogram, Merge
from .reports import ComparisonReport, ConfusionMatrix, CoreEntry, CoreReport, QualityReport
