"""Algoritmos del acoplamiento bibliográfico sensible a la antigüedad."""
from .ingest import (
    CsvColumns,
    ExportFormat,
    WosPlaintextParser,
    canonicalize,
    decode_export,
    load_documents,
    make_reference,
    parse_export,
    parse_ref_year,
    to_document,
)
from .corpus import build_incidence, build_universe, corpus_statistics, prune_isolated, year_range
from .weighting import curve_rows, reference_weights, resolve_scheme, weigh_matrix, weight_curve, weight_of
from .coupling import classical_similarity, to_distance, weighted_similarity
from .hclust import average_linkage, cophenetic, cophenetic_correlation, dynamic_cut
from .compare import compare_full, confusion, pair_jaccard
from .core import age_histogram, core_report, cumulative_weights, detect_knee, reference_catalog
