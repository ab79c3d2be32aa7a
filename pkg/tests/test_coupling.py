"""Pruebas del acoplamiento bibliográfico."""

import numpy as np
import pytest

from agemap.analysis import build_incidence, classical_similarity, to_distance, weigh_matrix, weighted_similarity
from agemap.models import Contribution, SimilarityKind, SimilarityMatrix, WeightScheme
from agemap.utils.errors import DegenerateSimilarity

from conftest import make_document, random_corpus


def similarity_of(values):
    n = len(values)
    return SimilarityMatrix.from_dense(np.asarray(values, dtype=float), SimilarityKind.CLASSICAL,
                                       [f"d{i}" for i in range(n)])


class TestClassical:

    def test_shared_counts(self):
        docs = [
            make_document("D1", 2000, ["A, 1990, J", "B, 1991, J", "C, 1992, J"]),
            make_document("D2", 2000, ["B, 1991, J", "C, 1992, J", "D, 1993, J"]),
            make_document("D3", 2000, ["X, 1980, J"]),
        ]
        _, m = build_incidence(docs)
        s = classical_similarity(m)
        assert s[0, 1] == s[1, 0] == 2.0
        assert s[0, 2] == 0.0
        assert s[0, 0] == 3.0
        assert s.kind is SimilarityKind.CLASSICAL

    def test_matches_set_oracle(self, rng):
        for _ in range(30):
            docs = random_corpus(rng, n_docs=int(rng.integers(2, 13)), n_refs=int(rng.integers(1, 21)))
            universe, m = build_incidence(docs)
            rows = m.rows
            s = classical_similarity(m).values
            w = weigh_matrix(m, universe, WeightScheme())
            sw = weighted_similarity(w).values
            for i in range(m.n_docs):
                for j in range(m.n_docs):
                    shared = sorted(rows[i] & rows[j])
                    assert s[i, j] == len(shared)
                    expected = sum(w.column_weights[c] * w.column_weights[c] for c in shared)
                    assert sw[i, j] == pytest.approx(expected, rel=1e-12, abs=0)


class TestWeighted:

    def test_squared_contribution(self):
        docs = [
            make_document("D1", 2000, ["New, 2000, J", "Old, 1900, J"]),
            make_document("D2", 2000, ["New, 2000, J", "Old, 1900, J"]),
            make_document("D3", 2000, ["New, 2000, J"]),
        ]
        universe, m = build_incidence(docs)
        s = weighted_similarity(weigh_matrix(m, universe, WeightScheme()))
        assert s[0, 2] == pytest.approx(10000.0, abs=1e-6)
        assert s[0, 1] == pytest.approx(10001.0, abs=1e-6)
        assert s.kind is SimilarityKind.AGE_SENSITIVE

    def test_linear_contribution(self):
        docs = [
            make_document("D1", 2000, ["New, 2000, J", "Old, 1900, J"]),
            make_document("D2", 2000, ["New, 2000, J", "Old, 1900, J"]),
        ]
        universe, m = build_incidence(docs)
        s = weighted_similarity(weigh_matrix(m, universe, WeightScheme()), Contribution.LINEAR)
        assert s[0, 1] == pytest.approx(101.0, abs=1e-9)

    def test_uniform_is_bit_identical_to_classical(self, rng):
        for _ in range(20):
            docs = random_corpus(rng, n_docs=15, n_refs=25)
            universe, m = build_incidence(docs)
            classical = classical_similarity(m)
            weighted = weighted_similarity(weigh_matrix(m, universe, WeightScheme(uniform=True)))
            assert np.array_equal(classical.values, weighted.values)

    def test_recent_shared_references_weigh_more(self):
        k = 3
        recent = [f"Recent R{i}, 1999, J NEW, V{i}, P1" for i in range(k)]
        ancient = [f"Ancient A{i}, 1850, J OLD, V{i}, P1" for i in range(k)]
        docs = [
            make_document("P1", 2000, recent + ancient),
            make_document("P2", 2000, recent),
            make_document("P3", 2000, ancient),
        ]
        universe, m = build_incidence(docs)
        classical = classical_similarity(m)
        weighted = weighted_similarity(weigh_matrix(m, universe, WeightScheme()))
        assert classical[0, 1] == classical[0, 2]
        assert weighted[0, 1] > weighted[0, 2]


class TestDistance:

    def test_linear_transform(self):
        s = similarity_of([[4, 0, 5], [0, 6, 10], [5, 10, 12]])
        d = to_distance(s)
        assert d[0, 1] == 1.0
        assert d[0, 2] == 0.5
        assert d[1, 2] == 0.0
        assert d[1, 1] == 0.0
        assert np.array_equal(d.values, d.values.T)

    def test_order_reversal(self, rng):
        docs = random_corpus(rng, n_docs=12, n_refs=10)
        _, m = build_incidence(docs)
        s = classical_similarity(m)
        if s.condensed.max() == 0:
            pytest.skip("corpus sin acoplamientos")
        d = to_distance(s)
        order_s = np.argsort(-s.condensed, kind="stable")
        assert np.all(np.diff(d.condensed[order_s]) >= 0)
        assert d.condensed.min() >= 0.0 and d.condensed.max() <= 1.0

    def test_degenerate(self):
        with pytest.raises(DegenerateSimilarity):
            to_distance(similarity_of([[3, 0], [0, 2]]))
