"""Pruebas de extremo a extremo del pipeline."""

import numpy as np
import pytest

from agemap.analysis import build_incidence, weigh_matrix, weight_of, weighted_similarity
from agemap.config import PipelineConfig
from agemap.models import WeightScheme
from agemap.pipeline import AgeMapPipeline, parse_only
from agemap.utils.errors import EXIT_DATA, StageError
from common.protocol import read_clusters, read_json

from conftest import labels_by_group, make_document, random_corpus, to_wos

EXPECTED_FILES = {
    "corpus.jsonl", "quality_report.json", "run_meta.json", "weightcurve.csv",
    "clusters_cbc.csv", "clusters_asbc.csv",
    "dendrogram_cbc.json", "dendrogram_asbc.json", "dendrogram_cbc.nwk", "dendrogram_asbc.nwk",
    "comparison.json", "comparison.txt",
}


def run(inputs, out_dir, **overrides):
    config = PipelineConfig(inputs=[str(p) for p in inputs], output_dir=str(out_dir)).with_overrides(**overrides)
    return AgeMapPipeline(config.validate()).run()


class TestPlantedCorpus:

    def test_age_weighting_separates_groups(self, planted_export, tmp_path):
        result = run([planted_export], tmp_path / "out")

        cbc = labels_by_group(result.classical.clustering.doc_ids, result.classical.clustering.labels)
        asbc = labels_by_group(result.weighted.clustering.doc_ids, result.weighted.clustering.labels)
        assert result.classical.clustering.k == 2
        assert result.weighted.clustering.k == 3
        assert cbc["A"] == cbc["B"] and len(cbc["A"]) == 1
        assert cbc["C"] != cbc["A"]
        assert all(len(labels) == 1 for labels in asbc.values())
        assert len(set().union(*asbc.values())) == 3
        assert result.comparison.jaccard < 1.0

    def test_artifacts(self, planted_export, tmp_path):
        out = tmp_path / "out"
        result = run([planted_export], out)
        names = {p.name for p in out.iterdir()}
        assert EXPECTED_FILES <= names
        for label in result.cores:
            for prefix in ("core_cluster_{}.json", "core_cluster_{}.csv", "kneeplot_{}.csv", "histogram_{}.csv"):
                assert prefix.format(label) in names

        comparison = read_json(out / "comparison.json")
        assert comparison["k_a"] == 2 and comparison["k_b"] == 3
        assert set(comparison["cophenetic_fit"]) == {"cbc", "asbc"}
        assert comparison["confusion"]["total"] == 120

        clusters = read_clusters(out / "clusters_asbc.csv")
        assert len(clusters) == 120
        assert clusters[0][0] == "WOS:A00"

        meta = read_json(out / "run_meta.json")
        assert (meta["resolved_scheme"]["year_min"], meta["resolved_scheme"]["year_max"]) == (1800, 2000)
        assert meta["clusters"] == {"cbc": 2, "asbc": 3}

    def test_outputs_are_deterministic(self, planted_export, tmp_path):
        first, second = tmp_path / "first", tmp_path / "second"
        run([planted_export], first)
        run([planted_export], second)
        names = sorted(p.name for p in first.iterdir())
        assert names == sorted(p.name for p in second.iterdir())
        for name in names:
            if name != "run_meta.json":
                assert (first / name).read_bytes() == (second / name).read_bytes(), name

    def test_threshold_override_and_matrix_dump(self, planted_export, tmp_path):
        out = tmp_path / "out"
        result = run([planted_export], out, thresholds={1: 1e12}, dump_matrix=True)
        assert result.cores[1].threshold_source == "override"
        assert result.cores[1].core == ()
        assert (out / "similarity_cbc.csv").is_file()
        assert (out / "similarity_asbc.csv").is_file()


class TestUniformScheme:

    def test_branches_coincide(self, rng, tmp_path):
        completed = 0
        for trial in range(50):
            docs = random_corpus(rng, n_docs=int(rng.integers(12, 41)), n_refs=15, max_refs=6)
            path = tmp_path / f"random_{trial}.txt"
            path.write_text(to_wos(docs), encoding="utf-8")
            config = PipelineConfig(inputs=[str(path)], scheme=WeightScheme(uniform=True)).with_overrides(
                min_cluster_size=3, cut_quantile=0.9,
            )
            try:
                result = AgeMapPipeline(config).run(write=False)
            except StageError:
                continue
            completed += 1
            assert np.array_equal(result.classical.similarity.values, result.weighted.similarity.values)
            assert result.classical.tree == result.weighted.tree
            assert result.classical.clustering == result.weighted.clustering
            assert result.comparison.cophenetic_r == pytest.approx(1.0, abs=1e-12)
        assert completed >= 40


class TestFailures:

    def test_filter_leaves_nothing(self, planted_export, tmp_path):
        with pytest.raises(StageError) as info:
            run([planted_export], tmp_path / "out", year_min=2050)
        assert info.value.stage == "filter"
        assert info.value.exit_code == EXIT_DATA

    def test_quality_report_merges_files(self, sample_wos_path, planted_export):
        config = PipelineConfig(inputs=[str(sample_wos_path), str(planted_export), str(sample_wos_path)])
        documents, quality = parse_only(config)
        assert len(documents) == 5 + 120
        # un registro sin ER por cada lectura del ejemplo y cinco repetidos
        assert len(quality.skipped_records) == 1 + 1 + 5
        assert quality.skipped_records[0]["source"] == str(sample_wos_path)


def test_pruning_keeps_the_reference_universe():
    documents = [
        make_document("D1", 2000, ["New A, 2000, J", "Mid B, 1950, J"]),
        make_document("D2", 2000, ["New A, 2000, J", "Mid B, 1950, J"]),
        make_document("D3", 2000, ["New A, 2000, J"]),
        make_document("D4", 2000, ["Old Z, 1800, J"]),
    ]
    pipeline = AgeMapPipeline(PipelineConfig())
    _, incidence = build_incidence(documents)
    kept, pruned = pipeline.prune(documents, incidence)

    assert [doc.doc_id for doc in kept] == ["D1", "D2", "D3"]
    assert pipeline.quality.pruned == ["D4"]
    assert pruned.n_refs == 3
    assert pruned.universe == incidence.universe

    weighted = weigh_matrix(pruned, pruned.universe, WeightScheme())
    assert weighted.scheme.year_span == (1800, 2000)
    mid = weight_of(weighted.scheme, 1950)
    assert 1.04 < mid < 1.06
    similarity = weighted_similarity(weighted).values
    assert similarity[0, 1] == pytest.approx(100.0 ** 2 + mid ** 2, rel=1e-12)
