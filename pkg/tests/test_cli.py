"""Pruebas de la línea de comandos."""

import json

import pytest

from agemap.cli import build_parser, load_config, main
from agemap.handlers.command_handler import run_scheme
from agemap.models import WeightScheme
from agemap.utils.errors import EXIT_DATA, EXIT_OK, EXIT_USAGE, DataError
from common.protocol import ArtifactFactory, read_json

from conftest import make_document


def write_labels(directory, name, rows):
    return ArtifactFactory.create_clusters(name, rows).write(directory)


@pytest.fixture
def run_output(planted_export, tmp_path):
    out = tmp_path / "run"
    assert main(["run", str(planted_export), "-o", str(out), "-q"]) == EXIT_OK
    return out


class TestWeights:

    def test_default_curve(self, capsys):
        assert main(["weights", "-q"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "year,weight"
        assert lines[1] == "1500,1"
        year, weight = lines[-1].split(",")
        assert year == "2100"
        assert float(weight) == pytest.approx(100.0, abs=1e-9)
        assert len(lines) == 602

    def test_uniform_curve(self, capsys):
        assert main(["weights", "--uniform", "-q"]) == EXIT_OK
        weights = {line.split(",")[1] for line in capsys.readouterr().out.splitlines()[1:]}
        assert weights == {"1"}

    def test_invalid_scheme_is_usage_error(self, capsys):
        assert main(["weights", "--base", "0.5"]) == EXIT_USAGE
        assert "agemap: error" in capsys.readouterr().err


class TestCompare:

    def test_identical_files(self, tmp_path, capsys):
        path = write_labels(tmp_path, "a", [("d1", 1), ("d2", 1), ("d3", 2), ("d4", 2)])
        assert main(["compare", str(path), str(path), "-q"]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["jaccard"] == 1.0
        assert report["cophenetic_r"] is None

    def test_table(self, tmp_path, capsys):
        a = write_labels(tmp_path, "a", [("d1", 1), ("d2", 1), ("d3", 2)])
        b = write_labels(tmp_path, "b", [("d3", 2), ("d2", 2), ("d1", 1)])
        assert main(["compare", str(a), str(b), "--table", "-q"]) == EXIT_OK
        assert capsys.readouterr().out.splitlines()[0].startswith("A \\ B")

    def test_mismatched_documents(self, tmp_path, capsys):
        a = write_labels(tmp_path, "a", [("d1", 1), ("d2", 1)])
        b = write_labels(tmp_path, "b", [("d1", 1), ("d9", 1)])
        assert main(["compare", str(a), str(b)]) == EXIT_DATA


class TestUsage:

    @pytest.mark.parametrize("argv", [
        [],
        ["frobnicate"],
        ["run", "--cut-quantile", "abc"],
        ["run", "--threshold", "1:150"],
        ["run"],
        ["run", "missing.txt"],
    ])
    def test_usage_errors(self, argv, capsys):
        assert main(argv) == EXIT_USAGE
        assert capsys.readouterr().err.startswith("❌ agemap: error")

    def test_config_file_and_flags(self, tmp_path):
        config = tmp_path / "agemap.toml"
        config.write_text(
            "[clustering]\nmin_cluster_size = 4\n\n[core]\nthresholds = { 1 = 150.0 }\n",
            encoding="utf-8",
        )
        args = build_parser().parse_args([
            "run", "x.txt", "--config", str(config), "--min-cluster-size", "7", "--threshold", "2=100",
            "--exp-range", "2", "8", "--no-deep-split",
        ])
        loaded = load_config(args)
        assert loaded.cut.min_cluster_size == 7
        assert loaded.cut.deep_split is False
        assert loaded.thresholds == {1: 150.0, 2: 100.0}
        assert (loaded.scheme.exp_lo, loaded.scheme.exp_hi) == (2.0, 8.0)
        assert loaded.inputs == ["x.txt"]


class TestRun:

    def test_run_writes_artifacts(self, run_output):
        assert (run_output / "clusters_asbc.csv").is_file()
        assert read_json(run_output / "run_meta.json")["clusters"] == {"cbc": 2, "asbc": 3}

    def test_filter_failure_reports_stage(self, planted_export, tmp_path, capsys):
        code = main(["run", str(planted_export), "-o", str(tmp_path / "x"), "--year-min", "2050", "-q"])
        assert code == EXIT_DATA
        assert "[filter]" in capsys.readouterr().err

    def test_parse(self, sample_wos_path, tmp_path):
        out = tmp_path / "parsed"
        assert main(["parse", str(sample_wos_path), "-o", str(out), "-q"]) == EXIT_OK
        assert len((out / "corpus.jsonl").read_text(encoding="utf-8").splitlines()) == 5
        assert read_json(out / "quality_report.json")["skipped_count"] == 1


class TestFollowUps:

    def test_core(self, run_output, tmp_path):
        out = tmp_path / "cores"
        code = main([
            "core", "--corpus", str(run_output / "corpus.jsonl"),
            "--labels", str(run_output / "clusters_asbc.csv"),
            "-o", str(out), "--threshold", "1=150", "-q",
        ])
        assert code == EXIT_OK
        core = read_json(out / "core_cluster_1.json")
        assert core["threshold_source"] == "override"
        assert all(entry["cum_weight"] > 150 for entry in core["core"])
        # los núcleos recalculados coinciden con los de la ejecución completa
        assert (out / "core_cluster_2.json").read_bytes() == (run_output / "core_cluster_2.json").read_bytes()

    def test_subcluster(self, run_output, capsys):
        argv = [
            "subcluster", "--corpus", str(run_output / "corpus.jsonl"),
            "--rows", str(run_output / "clusters_cbc.csv"),
            "--cols", str(run_output / "clusters_asbc.csv"),
            "--cell", "1", "1", "-q",
        ]
        assert main(argv) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["cluster_id"] == "1/1"
        assert report["n_documents"] == 40

    def test_empty_cell(self, run_output, capsys):
        argv = [
            "subcluster", "--corpus", str(run_output / "corpus.jsonl"),
            "--rows", str(run_output / "clusters_cbc.csv"),
            "--cols", str(run_output / "clusters_asbc.csv"),
            "--cell", "2", "1",
        ]
        assert main(argv) == EXIT_DATA
        assert "vacía" in capsys.readouterr().err

    def test_core_skips_clusters_without_knee(self, tmp_path):
        documents = [
            make_document("D1", 2000, ["A, 1990, J", "B, 1991, J"]),
            make_document("D2", 2000, ["A, 1990, J", "B, 1991, J"]),
            make_document("D3", 2000, ["C, 1980, J", "D, 1985, J", "E, 1995, J", "F, 1999, J"]),
            make_document("D4", 2000, ["C, 1980, J", "D, 1985, J", "E, 1995, J"]),
        ]
        corpus = ArtifactFactory.create_corpus(doc.to_dict() for doc in documents).write(tmp_path)
        labels = write_labels(tmp_path, "asbc", [("D1", 1), ("D2", 1), ("D3", 2), ("D4", 2)])
        out = tmp_path / "cores"
        assert main(["core", "--corpus", str(corpus), "--labels", str(labels), "-o", str(out), "-q"]) == EXIT_OK
        # dos referencias no bastan para una rodilla
        assert not (out / "core_cluster_1.json").exists()
        assert read_json(out / "core_cluster_2.json")["n_documents"] == 2


class TestRunYearRange:

    def corpus_dir(self, tmp_path):
        documents = [
            make_document("D1", 2000, ["New A, 2000, J", "Mid B, 1950, J"]),
            make_document("D2", 2000, ["New A, 2000, J", "Mid B, 1950, J"]),
            make_document("D3", 2000, ["New A, 2000, J", "Late C, 1990, J"]),
        ]
        corpus = ArtifactFactory.create_corpus(doc.to_dict() for doc in documents).write(tmp_path)
        labels = write_labels(tmp_path, "asbc", [("D1", 1), ("D2", 1), ("D3", 1)])
        return corpus, labels

    def write_meta(self, directory):
        data = {"resolved_scheme": WeightScheme(y_min=1800, y_max=2000).to_dict()}
        return ArtifactFactory.create_run_meta(data).write(directory)

    def test_run_scheme_reads_sibling_meta(self, tmp_path):
        corpus, _ = self.corpus_dir(tmp_path)
        self.write_meta(tmp_path)
        assert run_scheme(WeightScheme(), str(corpus)).year_span == (1800, 2000)
        # las opciones explícitas mandan
        assert run_scheme(WeightScheme(y_min=1900), str(corpus)).year_span == (1900, 2000)

    def test_run_scheme_without_meta(self, tmp_path):
        corpus, _ = self.corpus_dir(tmp_path)
        assert not run_scheme(WeightScheme(), str(corpus)).is_resolved
        with pytest.raises(DataError):
            run_scheme(WeightScheme(), str(corpus), str(tmp_path / "missing.json"))

    def test_core_weights_follow_the_run(self, tmp_path):
        corpus, labels = self.corpus_dir(tmp_path)
        out = tmp_path / "cores"
        argv = ["core", "--corpus", str(corpus), "--labels", str(labels), "-o", str(out), "-q"]

        assert main(argv) == EXIT_OK
        # sin metadatos el rango es el del corpus: MID B (1950) pesa 1 en cada uno de sus dos documentos
        assert (out / "kneeplot_1.csv").read_text(encoding="utf-8").splitlines()[2] == "2,2"

        self.write_meta(tmp_path)
        assert main(argv) == EXIT_OK
        last = float((out / "kneeplot_1.csv").read_text(encoding="utf-8").splitlines()[-1].split(",")[1])
        assert 2.05 < last < 2.15

    def test_missing_meta_file(self, tmp_path):
        corpus, labels = self.corpus_dir(tmp_path)
        argv = ["core", "--corpus", str(corpus), "--labels", str(labels), "--meta", str(tmp_path / "nope.json")]
        assert main(argv + ["-o", str(tmp_path / "cores"), "-q"]) == EXIT_DATA
