"""Pruebas de la lectura de exportaciones."""

import pytest

from agemap.analysis.ingest import (
    CsvColumns,
    ExportFormat,
    canonicalize,
    load_documents,
    make_reference,
    parse_export,
    parse_ref_year,
    to_document,
)
from agemap.models import QualityReport, RawRecord
from agemap.utils.errors import EncodingError, FormatMismatch, MalformedRecord, MissingYear
from common.protocol import ArtifactFactory


class TestCanonicalize:

    def test_doi_suffix_and_case(self):
        a = canonicalize("Kessler MM, 1963, AM DOC, V14, P10, DOI 10.1002/asi.5090140103")
        b = canonicalize("KESSLER  MM, 1963, AM DOC, V14, P10.")
        assert a == b == "KESSLER MM, 1963, AM DOC, V14, P10"

    def test_year_parsing(self):
        assert parse_ref_year("SMITH J, 1998, J X, V1, P2") == 1998
        assert parse_ref_year("LINNAEUS C, SYSTEMA NATURAE") is None
        # fuera de la ventana admitida
        assert parse_ref_year("ANON, 0999, CODEX") is None

    def test_reference_equality_ignores_raw_text(self):
        a = make_reference("Small H, 1973, J AM SOC INFORM SCI, V24, P265")
        b = make_reference("SMALL H, 1973, J AM SOC INFORM SCI, V24, P265, DOI 10.1002/asi.4630240406")
        assert a == b
        assert a.pub_year == 1973


class TestPlaintextParser:

    def test_fixture_has_exactly_one_skip(self, sample_wos_bytes):
        report = QualityReport()
        records = parse_export(sample_wos_bytes, strict=False, report=report, source="sample")
        assert len(records) == 5
        assert len(report.skipped_records) == 1
        assert report.skipped_records[0]["source"] == "sample"

    def test_strict_mode_raises(self, sample_wos_bytes):
        with pytest.raises(MalformedRecord) as info:
            parse_export(sample_wos_bytes, strict=True)
        assert info.value.line > 0

    def test_continuation_lines(self, sample_wos_bytes):
        records = parse_export(sample_wos_bytes, strict=False)
        first = records[0]
        assert first.values("AU") == ["Schubert, A", "Glanzel, W"]
        assert first.first("TI").endswith("correlation with citation impact")
        assert len(first.values("CR")) == 4

    def test_documents_from_fixture(self, sample_wos_bytes):
        documents = load_documents(parse_export(sample_wos_bytes, strict=False))
        assert [d.doc_id for d in documents] == [
            "WOS:A1996UX00001", "WOS:A1997UX00002", "WOS:A1998UX00004",
            "WOS:A1999UX00005", "WOS:A2000UX00006",
        ]
        small = documents[2]
        assert small.reference_count == 4
        assert any(ref.pub_year is None for ref in small.references)
        # la misma obra con DOI, sin DOI o con punto final
        kessler = {r.canonical for d in documents for r in d.references if r.canonical.startswith("KESSLER")}
        assert kessler == {"KESSLER MM, 1963, AM DOC, V14, P10"}
        assert documents[0].cited_as == "SCHUBERT A, 1996, SCIENTOMETRICS, V36, P211"
        assert "Information Science & Library Science" in documents[0].categories

    def test_reserialization_is_stable(self, sample_wos_bytes):
        def serialize():
            docs = load_documents(parse_export(sample_wos_bytes, strict=False))
            return ArtifactFactory.create_corpus(d.to_dict() for d in docs).content

        first = serialize()
        assert first == serialize()
        assert first.count("\n") == 5

    def test_no_record_tags_is_format_mismatch(self):
        with pytest.raises(FormatMismatch):
            parse_export(b"just some text\nwithout tags\n")

    def test_empty_input(self):
        assert parse_export(b"") == []

    def test_invalid_utf8(self):
        with pytest.raises(EncodingError):
            parse_export(b"PT J\nTI \xff\xfe\nER\n")

    def test_bom_is_tolerated(self):
        data = "\ufeffPT J\nPY 1999\nUT X1\nER\n".encode("utf-8")
        assert len(parse_export(data)) == 1


class TestDocuments:

    def test_missing_year(self):
        record = RawRecord(tag_lines=(("PT", "J"), ("UT", "X"), ("ER", "")), start_line=4)
        with pytest.raises(MissingYear) as info:
            to_document(record)
        assert info.value.line == 4

    def test_missing_year_is_skipped_and_reported(self):
        good = RawRecord(tag_lines=(("PT", "J"), ("UT", "G"), ("PY", "1999"), ("ER", "")), start_line=1)
        bad = RawRecord(tag_lines=(("PT", "J"), ("UT", "B"), ("ER", "")), start_line=5)
        report = QualityReport()
        documents = load_documents([good, bad], report)
        assert [d.doc_id for d in documents] == ["G"]
        assert report.skipped_records[0]["line"] == 5

    def test_fallback_identifier_is_deterministic(self):
        record = RawRecord(tag_lines=(("PT", "J"), ("AU", "Doe, J"), ("TI", "Untitled"), ("PY", "1990"), ("ER", "")))
        assert to_document(record).doc_id == to_document(record).doc_id
        assert to_document(record).doc_id.startswith("REC-")


class TestCsv:

    def test_csv_rows(self):
        text = (
            "UT,PY,CR,TI\n"
            "D1,1995,\"Smith J, 1990, J X, V1, P1; Doe A, 1980, J Y, V2, P3\",First\n"
            "D2,1996,\"Smith J, 1990, J X, V1, P1\",Second\n"
        )
        records = parse_export(text.encode("utf-8"), ExportFormat.CSV)
        documents = load_documents(records)
        assert [d.doc_id for d in documents] == ["D1", "D2"]
        assert documents[0].reference_count == 2
        assert documents[0].title == "First"
        assert records[1].start_line == 3

    def test_custom_columns(self):
        text = "id,year,refs\nX,2001,\"Smith J, 1990, J X\"\n"
        columns = CsvColumns.from_dict({"doc_id": "id", "year": "year", "references": "refs"})
        documents = load_documents(parse_export(text.encode("utf-8"), ExportFormat.CSV, columns=columns))
        assert documents[0].doc_id == "X"

    def test_missing_columns(self):
        with pytest.raises(FormatMismatch):
            parse_export(b"a,b\n1,2\n", ExportFormat.CSV)
