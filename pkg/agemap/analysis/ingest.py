"""
Lectura de exportaciones de índices de citas.

Convierte archivos con etiquetas de campo (formato de texto plano de Web of
Science) o CSV en registros crudos, y los registros en Documentos con
referencias normalizadas.

Dialecto de texto plano:
    - etiquetas de 2 caracteres en la columna 0
    - líneas de continuación sangradas (3 espacios)
    - CR multilínea: una referencia citada por línea
    - ER cierra un registro, EF cierra el archivo
"""

import hashlib
import io
import re
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Tuple, Union

import pandas as pd

from ..models import Document, QualityReport, RawRecord, ReferenceKey
from ..utils.errors import EncodingError, FormatMismatch, MalformedRecord, MissingYear
from ..utils.logger import get_logger

YEAR_WINDOW: Tuple[int, int] = (1500, 2100)

# Etiquetas cuyas líneas de continuación son valores independientes
MULTI_VALUE_TAGS = frozenset({"AU", "AF", "BA", "BE", "BF", "CA", "GP", "CR", "C1", "EM", "RI", "OI"})
FILE_HEADER_TAGS = frozenset({"FN", "VR"})

_TAG_LINE = re.compile(r"^([A-Z][A-Z0-9])(?: (.*))?$")
_WHITESPACE = re.compile(r"\s+")
_DOI_SUFFIX = re.compile(r",\s*DOI\b.*$")
_YEAR_TOKEN = re.compile(r"^\d{4}$")


class ExportFormat(Enum):
    """Formatos de entrada soportados."""
    WOS_PLAINTEXT = "wos_plaintext"
    CSV = "csv"


@dataclass(frozen=True)
class CsvColumns:
    """Nombres de columna del CSV para cada campo del documento."""
    doc_id: str = "UT"
    year: str = "PY"
    references: str = "CR"
    title: str = "TI"
    source: str = "SO"
    categories: str = "WC"

    @classmethod
    def from_dict(cls, data: Dict[str, str]) -> 'CsvColumns':
        known = {k: str(v) for k, v in data.items() if k in cls.__dataclass_fields__}
        return cls(**known)


def canonicalize(text: str) -> str:
    """
    Forma canónica de una referencia citada: mayúsculas, espacios
    colapsados, sin sufijo ", DOI ..." y sin puntos finales.
    """
    value = _WHITESPACE.sub(" ", text.upper()).strip()
    value = _DOI_SUFFIX.sub("", value)
    return value.rstrip(". ")


def parse_ref_year(key: Union[ReferenceKey, str], window: Tuple[int, int] = YEAR_WINDOW) -> Optional[int]:
    """Primer token separado por comas que sea un año de 4 cifras dentro de la ventana."""
    text = key.canonical if isinstance(key, ReferenceKey) else key
    lo, hi = window
    for token in text.split(","):
        token = token.strip()
        if _YEAR_TOKEN.match(token):
            year = int(token)
            if lo <= year <= hi:
                return year
    return None


def make_reference(raw: str, window: Tuple[int, int] = YEAR_WINDOW) -> ReferenceKey:
    """Construye la clave canónica de una línea CR."""
    canonical = canonicalize(raw)
    return ReferenceKey(canonical=canonical, pub_year=parse_ref_year(canonical, window), raw=raw.strip())


def decode_export(data: bytes) -> str:
    """Decodifica UTF-8 tolerando BOM."""
    try:
        return data.decode("utf-8-sig")
    except UnicodeDecodeError as e:
        raise EncodingError(f"la entrada no es UTF-8 válido: {e}")


class WosPlaintextParser:
    """
    Lector de exportaciones con etiquetas de campo.

    En modo estricto un registro mal formado lanza MalformedRecord; en modo
    tolerante se omite, se anota en el informe de calidad y la lectura sigue.
    """

    def __init__(self, strict: bool = True, report: Optional[QualityReport] = None, source: str = ""):
        self.strict = strict
        self.report = report
        self.source = source
        self._logger = get_logger()

    def parse(self, text: str) -> List[RawRecord]:
        records: List[RawRecord] = []
        current: Optional[List[Tuple[str, str]]] = None
        start_line = 0
        # tras descartar un registro se ignoran sus líneas hasta el próximo ER/PT
        discarding = False
        seen_record_tag = False
        seen_content = False

        for number, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            seen_content = True

            if line[0] in " \t":
                if current is not None:
                    self._append_continuation(current, line.strip())
                continue

            match = _TAG_LINE.match(line.rstrip())
            if not match:
                if current is not None:
                    self._malformed(f"línea sin etiqueta válida: {line[:20]!r}", start_line)
                    current, discarding = None, True
                continue
            tag, payload = match.group(1), (match.group(2) or "").strip()

            if tag == "PT":
                seen_record_tag = True
                if current is not None:
                    self._malformed("registro sin etiqueta de fin ER", start_line)
                current, discarding = [(tag, payload)], False
                start_line = number
            elif tag == "ER":
                if current is not None:
                    current.append((tag, payload))
                    records.append(RawRecord(tag_lines=tuple(current), start_line=start_line))
                elif not discarding:
                    self._malformed("ER sin registro abierto", number)
                current, discarding = None, False
            elif tag == "EF":
                if current is not None:
                    self._malformed("fin de archivo dentro de un registro", start_line)
                    current = None
                break
            elif current is not None:
                current.append((tag, payload))
            elif tag not in FILE_HEADER_TAGS and not discarding:
                self._logger.debug(f"Etiqueta {tag} fuera de registro ignorada (línea {number})")

        if current is not None:
            self._malformed("registro sin etiqueta de fin ER", start_line)

        if seen_content and not seen_record_tag:
            raise FormatMismatch("el contenido no tiene registros con etiqueta PT")
        return records

    @staticmethod
    def _append_continuation(current: List[Tuple[str, str]], payload: str) -> None:
        tag, previous = current[-1]
        if tag in MULTI_VALUE_TAGS:
            current.append((tag, payload))
        else:
            current[-1] = (tag, f"{previous} {payload}".strip())

    def _malformed(self, reason: str, line: int) -> None:
        if self.strict:
            raise MalformedRecord(reason, line)
        self._logger.record_skipped(line, reason)
        if self.report is not None:
            self.report.skip(line, reason, self.source)


def parse_csv(text: str, columns: CsvColumns = CsvColumns()) -> List[RawRecord]:
    """
    Convierte un CSV (una fila por documento, referencias separadas por ';')
    en registros con las mismas etiquetas que el formato de texto plano.
    """
    if not text.strip():
        return []
    try:
        frame = pd.read_csv(io.StringIO(text), dtype=str, keep_default_na=False)
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise FormatMismatch(f"CSV ilegible: {e}")

    required = [columns.doc_id, columns.year, columns.references]
    missing = [name for name in required if name not in frame.columns]
    if missing:
        raise FormatMismatch(f"faltan columnas en el CSV: {', '.join(missing)}")

    records = []
    optional = [("TI", columns.title), ("SO", columns.source), ("WC", columns.categories)]
    for position, row in enumerate(frame.to_dict(orient="records")):
        tag_lines: List[Tuple[str, str]] = [("PT", "J"), ("UT", row[columns.doc_id].strip())]
        tag_lines.append(("PY", row[columns.year].strip()))
        for tag, name in optional:
            if name in frame.columns and row[name].strip():
                tag_lines.append((tag, row[name].strip()))
        for ref in row[columns.references].split(";"):
            if ref.strip():
                tag_lines.append(("CR", ref.strip()))
        tag_lines.append(("ER", ""))
        # línea 1 es la cabecera
        records.append(RawRecord(tag_lines=tuple(tag_lines), start_line=position + 2))
    return records


def parse_export(data: bytes, format: ExportFormat = ExportFormat.WOS_PLAINTEXT, strict: bool = True,
                 report: Optional[QualityReport] = None, source: str = "",
                 columns: CsvColumns = CsvColumns()) -> List[RawRecord]:
    """
    Lee un archivo exportado y devuelve un RawRecord por registro lógico,
    en el orden del archivo.
    """
    text = decode_export(data)
    if ExportFormat(format) is ExportFormat.CSV:
        return parse_csv(text, columns)
    return WosPlaintextParser(strict=strict, report=report, source=source).parse(text)


def _cited_as(rec: RawRecord, year: int) -> Optional[str]:
    """Clave con la que el índice citaría este registro (autor, año, fuente, V, P)."""
    author = rec.first("AU")
    source = rec.first("J9")
    if not author or not source:
        return None
    parts = [author.replace(",", ""), str(year), source]
    if rec.first("VL"):
        parts.append(f"V{rec.first('VL')}")
    if rec.first("BP"):
        parts.append(f"P{rec.first('BP')}")
    return canonicalize(", ".join(parts))


def _doc_id(rec: RawRecord, year: int) -> str:
    for tag in ("UT", "DI"):
        value = rec.first(tag)
        if value:
            return value.strip()
    seed = "|".join([";".join(rec.values("AU")), str(year), rec.first("TI") or ""])
    return "REC-" + hashlib.sha1(seed.encode("utf-8")).hexdigest()[:12]


def to_document(rec: RawRecord, window: Tuple[int, int] = YEAR_WINDOW) -> Document:
    """
    Convierte un registro en Documento. Las líneas CR que coinciden tras la
    normalización se colapsan en una sola referencia.
    """
    year_text = (rec.first("PY") or "").strip()
    if not _YEAR_TOKEN.match(year_text):
        raise MissingYear(f"registro sin año de publicación (PY={year_text!r})", rec.start_line)
    year = int(year_text)
    if not window[0] <= year <= window[1]:
        raise MissingYear(f"año de publicación fuera de rango: {year}", rec.start_line)

    seen = set()
    references = []
    for raw in rec.values("CR"):
        ref = make_reference(raw, window)
        if not ref.canonical or ref.canonical in seen:
            continue
        seen.add(ref.canonical)
        references.append(ref)

    categories = tuple(
        c.strip() for value in rec.values("WC") for c in value.split(";") if c.strip()
    )
    return Document(
        doc_id=_doc_id(rec, year),
        pub_year=year,
        title=rec.first("TI") or "",
        source=rec.first("SO") or "",
        references=tuple(references),
        categories=categories,
        cited_as=_cited_as(rec, year),
    )


def load_documents(records: List[RawRecord], report: Optional[QualityReport] = None,
                   source: str = "", window: Tuple[int, int] = YEAR_WINDOW) -> List[Document]:
    """
    Convierte registros en documentos; los registros sin año se informan y
    se omiten.
    """
    logger = get_logger()
    documents = []
    for rec in records:
        try:
            documents.append(to_document(rec, window))
        except MissingYear as e:
            logger.record_skipped(e.line, e.message)
            if report is not None:
                report.skip(e.line, e.message, source)
    return documents
