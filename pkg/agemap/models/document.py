"""
Modelos de registros y documentos del corpus.

Principio SOLID:
    - Single Responsibility: solo datos y su serialización
    - Interface Segregation: interfaz mínima necesaria
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple


@dataclass(frozen=True)
class RawRecord:
    """
    Registro tal como aparece en el archivo exportado.

    tag_lines conserva el orden original de pares (etiqueta, contenido),
    incluidas las marcas de inicio (PT) y fin (ER) del registro.
    """
    tag_lines: Tuple[Tuple[str, str], ...]
    start_line: int = 0

    def values(self, tag: str) -> List[str]:
        """Todos los contenidos de una etiqueta, en orden."""
        return [payload for t, payload in self.tag_lines if t == tag]

    def first(self, tag: str) -> Optional[str]:
        """Primer contenido de una etiqueta, o None."""
        for t, payload in self.tag_lines:
            if t == tag:
                return payload
        return None

    def __len__(self) -> int:
        return len(self.tag_lines)


@dataclass(frozen=True)
class ReferenceKey:
    """
    Obra citada en forma canónica.

    Dos claves son iguales si y solo si sus cadenas canónicas coinciden;
    el año y el texto original no intervienen en la igualdad.
    """
    canonical: str
    pub_year: Optional[int] = field(default=None, compare=False)
    raw: str = field(default="", compare=False)

    def __repr__(self):
        return f"ReferenceKey('{self.canonical}', year={self.pub_year})"

    def to_dict(self) -> Dict[str, Any]:
        return {"canonical": self.canonical, "pub_year": self.pub_year, "raw": self.raw}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ReferenceKey':
        year = data.get("pub_year")
        return cls(
            canonical=data["canonical"],
            pub_year=int(year) if year is not None else None,
            raw=data.get("raw", ""),
        )


@dataclass(frozen=True)
class Document:
    """
    Publicación fuente del corpus con sus referencias normalizadas.

    references no contiene claves repetidas (incidencia binaria).
    cited_as es la clave canónica con la que el índice citaría a este
    documento, usada para recuperar título y categorías de referencias.
    """
    doc_id: str
    pub_year: int
    title: str = ""
    source: str = ""
    references: Tuple[ReferenceKey, ...] = ()
    categories: Tuple[str, ...] = ()
    cited_as: Optional[str] = None

    def __repr__(self):
        return f"Document(id='{self.doc_id}', year={self.pub_year}, refs={len(self.references)})"

    @property
    def reference_count(self) -> int:
        """Número de referencias distintas."""
        return len(self.references)

    def to_dict(self) -> Dict[str, Any]:
        """Convierte el documento a diccionario (una línea del corpus JSONL)."""
        return {
            "doc_id": self.doc_id,
            "pub_year": self.pub_year,
            "title": self.title,
            "source": self.source,
            "references": [ref.to_dict() for ref in self.references],
            "categories": list(self.categories),
            "cited_as": self.cited_as,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Document':
        return cls(
            doc_id=str(data["doc_id"]),
            pub_year=int(data["pub_year"]),
            title=data.get("title", ""),
            source=data.get("source", ""),
            references=tuple(ReferenceKey.from_dict(r) for r in data.get("references", [])),
            categories=tuple(data.get("categories", [])),
            cited_as=data.get("cited_as"),
        )
