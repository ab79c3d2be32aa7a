"""
Fixtures compartidas de las pruebas.
"""

import os
import sys
from pathlib import Path
from typing import Dict, List, Sequence

import numpy as np
import pytest

# Agregar el directorio raíz al path (como los scripts run_*.py)
ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, ROOT)

from agemap.analysis.ingest import make_reference  # noqa: E402
from agemap.models import Document  # noqa: E402
from agemap.utils.logger import get_logger  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"

# el logger se crea una sola vez, con el stderr de la sesión
get_logger()


@pytest.fixture
def sample_wos_path() -> Path:
    return FIXTURES / "sample_wos.txt"


@pytest.fixture
def sample_wos_bytes(sample_wos_path) -> bytes:
    return sample_wos_path.read_bytes()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240601)


def make_document(doc_id: str, year: int, refs: Sequence[str], **extra) -> Document:
    """Documento con referencias normalizadas como en la lectura real."""
    seen, keys = set(), []
    for raw in refs:
        key = make_reference(raw)
        if key.canonical not in seen:
            seen.add(key.canonical)
            keys.append(key)
    return Document(doc_id=doc_id, pub_year=year, references=tuple(keys), **extra)


def planted_corpus(seed: int = 7) -> List[Document]:
    """
    120 documentos con estructura conocida:

    - A y B (40 cada uno) citan 35 de un fondo común de 40 referencias
      antiguas (1800-1839); cada documento de A cita además RECENT A (2000)
      y cada uno de B cita RECENT B (2000)
    - C (40) cita RECENT C (2000) y 20 de un fondo propio de 30 referencias
      antiguas
    - A00 y C00 son documentos débiles: su referencia reciente y una sola
      referencia antigua

    El acoplamiento clásico une A y B; el sensible a la antigüedad los separa.
    """
    rng = np.random.default_rng(seed)
    ancient = [f"Historian H{i:02d}, {1800 + i}, J HIST, V{i + 1}, P1" for i in range(40)]
    c_pool = [f"Classic C{i:02d}, {1805 + i}, J OLD, V{i + 1}, P7" for i in range(30)]
    recent = {g: f"Recent {g}, 2000, J NEW, V{n}, P1" for n, g in enumerate("ABC", start=1)}

    documents = []
    for group in "AB":
        for i in range(40):
            if group == "A" and i == 0:
                refs = [recent[group], ancient[int(rng.integers(40))]]
            else:
                picks = rng.choice(40, size=35, replace=False)
                refs = [recent[group]] + [ancient[j] for j in sorted(picks)]
            documents.append(make_document(f"{group}{i:02d}", 1995, refs, title=f"Paper {group}{i:02d}"))
    for i in range(40):
        if i == 0:
            refs = [recent["C"], c_pool[int(rng.integers(30))]]
        else:
            picks = rng.choice(30, size=20, replace=False)
            refs = [recent["C"]] + [c_pool[j] for j in sorted(picks)]
        documents.append(make_document(f"C{i:02d}", 1996, refs, title=f"Paper C{i:02d}"))
    return documents


def random_corpus(rng: np.random.Generator, n_docs: int, n_refs: int, max_refs: int = 8) -> List[Document]:
    """Corpus aleatorio con años de referencia en 1900-2000."""
    pool = [f"Author R{j:03d}, {1900 + int(rng.integers(101))}, J RAND, V{j}, P1" for j in range(n_refs)]
    documents = []
    for i in range(n_docs):
        size = int(rng.integers(1, min(max_refs, n_refs) + 1))
        picks = rng.choice(n_refs, size=size, replace=False)
        documents.append(make_document(f"D{i:03d}", 2000, [pool[j] for j in sorted(picks)]))
    return documents


def to_wos(documents: Sequence[Document]) -> str:
    """Exportación de texto plano con etiquetas de campo para los documentos dados."""
    lines = ["FN Clarivate Analytics Web of Science", "VR 1.0"]
    for doc in documents:
        lines += ["PT J", f"AU Author, {doc.doc_id}", f"TI {doc.title or doc.doc_id}", "SO TEST JOURNAL",
                  f"PY {doc.pub_year}"]
        for k, ref in enumerate(doc.references):
            lines.append(("CR " if k == 0 else "   ") + (ref.raw or ref.canonical))
        lines += [f"UT WOS:{doc.doc_id}", "ER", ""]
    lines.append("EF")
    return "\n".join(lines) + "\n"


@pytest.fixture
def planted_documents() -> List[Document]:
    return planted_corpus()


@pytest.fixture
def planted_export(tmp_path, planted_documents) -> Path:
    path = tmp_path / "planted.txt"
    path.write_text(to_wos(planted_documents), encoding="utf-8")
    return path


def labels_by_group(doc_ids: Sequence[str], labels: Sequence[int]) -> Dict[str, set]:
    """Etiquetas distintas que recibe cada grupo (primera letra del id)."""
    groups: Dict[str, set] = {}
    for doc_id, label in zip(doc_ids, labels):
        group = doc_id.split(":")[-1][0]
        groups.setdefault(group, set()).add(label)
    return groups
