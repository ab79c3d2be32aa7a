"""Formatos de archivo compartidos por la CLI y el pipeline."""
from .protocol import Artifact, ArtifactFactory, ArtifactType, read_clusters, read_corpus, read_json
