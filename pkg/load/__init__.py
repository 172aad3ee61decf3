"""
Artifact loader package.

This package provides utilities for writing pipeline artifacts to storage.
"""

from load._artifact_loader import ArtifactLoader
from load.local_artifact_loader import MANIFEST_COLUMNS, MANIFEST_NAME, LocalArtifactLoader

__all__ = ['ArtifactLoader', 'LocalArtifactLoader', 'MANIFEST_COLUMNS', 'MANIFEST_NAME']
