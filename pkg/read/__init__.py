from read.artifact_reader import ArtifactReader

__all__ = ['ArtifactReader']
