"""Statistical test prioritization for software product lines.

Thin wrapper around the compiled core: load the three models (feature
diagram, featured transition system, DTMC usage model) from JSON and run the
trace-selection / prioritization / product-test pipeline.
"""

from spltest._core import Models, SplError

__all__ = ["Models", "SplError", "load_models"]


def load_models(fd_path, fts_path, um_path):
    """Build a :class:`Models` handle from three JSON files."""
    texts = []
    for path in (fd_path, fts_path, um_path):
        with open(path, "r", encoding="utf-8") as f:
            texts.append(f.read())
    return Models(*texts)
