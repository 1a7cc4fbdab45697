"""Temporal record linkage of birth records into sibling groups."""

import json

from . import _core
from ._core import (
    SimilarityGraph,
    TemporalModel,
    TlinkError,
    greedy_cluster,
    jaro_winkler,
    precision_recall,
    star_cluster,
    year_difference,
)

__all__ = [
    "SimilarityGraph",
    "TemporalModel",
    "TlinkError",
    "build_graph",
    "cluster",
    "evaluate",
    "generate",
    "greedy_cluster",
    "jaro_winkler",
    "precision_recall",
    "star_cluster",
    "sweep",
    "year_difference",
]


def _overrides(settings):
    # Strings pass through; everything else goes over as JSON.
    return {k: v if isinstance(v, str) else json.dumps(v) for k, v in settings.items()}


def _command(name):
    fn = getattr(_core, name)

    def run(config=None, **settings):
        return [str(p) for p in fn(config, _overrides(settings))]

    run.__name__ = name
    run.__doc__ = f"Run the `{name.replace('_', '-')}` step; keyword arguments override config keys."
    return run


generate = _command("generate")
build_graph = _command("build_graph")
cluster = _command("cluster")
evaluate = _command("evaluate")
sweep = _command("sweep")
