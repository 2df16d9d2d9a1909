"""
Constructive colorers.

Registry of colorers available from the command line, in the style of
a circuit registry: each entry carries a description, the number of D1
classes it uses and the function that runs it.
"""

from typing import Dict, List, Optional, Tuple

from abcolor.colorers.bounds import BoundCertificate, ClusterPartition
from abcolor.colorers.cactus import color_cactus_g4
from abcolor.colorers.degenerate import color_degenerate, dominated_peel, greedy_2distance
from abcolor.colorers.outerplanar import (
    color_tf_outerplanar, elimination_order, peel_homomorphism, vc_outerplanar,
)
from abcolor.colorers.planar import cluster, color_planar, color_planar_g4, oct_for_cluster
from abcolor.coloring import MixedColoring, Params
from abcolor.config import ColorerConfig
from abcolor.graph import Graph


COLORERS = {
    "degenerate": {
        "name": "k-degenerate",
        "description": "(k, 4k*sqrt(k+1)*sqrt(n)) for k-degenerate graphs; k is the degeneracy",
        "a": None,
        "function": color_degenerate,
    },
    "cactus": {
        "name": "Cactus, girth >= 4",
        "description": "(2,1) for cactus graphs without triangles",
        "a": 2,
        "function": color_cactus_g4,
    },
    "tf-outerplanar": {
        "name": "Triangle-free outerplanar",
        "description": "(1, 4*sqrt(34/5)*sqrt(n) - 1)",
        "a": 1,
        "function": color_tf_outerplanar,
    },
    "planar-g4": {
        "name": "Planar, girth >= 4",
        "description": "(2, 8*sqrt(10)*sqrt(n)); planarity is not checked",
        "a": 2,
        "function": color_planar_g4,
    },
    "planar": {
        "name": "Planar",
        "description": "(3, 18*sqrt(2)*sqrt(n)); planarity is not checked",
        "a": 3,
        "function": color_planar,
    },
}


def list_colorers() -> List[Dict]:
    return [{"key": key, "name": c["name"], "description": c["description"]} for key, c in COLORERS.items()]


def run_colorer(
    name: str,
    g: Graph,
    config: Optional[ColorerConfig] = None,
) -> Tuple[MixedColoring, Params, Optional[BoundCertificate]]:
    """Run a registered colorer; returns the coloring, its parameters and the certificate if any."""
    if name not in COLORERS:
        raise ValueError(f"Unknown colorer '{name}'. Available: {sorted(COLORERS)}")
    entry = COLORERS[name]
    if name == "cactus":
        coloring = color_cactus_g4(g, config)
        return coloring, Params(2, 1), None
    coloring, cert = entry["function"](g, config=config)
    a = entry["a"] if entry["a"] is not None else cert.details["k"]
    return coloring, Params(a, cert.used_d2), cert


__all__ = [
    "BoundCertificate", "ClusterPartition", "COLORERS", "cluster", "color_cactus_g4",
    "color_degenerate", "color_planar", "color_planar_g4", "color_tf_outerplanar",
    "dominated_peel", "elimination_order", "greedy_2distance", "list_colorers",
    "oct_for_cluster", "peel_homomorphism", "run_colorer", "vc_outerplanar",
]
