"""
Catalogue of named geometries and graphs.

Each provider returns a ``PartialLinearSpace`` (a simple graph being the case
of two points per line) or, for the Frucht graph, a networkx graph together
with its designated vertices.
"""

import logging
from itertools import combinations
from typing import Callable, Dict, List, Tuple

import networkx as nx

from graphaxial.core.graph import PartialLinearSpace
from graphaxial.errors import InvalidGraph

logger = logging.getLogger(__name__)

FANO_LINES = [
    ("1", "2", "3"),
    ("1", "4", "5"),
    ("1", "6", "7"),
    ("2", "4", "6"),
    ("2", "5", "7"),
    ("3", "4", "7"),
    ("3", "5", "6"),
]

# adjacent vertices of the Frucht graph where gadgets are attached
FRUCHT_Q = "0"
FRUCHT_R = "1"


def fano_plane() -> PartialLinearSpace:
    """The projective plane of order 2; its incidence graph is the Heawood graph."""
    return PartialLinearSpace([str(i) for i in range(1, 8)], FANO_LINES)


def gq22() -> PartialLinearSpace:
    """The generalized quadrangle of order (2, 2) as duads and synthemes of a 6-set.

    Points are the 15 pairs from {1..6}, lines the 15 partitions of {1..6}
    into three pairs.  The incidence graph is the Tutte–Coxeter graph.
    """
    symbols = [str(i) for i in range(1, 7)]
    duads = ["".join(pair) for pair in combinations(symbols, 2)]
    synthemes = []
    for first in combinations(symbols, 2):
        if first[0] != symbols[0]:
            continue
        rest = [s for s in symbols if s not in first]
        for second in combinations(rest, 2):
            if second[0] != rest[0]:
                continue
            third = tuple(s for s in rest if s not in second)
            synthemes.append(tuple("".join(pair) for pair in (first, second, third)))
    return PartialLinearSpace(duads, synthemes)


def complete_graph_space(n: int) -> PartialLinearSpace:
    """K_n as a partial linear space with two points per line."""
    if n < 2:
        raise InvalidGraph("K_n needs n >= 2")
    return PartialLinearSpace.from_graph(nx.relabel_nodes(nx.complete_graph(range(1, n + 1)), str))


def frucht_graph() -> Tuple[nx.Graph, str, str]:
    """The 12-vertex cubic graph without nontrivial automorphisms, with its attachment vertices q, r."""
    phi = nx.relabel_nodes(nx.frucht_graph(), str)
    return phi, FRUCHT_Q, FRUCHT_R


GEOMETRIES: Dict[str, Callable[[], PartialLinearSpace]] = {
    "fano": fano_plane,
    "gq22": gq22,
    "k4": lambda: complete_graph_space(4),
    "k5": lambda: complete_graph_space(5),
    "frucht": lambda: PartialLinearSpace.from_graph(frucht_graph()[0]),
}


def geometry(name: str) -> PartialLinearSpace:
    try:
        space = GEOMETRIES[name.lower()]()
    except KeyError:
        raise InvalidGraph(f"unknown geometry {name!r}; choose from {sorted(GEOMETRIES)}")
    logger.debug(f"Geometry {name}: {len(space.points)} points, {len(space.lines)} lines")
    return space


def geometry_names() -> List[str]:
    return sorted(GEOMETRIES)
