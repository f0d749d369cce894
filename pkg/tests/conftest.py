"""
Shared fixtures: fields, the Fano plane and its incidence graphs, small
groups and an independent automorphism counter.
"""

import pytest

from graphaxial.core.algebra import GraphAlgebra
from graphaxial.core.exactfield import FieldCtx
from graphaxial.core.graph import LabeledDigraph, incidence_graph
from graphaxial.generators.groups import CayleyTable
from graphaxial.generators.providers import complete_graph_space, fano_plane


@pytest.fixture(scope="session")
def f2():
    return FieldCtx.prime(2)


@pytest.fixture(scope="session")
def f3():
    return FieldCtx.prime(3)


@pytest.fixture(scope="session")
def f5():
    return FieldCtx.prime(5)


@pytest.fixture(scope="session")
def f7():
    return FieldCtx.prime(7)


@pytest.fixture(scope="session")
def q():
    return FieldCtx.rationals()


@pytest.fixture(scope="session")
def fano():
    return fano_plane()


@pytest.fixture(scope="session")
def heawood(fano, f7):
    """Heawood graph with every label 3 over F_7."""
    return incidence_graph(fano, 3, 3, f7)


@pytest.fixture(scope="session")
def heawood_ab(fano, f7):
    """Heawood graph with point-to-line label 3 and line-to-point label 5 over F_7."""
    return incidence_graph(fano, 3, 5, f7)


@pytest.fixture(scope="session")
def heawood_algebra(heawood):
    return GraphAlgebra(heawood)


@pytest.fixture(scope="session")
def k4_incidence_f2(f2):
    """Subdivided K_4 with every label 1 over F_2."""
    return incidence_graph(complete_graph_space(4), 1, 1, f2)


@pytest.fixture(scope="session")
def ideal_instance(f5):
    """Y = {y1, y2} joined both ways by ½, x attached uniformly with α_x = 2, β_x = 4."""
    edges = [
        ("y1", "y2", "1/2"),
        ("y2", "y1", "1/2"),
        ("x", "y1", "2"),
        ("x", "y2", "2"),
        ("y1", "x", "4"),
        ("y2", "x", "4"),
    ]
    return LabeledDigraph(["y1", "y2", "x"], [(a, b, f5.parse(t)) for a, b, t in edges], f5)


@pytest.fixture(scope="session")
def z3():
    return CayleyTable.cyclic(3)


@pytest.fixture(scope="session")
def s3():
    return CayleyTable.symmetric(3)


def count_automorphisms(g: LabeledDigraph) -> int:
    """Label-preserving permutations counted by plain backtracking over vertex images."""
    n = len(g)
    edges = {(g.index[x], g.index[y]): label for (x, y), label in g.edges.items()}
    image = []
    used = [False] * n
    count = 0

    def fits(k: int) -> bool:
        for j in range(k + 1):
            for a, b in ((k, j), (j, k)):
                if edges.get((a, b)) != edges.get((image[a], image[b])):
                    return False
        return True

    def extend(k: int):
        nonlocal count
        if k == n:
            count += 1
            return
        for v in range(n):
            if used[v]:
                continue
            used[v] = True
            image.append(v)
            if fits(k):
                extend(k + 1)
            image.pop()
            used[v] = False

    extend(0)
    return count


@pytest.fixture(scope="session")
def naive_automorphism_count():
    return count_automorphisms
