"""
Finite groups given by multiplication tables.

A ``CayleyTable`` is the input of the Cayley-graph and Frucht constructions.
Tables can be read from JSON, synthesized from permutation generators by
closure, or built for the standard families used in the tests.
"""

import logging
import random
from collections import deque
from itertools import product
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from graphaxial.errors import IdentityGenerator, InvalidGroup, NotGenerating, ParseError

logger = logging.getLogger(__name__)

# Full associativity check up to this order, sampled beyond
ASSOCIATIVITY_EXHAUSTIVE_LIMIT = 64
ASSOCIATIVITY_SAMPLES = 4096


class CayleyTable:
    """A finite group as a list of element names and a multiplication table."""

    def __init__(self, elements: Sequence[str], table: Sequence[Sequence[str]], seed: int = 0):
        self.elements: Tuple[str, ...] = tuple(str(e) for e in elements)
        if not self.elements:
            raise InvalidGroup("a group needs at least one element")
        if len(set(self.elements)) != len(self.elements):
            raise InvalidGroup("duplicate element names")
        self._index = {e: i for i, e in enumerate(self.elements)}
        n = len(self.elements)
        if len(table) != n or any(len(row) != n for row in table):
            raise InvalidGroup(f"table must be {n}x{n}")
        try:
            self._table = [[self._index[str(entry)] for entry in row] for row in table]
        except KeyError as e:
            raise InvalidGroup(f"table entry {e} is not a group element")
        self._check_axioms(seed)

    def _check_axioms(self, seed: int):
        n = len(self.elements)
        t = self._table
        identity = None
        for e in range(n):
            if all(t[e][g] == g and t[g][e] == g for g in range(n)):
                identity = e
                break
        if identity is None:
            raise InvalidGroup("no identity element")
        self._identity = identity
        inverse = {}
        for g in range(n):
            h = next((h for h in range(n) if t[g][h] == identity), None)
            if h is None or t[h][g] != identity:
                raise InvalidGroup(f"{self.elements[g]} has no two-sided inverse")
            inverse[g] = h
        self._inverse = inverse

        if n <= ASSOCIATIVITY_EXHAUSTIVE_LIMIT:
            triples: Iterable[Tuple[int, int, int]] = product(range(n), repeat=3)
        else:
            rng = random.Random(seed)
            triples = [
                (rng.randrange(n), rng.randrange(n), rng.randrange(n))
                for _ in range(ASSOCIATIVITY_SAMPLES)
            ]
        for a, b, c in triples:
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise InvalidGroup(
                    f"not associative at ({self.elements[a]}, {self.elements[b]}, {self.elements[c]})"
                )

    # -- queries ------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> str:
        return self.elements[self._identity]

    def multiply(self, g: str, h: str) -> str:
        return self.elements[self._table[self._index[g]][self._index[h]]]

    def inverse(self, g: str) -> str:
        return self.elements[self._inverse[self._index[g]]]

    def is_involution(self, g: str) -> bool:
        return g != self.identity and self.multiply(g, g) == self.identity

    def element_order(self, g: str) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.multiply(x, g)
            k += 1
        return k

    def generated_subgroup(self, gens: Iterable[str]) -> Set[str]:
        """Closure of the identity under right multiplication by ``gens``."""
        gens = list(gens)
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            g = queue.popleft()
            for s in gens:
                h = self.multiply(g, s)
                if h not in seen:
                    seen.add(h)
                    queue.append(h)
        return seen

    def check_generators(self, gens: Sequence[str]) -> None:
        """Raise unless ``gens`` is a generating set without the identity."""
        for s in gens:
            if s not in self._index:
                raise NotGenerating(f"{s!r} is not a group element")
            if s == self.identity:
                raise IdentityGenerator("the identity cannot be a generator")
        if len(self.generated_subgroup(gens)) != len(self.elements):
            raise NotGenerating(f"{list(gens)} does not generate the group")

    # -- serialization ----------------------------------------------------------

    def to_json(self, generators: Optional[Sequence[str]] = None) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "elements": list(self.elements),
            "table": [[self.elements[j] for j in row] for row in self._table],
        }
        if generators is not None:
            data["generators"] = list(generators)
        return data

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> Tuple["CayleyTable", List[str]]:
        """Read ``{"elements", "table", "generators"}`` or ``{"permutations"}``."""
        if "permutations" in data:
            return cls.from_permutations(data["permutations"])
        for key in ("elements", "table"):
            if key not in data:
                raise ParseError(f"group document needs {key!r}")
        group = cls(data["elements"], data["table"])
        gens = [str(s) for s in data.get("generators", [])]
        return group, gens

    @classmethod
    def from_permutations(cls, generators: Sequence[Sequence[int]]) -> Tuple["CayleyTable", List[str]]:
        """Close 0-based one-line permutations under composition.

        The product ``g·h`` applies ``g`` first.  Elements are named in 1-based
        cycle notation, the identity being ``"()"``.
        """
        gens = [tuple(int(i) for i in g) for g in generators]
        degree = max((len(g) for g in gens), default=1)
        for g in gens:
            if sorted(g) != list(range(len(g))):
                raise ParseError(f"{list(g)} is not a permutation")
        gens = [g + tuple(range(len(g), degree)) for g in gens]
        identity = tuple(range(degree))
        perms = [identity]
        seen = {identity: 0}
        queue = deque([identity])
        while queue:
            g = queue.popleft()
            for s in gens:
                h = tuple(s[g[i]] for i in range(degree))
                if h not in seen:
                    seen[h] = len(perms)
                    perms.append(h)
                    queue.append(h)
        names = [cycle_notation(p) for p in perms]
        table = [[names[seen[tuple(h[g[i]] for i in range(degree))]] for h in perms] for g in perms]
        logger.debug(f"Closed {len(gens)} permutation generators to a group of order {len(perms)}")
        return cls(names, table), [cycle_notation(s) for s in gens]

    @classmethod
    def cyclic(cls, n: int) -> Tuple["CayleyTable", List[str]]:
        """Z_n with elements ``"0".."n-1"``, generated by ``"1"`` (nothing for n = 1)."""
        elements = [str(i) for i in range(n)]
        table = [[str((i + j) % n) for j in range(n)] for i in range(n)]
        return cls(elements, table), (["1"] if n > 1 else [])

    @classmethod
    def symmetric(cls, n: int) -> Tuple["CayleyTable", List[str]]:
        """Sym_n generated by the transposition (1 2) and the n-cycle."""
        if n < 2:
            return cls.cyclic(1)
        transposition = [1, 0] + list(range(2, n))
        cycle = [(i + 1) % n for i in range(n)]
        gens = [transposition] if n == 2 else [transposition, cycle]
        return cls.from_permutations(gens)


def cycle_notation(perm: Sequence[int]) -> str:
    """1-based cycle notation of a 0-based one-line permutation."""
    seen = [False] * len(perm)
    cycles = []
    for i in range(len(perm)):
        if seen[i] or perm[i] == i:
            seen[i] = True
            continue
        cycle = []
        j = i
        while not seen[j]:
            seen[j] = True
            cycle.append(str(j + 1))
            j = perm[j]
        cycles.append("(" + " ".join(cycle) + ")")
    return "".join(cycles) or "()"
