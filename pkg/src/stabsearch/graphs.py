"""Random bipartite support graphs over qubit and stabilizer vertices.

A support graph is the candidate edge set from which a code's Tanner
graph is later selected.  Qubit vertices are 0..n-1, stabilizer vertices
0..m-1, and an edge (q, s) marks a candidate qubit/stabilizer incidence.

Sampling is Erdos-Renyi: each of the n*m possible edges is included
independently with probability gamma.  The per-edge uniforms come from a
counter stream in row-major edge order, so two samples of the same
stream at gamma <= gamma' satisfy edges(gamma) being a subset of
edges(gamma') exactly, not just in distribution.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .rng import CounterStream, RngSpec

GRAPH_FORMAT_VERSION = 1


@dataclass(frozen=True)
class SupportGraph:
    """Bipartite graph (qubits 0..n-1) x (stabilizers 0..m-1).

    edges is sorted row-major, i.e. by (q, s); seed and gamma record how
    the graph was sampled.
    """

    n: int
    m: int
    gamma: float
    seed: int
    edges: tuple[tuple[int, int], ...]
    _edge_set: frozenset = field(init=False, repr=False, compare=False)
    _qubit_adj: tuple = field(init=False, repr=False, compare=False)
    _stab_adj: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n <= 0 or self.m <= 0:
            raise ValueError("n and m must be positive")
        qadj = [[] for _ in range(self.n)]
        sadj = [[] for _ in range(self.m)]
        seen = set()
        for q, s in self.edges:
            if not (0 <= q < self.n and 0 <= s < self.m):
                raise ValueError(f"edge ({q},{s}) out of range for n={self.n}, m={self.m}")
            if (q, s) in seen:
                raise ValueError(f"duplicate edge ({q},{s})")
            seen.add((q, s))
            qadj[q].append(s)
            sadj[s].append(q)
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))
        object.__setattr__(self, "_edge_set", frozenset(seen))
        object.__setattr__(self, "_qubit_adj", tuple(tuple(sorted(a)) for a in qadj))
        object.__setattr__(self, "_stab_adj", tuple(tuple(sorted(a)) for a in sadj))

    def has_edge(self, q: int, s: int) -> bool:
        return (q, s) in self._edge_set

    def qubit_neighbors(self, q: int) -> tuple[int, ...]:
        """Stabilizers adjacent to qubit q, ascending."""
        return self._qubit_adj[q]

    def stabilizer_neighbors(self, s: int) -> tuple[int, ...]:
        """Qubits adjacent to stabilizer s, ascending."""
        return self._stab_adj[s]

    def to_json(self) -> str:
        doc = {
            "format_version": GRAPH_FORMAT_VERSION,
            "n": self.n,
            "m": self.m,
            "gamma": self.gamma,
            "seed": self.seed,
            "edges": [[q, s] for q, s in self.edges],
        }
        return json.dumps(doc, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "SupportGraph":
        doc = json.loads(text)
        return cls(
            n=doc["n"],
            m=doc["m"],
            gamma=doc["gamma"],
            seed=doc["seed"],
            edges=tuple((q, s) for q, s in doc["edges"]),
        )


def sample_support_graph(n: int, m: int, gamma: float, rng: RngSpec) -> SupportGraph:
    """Sample G(n, m, gamma): each edge present independently with prob gamma.

    Edge (q, s) consumes uniform number q*m + s of the stream, so graphs
    sampled from the same rng at increasing gamma are nested.
    """
    if n <= 0 or m <= 0:
        raise ValueError("n and m must be positive")
    if not (0.0 <= gamma <= 1.0):
        raise ValueError(f"gamma must lie in [0, 1], got {gamma}")
    stream = CounterStream(rng)
    edges = []
    if gamma >= 1.0:
        edges = [(q, s) for q in range(n) for s in range(m)]
    elif gamma > 0.0:
        unit = stream.unit
        for q in range(n):
            base = q * m
            for s in range(m):
                if unit(base + s) < gamma:
                    edges.append((q, s))
    return SupportGraph(n=n, m=m, gamma=gamma, seed=rng.key(), edges=tuple(edges))


def edge_count(g: SupportGraph) -> int:
    return len(g.edges)


def shared_qubits(g: SupportGraph, s1: int, s2: int) -> list[int]:
    """Qubits adjacent to both stabilizers, ascending.

    Ascending order keeps downstream constraint construction reproducible.
    """
    if s1 == s2:
        raise ValueError("stabilizer indices must differ")
    if not (0 <= s1 < g.m and 0 <= s2 < g.m):
        raise ValueError(f"stabilizer index out of range for m={g.m}")
    small, large = g.stabilizer_neighbors(s1), g.stabilizer_neighbors(s2)
    if len(large) < len(small):
        small, large = large, small
    other = set(large)
    return [q for q in small if q in other]
