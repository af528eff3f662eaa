"""Boolean/linear constraint systems for CSS code search on a support graph.

The encoding works over these variables:

- activator a(q,s): edge (q,s) is active, i.e. kept in the Tanner graph;
- pauli p(s): stabilizer s acts as X (1) or Z (0) on its active edges;
- same(s1,s2): the two stabilizers have the same Pauli type;
- even(s1,s2): the two stabilizers share an even number of active qubits;
- both(q,s1,s2): both edges (q,s1) and (q,s2) are active;
- xind(q,s) / zind(q,s): edge is active and its stabilizer is X / Z type.

Two stabilizers commute iff they have the same type or an even active
overlap, so for every stabilizer pair sharing at least one candidate
qubit we emit:

    same OR even                                  (one OR clause)
    same XOR p(s1) XOR p(s2) = 1                  (ties same to type equality)
    even XOR both(q1,..) XOR ... XOR both(qk,..) = 1   (ties even to overlap parity)
    both(q,..) <-> a(q,s1) AND a(q,s2)            (three OR clauses per shared q)

Pairs with no shared qubit commute vacuously and emit nothing.  Degree
and balance requirements are integer cardinality constraints kept in
native form; the solver propagates them directly and the CNF exporter
expands them only on export.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .graphs import SupportGraph, shared_qubits

SYSTEM_FORMAT_VERSION = 1

# Variable kinds
ACTIVATOR = "a"
PAULI = "p"
SAME = "same"
EVEN = "even"
BOTH = "both"
XIND = "x"
ZIND = "z"


class VarRef(NamedTuple):
    id: int
    kind: str
    index: tuple[int, ...]


class OrClause(NamedTuple):
    lits: tuple[tuple[int, bool], ...]  # (variable id, True for positive literal)
    tag: str


class XorClause(NamedTuple):
    vars: tuple[int, ...]
    parity: int  # XOR of the variables must equal this bit
    tag: str


class Linear(NamedTuple):
    vars: tuple[int, ...]  # all coefficients are +1
    cmp: str  # one of ">=", "<=", "=="
    bound: int
    tag: str


Constraint = OrClause | XorClause | Linear

# Tags, used for the census and for warm starts; one per constraint family.
TAG_COMMUTE = "commute-or"
TAG_SAME = "same-xor"
TAG_EVEN = "even-xor"
TAG_BOTH = "both-and"
TAG_XIND = "xind-and"
TAG_ZIND = "zind-and"
TAG_XDEG = "x-degree"
TAG_ZDEG = "z-degree"
TAG_SDEG_MIN = "stab-degree-min"
TAG_SDEG_MAX = "stab-degree-max"
TAG_BALANCE = "balance"


@dataclass(frozen=True)
class EncodingParams:
    """Code-quality requirements layered on top of commutation.

    min_qubit_degree: every qubit must touch at least this many active
        X-type edges and as many active Z-type edges.
    min_stab_degree / max_stab_degree: bounds on active edges per
        stabilizer (max_stab_degree=None means unbounded).
    balanced: exactly floor(m/2) stabilizers are X type.
    """

    min_qubit_degree: int = 0
    min_stab_degree: int = 0
    max_stab_degree: int | None = None
    balanced: bool = False

    def __post_init__(self):
        if self.min_qubit_degree < 0 or self.min_stab_degree < 0:
            raise ValueError("degree bounds must be non-negative")
        if self.max_stab_degree is not None and self.max_stab_degree < self.min_stab_degree:
            raise ValueError("max_stab_degree must be >= min_stab_degree")

    def to_dict(self) -> dict:
        return {
            "min_qubit_degree": self.min_qubit_degree,
            "min_stab_degree": self.min_stab_degree,
            "max_stab_degree": self.max_stab_degree,
            "balanced": self.balanced,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "EncodingParams":
        return cls(
            min_qubit_degree=doc.get("min_qubit_degree", 0),
            min_stab_degree=doc.get("min_stab_degree", 0),
            max_stab_degree=doc.get("max_stab_degree"),
            balanced=doc.get("balanced", False),
        )


class ConstraintSystem:
    """Immutable bundle of a graph, a variable table and constraints.

    Variable ids are dense and assigned in a canonical order (activators
    row-major, then paulis, then pair auxiliaries, then type indicators),
    so re-encoding a graph reproduces the system exactly.
    """

    def __init__(
        self,
        graph: SupportGraph,
        variables: Iterable[VarRef],
        constraints: Iterable[Constraint],
        params: EncodingParams | None = None,
    ):
        self.graph = graph
        self.variables = tuple(variables)
        self.constraints = tuple(constraints)
        self.params = params or EncodingParams()
        self._by_key = {(v.kind, v.index): v.id for v in self.variables}
        for i, v in enumerate(self.variables):
            if v.id != i:
                raise ValueError("variable ids must be dense and in order")
        for c in self.constraints:
            ids = [lit[0] for lit in c.lits] if isinstance(c, OrClause) else list(c.vars)
            for vid in ids:
                if not (0 <= vid < len(self.variables)):
                    raise ValueError(f"constraint references unknown variable {vid}")
            if isinstance(c, (OrClause, XorClause)) and not ids:
                raise ValueError("OR/XOR constraints must be non-empty")
            if len(set(ids)) != len(ids):
                raise ValueError("constraint variable lists must be duplicate-free")
            if isinstance(c, XorClause) and c.parity not in (0, 1):
                raise ValueError("XOR parity must be 0 or 1")
            if isinstance(c, Linear) and c.cmp not in (">=", "<=", "=="):
                raise ValueError(f"unknown comparator {c.cmp!r}")

    @property
    def num_vars(self) -> int:
        return len(self.variables)

    def var_id(self, kind: str, index: tuple[int, ...]) -> int:
        return self._by_key[(kind, index)]

    def has_var(self, kind: str, index: tuple[int, ...]) -> bool:
        return (kind, index) in self._by_key

    def to_json(self) -> str:
        def cdoc(c: Constraint) -> dict:
            if isinstance(c, OrClause):
                return {"type": "or", "lits": [[v, int(pos)] for v, pos in c.lits], "tag": c.tag}
            if isinstance(c, XorClause):
                return {"type": "xor", "vars": list(c.vars), "parity": c.parity, "tag": c.tag}
            return {"type": "linear", "vars": list(c.vars), "cmp": c.cmp, "bound": c.bound, "tag": c.tag}

        doc = {
            "format_version": SYSTEM_FORMAT_VERSION,
            "graph": json.loads(self.graph.to_json()),
            "params": self.params.to_dict(),
            "variables": [[v.kind, list(v.index)] for v in self.variables],
            "constraints": [cdoc(c) for c in self.constraints],
        }
        return json.dumps(doc, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ConstraintSystem":
        doc = json.loads(text)
        graph = SupportGraph.from_json(json.dumps(doc["graph"]))
        variables = [
            VarRef(i, kind, tuple(index)) for i, (kind, index) in enumerate(doc["variables"])
        ]
        constraints: list[Constraint] = []
        for c in doc["constraints"]:
            if c["type"] == "or":
                constraints.append(OrClause(tuple((v, bool(pos)) for v, pos in c["lits"]), c["tag"]))
            elif c["type"] == "xor":
                constraints.append(XorClause(tuple(c["vars"]), c["parity"], c["tag"]))
            else:
                constraints.append(Linear(tuple(c["vars"]), c["cmp"], c["bound"], c["tag"]))
        return cls(graph, variables, constraints, EncodingParams.from_dict(doc["params"]))


def intersecting_pairs(g: SupportGraph) -> list[tuple[int, int, tuple[int, ...]]]:
    """Stabilizer pairs (s1 < s2) with their shared qubits, lexicographic."""
    out = []
    for s1 in range(g.m):
        for s2 in range(s1 + 1, g.m):
            shared = shared_qubits(g, s1, s2)
            if shared:
                out.append((s1, s2, tuple(shared)))
    return out


def _and_definition(target: int, in1: int, in2: int, tag: str) -> list[OrClause]:
    """target <-> (in1 AND in2) as the standard three clauses."""
    return [
        OrClause(((target, False), (in1, True)), tag),
        OrClause(((target, False), (in2, True)), tag),
        OrClause(((target, True), (in1, False), (in2, False)), tag),
    ]


def _and_not_definition(target: int, in1: int, in2: int, tag: str) -> list[OrClause]:
    """target <-> (in1 AND NOT in2)."""
    return [
        OrClause(((target, False), (in1, True)), tag),
        OrClause(((target, False), (in2, False)), tag),
        OrClause(((target, True), (in1, False), (in2, True)), tag),
    ]


def encode_commutation(g: SupportGraph) -> ConstraintSystem:
    """Build the commutation-only system for a support graph.

    Activator and Pauli variables exist for every edge and stabilizer;
    same/even/both auxiliaries only for pairs that actually intersect.
    """
    variables: list[VarRef] = []

    def new_var(kind: str, index: tuple[int, ...]) -> int:
        vid = len(variables)
        variables.append(VarRef(vid, kind, index))
        return vid

    a_id = {edge: new_var(ACTIVATOR, edge) for edge in g.edges}
    p_id = [new_var(PAULI, (s,)) for s in range(g.m)]

    constraints: list[Constraint] = []
    for s1, s2, shared in intersecting_pairs(g):
        same = new_var(SAME, (s1, s2))
        even = new_var(EVEN, (s1, s2))
        both = [new_var(BOTH, (q, s1, s2)) for q in shared]
        constraints.append(OrClause(((same, True), (even, True)), TAG_COMMUTE))
        constraints.append(XorClause((same, p_id[s1], p_id[s2]), 1, TAG_SAME))
        constraints.append(XorClause((even, *both), 1, TAG_EVEN))
        for q, b in zip(shared, both):
            constraints.extend(_and_definition(b, a_id[(q, s1)], a_id[(q, s2)], TAG_BOTH))

    return ConstraintSystem(g, variables, constraints, EncodingParams())


def add_degree_and_balance(cs: ConstraintSystem, params: EncodingParams) -> ConstraintSystem:
    """Extend a commutation system with degree and balance requirements.

    Returns a new system; cs itself is untouched.  With all-default
    params the system is returned unchanged.
    """
    if params == EncodingParams():
        return cs
    g = cs.graph
    variables = list(cs.variables)
    constraints = list(cs.constraints)

    def new_var(kind: str, index: tuple[int, ...]) -> int:
        vid = len(variables)
        variables.append(VarRef(vid, kind, index))
        return vid

    if params.min_qubit_degree > 0:
        x_id = {}
        z_id = {}
        for edge in g.edges:
            x_id[edge] = new_var(XIND, edge)
            z_id[edge] = new_var(ZIND, edge)
        for edge in g.edges:
            q, s = edge
            a = cs.var_id(ACTIVATOR, edge)
            p = cs.var_id(PAULI, (s,))
            constraints.extend(_and_definition(x_id[edge], a, p, TAG_XIND))
            constraints.extend(_and_not_definition(z_id[edge], a, p, TAG_ZIND))
        for q in range(g.n):
            xs = tuple(x_id[(q, s)] for s in g.qubit_neighbors(q))
            zs = tuple(z_id[(q, s)] for s in g.qubit_neighbors(q))
            constraints.append(Linear(xs, ">=", params.min_qubit_degree, TAG_XDEG))
            constraints.append(Linear(zs, ">=", params.min_qubit_degree, TAG_ZDEG))

    if params.min_stab_degree > 0 or params.max_stab_degree is not None:
        for s in range(g.m):
            acts = tuple(cs.var_id(ACTIVATOR, (q, s)) for q in g.stabilizer_neighbors(s))
            if params.min_stab_degree > 0:
                constraints.append(Linear(acts, ">=", params.min_stab_degree, TAG_SDEG_MIN))
            if params.max_stab_degree is not None and acts:
                constraints.append(Linear(acts, "<=", params.max_stab_degree, TAG_SDEG_MAX))

    if params.balanced:
        paulis = tuple(cs.var_id(PAULI, (s,)) for s in range(g.m))
        constraints.append(Linear(paulis, "==", g.m // 2, TAG_BALANCE))

    return ConstraintSystem(g, variables, constraints, params)


def encode(g: SupportGraph, params: EncodingParams | None = None) -> ConstraintSystem:
    """Commutation plus optional degree/balance constraints in one call."""
    cs = encode_commutation(g)
    if params is not None:
        cs = add_degree_and_balance(cs, params)
    return cs


@dataclass(frozen=True)
class CategoryStats:
    count: int
    mean_width: float
    width_counts: dict


@dataclass(frozen=True)
class Census:
    """Constraint counts and widths, overall and per constraint family."""

    or_count: int
    xor_count: int
    linear_count: int
    by_tag: dict

    def tag_count(self, tag: str) -> int:
        stats = self.by_tag.get(tag)
        return stats.count if stats else 0

    def tag_mean_width(self, tag: str) -> float:
        stats = self.by_tag.get(tag)
        return stats.mean_width if stats else 0.0

    def tag_width_count(self, tag: str, width: int) -> int:
        stats = self.by_tag.get(tag)
        return stats.width_counts.get(width, 0) if stats else 0

    def to_dict(self) -> dict:
        return {
            "or_count": self.or_count,
            "xor_count": self.xor_count,
            "linear_count": self.linear_count,
            "by_tag": {
                tag: {
                    "count": s.count,
                    "mean_width": s.mean_width,
                    "width_counts": {str(w): c for w, c in sorted(s.width_counts.items())},
                }
                for tag, s in sorted(self.by_tag.items())
            },
        }


def constraint_census(cs: ConstraintSystem) -> Census:
    or_count = xor_count = linear_count = 0
    widths: dict[str, list[int]] = {}
    for c in cs.constraints:
        if isinstance(c, OrClause):
            or_count += 1
            w = len(c.lits)
        elif isinstance(c, XorClause):
            xor_count += 1
            w = len(c.vars)
        else:
            linear_count += 1
            w = len(c.vars)
        widths.setdefault(c.tag, []).append(w)

    by_tag = {}
    for tag, ws in widths.items():
        counts: dict[int, int] = {}
        for w in ws:
            counts[w] = counts.get(w, 0) + 1
        by_tag[tag] = CategoryStats(len(ws), sum(ws) / len(ws), counts)
    return Census(or_count, xor_count, linear_count, by_tag)
