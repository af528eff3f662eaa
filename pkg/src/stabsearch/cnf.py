"""DIMACS CNF export for constraint systems.

XOR constraints are chain-decomposed with fresh auxiliaries (direct
truth-table expansion at width <= 3), and cardinality constraints are
expanded through sequential-counter networks.  Original variable ids
map to DIMACS variables 1..num_vars in order; auxiliaries come after.
The mapping is embedded as comment lines and exposed programmatically,
so models found by an external solver can be pulled back onto the
original variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .constraints import ConstraintSystem, OrClause, XorClause
from .solver import Assignment


@dataclass(frozen=True)
class CnfExport:
    text: str
    var_map: dict[int, int]  # original variable id -> DIMACS variable
    num_vars: int
    num_clauses: int
    clauses: tuple[tuple[int, ...], ...]

    def assignment_from_model(self, model: Iterable[int]) -> Assignment:
        """Map a DIMACS model (signed literals) back to original variables.

        Variables missing from the model default to 0.
        """
        truth: dict[int, int] = {}
        for lit in model:
            if lit == 0:
                continue
            truth[abs(lit)] = 1 if lit > 0 else 0
        n_orig = len(self.var_map)
        return Assignment(tuple(truth.get(self.var_map[v], 0) for v in range(n_orig)))


class _CnfBuilder:
    def __init__(self, n_orig: int):
        self.next_var = n_orig + 1
        self.clauses: list[tuple[int, ...]] = []

    def fresh(self) -> int:
        v = self.next_var
        self.next_var += 1
        return v

    def emit(self, *lits: int):
        self.clauses.append(tuple(lits))

    def contradiction(self):
        t = self.fresh()
        self.emit(t)
        self.emit(-t)

    def parity_direct(self, dvars: list[int], parity: int):
        """Truth-table expansion of XOR(dvars) = parity; width <= 3 intended."""
        w = len(dvars)
        for bits in range(1 << w):
            if bin(bits).count("1") & 1 == parity:
                continue  # satisfying pattern, nothing to forbid
            self.emit(*(-dvars[i] if (bits >> i) & 1 else dvars[i] for i in range(w)))

    def parity(self, dvars: list[int], parity: int):
        if len(dvars) <= 3:
            self.parity_direct(dvars, parity)
            return
        rest = list(dvars)
        acc = rest.pop(0)
        while len(rest) > 1:
            nxt = rest.pop(0)
            t = self.fresh()
            self.parity_direct([acc, nxt, t], 0)  # t = acc xor nxt
            acc = t
        self.parity_direct([acc, rest[0]], parity)

    def at_most(self, lits: list[int], k: int):
        """Sequential-counter at-most-k over DIMACS literals."""
        w = len(lits)
        if k >= w:
            return
        if k < 0:
            self.contradiction()
            return
        if k == 0:
            for l in lits:
                self.emit(-l)
            return
        # s[i][j]: among the first i+1 literals at least j are true
        s = [[0] * (k + 1) for _ in range(w - 1)]
        for i in range(w - 1):
            for j in range(1, min(i + 1, k) + 1):
                s[i][j] = self.fresh()
        self.emit(-lits[0], s[0][1])
        for i in range(1, w - 1):
            self.emit(-lits[i], s[i][1])
            self.emit(-s[i - 1][1], s[i][1])
            for j in range(2, min(i + 1, k) + 1):
                self.emit(-lits[i], -s[i - 1][j - 1], s[i][j])
                if j <= i:
                    self.emit(-s[i - 1][j], s[i][j])
            if i >= k:
                self.emit(-lits[i], -s[i - 1][k])
        self.emit(-lits[w - 1], -s[w - 2][k])

    def at_least(self, lits: list[int], b: int):
        w = len(lits)
        if b <= 0:
            return
        if b > w:
            self.contradiction()
            return
        if b == w:
            for l in lits:
                self.emit(l)
            return
        self.at_most([-l for l in lits], w - b)


def export_cnf(cs: ConstraintSystem) -> CnfExport:
    """Render a constraint system as DIMACS CNF with a variable side-table."""
    n_orig = cs.num_vars
    var_map = {v: v + 1 for v in range(n_orig)}
    b = _CnfBuilder(n_orig)

    for c in cs.constraints:
        if isinstance(c, OrClause):
            b.emit(*((v + 1) if pos else -(v + 1) for v, pos in c.lits))
        elif isinstance(c, XorClause):
            b.parity([v + 1 for v in c.vars], c.parity)
        else:
            lits = [v + 1 for v in c.vars]
            if c.cmp in (">=", "=="):
                b.at_least(lits, c.bound)
            if c.cmp in ("<=", "=="):
                b.at_most(lits, c.bound)

    num_vars = b.next_var - 1
    lines = ["c stabsearch constraint system export"]
    lines.extend(f"c map {orig} {dim}" for orig, dim in var_map.items())
    lines.append(f"p cnf {num_vars} {len(b.clauses)}")
    lines.extend(" ".join(str(l) for l in clause) + " 0" for clause in b.clauses)
    return CnfExport(
        text="\n".join(lines) + "\n",
        var_map=var_map,
        num_vars=num_vars,
        num_clauses=len(b.clauses),
        clauses=tuple(b.clauses),
    )
