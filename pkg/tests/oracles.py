"""Independent brute-force oracles used across the test suite.

Everything here recomputes results from first principles, sharing no
evaluation code with the package's solver or rank-based fast paths:

- truth-table bitsets decide small constraint systems by exhaustive
  enumeration (variable i toggles with period 2^i, so a column of all
  2^V assignments packs into one big int);
- naive dense Gaussian elimination for matrix rank;
- explicit enumeration of region Paulis and stabilizer subsets for
  erasure class counting.
"""

from __future__ import annotations

from stabsearch.constraints import ConstraintSystem, OrClause, XorClause
from stabsearch.css import CssCode


def _column(v: int, num_vars: int) -> int:
    """Truth-table column of variable v over all 2^num_vars assignments."""
    half = 1 << v
    col = ((1 << half) - 1) << half  # 2^v zeros followed by 2^v ones
    width = half << 1
    total = 1 << num_vars
    while width < total:  # double the filled prefix until it spans the table
        col |= col << width
        width <<= 1
    return col


def constraint_column(c, cols: list[int], full: int) -> int:
    """Bitset of assignments satisfying one constraint."""
    if isinstance(c, OrClause):
        acc = 0
        for v, pos in c.lits:
            acc |= cols[v] if pos else (full ^ cols[v])
        return acc
    if isinstance(c, XorClause):
        acc = 0
        for v in c.vars:
            acc ^= cols[v]
        return acc if c.parity == 1 else (full ^ acc)
    # cardinality: layer assignments by how many listed vars are true
    layers = [full]  # layers[j] = assignments with exactly j of the vars seen so far true
    for v in c.vars:
        col = cols[v]
        ncol = full ^ col
        nxt = [layers[0] & ncol]
        for j in range(1, len(layers)):
            nxt.append((layers[j] & ncol) | (layers[j - 1] & col))
        nxt.append(layers[-1] & col)
        layers = nxt
    sat = 0
    for j, bitset in enumerate(layers):
        if c.cmp == ">=":
            ok = j >= c.bound
        elif c.cmp == "<=":
            ok = j <= c.bound
        else:
            ok = j == c.bound
        if ok:
            sat |= bitset
    return sat


def satisfying_set(cs: ConstraintSystem) -> int:
    """Bitset over all 2^V assignments that satisfy every constraint."""
    nv = cs.num_vars
    if nv > 24:
        raise ValueError("exhaustive oracle limited to 24 variables")
    full = (1 << (1 << nv)) - 1
    cols = [_column(v, nv) for v in range(nv)]
    acc = full
    for c in cs.constraints:
        acc &= constraint_column(c, cols, full)
        if acc == 0:
            return 0
    return acc


def brute_force_verdict(cs: ConstraintSystem) -> str:
    return "sat" if satisfying_set(cs) else "unsat"


def assignment_bits(index: int, num_vars: int) -> tuple[int, ...]:
    return tuple((index >> v) & 1 for v in range(num_vars))


def naive_rank(bits: list[list[int]]) -> int:
    """Dense cubic-time elimination over GF(2), row/column lists."""
    mat = [row[:] for row in bits]
    if not mat:
        return 0
    rows, cols = len(mat), len(mat[0])
    rank = 0
    pivot_row = 0
    for col in range(cols):
        pivot = None
        for r in range(pivot_row, rows):
            if mat[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        mat[pivot_row], mat[pivot] = mat[pivot], mat[pivot_row]
        for r in range(rows):
            if r != pivot_row and mat[r][col]:
                mat[r] = [a ^ b for a, b in zip(mat[r], mat[pivot_row])]
        rank += 1
        pivot_row += 1
        if pivot_row == rows:
            break
    return rank


def enumerate_subgroup_supports(rows: list[int]) -> set[int]:
    """Distinct support masks of every element generated by the given rows.

    Deduplication matters: dependent generators enumerate elements with
    multiplicity, but the quotient needs distinct group elements.
    """
    supports = {0}
    for row in rows:
        supports |= {s ^ row for s in supports}
    return supports


def brute_force_class_log2(code: CssCode, mask: int) -> int:
    """Count logical classes on an erased region by explicit enumeration.

    X sector: enumerate every X-support inside the region, keep those
    with even overlap against all hz rows, then divide by the number of
    X-stabilizer-group elements supported inside the region.  Z sector
    is symmetric.  Returns log2 of the product of class counts.
    """
    region_bits = [q for q in range(code.n) if (mask >> q) & 1]
    w = len(region_bits)

    def sector_count(check_rows: list[int], own_rows: list[int]) -> int:
        commuting = 0
        for sub in range(1 << w):
            support = 0
            for i in range(w):
                if (sub >> i) & 1:
                    support |= 1 << region_bits[i]
            if all((support & r).bit_count() % 2 == 0 for r in check_rows):
                commuting += 1
        inside = sum(1 for s in enumerate_subgroup_supports(own_rows) if s & ~mask == 0)
        assert commuting % inside == 0
        return commuting // inside

    cx = sector_count(list(code.hz.rows), list(code.hx.rows))
    cz = sector_count(list(code.hx.rows), list(code.hz.rows))
    total = cx * cz
    g = total.bit_length() - 1
    assert 1 << g == total, "class count must be a power of two"
    return g
