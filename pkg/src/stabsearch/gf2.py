"""GF(2) matrices packed into Python ints, one int per row (bit j = column j)."""

from __future__ import annotations

from dataclasses import dataclass


def rank_int_rows(rows: list[int]) -> int:
    """Rank over GF(2) by incremental elimination with a pivot table."""
    pivots: dict[int, int] = {}
    rank = 0
    for row in rows:
        cur = row
        while cur:
            b = cur.bit_length() - 1
            piv = pivots.get(b)
            if piv is None:
                pivots[b] = cur
                rank += 1
                break
            cur ^= piv
    return rank


def rank_masked(rows: list[int], mask: int) -> int:
    """Rank of the matrix restricted to the columns selected by mask."""
    return rank_int_rows([r & mask for r in rows])


@dataclass(frozen=True)
class BitMatrix:
    """Row-major bit-packed matrix; all arithmetic is modulo 2."""

    rows: tuple[int, ...]
    cols: int

    def __post_init__(self):
        if self.cols < 0:
            raise ValueError("cols must be non-negative")
        limit = 1 << self.cols
        for r in self.rows:
            if not (0 <= r < limit):
                raise ValueError("row value exceeds column count")
        object.__setattr__(self, "rows", tuple(self.rows))

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    @classmethod
    def from_bits(cls, bits: list[list[int]], cols: int | None = None) -> "BitMatrix":
        if cols is None:
            cols = len(bits[0]) if bits else 0
        rows = []
        for row in bits:
            if len(row) != cols:
                raise ValueError("ragged rows")
            acc = 0
            for j, b in enumerate(row):
                if b:
                    acc |= 1 << j
            rows.append(acc)
        return cls(tuple(rows), cols)

    @classmethod
    def from_strings(cls, strings: list[str], cols: int | None = None) -> "BitMatrix":
        if cols is None:
            cols = len(strings[0]) if strings else 0
        return cls.from_bits([[int(ch) for ch in s] for s in strings], cols)

    def to_strings(self) -> list[str]:
        return ["".join("1" if (r >> j) & 1 else "0" for j in range(self.cols)) for r in self.rows]

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def row_weights(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def col_weights(self) -> list[int]:
        return [sum((r >> j) & 1 for r in self.rows) for j in range(self.cols)]

    def total_weight(self) -> int:
        return sum(r.bit_count() for r in self.rows)

    def rank(self) -> int:
        return rank_int_rows(list(self.rows))


def rank_gf2(mat: BitMatrix) -> int:
    return mat.rank()
