"""Erasure-channel analysis with an exact maximum-likelihood success law.

After erasing a known set of qubits, the residual noise is a uniformly
random Pauli on the erased region.  A maximum-likelihood decoder picks
one representative per syndrome class, so it succeeds with probability
2^(-g), where 2^g counts the equivalence classes of region-supported
Pauli operators that commute with every generator, modulo stabilizers
supported inside the region.

For CSS codes the count splits into X and Z sectors, each computable
from four GF(2) ranks of column-restricted check matrices:

    g_X = [|e| - rank(hz on e)] - [rank(hx) - rank(hx off e)]

and symmetrically for g_Z.  This closed form is validated against a
brute-force class enumeration in the test suite; the enumeration is the
authority, the ranks are the fast path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .css import CssCode
from .gf2 import rank_int_rows, rank_masked
from .rng import CounterStream, RngSpec

Z95 = 1.959963984540054  # two-sided 95% normal quantile


@dataclass(frozen=True)
class ErasurePattern:
    """Erased-qubit indicator vector, packed little-endian (bit q = qubit q)."""

    n: int
    mask: int

    def __post_init__(self):
        if not (0 <= self.mask < (1 << self.n)):
            raise ValueError("mask has bits outside the qubit range")

    @property
    def weight(self) -> int:
        return self.mask.bit_count()

    def erased(self, q: int) -> bool:
        return bool((self.mask >> q) & 1)

    def bits(self) -> tuple[int, ...]:
        return tuple((self.mask >> q) & 1 for q in range(self.n))

    def to_hex(self) -> str:
        width = max(1, (self.n + 3) // 4)
        return format(self.mask, f"0{width}x")

    @classmethod
    def from_hex(cls, n: int, text: str) -> "ErasurePattern":
        return cls(n=n, mask=int(text, 16))


def sample_erasure(n: int, p: float, rng: RngSpec, base_index: int = 0) -> ErasurePattern:
    """Erase each qubit independently with probability p.

    Qubit q consumes stream counter base_index + q, so non-overlapping
    base indices give independent patterns from one stream.
    """
    if n <= 0:
        raise ValueError("n must be positive")
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"p must lie in [0, 1], got {p}")
    stream = CounterStream(rng)
    mask = 0
    if p >= 1.0:
        mask = (1 << n) - 1
    elif p > 0.0:
        unit = stream.unit
        for q in range(n):
            if unit(base_index + q) < p:
                mask |= 1 << q
    return ErasurePattern(n=n, mask=mask)


def _class_log2(hx_rows, hz_rows, rank_x, rank_z, mask, comp, weight) -> int:
    gx = (weight - rank_masked(hz_rows, mask)) - (rank_x - rank_masked(hx_rows, comp))
    gz = (weight - rank_masked(hx_rows, mask)) - (rank_z - rank_masked(hz_rows, comp))
    return gx + gz


def logical_class_log2(c: CssCode, e: ErasurePattern) -> int:
    """log2 of the number of logical classes supported on the erasure."""
    if e.n != c.n:
        raise ValueError("pattern length does not match the code")
    full = (1 << c.n) - 1
    hx_rows = list(c.hx.rows)
    hz_rows = list(c.hz.rows)
    g = _class_log2(
        hx_rows,
        hz_rows,
        rank_int_rows(hx_rows),
        rank_int_rows(hz_rows),
        e.mask,
        full ^ e.mask,
        e.weight,
    )
    if g < 0:
        raise AssertionError("negative class dimension, commutation must be violated")
    return g


def success_probability(c: CssCode, e: ErasurePattern) -> float:
    """Probability that exact ML decoding corrects this erasure: 2^(-g)."""
    return 2.0 ** (-logical_class_log2(c, e))


@dataclass(frozen=True)
class DecodingReport:
    """Failure statistics for one (code, p) point.

    failures is the accumulated failure mass: an integer count under the
    bernoulli estimator, a fractional expectation under the exact one.
    """

    p: float
    trials: int
    failures: float
    failure_rate: float
    ci95: float
    estimator: str = "exact"
    sum_sq: float = 0.0

    def merge(self, other: "DecodingReport") -> "DecodingReport":
        if self.p != other.p or self.estimator != other.estimator:
            raise ValueError("cannot merge reports for different settings")
        return _make_report(
            self.p,
            self.trials + other.trials,
            self.failures + other.failures,
            self.sum_sq + other.sum_sq,
            self.estimator,
        )


def _make_report(p: float, trials: int, fail_sum: float, sum_sq: float, estimator: str) -> DecodingReport:
    mean = fail_sum / trials
    if trials > 1:
        var = max(0.0, (sum_sq - trials * mean * mean) / (trials - 1))
        half = Z95 * math.sqrt(var / trials)
    else:
        half = 0.0
    return DecodingReport(
        p=p,
        trials=trials,
        failures=fail_sum,
        failure_rate=mean,
        ci95=half,
        estimator=estimator,
        sum_sq=sum_sq,
    )


def failure_rate(
    c: CssCode,
    p: float,
    trials: int,
    rng: RngSpec,
    estimator: str = "exact",
) -> DecodingReport:
    """Monte-Carlo failure estimate over random erasure patterns.

    estimator="exact" accumulates the per-pattern expected failure
    1 - 2^(-g) (lower variance); "bernoulli" draws the decoder's success
    as a coin flip with that probability.  Trial t consumes stream
    counters [t*(n+1), (t+1)*(n+1)), so reports over disjoint trial
    ranges merge associatively.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"p must lie in [0, 1], got {p}")
    if estimator not in ("exact", "bernoulli"):
        raise ValueError(f"unknown estimator {estimator!r}")
    n = c.n
    full = (1 << n) - 1
    hx_rows = list(c.hx.rows)
    hz_rows = list(c.hz.rows)
    rank_x = rank_int_rows(hx_rows)
    rank_z = rank_int_rows(hz_rows)
    stream = CounterStream(rng)
    unit = stream.unit

    fail_sum = 0.0
    sum_sq = 0.0
    stride = n + 1
    for t in range(trials):
        base = t * stride
        mask = 0
        if p >= 1.0:
            mask = full
        elif p > 0.0:
            for q in range(n):
                if unit(base + q) < p:
                    mask |= 1 << q
        if mask:
            g = _class_log2(hx_rows, hz_rows, rank_x, rank_z, mask, full ^ mask, mask.bit_count())
            p_fail = 1.0 - 2.0 ** (-g)
        else:
            p_fail = 0.0
        if estimator == "exact":
            fail_sum += p_fail
            sum_sq += p_fail * p_fail
        else:
            failed = 1.0 if unit(base + n) < p_fail else 0.0
            fail_sum += failed
            sum_sq += failed
    return _make_report(p, trials, fail_sum, sum_sq, estimator)


def exact_failure_rate(c: CssCode, p: float) -> float:
    """Exact expected ML failure: full enumeration over all 2^n patterns.

    Only sensible for small n; the Monte-Carlo estimators converge to
    this value.
    """
    if c.n > 22:
        raise ValueError("exact enumeration is limited to n <= 22")
    n = c.n
    full = (1 << n) - 1
    hx_rows = list(c.hx.rows)
    hz_rows = list(c.hz.rows)
    rank_x = rank_int_rows(hx_rows)
    rank_z = rank_int_rows(hz_rows)
    total = 0.0
    for mask in range(1 << n):
        w = mask.bit_count()
        prob = (p ** w) * ((1.0 - p) ** (n - w))
        if prob == 0.0:
            continue
        if mask:
            g = _class_log2(hx_rows, hz_rows, rank_x, rank_z, mask, full ^ mask, w)
            total += prob * (1.0 - 2.0 ** (-g))
    return total


def erasure_capacity_limit(rate: float) -> float:
    """Largest erasure probability a rate-R family can tolerate: (1 - R) / 2."""
    if not (0.0 <= rate <= 1.0):
        raise ValueError(f"rate must lie in [0, 1], got {rate}")
    return (1.0 - rate) / 2.0
