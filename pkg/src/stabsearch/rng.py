"""Counter-based pseudo-random streams.

Every random draw in this package is addressed by (stream key, counter
index) instead of consuming a stateful generator.  This gives three
properties the experiments rely on:

- bit-identical streams across platforms and Python versions,
- cheap parallelism (workers own disjoint counter ranges),
- exact monotone coupling of graph samples: the uniform draw for a given
  edge depends only on the stream key and the edge index, never on the
  inclusion probability.

The mixing function is SplitMix64, used here as a stateless hash of the
counter.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_INV53 = 1.0 / (1 << 53)


def mix64(x: int) -> int:
    """SplitMix64 finalizer: a 64-bit bijective mixer."""
    x &= _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def stable_hash64(*parts: int | float | str) -> int:
    """Deterministic 64-bit hash of a tuple of ints, floats and strings.

    Unlike builtin hash(), the result is stable across processes.  Floats
    are hashed by their IEEE-754 bit pattern, so distinct values never
    collide through rounding.
    """
    h = 0x243F6A8885A308D3
    for k, part in enumerate(parts):
        if isinstance(part, bool):
            part = int(part)
        if isinstance(part, float):
            part = struct.unpack("<Q", struct.pack("<d", part))[0]
        if isinstance(part, str):
            for byte in part.encode("utf-8"):
                h = mix64(h ^ (byte + _GOLDEN))
            h = mix64(h ^ 0x5F)
        elif isinstance(part, int):
            h = mix64((h ^ (part & _MASK64)) + (k + 1) * _GOLDEN)
        else:
            raise TypeError(f"unhashable part of type {type(part).__name__}")
    return mix64(h)


@dataclass(frozen=True)
class RngSpec:
    """Addressable random stream: (master_seed, stream_id) names it fully.

    Identical (master_seed, stream_id) pairs yield bit-identical streams.
    Distinct stream_ids give statistically independent streams off the
    same master seed.
    """

    master_seed: int
    stream_id: int = 0

    def key(self) -> int:
        return mix64(mix64(self.master_seed & _MASK64) ^ ((self.stream_id & _MASK64) * _GOLDEN & _MASK64))

    def substream(self, *parts: int | float | str) -> "RngSpec":
        """Derive a child stream; same master seed, hashed stream id."""
        return RngSpec(self.master_seed, stable_hash64(self.stream_id, *parts))


class CounterStream:
    """Random access into one stream: value i is a pure function of (key, i)."""

    __slots__ = ("key",)

    def __init__(self, spec: RngSpec):
        self.key = spec.key()

    def u64(self, index: int) -> int:
        return mix64(self.key + ((index + 1) * _GOLDEN & _MASK64))

    def unit(self, index: int) -> float:
        """Uniform float in [0, 1) with 53 random bits."""
        return (self.u64(index) >> 11) * _INV53

    def bernoulli(self, index: int, p: float) -> bool:
        return self.unit(index) < p

    def below(self, index: int, bound: int) -> int:
        """Integer in [0, bound), by 64-bit reduction (bias < 2**-40 for bound < 2**24)."""
        return (self.u64(index) * bound) >> 64
