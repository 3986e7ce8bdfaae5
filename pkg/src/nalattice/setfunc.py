"""Set functions on subsets of [d], keyed internally by bitmask."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .field import format_valuation


def mask_of(I: Iterable[int]) -> int:
    """Bitmask of a collection of 1-based indices."""
    m = 0
    for i in I:
        if i < 1:
            raise ValueError(f"indices are 1-based, got {i}")
        m |= 1 << (i - 1)
    return m


def indices_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def subset_key(mask: int) -> str:
    return ",".join(str(i) for i in indices_of(mask))


def parse_subset_key(key: str) -> int:
    key = key.strip()
    if not key:
        return 0
    return mask_of(int(x) for x in key.split(","))


def subsets(d: int) -> list[int]:
    """All masks of [d] ordered by cardinality, then lexicographically."""
    return sorted(range(1 << d), key=lambda m: (bin(m).count("1"), indices_of(m)))


@dataclass(frozen=True)
class SetFunctionVector:
    """A point (x_I) of R^(2^d) with x_∅ = 0."""

    d: int
    values: Mapping[int, object]

    def __post_init__(self):
        missing = [m for m in range(1 << self.d) if m not in self.values]
        if missing:
            raise ValueError(f"missing subsets {[subset_key(m) for m in missing]}")
        if self.values[0] != 0:
            raise ValueError("value at the empty set must be 0")
        object.__setattr__(self, "values", dict(self.values))

    @classmethod
    def from_keys(cls, d: int, data: Mapping[str, object]):
        return cls(d, {parse_subset_key(k): Fraction(v) if isinstance(v, str) else v
                       for k, v in data.items()})

    def __getitem__(self, I: Iterable[int]):
        return self.values[mask_of(I)]

    def by_mask(self, mask: int):
        return self.values[mask]

    def items(self) -> Iterator[tuple[int, object]]:
        for m in subsets(self.d):
            yield m, self.values[m]

    def to_json(self) -> dict[str, str]:
        return {subset_key(m): format_valuation(v) for m, v in self.items()}

    def __eq__(self, other):
        if not isinstance(other, SetFunctionVector):
            return NotImplemented
        return self.d == other.d and all(self.values[m] == other.values[m] for m in self.values)

    def __hash__(self):
        return hash((self.d, tuple(Fraction(self.values[m]) for m in range(1 << self.d))))
