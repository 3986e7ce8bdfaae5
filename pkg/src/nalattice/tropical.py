"""Tropical tail polynomial phi(v) = max_I (v_I - h_I) and the law it induces."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .entropy import EntropyVector, entropy_total
from .lattice import Lattice, diagonal_lattice, intersect_lattices
from .setfunc import indices_of, subsets


class TropicalError(ValueError):
    pass


@dataclass(frozen=True)
class TropicalPolynomial:
    coefficients: EntropyVector
    q: int | None = None  # residue cardinality; None in puiseux mode

    @property
    def d(self) -> int:
        return self.coefficients.d

    def __call__(self, v):
        return phi_eval(self, v)


def phi_eval(T: TropicalPolynomial, v: Sequence):
    d = T.d
    if len(v) != d:
        raise TropicalError(f"expected a vector of length {d}, got {len(v)}")
    best = None
    for m, h in T.coefficients.items():
        term = sum((v[i] for i in range(d) if m >> i & 1), 0) - h
        if best is None or term > best:
            best = term
    return best


def tail_prob(T: TropicalPolynomial, v: Sequence) -> Fraction:
    """P(V >= v) = q^(-phi(v))."""
    if T.q is None:
        raise TropicalError("tail probabilities need a local field (p-adic mode)")
    return Fraction(1, T.q) ** phi_eval(T, v)


def box_points(lo: Sequence[int], hi: Sequence[int]) -> Iterator[tuple[int, ...]]:
    if len(lo) != len(hi):
        raise TropicalError("box corners of different length")
    if any(a > b for a, b in zip(lo, hi)):
        raise TropicalError("box needs lo <= hi")
    return itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))


def pmf_box(T: TropicalPolynomial, lo: Sequence[int], hi: Sequence[int]) -> dict[tuple, Fraction]:
    """P(V = v) for every v in the box, by inclusion-exclusion on the tail."""
    d = T.d
    cache: dict[tuple, Fraction] = {}

    def Q(w):
        if w not in cache:
            cache[w] = tail_prob(T, w)
        return cache[w]

    out = {}
    for v in box_points(lo, hi):
        total = Fraction(0)
        for S in range(1 << d):
            w = tuple(v[i] + (S >> i & 1) for i in range(d))
            total += -Q(w) if bin(S).count("1") % 2 else Q(w)
        out[v] = total
    return out


def phi_oracle_intersection(L: Lattice, v: Sequence):
    """h(Λ ∩ pi^v) - h(Λ), computed with lattice intersection."""
    if len(v) != L.d:
        raise TropicalError(f"expected a vector of length {L.d}, got {len(v)}")
    return entropy_total(intersect_lattices(L, diagonal_lattice(L.field, v))) - entropy_total(L)


def export_tropical(T: TropicalPolynomial) -> str:
    """One line per monomial: ``I:<indices> e:<0/1 vector> h:<coefficient>``."""
    lines = []
    for m in subsets(T.d):
        e = ",".join("1" if m >> i & 1 else "0" for i in range(T.d))
        I = ",".join(map(str, indices_of(m)))
        lines.append(f"I:{I} e:{e} h:{Fraction(T.coefficients.by_mask(m))}")
    return "\n".join(lines) + "\n"
