"""Independent checks: Monte-Carlo sampling of X uniform on Λ, and a
finite-quotient enumeration of the index [Λ : Λ ∩ pi^v].

Sampling model: X = A·Z with Z uniform on O^d.  Z is drawn exactly modulo
p^N; a coordinate valuation read from the truncation equals the true one
only while it stays below N, so readings at or above ``N - guard`` are
censored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import kernels
from .field import padic_val
from .lattice import Lattice, contains, diagonal_envelopes, scale_rows, standard_lattice
from .tropical import TropicalPolynomial, box_points, tail_prob

BLOCK = 1 << 16
DEFAULT_GUARD = 10
MAX_CENSORED = 0.01
DEFAULT_BUDGET_BITS = 24


class VerifyError(ValueError):
    pass


class BudgetError(VerifyError):
    pass


def _require_padic(L: Lattice):
    if not L.field.is_padic:
        raise VerifyError("sampling and enumeration need a local field (p-adic mode)")


def _integral_rows(rows, p: int):
    """Clear denominators: rows = B / D.  Returns (B', row_shift, val_p(D)) with
    B'_i = B_i / p^{m_i}, m_i = min_j val(B_ij)."""
    D = 1
    for r in rows:
        for x in r:
            D = math.lcm(D, Fraction(x).denominator)
    B = [[int(Fraction(x) * D) for x in r] for r in rows]
    shifts = []
    Bp = []
    for r in B:
        m = min(padic_val(x, p) for x in r if x != 0)
        shifts.append(m)
        Bp.append([x // p**m for x in r])
    return Bp, shifts, padic_val(D, p)


def _uniform_block(rng: np.random.Generator, p: int, N: int, size: tuple):
    mod = p**N
    if mod < 2**63:
        return rng.integers(0, mod, size=size, dtype=np.int64)
    # compose from base-p^c chunks that fit in int64
    c = 1
    while p ** (c + 1) < 2**62:
        c += 1
    out = np.zeros(size, dtype=object)
    done = 0
    while done < N:
        k = min(c, N - done)
        chunk = rng.integers(0, p**k, size=size, dtype=np.int64).astype(object)
        out = out + chunk * p**done
        done += k
    return out


def _stream(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, block])))


def uniform_integral_samples(p: int, N: int, n: int, d: int, seed: int):
    """n×d samples uniform on (Z/p^N)^d, reproducible from (seed, n, N)."""
    if seed is None:
        raise VerifyError("a seed is required")
    blocks = []
    for k, start in enumerate(range(0, n, BLOCK)):
        blocks.append(_uniform_block(_stream(seed, k), p, N, (min(BLOCK, n - start), d)))
    return np.concatenate(blocks) if blocks else np.zeros((0, d), dtype=np.int64)


@dataclass
class SampleBatch:
    n: int
    precision: int
    seed: int
    guard: int
    valuations: np.ndarray  # n×d, lower bounds where censored
    censored: int
    max_censored: float = MAX_CENSORED

    @property
    def censored_fraction(self) -> float:
        return self.censored / self.n if self.n else 0.0

    @property
    def usable(self) -> bool:
        return self.censored_fraction < self.max_censored

    def summary(self) -> dict:
        counts: dict[str, int] = {}
        for row in self.valuations:
            key = ",".join(str(int(x)) for x in row)
            counts[key] = counts.get(key, 0) + 1
        return {"n": self.n, "precision": self.precision, "seed": self.seed, "guard": self.guard,
                "censored": self.censored, "censored_fraction": f"{self.censored_fraction:.6g}",
                "usable": self.usable,
                "histogram": dict(sorted(counts.items(), key=lambda kv: -kv[1]))}


def default_precision(L: Lattice, box_hi: Sequence[int] | None = None, guard: int = DEFAULT_GUARD) -> int:
    _, shifts, vD = _integral_rows(L.rep, L.field.p)
    offsets = [m - vD for m in shifts]
    a, _ = diagonal_envelopes(L)
    hi = max(box_hi) if box_hi is not None else max(a) + 1
    return max(1, max(hi - o for o in offsets)) + guard + 10


def sample_valuations(L: Lattice, n: int, precision: int | None = None, seed: int | None = None,
                      guard: int = DEFAULT_GUARD, box_hi: Sequence[int] | None = None) -> SampleBatch:
    """Draw n samples X uniform on L and record val(X) coordinatewise."""
    _require_padic(L)
    if seed is None:
        raise VerifyError("a seed is required")
    p = L.field.p
    N = precision if precision is not None else default_precision(L, box_hi, guard)
    if N < 1:
        raise VerifyError("precision must be positive")
    Bp, shifts, vD = _integral_rows(L.rep, p)
    Z = uniform_integral_samples(p, N, n, L.d, seed)
    t = kernels.valuation_counts(Bp, Z, p, N)
    censored = int(np.any(t >= N - guard, axis=1).sum())
    offsets = np.array([m - vD for m in shifts], dtype=np.int64)
    return SampleBatch(n, N, seed, guard, t + offsets, censored)


@dataclass
class TailRow:
    v: tuple
    count: int
    n: int
    exact: Fraction
    z: float | None = field(default=None)

    @property
    def empirical(self) -> Fraction:
        return Fraction(self.count, self.n)

    def to_json(self) -> dict:
        return {"v": list(self.v), "empirical": str(self.empirical), "exact": str(self.exact),
                "z": None if self.z is None else f"{self.z:.6f}"}


def empirical_tail_report(batch: SampleBatch, T: TropicalPolynomial,
                          lo: Sequence[int], hi: Sequence[int]) -> list[TailRow]:
    if not batch.usable:
        raise VerifyError(f"batch censored fraction {batch.censored_fraction:.3g} exceeds "
                          f"{batch.max_censored}")
    V = batch.valuations
    rows = []
    for v in box_points(lo, hi):
        count = int(np.all(V >= np.array(v, dtype=np.int64), axis=1).sum())
        exact = tail_prob(T, v)
        z = None
        if 0 < exact < 1:
            ex = float(exact)
            z = (count / batch.n - ex) / math.sqrt(ex * (1 - ex) / batch.n)
        rows.append(TailRow(tuple(v), count, batch.n, exact, z))
    return rows


def informative_cells(rows: Sequence[TailRow], min_expected: int = 10) -> list[TailRow]:
    """Cells whose exact tail lies in [k/n, 1 - k/n]; the rest are degenerate."""
    out = []
    for r in rows:
        lo = Fraction(min_expected, r.n)
        if lo <= r.exact <= 1 - lo:
            out.append(r)
    return out


# ---------------------------------------------------------------------------
# brute-force index


def _residues(L: Lattice, modulus: int):
    """Columns of the representative reduced into (Z/modulus)^d."""
    gens = []
    for j in range(L.d):
        col = []
        for i in range(L.d):
            x = Fraction(L.rep[i][j])
            col.append(x.numerator * pow(x.denominator, -1, modulus) % modulus)
        gens.append(col)
    return gens


def _rescale_into_O(L: Lattice) -> tuple[Lattice, tuple]:
    _, b = diagonal_envelopes(L)
    c = tuple(-min(0, bi) for bi in b)
    if any(c):
        L = scale_rows(L, [Fraction(L.field.p) ** ci for ci in c])
    return L, c


def _count_table(L: Lattice, vs, M: int) -> list[int]:
    p, d = L.field.p, L.d
    modulus = p**M
    codes = kernels.subgroup_elements(_residues(L, modulus), modulus, d)
    size = len(codes)
    # hist[k_1..k_d] = #{x in G : min(val_p(x_i), M) = k_i}; tail sums give |G ∩ pi^v|
    vals = np.zeros((size, d), dtype=np.int64)
    for i in range(d):
        coord = (codes // modulus**i) % modulus
        for k in range(1, M + 1):
            vals[:, i] += coord % p**k == 0
    hist = np.zeros((M + 1,) * d, dtype=np.int64)
    np.add.at(hist, tuple(vals.T), 1)
    for axis in range(d):
        hist = np.flip(np.cumsum(np.flip(hist, axis), axis=axis), axis)
    return [size // int(hist[tuple(v)]) for v in vs]


def brute_force_index_table(L: Lattice, vs, M: int, budget_bits: float = DEFAULT_BUDGET_BITS) -> list[int]:
    """[Λ : Λ ∩ pi^v] for each v by enumerating Λ's image in (Z/p^M)^d and (Z/p^(M+1))^d."""
    _require_padic(L)
    p, d = L.field.p, L.d
    if d * (M + 1) * math.log2(p) > budget_bits:
        raise BudgetError(f"enumeration of (Z/{p}^{M + 1})^{d} exceeds 2^{budget_bits}")
    if M < 1:
        raise VerifyError("modulus exponent must be positive")
    L2, c = _rescale_into_O(L)
    shifted = []
    for v in vs:
        if len(v) != d:
            raise VerifyError(f"expected a vector of length {d}")
        if any(x < 0 for x in v):
            raise VerifyError("brute-force index needs v >= 0")
        w = tuple(int(x) + ci for x, ci in zip(v, c))
        if max(w) > M:
            raise VerifyError(f"v = {tuple(v)} is not visible modulo p^{M}")
        shifted.append(w)
    first = _count_table(L2, shifted, M)
    second = _count_table(L2, shifted, M + 1)
    for v, x, y in zip(vs, first, second):
        if x != y:
            raise VerifyError(f"index at v = {tuple(v)} did not stabilize: {x} (M={M}) vs {y} (M={M + 1})")
    return first


def brute_force_index(L: Lattice, v: Sequence[int], M: int, budget_bits: float = DEFAULT_BUDGET_BITS) -> int:
    return brute_force_index_table(L, [tuple(v)], M, budget_bits)[0]


# ---------------------------------------------------------------------------
# measure of a sublattice of O^d


def membership_frequency(L: Lattice, n: int, seed: int) -> tuple[int, int]:
    """Count uniform samples of O^d that land in L (which must lie in O^d)."""
    _require_padic(L)
    p, d = L.field.p, L.d
    if not contains(standard_lattice(L.field, d), L):
        raise VerifyError("membership sampling needs a lattice inside O^d")
    a, _ = diagonal_envelopes(L)
    N = max(1, max(a))
    Cp, shifts, vD = _integral_rows(L.inv, p)
    thresholds = [vD - m for m in shifts]
    Np = max(N, max(thresholds), 1)
    X = uniform_integral_samples(p, N, n, d, seed)
    t = kernels.valuation_counts(Cp, X, p, Np)
    hits = int(np.all(t >= np.array(thresholds, dtype=np.int64), axis=1).sum())
    return hits, n


def sampled_points(p: int, N: int, n: int, d: int, seed: int):
    """The exact samples used by :func:`membership_frequency` (for cross-checks)."""
    return uniform_integral_samples(p, N, n, d, seed)
