"""Lattices A·O^d over a valued field and the algebra on them."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .field import INF, FieldDescriptor, FieldError, Puiseux
from .matrix import Matrix, det, diagonal, freeze, identity, inverse, matmul, solve, transpose


class LatticeError(ValueError):
    pass


def _as_matrix(field: FieldDescriptor, rows) -> Matrix:
    return freeze([[field.element(x) for x in r] for r in rows])


@dataclass(frozen=True, eq=False)
class Lattice:
    """Full-rank O-submodule ``rep · O^d``.

    Equality is coset equality (same lattice), not entrywise equality of the
    representatives.
    """

    field: FieldDescriptor
    rep: Matrix = dc_field(repr=False)

    def __post_init__(self):
        rows = _as_matrix(self.field, self.rep)
        if not rows or any(len(r) != len(rows) for r in rows):
            raise LatticeError("representative must be a non-empty square matrix")
        object.__setattr__(self, "rep", rows)
        if self.det == 0:
            raise LatticeError("singular representative")

    @property
    def d(self) -> int:
        return len(self.rep)

    @cached_property
    def det(self):
        return det(self.rep)

    @cached_property
    def inv(self) -> Matrix:
        return inverse(self.rep)

    @cached_property
    def hnf(self) -> Matrix:
        return column_hnf(self.field, self.rep)

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return lattice_equal(self, other)

    def __hash__(self):
        return hash((self.field, self.hnf))

    def __repr__(self):
        return f"Lattice({self.field.mode}, d={self.d}, hnf={list(map(list, self.hnf))})"


@dataclass(frozen=True)
class DiagonalLattice:
    """The lattice pi^v = (+)_i pi^{v_i} O e_i."""

    exponents: tuple

    def to_lattice(self, field: FieldDescriptor) -> Lattice:
        zero = field.zero()
        return Lattice(field, diagonal([field.uniformizer_power(v) for v in self.exponents], zero))


def diagonal_lattice(field: FieldDescriptor, exponents: Sequence) -> Lattice:
    return DiagonalLattice(tuple(exponents)).to_lattice(field)


def standard_lattice(field: FieldDescriptor, d: int) -> Lattice:
    return Lattice(field, identity(d, field.one(), field.zero()))


# ---------------------------------------------------------------------------
# Hermite normal form


def column_hnf(field: FieldDescriptor, gens) -> Matrix:
    """Hermite normal form of the lattice spanned by the columns of a d×n matrix.

    Column echelon with minimum-valuation pivots (lowest column on ties), the
    pivot column scaled by a unit so the diagonal is an exact uniformizer
    power, then each below-diagonal entry (i, j) reduced modulo column i,
    rows top to bottom.  The result is the unique lower-triangular d×d
    representative with ``A[i][j] == 0`` or ``val(A[i][j]) < val(A[i][i])``.
    """
    A = [[field.element(x) for x in r] for r in gens]
    d = len(A)
    n = len(A[0]) if d else 0
    val = field.valuation
    for i in range(d):
        best, bestv = None, INF
        for j in range(i, n):
            v = val(A[i][j])
            if v < bestv:
                best, bestv = j, v
        if best is None:
            raise LatticeError("generating set does not have full rank")
        if best != i:
            for r in A:
                r[i], r[best] = r[best], r[i]
        unit = field.uniformizer_power(bestv) / A[i][i]
        for r in range(i, d):
            if A[r][i] != 0:
                A[r][i] = A[r][i] * unit
        for j in range(i + 1, n):
            if A[i][j] != 0:
                c = A[i][j] / A[i][i]
                for r in range(i, d):
                    if A[r][i] != 0:
                        A[r][j] = A[r][j] - c * A[r][i]
    H = [row[:d] for row in A]
    for i in range(1, d):
        g = val(H[i][i])
        piv = H[i][i]
        for j in range(i):
            x = H[i][j]
            if x == 0:
                continue
            r = field.reduce_mod(x, g)
            c = (x - r) / piv
            if c != 0:
                for k in range(i, d):
                    if H[k][i] != 0:
                        H[k][j] = H[k][j] - c * H[k][i]
    return freeze(H)


def hermite_normal_form(L: Lattice) -> Matrix:
    return L.hnf


def is_hermite(field: FieldDescriptor, A: Matrix) -> bool:
    d = len(A)
    for i in range(d):
        for j in range(i + 1, d):
            if A[i][j] != 0:
                return False
        a = field.valuation(A[i][i])
        if a == INF or A[i][i] != field.uniformizer_power(a):
            return False
        for j in range(i):
            x = A[i][j]
            if x != 0 and (field.valuation(x) >= a or field.reduce_mod(x, a) != x):
                return False
    return True


# ---------------------------------------------------------------------------
# Smith decomposition


def smith_decomposition(A: Matrix, field: FieldDescriptor) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, D, V)`` with ``A = U D V``, ``U, V`` in GL_d(O).

    ``D`` is diagonal with uniformizer-power entries of nondecreasing valuation.
    """
    M = [[field.element(x) for x in r] for r in A]
    d = len(M)
    if any(len(r) != d for r in M):
        raise LatticeError("smith_decomposition needs a square matrix")
    one, zero = field.one(), field.zero()
    Lm = [list(r) for r in identity(d, one, zero)]
    Rm = [list(r) for r in identity(d, one, zero)]
    val = field.valuation
    for k in range(d):
        best, bestv = None, INF
        for r in range(k, d):
            for c in range(k, d):
                v = val(M[r][c])
                if v < bestv:
                    best, bestv = (r, c), v
        if best is None:
            raise LatticeError("singular matrix")
        r0, c0 = best
        M[k], M[r0] = M[r0], M[k]
        Lm[k], Lm[r0] = Lm[r0], Lm[k]
        for row in M:
            row[k], row[c0] = row[c0], row[k]
        for row in Rm:
            row[k], row[c0] = row[c0], row[k]
        unit = field.uniformizer_power(bestv) / M[k][k]
        M[k] = [x * unit for x in M[k]]
        Lm[k] = [x * unit for x in Lm[k]]
        piv = M[k][k]
        for r in range(k + 1, d):
            if M[r][k] != 0:
                f = M[r][k] / piv
                M[r] = [x - f * y for x, y in zip(M[r], M[k])]
                Lm[r] = [x - f * y for x, y in zip(Lm[r], Lm[k])]
        for c in range(k + 1, d):
            if M[k][c] != 0:
                f = M[k][c] / piv
                for row in M:
                    row[c] = row[c] - f * row[k]
                for row in Rm:
                    row[c] = row[c] - f * row[k]
    D = freeze(M)
    U = inverse(freeze(Lm))
    V = inverse(freeze(Rm))
    return U, D, V


# ---------------------------------------------------------------------------
# lattice algebra


def in_valuation_ring(field: FieldDescriptor, entries: Iterable) -> bool:
    return all(field.valuation(x) >= 0 for x in entries)


def lattice_membership(L: Lattice, x: Sequence) -> bool:
    if len(x) != L.d:
        raise LatticeError(f"vector of length {len(x)} for a lattice of dimension {L.d}")
    y = solve(L.rep, [L.field.element(v) for v in x])
    return in_valuation_ring(L.field, y)


def lattice_equal(L1: Lattice, L2: Lattice) -> bool:
    if L1.field != L2.field:
        raise FieldError("lattices over different fields")
    if L1.d != L2.d:
        raise LatticeError("lattices of different dimension")
    F = L1.field
    return (in_valuation_ring(F, (x for r in matmul(L1.inv, L2.rep) for x in r))
            and in_valuation_ring(F, (x for r in matmul(L2.inv, L1.rep) for x in r)))


def contains(L1: Lattice, L2: Lattice) -> bool:
    """True iff L2 ⊆ L1."""
    return in_valuation_ring(L1.field, (x for r in matmul(L1.inv, L2.rep) for x in r))


def _subset_indices(I, d: int) -> list[int]:
    idx = sorted(set(I))
    if not idx:
        raise LatticeError("projection onto the empty set")
    if idx[0] < 1 or idx[-1] > d:
        raise LatticeError(f"subset {idx} out of range for dimension {d}")
    return [i - 1 for i in idx]


def project_lattice(L: Lattice, I) -> Lattice:
    """Image of L under the projection onto the coordinates in I (1-based)."""
    rows = _subset_indices(I, L.d)
    gens = [L.rep[i] for i in rows]
    return Lattice(L.field, column_hnf(L.field, gens))


def dual_lattice(L: Lattice) -> Lattice:
    return Lattice(L.field, transpose(L.inv))


def sum_lattices(L1: Lattice, L2: Lattice) -> Lattice:
    if L1.field != L2.field:
        raise FieldError("lattices over different fields")
    if L1.d != L2.d:
        raise LatticeError("lattices of different dimension")
    gens = [r1 + r2 for r1, r2 in zip(L1.rep, L2.rep)]
    return Lattice(L1.field, column_hnf(L1.field, gens))


def intersect_lattices(L1: Lattice, L2: Lattice) -> Lattice:
    return dual_lattice(sum_lattices(dual_lattice(L1), dual_lattice(L2)))


def diagonal_envelopes(L: Lattice) -> tuple[tuple, tuple]:
    """Exponents ``(a, b)`` with pi^a ⊆ L ⊆ pi^b, pi^a maximal and pi^b minimal."""
    val = L.field.valuation
    d = L.d
    inv = L.inv
    a = tuple(max(-val(inv[j][i]) for j in range(d)) for i in range(d))
    b = tuple(min(val(L.rep[i][j]) for j in range(d)) for i in range(d))
    return a, b


def scale_rows(L: Lattice, scalars: Sequence) -> Lattice:
    """D_a · L for the diagonal matrix with the given entries."""
    return Lattice(L.field, [[s * x for x in row] for s, row in zip(scalars, L.rep)])


def permute_rows(L: Lattice, sigma: Sequence[int]) -> Lattice:
    """P^sigma · L where (P^sigma)_{i, sigma(i)} = 1 (sigma 0-based)."""
    return Lattice(L.field, [L.rep[sigma[i]] for i in range(L.d)])


# ---------------------------------------------------------------------------
# random inputs for tests and experiments


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_unit(field: FieldDescriptor, rng: random.Random):
    """A random element of O^× with small coefficients."""
    if field.is_padic:
        p = field.p
        while True:
            a, b = rng.randint(-9, 9), rng.randint(1, 5)
            if a % p and b % p:
                return Fraction(a, b)
    c = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3))
    extra = rng.choice([0, 0, 1])
    x = Puiseux.coerce(c)
    for _ in range(extra):
        x = x + Puiseux.monomial(Fraction(rng.randint(1, 4), rng.choice([1, 2])), rng.randint(-2, 2))
    return x


def random_integral(field: FieldDescriptor, rng: random.Random):
    """A random element of O (possibly zero)."""
    if rng.random() < 0.25:
        return field.zero()
    if field.is_padic:
        return random_unit(field, rng) * Fraction(field.p) ** rng.randint(0, 2)
    return random_unit(field, rng) * Puiseux.monomial(Fraction(rng.randint(0, 4), rng.choice([1, 2])))


def random_unimodular(d: int, field: FieldDescriptor, seed=None, steps: int | None = None) -> Matrix:
    """Random element of GL_d(O): elementary operations, unit scalings, a permutation."""
    rng = _rng(seed)
    one, zero = field.one(), field.zero()
    U = [list(r) for r in identity(d, one, zero)]
    steps = steps if steps is not None else 2 * d
    for _ in range(steps):
        if d > 1:
            i, j = rng.sample(range(d), 2)
            c = random_integral(field, rng)
            if c != 0:
                for row in U:
                    row[j] = row[j] + c * row[i]
    for j in range(d):
        u = random_unit(field, rng)
        for row in U:
            row[j] = row[j] * u
    perm = list(range(d))
    rng.shuffle(perm)
    return freeze([[row[perm[j]] for j in range(d)] for row in U])


def random_entry(field: FieldDescriptor, rng: random.Random, vmin=-3, vmax=3, zero_prob=0.15):
    if rng.random() < zero_prob:
        return field.zero()
    if field.is_padic:
        return random_unit(field, rng) * Fraction(field.p) ** rng.randint(vmin, vmax)
    e = Fraction(rng.randint(2 * vmin, 2 * vmax), 2)
    c = random_unit(field, rng) if rng.random() < 0.5 else rng.choice([1, -1, 2])
    x = Puiseux.monomial(e) * c
    if rng.random() < 0.3:
        x = x + Puiseux.monomial(e + Fraction(rng.randint(1, 3), 2), rng.choice([1, -1]))
    return x


def random_lattice(d: int, field: FieldDescriptor, seed=None, vmin=-3, vmax=3) -> Lattice:
    """Random lattice whose representative entries have valuations in [vmin, vmax]."""
    rng = _rng(seed)
    while True:
        rows = [[random_entry(field, rng, vmin, vmax) for _ in range(d)] for _ in range(d)]
        try:
            return Lattice(field, rows)
        except LatticeError:
            continue
