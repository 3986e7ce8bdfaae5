"""The entropy map Λ ↦ (h_I(Λ))_I.

Three independent routes compute the same vector:

``minors``
    h_I = min over |J| = |I| of val det A[I, J].
``hnf``
    h_I = sum of diagonal valuations of the Hermite form of the projection Λ_I.
``iterative``
    h_I = h_{I - i} + a_last(Λ_I) with i = max(I), where a_last is the exponent
    of the largest multiple of e_i lying in Λ_I (read off the inverse of a
    basis of Λ_I).  Bases of the projections are propagated down from
    Λ_[d] by dropping the column outside a minimal-valuation maximal minor.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .field import INF
from .lattice import Lattice, diagonal_envelopes, project_lattice
from .matrix import det, inverse, submatrix
from .setfunc import SetFunctionVector, indices_of, mask_of, subsets

METHODS = ("minors", "hnf", "iterative")


class EntropyVector(SetFunctionVector):
    """Entropy vector of a lattice; the coefficients of its tropical polynomial."""

    def __post_init__(self):
        super().__post_init__()
        if any(v == INF for v in self.values.values()):
            raise ValueError("entropy values must be finite")


def _norm(v):
    return int(v) if Fraction(v).denominator == 1 else Fraction(v)


def entropy_total(L: Lattice):
    """h(Λ) = val det A."""
    return _norm(L.field.valuation(L.det))


def entropy_subset_minors(L: Lattice, I) -> object:
    rows = sorted(set(I))
    if not rows:
        return 0
    val = L.field.valuation
    r0 = [i - 1 for i in rows]
    best = INF
    for J in combinations(range(L.d), len(r0)):
        v = val(det(submatrix(L.rep, r0, J)))
        if v < best:
            best = v
    return _norm(best)


def entropy_subset_hnf(L: Lattice, I) -> object:
    rows = sorted(set(I))
    if not rows:
        return 0
    P = project_lattice(L, rows)
    val = L.field.valuation
    return _norm(sum(val(P.rep[k][k]) for k in range(P.d)))


def _minimal_basis(field, gens):
    """Columns of a k×n generating matrix forming an O-basis of the lattice they span.

    Any k columns whose k×k minor has minimal valuation work: by Cramer's rule
    every other column is an O-combination of them.
    """
    k = len(gens)
    n = len(gens[0])
    val = field.valuation
    best, bestJ = INF, None
    for J in combinations(range(n), k):
        v = val(det(submatrix(gens, range(k), J)))
        if v < best:
            best, bestJ = v, J
    if bestJ is None:
        raise ValueError("generating set does not have full rank")
    return submatrix(gens, range(k), bestJ)


def _entropy_iterative(L: Lattice) -> dict[int, object]:
    d = L.d
    F = L.field
    val = F.valuation
    full = (1 << d) - 1
    bases = {full: L.rep}
    # top-down: a basis of Λ_I from a basis of Λ_{I ∪ {j}}, j the smallest missing index
    for m in sorted(range(1, full), key=lambda m: -bin(m).count("1")):
        j = next(k for k in range(d) if not m >> k & 1)
        parent = m | (1 << j)
        pidx = [k for k in range(d) if parent >> k & 1]
        keep = [pos for pos, k in enumerate(pidx) if k != j]
        gens = submatrix(bases[parent], keep, range(len(pidx)))
        bases[m] = _minimal_basis(F, gens)
    h = {0: 0}
    for m in subsets(d)[1:]:
        idx = [k for k in range(d) if m >> k & 1]
        B = bases[m]
        inv = inverse(B)
        last = len(idx) - 1
        a_last = max(-val(inv[r][last]) for r in range(len(idx)))
        h[m] = _norm(h[m & ~(1 << idx[-1])] + a_last)
    return h


def entropy_vector(L: Lattice, method: str = "hnf") -> EntropyVector:
    if method == "minors":
        values = {m: entropy_subset_minors(L, indices_of(m)) for m in range(1 << L.d)}
    elif method == "hnf":
        values = {m: entropy_subset_hnf(L, indices_of(m)) for m in range(1 << L.d)}
    elif method == "iterative":
        values = _entropy_iterative(L)
    else:
        raise ValueError(f"unknown entropy method {method!r}; choose from {METHODS}")
    return EntropyVector(L.d, values)


def ell_distance(L: Lattice, v, ell: int):
    """min over |I| = |J| = ell of val det A[I, J] + sum of v_j for j outside J."""
    d = L.d
    if not 0 <= ell <= d:
        raise ValueError(f"ell must lie in [0, {d}]")
    val = L.field.valuation
    total = sum(v)
    best = INF
    for J in combinations(range(d), ell):
        rest = total - sum(v[j] for j in J)
        for I in combinations(range(d), ell):
            c = val(det(submatrix(L.rep, I, J))) + rest
            if c < best:
                best = c
    return _norm(best)


def recursive_top(L: Lattice) -> object:
    """h_[d-1] + a_d, which must equal h_[d]."""
    a, _ = diagonal_envelopes(L)
    if L.d == 1:
        return _norm(a[0])
    return _norm(entropy_subset_minors(L, range(1, L.d)) + a[-1])


__all__ = [
    "EntropyVector", "METHODS", "entropy_total", "entropy_subset_minors",
    "entropy_subset_hnf", "entropy_vector", "ell_distance", "recursive_top", "mask_of",
]
