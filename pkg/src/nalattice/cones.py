"""The supermodular cone S_d, conditional independence faces, and the d = 3 picture.

All comparisons are exact.  For d = 3 the lineality space of S_3 is removed by
projecting to W = {x_1 = x_12 = x_123 = 0}, whose points are written
``(w, x, y, z) = (x_2, x_3, x_13, x_23)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .field import FieldDescriptor, Puiseux
from .lattice import Lattice
from .setfunc import SetFunctionVector, indices_of, mask_of


def facet_triples(d: int) -> list[tuple[int, int, int]]:
    """All (I, i, j) with i < j, i, j ∉ I, as (mask, i, j) with 1-based i, j."""
    out = []
    for i, j in combinations(range(1, d + 1), 2):
        rest = [k for k in range(1, d + 1) if k not in (i, j)]
        for r in range(len(rest) + 1):
            for I in combinations(rest, r):
                out.append((mask_of(I), i, j))
    return out


def facet_count(d: int) -> int:
    """d(d-1)2^(d-3), with the d = 2 case equal to 1."""
    return 1 if d == 2 else d * (d - 1) * 2 ** (d - 3)


def _gap(v: SetFunctionVector, mask: int, i: int, j: int):
    bi, bj = 1 << (i - 1), 1 << (j - 1)
    return v.by_mask(mask) + v.by_mask(mask | bi | bj) - v.by_mask(mask | bi) - v.by_mask(mask | bj)


@dataclass
class MembershipReport:
    inside: bool
    checked: int
    violated: list = field(default_factory=list)
    tight: list = field(default_factory=list)

    def to_json(self) -> dict:
        def rec(t):
            return {"I": list(indices_of(t[0])), "i": t[1], "j": t[2]}

        return {"inside": self.inside, "checked": self.checked,
                "violated": [rec(t) for t in self.violated],
                "tight": [rec(t) for t in self.tight]}


def supermodular_membership(v: SetFunctionVector) -> MembershipReport:
    if v.d < 2:
        raise ValueError("supermodular cone needs d >= 2")
    violated, tight = [], []
    triples = facet_triples(v.d)
    for t in triples:
        g = _gap(v, *t)
        if g < 0:
            violated.append(t)
        elif g == 0:
            tight.append(t)
    return MembershipReport(not violated, len(triples), violated, tight)


def ci_statement(H: SetFunctionVector, i: int, j: int, I=()) -> bool:
    """X_i ⊥ X_j | X_I  iff  h_Ii + h_Ij = h_I + h_Iij."""
    I = set(I)
    if i == j or i in I or j in I:
        raise ValueError("need i != j and i, j outside I")
    return _gap(H, mask_of(I), min(i, j), max(i, j)) == 0


# ---------------------------------------------------------------------------
# d = 3


@dataclass(frozen=True)
class WPoint:
    w: Fraction
    x: Fraction
    y: Fraction
    z: Fraction

    def as_tuple(self):
        return (self.w, self.x, self.y, self.z)

    def to_json(self) -> dict:
        return {k: str(Fraction(getattr(self, k))) for k in "wxyz"}


def project_to_W(v: SetFunctionVector) -> WPoint:
    """Remove the modular part so that x_1 = x_12 = x_123 = 0."""
    if v.d != 3:
        raise ValueError("project_to_W is defined for d = 3 only")
    x = v.values
    c1 = x[0b001]
    c2 = x[0b011] - x[0b001]
    c3 = x[0b111] - x[0b011]
    return WPoint(Fraction(x[0b010] - c2), Fraction(x[0b100] - c3),
                  Fraction(x[0b101] - c1 - c3), Fraction(x[0b110] - c2 - c3))


def cone_C_membership(p: WPoint) -> bool:
    w, x, y, z = p.as_tuple()
    return w <= 0 and x <= y and w + x <= z and y <= 0 and z <= w and y + z <= x


def _system(k: int, p: WPoint) -> bool:
    w, x, y, z = p.as_tuple()
    if k == 1:
        return w <= 0 and x <= w + y and y <= 0 and z == x
    if k == 2:
        return w <= 0 and x <= y and y <= 0 and y + w <= x and z == y + w
    return w <= 0 and y <= 0 and x == y + w and z <= w and x <= z


@dataclass
class FanReport:
    member: bool
    systems: list

    def to_json(self) -> dict:
        return {"member": self.member, "systems": self.systems}


def fan_P_membership(p: WPoint) -> FanReport:
    systems = [k for k in (1, 2, 3) if _system(k, p)]
    return FanReport(bool(systems), systems)


def s2_preimage(x1, x2, x12) -> Lattice:
    """A puiseux-mode lattice with entropy vector (0; x1, x2; x12)."""
    x1, x2, x12 = Fraction(x1), Fraction(x2), Fraction(x12)
    if x1 + x2 > x12:
        raise ValueError(f"({x1}, {x2}, {x12}) is outside S_2: x1 + x2 > x12")
    t = Puiseux.monomial
    return Lattice(FieldDescriptor.puiseux(), [[t(x1), 0], [t(x2), t(x12 - x1)]])
