"""Exact valued fields.

Two concrete models are supported:

* ``p-adic``: the rationals with the p-adic valuation, a dense subfield of Q_p.
  Elements are plain :class:`fractions.Fraction` values.
* ``puiseux``: ramified rational functions Q(t^(1/N)) with the order-at-zero
  valuation, a dense subfield of the Puiseux series field.  Elements are
  :class:`Puiseux` instances.

Valuations are ``int`` (p-adic), ``Fraction`` (puiseux) or ``math.inf`` for zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence, Union

INF = math.inf

Valuation = Union[int, Fraction, float]


class FieldError(ValueError):
    """Raised for malformed field elements or illegal operations."""


# ---------------------------------------------------------------------------
# dense polynomials over Q (coefficient tuples, lowest degree first)


def _trim(c: Sequence[Fraction]) -> tuple:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def _pneg(a):
    return tuple(-x for x in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _pdivmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        f = a[-1] / lead
        q[k] = f
        for i, y in enumerate(b):
            a[i + k] -= f * y
        a = list(_trim(a))
    return _trim(q), tuple(a)


def _primitive(a) -> list[int]:
    """Integer polynomial with content 1 and positive lead, proportional to a."""
    den = 1
    for x in a:
        den = math.lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in a]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if ints[-1] < 0:
        g = -g
    return [x // g for x in ints]


def _pgcd(a, b):
    """Monic gcd over Q, via a primitive remainder sequence over Z."""
    if not a or not b:
        a = a or b
        return tuple(Fraction(x) / a[-1] for x in a) if a else ()
    # common power of s first; most entries here are near-monomials
    k = min(_ord(a), _ord(b))
    a, b = _primitive(a[_ord(a):]), _primitive(b[_ord(b):])
    if len(a) < len(b):
        a, b = b, a
    while len(b) > 1:
        # pseudo-remainder of a by b
        r = list(a)
        lead = b[-1]
        while len(r) >= len(b):
            f, shift = r[-1], len(r) - len(b)
            r = [x * lead for x in r]
            for i, y in enumerate(b):
                r[i + shift] -= f * y
            r = list(_trim(r))
            if not r:
                break
        if not r:
            break
        a, b = b, _primitive(r)
    if len(b) == 1:
        b = [1]
    return tuple([Fraction(0)] * k + [Fraction(x, b[-1]) for x in b])


def _ord(a) -> int:
    for i, x in enumerate(a):
        if x != 0:
            return i
    raise FieldError("order of the zero polynomial")


def _spread(a, k: int):
    """Substitute s -> s^k."""
    if k == 1 or not a:
        return a
    out = [Fraction(0)] * ((len(a) - 1) * k + 1)
    for i, x in enumerate(a):
        out[i * k] = x
    return tuple(out)


# ---------------------------------------------------------------------------


class Puiseux:
    """Element num(s)/den(s) of Q(s) with s = t^(1/N).

    Instances are immutable and kept canonical: ``gcd(num, den) = 1``, ``den``
    monic, and ``N`` minimal, so ``==`` is structural equality.
    """

    __slots__ = ("num", "den", "N")

    def __init__(self, num, den=(Fraction(1),), N: int = 1):
        num = _trim(Fraction(x) for x in num)
        den = _trim(Fraction(x) for x in den)
        if not den:
            raise FieldError("zero denominator")
        if N < 1:
            raise FieldError("ramification index must be positive")
        if not num:
            num, den, N = (), (Fraction(1),), 1
        elif len(den) > 1:
            g = _pgcd(num, den)
            if len(g) > 1:
                num = _pdivmod(num, g)[0]
                den = _pdivmod(den, g)[0]
        if num:
            lead = den[-1]
            if lead != 1:
                num = tuple(x / lead for x in num)
                den = tuple(x / lead for x in den)
            g = N
            for poly in (num, den):
                for i, x in enumerate(poly):
                    if x != 0 and i:
                        g = math.gcd(g, i)
            if g > 1:
                num = tuple(num[i] for i in range(0, len(num), g))
                den = tuple(den[i] for i in range(0, len(den), g))
                N //= g
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "N", N)

    def __setattr__(self, name, value):
        raise AttributeError("Puiseux elements are immutable")

    # constructors -------------------------------------------------------

    @classmethod
    def monomial(cls, exponent, coeff=1) -> "Puiseux":
        """Return ``coeff * t**exponent`` for a rational exponent."""
        e = Fraction(exponent)
        N = e.denominator
        k = e.numerator
        if Fraction(coeff) == 0:
            return cls(())
        if k >= 0:
            return cls((0,) * k + (Fraction(coeff),), (1,), N)
        return cls((Fraction(coeff),), (0,) * (-k) + (1,), N)

    @classmethod
    def from_terms(cls, terms) -> "Puiseux":
        """Sum of ``(coeff, exponent)`` pairs."""
        total = cls(())
        for c, e in terms:
            total = total + cls.monomial(e, c)
        return total

    @staticmethod
    def coerce(x) -> "Puiseux":
        if isinstance(x, Puiseux):
            return x
        if isinstance(x, (int, Fraction)):
            return Puiseux((Fraction(x),))
        raise FieldError(f"cannot use {x!r} as a Puiseux element")

    # arithmetic ----------------------------------------------------------

    def _common(self, other: "Puiseux"):
        N = self.N * other.N // math.gcd(self.N, other.N)
        a, b = N // self.N, N // other.N
        return (_spread(self.num, a), _spread(self.den, a),
                _spread(other.num, b), _spread(other.den, b), N)

    def __add__(self, other):
        try:
            other = Puiseux.coerce(other)
        except FieldError:
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        n1, d1, n2, d2, N = self._common(other)
        if d1 == d2:
            return Puiseux(_padd(n1, n2), d1, N)
        return Puiseux(_padd(_pmul(n1, d2), _pmul(n2, d1)), _pmul(d1, d2), N)

    __radd__ = __add__

    def __neg__(self):
        return Puiseux(_pneg(self.num), self.den, self.N)

    def __sub__(self, other):
        try:
            other = Puiseux.coerce(other)
        except FieldError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Puiseux.coerce(other) - self

    def __mul__(self, other):
        try:
            other = Puiseux.coerce(other)
        except FieldError:
            return NotImplemented
        if not self.num or not other.num:
            return Puiseux(())
        n1, d1, n2, d2, N = self._common(other)
        return Puiseux(_pmul(n1, n2), _pmul(d1, d2), N)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            other = Puiseux.coerce(other)
        except FieldError:
            return NotImplemented
        if not other.num:
            raise ZeroDivisionError("division by zero in Puiseux field")
        n1, d1, n2, d2, N = self._common(other)
        return Puiseux(_pmul(n1, d2), _pmul(d1, n2), N)

    def __rtruediv__(self, other):
        return Puiseux.coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return Puiseux((1,)) / (self ** (-k))
        out = Puiseux((1,))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        try:
            other = Puiseux.coerce(other)
        except FieldError:
            return NotImplemented
        return (self.num, self.den, self.N) == (other.num, other.den, other.N)

    def __hash__(self):
        if not self.num or (len(self.num) == 1 and self.den == (1,)):
            return hash(self.num[0] if self.num else 0)
        return hash((self.num, self.den, self.N))

    def __bool__(self):
        return bool(self.num)

    # queries --------------------------------------------------------------

    def valuation(self) -> Valuation:
        if not self.num:
            return INF
        return Fraction(_ord(self.num) - _ord(self.den), self.N)

    def is_polynomial(self) -> bool:
        return self.den == (1,)

    def series(self, below: Fraction) -> "Puiseux":
        """Truncation of the Laurent expansion to exponents strictly below ``below``."""
        if not self.num:
            return self
        k = _ord(self.den)
        unit = self.den[k:]
        limit = Fraction(below) * self.N + k  # s-exponent bound on num/unit
        nterms = math.ceil(limit)
        if nterms <= 0:
            return Puiseux(())
        num = self.num
        c = []
        u0 = unit[0]
        for n in range(nterms):
            acc = num[n] if n < len(num) else Fraction(0)
            for i in range(1, min(n, len(unit) - 1) + 1):
                acc -= unit[i] * c[n - i]
            c.append(acc / u0)
        terms = [(x, Fraction(i - k, self.N)) for i, x in enumerate(c) if x != 0]
        return Puiseux.from_terms(terms)

    def terms(self, poly) -> list:
        return [(x, Fraction(i, self.N)) for i, x in enumerate(poly) if x != 0]

    def __repr__(self):
        def fmt(poly):
            parts = []
            for c, e in self.terms(poly):
                if e == 0:
                    parts.append(f"{c}")
                else:
                    parts.append(f"{c}*t^{e}" if c != 1 else f"t^{e}")
            return " + ".join(parts) or "0"

        if self.den == (1,):
            return f"Puiseux({fmt(self.num)})"
        return f"Puiseux(({fmt(self.num)})/({fmt(self.den)}))"


# ---------------------------------------------------------------------------


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def padic_val(n: int, p: int) -> int:
    """p-adic order of a nonzero integer."""
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def parse_rational(s) -> Fraction:
    if isinstance(s, bool):
        raise FieldError(f"malformed rational {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise FieldError(f"malformed rational {s!r}: expected a string 'a' or 'a/b'")
    text = s.strip()
    num, _, den = text.partition("/")
    try:
        a = int(num)
        b = int(den) if den else 1
    except ValueError:
        raise FieldError(f"malformed rational {s!r}") from None
    if b == 0:
        raise FieldError(f"malformed rational {s!r}: zero denominator")
    return Fraction(a, b)


@dataclass(frozen=True)
class FieldDescriptor:
    """Which valued field an element or matrix lives in.

    ``mode`` is ``"p-adic"`` or ``"puiseux"``; ``p`` is the residue
    characteristic for p-adic mode and ``None`` otherwise.
    """

    mode: str
    p: int | None = None

    def __post_init__(self):
        if self.mode == "p-adic":
            if not isinstance(self.p, int) or not _is_prime(self.p):
                raise FieldError(f"p must be prime, got {self.p!r}")
        elif self.mode == "puiseux":
            if self.p is not None:
                raise FieldError("puiseux mode takes no prime")
        else:
            raise FieldError(f"unknown field mode {self.mode!r}")

    @classmethod
    def padic(cls, p: int) -> "FieldDescriptor":
        return cls("p-adic", p)

    @classmethod
    def puiseux(cls) -> "FieldDescriptor":
        return cls("puiseux")

    @property
    def is_padic(self) -> bool:
        return self.mode == "p-adic"

    @property
    def q(self) -> int | None:
        """Residue field cardinality, the base of the absolute value."""
        return self.p

    # elements --------------------------------------------------------------

    def element(self, x):
        """Coerce an int / Fraction (or Puiseux) into this field, rejecting foreign values."""
        if self.is_padic:
            if isinstance(x, Puiseux):
                raise FieldError("Puiseux element used in p-adic mode")
            if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
                return Fraction(x)
            raise FieldError(f"not a rational: {x!r}")
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return Puiseux.coerce(x)
        if isinstance(x, Puiseux):
            return x
        raise FieldError(f"not a Puiseux element: {x!r}")

    def zero(self):
        return self.element(0)

    def one(self):
        return self.element(1)

    def valuation(self, x) -> Valuation:
        if self.is_padic:
            x = Fraction(x)
            if x == 0:
                return INF
            return padic_val(x.numerator, self.p) - padic_val(x.denominator, self.p)
        return Puiseux.coerce(x).valuation()

    def uniformizer_power(self, a):
        """pi**a: p**a in p-adic mode, t**a in puiseux mode."""
        if self.is_padic:
            if Fraction(a).denominator != 1:
                raise FieldError(f"non-integral exponent {a} in p-adic mode")
            return Fraction(self.p) ** int(a)
        return Puiseux.monomial(a)

    def arith(self, op: str, x, y):
        x, y = self.element(x), self.element(y)
        if op == "add":
            return x + y
        if op == "sub":
            return x - y
        if op == "mul":
            return x * y
        if op == "div":
            if y == 0:
                raise ZeroDivisionError("division by zero")
            return x / y
        raise FieldError(f"unknown operation {op!r}")

    def reduce_mod(self, x, gamma):
        """Canonical representative of the class of x in K / pi^gamma O.

        Returns 0 or an element of valuation < gamma.  Works for elements of
        negative valuation too (used by Hermite reduction).
        """
        x = self.element(x)
        if x == 0:
            return x
        if self.is_padic:
            p = self.p
            k = max(0, -self.valuation(x))
            m = int(gamma) + k
            if m <= 0:
                return Fraction(0)
            y = x * Fraction(p) ** k
            mod = p**m
            r = (y.numerator * pow(y.denominator, -1, mod)) % mod
            return Fraction(r, p**k)
        return x.series(Fraction(gamma))

    def residue_reduce(self, x, gamma):
        """Canonical r with x - r in pi^gamma O, for x in O and finite gamma >= 0."""
        if gamma == INF or gamma < 0:
            raise FieldError(f"gamma must be finite and nonnegative, got {gamma}")
        if self.is_padic and Fraction(gamma).denominator != 1:
            raise FieldError("gamma must be an integer in p-adic mode")
        if self.valuation(x) < 0:
            raise FieldError("residue_reduce needs an element of the valuation ring")
        return self.reduce_mod(x, gamma)

    # serialization -----------------------------------------------------------

    def parse_entry(self, obj):
        if self.is_padic:
            if isinstance(obj, (dict, list)):
                raise FieldError(f"p-adic entries are rational strings, got {obj!r}")
            return parse_rational(obj)
        if isinstance(obj, (str, int)) and not isinstance(obj, bool):
            return Puiseux.coerce(parse_rational(obj))
        if not isinstance(obj, dict) or "num" not in obj:
            raise FieldError(f"malformed puiseux entry {obj!r}")
        num = _parse_terms(obj["num"])
        den = _parse_terms(obj.get("den", [{"c": "1", "e": "0"}]))
        if den == 0:
            raise FieldError(f"zero denominator in puiseux entry {obj!r}")
        return num / den

    def format_entry(self, x) -> Any:
        if self.is_padic:
            return str(Fraction(x))
        x = Puiseux.coerce(x)
        rec = {"num": _format_terms(x, x.num)}
        if x.den != (1,):
            rec["den"] = _format_terms(x, x.den)
        return rec


def _parse_terms(terms) -> Puiseux:
    if not isinstance(terms, list):
        raise FieldError(f"term list expected, got {terms!r}")
    pairs = []
    for term in terms:
        if not isinstance(term, dict) or "c" not in term:
            raise FieldError(f"malformed term {term!r}")
        pairs.append((parse_rational(term["c"]), parse_rational(term.get("e", "0"))))
    return Puiseux.from_terms(pairs)


def _format_terms(x: Puiseux, poly) -> list:
    return [{"c": str(c), "e": str(e)} for c, e in x.terms(poly)]


def format_valuation(v: Valuation) -> str:
    if v == INF:
        return "inf"
    return str(Fraction(v))
