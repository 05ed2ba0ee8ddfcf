"""Exact coefficient fields: the rationals, prime fields, and one quadratic layer.

Elements of ``Q`` are plain :class:`fractions.Fraction` objects.  Elements of
``F_p`` are :class:`ModP`, and elements of a quadratic extension ``k(theta)``
with ``theta**2 = t`` are :class:`QuadElt`.  All three support the usual
arithmetic operators, so polynomial code never needs to know which field it is
working over.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import MalformedInput


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class ModP:
    """Residue class modulo a prime ``p``, stored as ``0 <= v < p``."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        if isinstance(v, Fraction):
            if v.denominator % p == 0:
                raise ZeroDivisionError(f"{v} has no image in F_{p}")
            v = v.numerator * pow(v.denominator, -1, p)
        self.v = int(v) % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise MalformedInput(f"mixing F_{self.p} and F_{other.p}")
            return other
        if isinstance(other, (int, Fraction)):
            return ModP(other, self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ModP(self.v + other.v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ModP(self.v - other.v, self.p)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ModP(other.v - self.v, self.p)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ModP(self.v * other.v, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModP(-self.v, self.p)

    def inverse(self):
        if self.v == 0:
            raise ZeroDivisionError("inverse of 0 in F_%d" % self.p)
        return ModP(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return ModP(pow(self.v, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.p == other.p and self.v == other.v
        if isinstance(other, (int, Fraction)):
            try:
                return self.v == ModP(other, self.p).v
            except ZeroDivisionError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash(("ModP", self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"ModP({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


class QuadElt:
    """``a + b*theta`` in a quadratic extension, with ``a, b`` in the base field."""

    __slots__ = ("a", "b", "field")

    def __init__(self, a, b, field: "FieldDescriptor"):
        base = field.base
        self.a = base(a)
        self.b = base(b)
        self.field = field

    def _coerce(self, other):
        if isinstance(other, QuadElt):
            if other.field != self.field:
                raise MalformedInput("mixing elements of different quadratic fields")
            return other
        if isinstance(other, (int, Fraction, ModP)):
            return QuadElt(other, 0, self.field)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadElt(self.a + other.a, self.b + other.b, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadElt(self.a - other.a, self.b - other.b, self.field)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = self.field.t
        return QuadElt(
            self.a * other.a + t * self.b * other.b,
            self.a * other.b + self.b * other.a,
            self.field,
        )

    __rmul__ = __mul__

    def __neg__(self):
        return QuadElt(-self.a, -self.b, self.field)

    def norm(self):
        return self.a * self.a - self.field.t * self.b * self.b

    def conjugate(self):
        return QuadElt(self.a, -self.b, self.field)

    def inverse(self):
        n = self.norm()
        if not n:
            raise ZeroDivisionError("inverse of 0 in quadratic field")
        return QuadElt(self.a / n, -self.b / n, self.field)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = QuadElt(1, 0, self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, ModP)):
            other = QuadElt(other, 0, self.field)
        if isinstance(other, QuadElt):
            return self.field == other.field and self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self):
        return hash(("Quad", str(self.a), str(self.b)))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return f"QuadElt({self.a}, {self.b})"

    def __str__(self):
        if not self.b:
            return str(self.a)
        b = "" if self.b == 1 else ("-" if self.b == -1 else f"{self.b}*")
        if not self.a:
            return f"{b}theta"
        sign = "" if b.startswith("-") else "+"
        return f"({self.a}{sign}{b}theta)"


def _is_rational_square(q: Fraction) -> bool:
    if q < 0:
        return False
    n, d = q.numerator, q.denominator
    return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d


@dataclass(frozen=True)
class FieldDescriptor:
    """A supported coefficient field.

    ``kind`` is ``"Q"``, ``"Fp"`` or ``"quadratic"``.  ``closed`` records that
    the user wants statements about the algebraic closure (only used where a
    computation depends on it, e.g. roots of unity); arithmetic always happens
    in the field itself.
    """

    kind: str
    p: Optional[int] = None
    t: object = None
    base: Optional["FieldDescriptor"] = None
    closed: bool = False

    def __post_init__(self):
        if self.kind == "Q":
            if self.p is not None or self.base is not None:
                raise MalformedInput("Q takes no parameters")
        elif self.kind == "Fp":
            if self.p is None or not is_prime(self.p):
                raise MalformedInput(f"F_p needs a prime p, got {self.p}")
        elif self.kind == "quadratic":
            if self.base is None or self.base.kind == "quadratic":
                raise MalformedInput("quadratic extension needs Q or F_p as base")
            t = self.base(self.t)
            object.__setattr__(self, "t", t)
            if self.base.is_square(t):
                raise MalformedInput(f"{t} is a square in {self.base.label}")
        else:
            raise MalformedInput(f"unknown field kind {self.kind!r}")

    # constructors
    @classmethod
    def rationals(cls, closed=False):
        return cls("Q", closed=closed)

    @classmethod
    def prime(cls, p, closed=False):
        return cls("Fp", p=p, closed=closed)

    @classmethod
    def quadratic(cls, base, t):
        return cls("quadratic", t=t, base=base)

    @classmethod
    def parse(cls, text: str) -> "FieldDescriptor":
        """Parse ``Q``, ``Q:closed``, ``Fp:<p>``, ``Fp:<p>:closed``,
        ``Qsqrt:<t>`` or ``Fpsqrt:<p>:<t>``."""
        s = text.strip()
        parts = s.split(":")
        try:
            if parts == ["Q"]:
                return cls.rationals()
            if parts == ["Q", "closed"]:
                return cls.rationals(closed=True)
            if parts[0] == "Fp" and len(parts) in (2, 3):
                closed = len(parts) == 3
                if closed and parts[2] != "closed":
                    raise MalformedInput(f"bad field flag {parts[2]!r}")
                return cls.prime(int(parts[1]), closed=closed)
            if parts[0] == "Qsqrt" and len(parts) == 2:
                return cls.quadratic(cls.rationals(), Fraction(parts[1]))
            if parts[0] == "Fpsqrt" and len(parts) == 3:
                return cls.quadratic(cls.prime(int(parts[1])), int(parts[2]))
        except ValueError as exc:
            raise MalformedInput(f"bad field specification {text!r}: {exc}") from None
        raise MalformedInput(f"bad field specification {text!r}")

    @property
    def label(self) -> str:
        if self.kind == "Q":
            return "Q:closed" if self.closed else "Q"
        if self.kind == "Fp":
            return f"Fp:{self.p}:closed" if self.closed else f"Fp:{self.p}"
        if self.base.kind == "Q":
            return f"Qsqrt:{self.t}"
        return f"Fpsqrt:{self.base.p}:{self.t}"

    @property
    def characteristic(self) -> int:
        if self.kind == "Q":
            return 0
        if self.kind == "Fp":
            return self.p
        return self.base.characteristic

    def __call__(self, x):
        if self.kind == "Q":
            if isinstance(x, Fraction):
                return x
            if isinstance(x, (int, str)):
                return Fraction(x)
        elif self.kind == "Fp":
            if isinstance(x, ModP):
                if x.p != self.p:
                    raise MalformedInput(f"element of F_{x.p} is not in F_{self.p}")
                return x
            if isinstance(x, str):
                x = Fraction(x)
            if isinstance(x, (int, Fraction)):
                return ModP(x, self.p)
        else:
            if isinstance(x, QuadElt):
                if x.field != self:
                    raise MalformedInput("element belongs to a different quadratic field")
                return x
            return QuadElt(self.base(x), 0, self)
        raise MalformedInput(f"cannot coerce {x!r} into {self.label}")

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    @property
    def theta(self):
        if self.kind != "quadratic":
            raise MalformedInput(f"{self.label} has no adjoined square root")
        return QuadElt(0, 1, self)

    def in_base(self, x) -> bool:
        """True when ``x`` lies in the base field (always true for Q and F_p)."""
        if self.kind != "quadratic":
            return True
        return not self(x).b

    def is_square(self, x) -> bool:
        x = self(x)
        if self.kind == "Q":
            return _is_rational_square(x)
        if self.kind == "Fp":
            if self.p == 2 or not x:
                return True
            return pow(x.v, (self.p - 1) // 2, self.p) == 1
        raise MalformedInput("square test in quadratic fields is not supported")

    def size(self) -> Optional[int]:
        """Number of elements, or None for infinite fields."""
        if self.kind == "Fp":
            return self.p
        if self.kind == "quadratic" and self.base.kind == "Fp":
            return self.base.p ** 2
        return None

    def elements(self):
        """Enumerate a finite field."""
        if self.kind == "Fp":
            return [ModP(v, self.p) for v in range(self.p)]
        if self.size() is None:
            raise MalformedInput(f"{self.label} is infinite")
        base = self.base.elements()
        return [QuadElt(a, b, self) for a in base for b in base]

    def random_element(self, rng, bound=5):
        """A random element with small numerators; used by property tests."""
        if self.kind == "quadratic":
            return QuadElt(self.base.random_element(rng, bound), self.base.random_element(rng, bound), self)
        return self(rng.randint(-bound, bound))

    def format(self, x) -> str:
        return str(self(x))

    def __str__(self):
        return self.label


QQ = FieldDescriptor.rationals()


def nullspace(rows, ncols, field):
    """Basis of ``{v : M v = 0}`` for a matrix over ``field``.

    ``rows`` is a list of row lists (entries coercible into the field).  The
    basis is returned in reduced echelon form: each vector has a 1 in its own
    free column and zeros in the other free columns.
    """
    one = field.one
    m = [[field(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = one / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = one
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


def rank(rows, ncols, field) -> int:
    return ncols - len(nullspace(rows, ncols, field))
