"""Multivariate Laurent polynomials, gradings and reduced rational functions.

A :class:`Ring` fixes the coefficient field, the variable names and whether
negative exponents belong to the ring (Laurent) or only to its fraction field
(polynomial).  :class:`LaurentPoly` is used for elements of both kinds; a
polynomial ring simply regards elements with negative exponents as fractions.

Monomials are plain tuples of integer exponents.
"""

from __future__ import annotations

import random
import re
from fractions import Fraction
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

from .errors import MalformedInput, ParseError
from .fields import FieldDescriptor, ModP
from .intlinalg import IntMatrix

Monomial = Tuple[int, ...]


def _glex_key(e: Monomial):
    return (sum(e), e)


# ---------------------------------------------------------------------------
# dict-level polynomial kernels (terms: {exponent tuple: nonzero coefficient})


def _add_into(acc, terms, scale=None):
    for e, c in terms.items():
        if scale is not None:
            c = c * scale
        v = acc.get(e)
        v = c if v is None else v + c
        if v:
            acc[e] = v
        else:
            acc.pop(e, None)
    return acc


def _mul(a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            v = out.get(e)
            v = ca * cb if v is None else v + ca * cb
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def _shift(a, s):
    return {tuple(x + y for x, y in zip(e, s)): c for e, c in a.items()}


def _min_exps(a, n):
    if not a:
        return (0,) * n
    return tuple(min(e[i] for e in a) for i in range(n))


def _lead(a):
    e = max(a, key=_glex_key)
    return e, a[e]


def _monic(a, one):
    if not a:
        return a
    _, c = _lead(a)
    if c == one:
        return dict(a)
    inv = one / c
    return {e: x * inv for e, x in a.items()}


def _divexact(a, b):
    """Quotient ``a / b`` for polynomials when ``b`` divides ``a`` exactly, else None.

    A single polynomial is a Groebner basis of the ideal it generates, so the
    leading-term division loop decides divisibility.
    """
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    lb, cb = _lead(b)
    r = dict(a)
    q = {}
    while r:
        lr, cr = _lead(r)
        d = tuple(x - y for x, y in zip(lr, lb))
        if any(x < 0 for x in d):
            return None
        c = cr / cb
        q[d] = c
        _add_into(r, {tuple(x + y for x, y in zip(e, d)): v for e, v in b.items()}, -c)
    return q


def _split(a, v):
    """View ``a`` as univariate in variable ``v``: {degree: coefficient dict}."""
    out = {}
    for e, c in a.items():
        d = e[v]
        e0 = e[:v] + (0,) + e[v + 1:]
        out.setdefault(d, {})[e0] = c
    return out


def _join(u, v):
    out = {}
    for d, coeff in u.items():
        for e, c in coeff.items():
            out[e[:v] + (d,) + e[v + 1:]] = c
    return out


_IMAGE_PRIME = 2_147_483_647


def _reducer(one):
    """Prime ``p`` and a map from field elements to ``Z/p``, or None when unsupported."""
    if isinstance(one, Fraction):
        p = _IMAGE_PRIME
        return p, lambda c: None if c.denominator % p == 0 else c.numerator * pow(c.denominator, -1, p) % p
    if isinstance(one, ModP):
        return one.p, lambda c: c.v
    return None


def _univariate_image(a, v, point, p, red):
    out = {}
    for e, c in a.items():
        x = red(c)
        if x is None:
            return None
        for i, k in enumerate(e):
            if i != v and k:
                x = x * pow(point[i], k, p) % p
        out[e[v]] = (out.get(e[v], 0) + x) % p
    return [out.get(d, 0) for d in range(max(out) + 1)] if out else []


def _trim(u):
    while u and not u[-1]:
        u.pop()
    return u


def _gcd_degree_mod(u, w, p):
    u, w = _trim(list(u)), _trim(list(w))
    while w:
        inv = pow(w[-1], -1, p)
        while len(u) >= len(w):
            c = u[-1] * inv % p
            k = len(u) - len(w)
            for i, y in enumerate(w):
                u[i + k] = (u[i + k] - c * y) % p
            _trim(u)
        u, w = w, u
    return len(u) - 1


def _coprime_images(a, b, n, one, used, tries=3):
    """True when a and b are certified coprime by univariate images mod a prime.

    Fixing every variable but ``v`` at a point and reducing mod ``p`` is a ring
    map; if it keeps the ``v``-degree of ``a``, it keeps the ``v``-degree of each
    factor of ``a``, so a constant image gcd forces ``deg_v gcd(a, b) = 0``.
    False only means no certificate was found.
    """
    image = _reducer(one)
    if image is None:
        return False
    p, red = image
    rng = random.Random(len(a) * 7919 + len(b))
    for v in used:
        da = max(e[v] for e in a)
        for _ in range(tries):
            point = [rng.randrange(1, p) for _ in range(n)]
            ia = _univariate_image(a, v, point, p, red)
            ib = _univariate_image(b, v, point, p, red)
            if ia is None or ib is None:
                return False
            if len(_trim(ia)) - 1 != da or not _trim(ib):
                continue
            if _gcd_degree_mod(ia, ib, p) == 0:
                break
        else:
            return False
    return True


def _poly_gcd(a, b, n, one):
    """Monic gcd of two polynomials (nonnegative exponents) over a field.

    Recursive primitive pseudo-remainder sequence, one variable at a time.
    """
    if not a:
        return _monic(b, one)
    if not b:
        return _monic(a, one)
    zero_e = (0,) * n
    used = [i for i in range(n) if any(e[i] for e in a) or any(e[i] for e in b)]
    if not used:
        return {zero_e: one}
    if _coprime_images(a, b, n, one, used):
        return {zero_e: one}
    for big, small in ((a, b), (b, a)):
        if len(small) <= len(big) and _divexact(big, small) is not None:
            return _monic(small, one)
    v = used[-1]
    A, B = _split(a, v), _split(b, v)
    ca, cb = _content(A, n, one), _content(B, n, one)
    pa = {d: _divexact(c, ca) for d, c in A.items()}
    pb = {d: _divexact(c, cb) for d, c in B.items()}
    cont = _poly_gcd(ca, cb, n, one)
    if max(pa) < max(pb):
        pa, pb = pb, pa
    while True:
        if not pb:
            g = pa
            break
        if max(pb) == 0:
            g = {0: {zero_e: one}}
            break
        r = _prem(pa, pb)
        pa, pb = pb, (_primitive(r, n, one) if r else {})
    g = _primitive(g, n, one)
    return _monic(_mul(cont, _join(g, v)), one)


def _content(u, n, one):
    g = None
    for coeff in u.values():
        g = coeff if g is None else _poly_gcd(g, coeff, n, one)
        if len(g) == 1 and not any(next(iter(g))):
            return _monic(g, one)
    return _monic(g, one)


def _primitive(u, n, one):
    c = _content(u, n, one)
    out = {d: _divexact(x, c) for d, x in u.items()}
    lead = out[max(out)]
    _, lc = _lead(lead)
    inv = one / lc
    return {d: {e: y * inv for e, y in x.items()} for d, x in out.items()}


def _prem(a, b):
    """Pseudo-remainder of univariate (dict-coefficient) ``a`` by ``b``."""
    db = max(b)
    lb = b[db]
    r = {d: dict(c) for d, c in a.items()}
    while r and max(r) >= db:
        dr = max(r)
        lr = r[dr]
        k = dr - db
        new = {}
        for d, c in r.items():
            new[d] = _mul(c, lb)
        for d, c in b.items():
            t = new.setdefault(d + k, {})
            _add_into(t, _mul(c, lr), -1)
        r = {d: c for d, c in new.items() if c}
    return r


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Ring:
    """Coefficient field, variable names and the Laurent flag."""

    field: FieldDescriptor
    names: Tuple[str, ...]
    laurent: bool = True

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise MalformedInput(f"duplicate variable names in {self.names}")
        for nm in self.names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*'*", nm) or nm == "theta":
                raise MalformedInput(f"bad variable name {nm!r}")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def gens(self):
        return [self.gen(i) for i in range(self.nvars)]

    def gen(self, i):
        if isinstance(i, str):
            try:
                i = self.names.index(i)
            except ValueError:
                raise MalformedInput(f"unknown variable {i!r}") from None
        e = [0] * self.nvars
        e[i] = 1
        return LaurentPoly(self, {tuple(e): self.field.one})

    def monomial(self, exps: Sequence[int], coeff=1) -> "LaurentPoly":
        if len(exps) != self.nvars:
            raise MalformedInput("monomial arity does not match ring")
        return LaurentPoly(self, {tuple(int(x) for x in exps): coeff})

    def const(self, c) -> "LaurentPoly":
        return LaurentPoly(self, {(0,) * self.nvars: c})

    @property
    def zero(self):
        return LaurentPoly(self, {})

    @property
    def one(self):
        return self.const(1)

    def parse(self, text: str, defs=None):
        """Parse an expression; returns a LaurentPoly when the value lies in the
        Laurent ring, else a RationalFunction."""
        r = parse_expression(text, self, defs)
        if r.den.is_one():
            return r.num
        return r

    def with_field(self, field: FieldDescriptor) -> "Ring":
        return Ring(field, self.names, self.laurent)

    def __str__(self):
        kind = "Laurent" if self.laurent else "poly"
        return f"{self.field.label}[{', '.join(self.names)}] ({kind})"


class LaurentPoly:
    """Finite sum of ``coeff * x^e`` with integer exponent vectors ``e``."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: Dict[Monomial, object] = None):
        self.ring = ring
        clean = {}
        if terms:
            F = ring.field
            n = ring.nvars
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n:
                    raise MalformedInput(f"exponent {e} has wrong arity for {ring}")
                c = F(c)
                if c:
                    clean[e] = c
        self.terms = clean

    @classmethod
    def _raw(cls, ring, terms):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        return obj

    # -- coercion ----------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, LaurentPoly):
            if other.ring != self.ring:
                raise MalformedInput(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, RationalFunction):
            return NotImplemented
        try:
            return self.ring.const(other)
        except MalformedInput:
            return NotImplemented

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return LaurentPoly._raw(self.ring, _add_into(dict(self.terms), other.terms))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return LaurentPoly._raw(self.ring, _add_into(dict(self.terms), other.terms, -1))

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return LaurentPoly._raw(self.ring, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return LaurentPoly._raw(self.ring, _mul(self.terms, other.terms))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_unit():
                raise MalformedInput("negative power of a non-unit Laurent polynomial")
            (e, c), = self.terms.items()
            return LaurentPoly._raw(self.ring, {tuple(k * x for x in e): self.ring.field.one / c ** (-k)})
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (LaurentPoly, RationalFunction)):
            return RationalFunction(self, self.ring.one) / other
        c = self.ring.field(other)
        inv = self.ring.field.one / c
        return LaurentPoly._raw(self.ring, {e: x * inv for e, x in self.terms.items()})

    def __rtruediv__(self, other):
        return RationalFunction(self.ring.const(other), self.ring.one) / self

    # -- predicates --------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return other == self
        other = self._lift(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return len(self.terms) == 1 and (0,) * self.ring.nvars in self.terms and self.terms[(0,) * self.ring.nvars] == 1

    def is_unit(self) -> bool:
        """Units of a Laurent ring are exactly the single nonzero terms."""
        return len(self.terms) == 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def is_polynomial(self) -> bool:
        return all(x >= 0 for e in self.terms for x in e)

    # -- structure ---------------------------------------------------------
    def monomials(self):
        return sorted(self.terms, key=_glex_key, reverse=True)

    def coefficient(self, e):
        return self.terms.get(tuple(e), self.ring.field.zero)

    def total_degree(self) -> int:
        if not self.terms:
            raise MalformedInput("degree of zero")
        return max(sum(e) for e in self.terms)

    def min_exponents(self) -> Monomial:
        return _min_exps(self.terms, self.ring.nvars)

    def shift(self, e: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial ``x^e``."""
        return LaurentPoly._raw(self.ring, _shift(self.terms, tuple(e)))

    def split_monomial(self):
        """``(e, p)`` with ``self == x^e * p``, ``p`` a polynomial not divisible by any variable."""
        m = self.min_exponents()
        return m, self.shift(tuple(-x for x in m))

    def leading_term(self):
        return _lead(self.terms)

    def map_coefficients(self, func, ring=None):
        ring = ring or self.ring
        return LaurentPoly(ring, {e: func(c) for e, c in self.terms.items()})

    def __iter__(self):
        for e in self.monomials():
            yield e, self.terms[e]

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        return format_poly(self)


def format_poly(f: LaurentPoly) -> str:
    if not f.terms:
        return "0"
    names = f.ring.names
    pieces = []
    for e in f.monomials():
        c = f.terms[e]
        cs = f.ring.field.format(c)
        neg = cs.startswith("-") and not cs.startswith("(")
        if neg:
            cs = cs[1:]
        var = "*".join(
            nm if x == 1 else f"{nm}^{x}" for nm, x in zip(names, e) if x != 0
        )
        if not var:
            body = cs
        elif cs == "1":
            body = var
        else:
            body = f"{cs}*{var}"
        pieces.append((neg, body))
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


def exact_divide(f: LaurentPoly, g: LaurentPoly) -> Optional[LaurentPoly]:
    """``f / g`` in the Laurent ring when it exists there, else None."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero")
    if f.is_zero():
        return f.ring.zero
    ef, pf = f.split_monomial()
    eg, pg = g.split_monomial()
    q = _divexact(pf.terms, pg.terms)
    if q is None:
        return None
    return LaurentPoly._raw(f.ring, _shift(q, tuple(a - b for a, b in zip(ef, eg))))


def poly_divide(f: LaurentPoly, g: LaurentPoly) -> Optional[LaurentPoly]:
    """``f / g`` as polynomials (no monomial shifts), or None."""
    if not f.is_polynomial() or not g.is_polynomial():
        raise MalformedInput("poly_divide needs polynomials")
    q = _divexact(f.terms, g.terms)
    return None if q is None else LaurentPoly._raw(f.ring, q)


def gcd(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Gcd of the polynomial parts, monic in graded-lex order, free of monomial factors."""
    if f.ring != g.ring:
        raise MalformedInput("ring mismatch")
    one = f.ring.field.one
    pf = f.split_monomial()[1].terms if f else {}
    pg = g.split_monomial()[1].terms if g else {}
    return LaurentPoly._raw(f.ring, _poly_gcd(pf, pg, f.ring.nvars, one))


def laurent_arith(f: LaurentPoly, g: LaurentPoly, op: str) -> LaurentPoly:
    if f.ring != g.ring:
        raise MalformedInput(f"ring mismatch: {f.ring} vs {g.ring}")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise MalformedInput(f"unknown operation {op!r}")


def is_unit(f: LaurentPoly) -> bool:
    return f.is_unit()


# ---------------------------------------------------------------------------


class Grading:
    """A Z^m-grading given by an ``m x n`` weight matrix; ``deg(x^e) = W e``."""

    __slots__ = ("W",)

    def __init__(self, W):
        self.W = W if isinstance(W, IntMatrix) else IntMatrix(W)

    @classmethod
    def standard(cls, n: int) -> "Grading":
        return cls(IntMatrix([[1] * n]))

    @property
    def arity(self):
        return self.W.cols

    def degree(self, e: Sequence[int]) -> Tuple[int, ...]:
        return self.W @ tuple(e)

    def check(self, ring: Ring):
        if self.W.cols != ring.nvars:
            raise MalformedInput(f"grading has {self.W.cols} columns but ring has {ring.nvars} variables")

    def __eq__(self, other):
        return isinstance(other, Grading) and self.W == other.W

    def __hash__(self):
        return hash(self.W)

    def __repr__(self):
        return f"Grading({self.W.tolist()})"


def homogeneous_components(f: LaurentPoly, g: Grading) -> Dict[Tuple[int, ...], LaurentPoly]:
    g.check(f.ring)
    parts: Dict[Tuple[int, ...], dict] = {}
    for e, c in f.terms.items():
        parts.setdefault(g.degree(e), {})[e] = c
    return {d: LaurentPoly._raw(f.ring, t) for d, t in sorted(parts.items())}


def is_homogeneous(f: LaurentPoly, g: Grading) -> bool:
    g.check(f.ring)
    return len({g.degree(e) for e in f.terms}) <= 1


# ---------------------------------------------------------------------------


class RationalFunction:
    """``num / den`` with Laurent numerator and denominator.

    Arithmetic returns reduced results.  The reduced form is unique: the
    denominator is a polynomial not divisible by any variable, coprime to the
    numerator, and its lexicographically least monomial has coefficient 1.
    """

    __slots__ = ("num", "den", "reduced")

    def __init__(self, num: LaurentPoly, den: LaurentPoly = None, reduced: bool = False):
        if den is None:
            den = num.ring.one
        if num.ring != den.ring:
            raise MalformedInput("numerator and denominator live in different rings")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den
        self.reduced = reduced

    @property
    def ring(self) -> Ring:
        return self.num.ring

    def _lift(self, other):
        if isinstance(other, RationalFunction):
            if other.ring != self.ring:
                raise MalformedInput("ring mismatch")
            return other
        if isinstance(other, LaurentPoly):
            if other.ring != self.ring:
                raise MalformedInput("ring mismatch")
            return RationalFunction(other, self.ring.one, True)
        try:
            return RationalFunction(self.ring.const(other), self.ring.one, True)
        except MalformedInput:
            return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return reduce(RationalFunction(self.num + o.num, self.den))
        return reduce(RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den))

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, self.reduced)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return reduce(RationalFunction(self.num * o.num, self.den * o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return reduce(RationalFunction(self.num * o.den, self.den * o.num))

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            return RationalFunction(self.ring.one) / (self ** (-k))
        return reduce(RationalFunction(self.num ** k, self.den ** k))

    def __eq__(self, other):
        try:
            o = self._lift(other)
        except MalformedInput:
            return False
        if o is NotImplemented:
            return False
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        r = reduce(self)
        return hash((r.num, r.den))

    def is_zero(self):
        return self.num.is_zero()

    def as_laurent(self) -> LaurentPoly:
        r = reduce(self)
        if not laurent_membership(r):
            raise MalformedInput(f"{r} is not a Laurent polynomial")
        return r.num

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        num, den = self.num, self.den
        if not self.ring.laurent and not num.is_polynomial():
            num, den = polynomial_parts(self)
        if den.is_one():
            return str(num)
        n = str(num)
        d = str(den)
        if len(num) > 1:
            n = f"({n})"
        if len(den) > 1:
            d = f"({d})"
        return f"{n}/{d}"


def reduce(r: RationalFunction) -> RationalFunction:
    """Reduced form of ``r`` (see :class:`RationalFunction`); ``0/q`` becomes ``0/1``."""
    if r.reduced:
        return r
    ring = r.ring
    one = ring.field.one
    if r.num.is_zero():
        return RationalFunction(ring.zero, ring.one, True)
    en, pn = r.num.split_monomial()
    ed, pd = r.den.split_monomial()
    shift = tuple(a - b for a, b in zip(en, ed))
    if pd.is_constant():
        c = pd.terms[(0,) * ring.nvars]
        num = LaurentPoly._raw(ring, {tuple(x + s for x, s in zip(e, shift)): v / c for e, v in pn.terms.items()})
        return RationalFunction(num, ring.one, True)
    g = _poly_gcd(pn.terms, pd.terms, ring.nvars, one)
    if len(g) != 1 or any(next(iter(g))):
        pn_t = _divexact(pn.terms, g)
        pd_t = _divexact(pd.terms, g)
    else:
        pn_t, pd_t = pn.terms, pd.terms
    c = pd_t[min(pd_t)]
    inv = one / c
    num = LaurentPoly._raw(ring, {tuple(x + s for x, s in zip(e, shift)): v * inv for e, v in pn_t.items()})
    den = LaurentPoly._raw(ring, {e: v * inv for e, v in pd_t.items()})
    return RationalFunction(num, den, True)


def as_fraction(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return reduce(x)
    if isinstance(x, LaurentPoly):
        return RationalFunction(x, x.ring.one, True)
    raise MalformedInput(f"expected a ring element, got {x!r}")


def laurent_membership(r) -> bool:
    """True iff the reduced denominator is a single term, i.e. ``r`` is a Laurent polynomial."""
    r = as_fraction(r)
    return r.den.is_monomial()


def in_ring(r) -> bool:
    """Membership in ``r.ring`` itself: Laurent rings accept any monomial
    denominator, polynomial rings need a trivial denominator and no negative
    exponents."""
    r = as_fraction(r)
    if not laurent_membership(r):
        return False
    if r.ring.laurent:
        return True
    return r.num.is_polynomial()


def polynomial_parts(r) -> Tuple[LaurentPoly, LaurentPoly]:
    """Coprime polynomials ``(p, q)`` with ``r = p / q`` in the polynomial ring."""
    r = as_fraction(r)
    e, p0 = r.num.split_monomial() if r.num else ((0,) * r.ring.nvars, r.num)
    pos = tuple(max(x, 0) for x in e)
    neg = tuple(max(-x, 0) for x in e)
    return p0.shift(pos), r.den.shift(neg)


# ---------------------------------------------------------------------------
# expression parser:  expr := term (('+'|'-') term)* ;  term := unary (('*'|'/') unary)*
# unary := '-' unary | power ;  power := atom ('^' ['-'] int)? ;  atom := number | name | '(' expr ')'

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*'*)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            pos += len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[pos:pos + 1]!r}", column=pos + 1)
        if m.group(1):
            out.append(("num", int(m.group(1)), m.start(1)))
        elif m.group(2):
            out.append(("name", m.group(2), m.start(2)))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            out.append(("op", op, m.start(3)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text, ring, defs):
        self.text = text
        self.ring = ring
        self.defs = defs or {}
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, op=None):
        tok = self.peek()
        if tok is None:
            raise ParseError(f"unexpected end of expression in {self.text!r}")
        if op is not None and tok != ("op", op, tok[2]):
            raise ParseError(f"expected {op!r} in {self.text!r}", column=tok[2] + 1)
        self.i += 1
        return tok

    def parse(self):
        if not self.toks:
            raise ParseError("empty expression")
        v = self.expr()
        if self.peek() is not None:
            raise ParseError(f"trailing input in {self.text!r}", column=self.peek()[2] + 1)
        return v

    def expr(self):
        v = self.term()
        while (tok := self.peek()) and tok[0] == "op" and tok[1] in "+-":
            self.take()
            w = self.term()
            v = v + w if tok[1] == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while (tok := self.peek()) and tok[0] == "op" and tok[1] in "*/":
            self.take()
            w = self.unary()
            v = v * w if tok[1] == "*" else v / w
        return v

    def unary(self):
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "-":
            self.take()
            return -self.unary()
        if tok and tok[0] == "op" and tok[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "^":
            self.take()
            sign = 1
            paren = False
            t = self.peek()
            if t and t == ("op", "(", t[2]):
                self.take()
                paren = True
                t = self.peek()
            if t and t[0] == "op" and t[1] == "-":
                self.take()
                sign = -1
            t = self.take()
            if t[0] != "num":
                raise ParseError(f"exponent must be an integer in {self.text!r}", column=t[2] + 1)
            if paren:
                self.take(")")
            return base ** (sign * t[1])
        return base

    def atom(self):
        tok = self.take()
        kind, val, col = tok
        R = self.ring
        if kind == "num":
            return RationalFunction(R.const(val), R.one, True)
        if kind == "name":
            if val in self.defs:
                return as_fraction(self.defs[val])
            if val in R.names:
                return RationalFunction(R.gen(val), R.one, True)
            if val == "theta" and R.field.kind == "quadratic":
                return RationalFunction(R.const(R.field.theta), R.one, True)
            raise ParseError(f"unknown name {val!r}", column=col + 1)
        if val == "(":
            v = self.expr()
            self.take(")")
            return v
        raise ParseError(f"unexpected {val!r} in {self.text!r}", column=col + 1)


def parse_expression(text: str, ring: Ring, defs=None) -> RationalFunction:
    """Parse ``text`` (e.g. ``"3*A^2*B^-1 + 1"``) into a reduced RationalFunction."""
    try:
        return reduce(_Parser(text, ring, defs).parse())
    except ZeroDivisionError as exc:
        raise ParseError(f"division by zero in {text!r}") from exc


__all__ = [
    "Monomial",
    "Ring",
    "LaurentPoly",
    "Grading",
    "RationalFunction",
    "reduce",
    "gcd",
    "exact_divide",
    "poly_divide",
    "laurent_arith",
    "laurent_membership",
    "in_ring",
    "is_unit",
    "homogeneous_components",
    "is_homogeneous",
    "polynomial_parts",
    "parse_expression",
    "format_poly",
]
