"""Membership in the equivariant ring of fractions ``Q_F(S)``.

Three regimes are decidable here:

* a torus acting through a grading: ``Q_F(S)`` is the localization at
  nonzero homogeneous elements, so a reduced fraction is a member iff its
  denominator is homogeneous;
* a finite group: ``Q_F(S) = Q(S)``;
* a Krull ring with enumerated principal height-one primes: ``f`` is a member
  iff ``v_P(f) >= 0`` at every prime ``P`` whose largest stable subideal
  ``P*`` is zero.

The bounded search :func:`colon_witness_search` gives constructive
certificates in the torus regime.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .actions import CyclicAction, degree_box
from .errors import MalformedInput
from .fields import nullspace
from .laurent import (
    Grading,
    LaurentPoly,
    RationalFunction,
    as_fraction,
    exact_divide,
    in_ring,
    is_homogeneous,
    poly_divide,
    polynomial_parts,
)

TRUSTED = "trusted"
HEURISTIC = "heuristic"


@dataclass(frozen=True)
class HeightOnePrime:
    """Principal height-one prime ``(generator)`` and whether ``P*`` is nonzero.

    ``pstar_nonzero`` is None when unknown.  ``source`` says where the flag
    came from: supplied data (``"trusted"``) or the bounded search
    (``"heuristic"``).
    """

    generator: LaurentPoly
    pstar_nonzero: Optional[bool]
    source: str = TRUSTED
    label: str = ""

    def __post_init__(self):
        if self.generator.is_zero():
            raise MalformedInput("the zero ideal is not a height-one prime")
        if self.generator.ring.laurent and self.generator.is_unit():
            raise MalformedInput(f"{self.generator} is a unit of the Laurent ring")
        if self.generator.is_constant():
            raise MalformedInput("a constant does not generate a prime")


@dataclass(frozen=True)
class QfQuery:
    element: RationalFunction
    regime: str
    data: Union[Grading, CyclicAction, Sequence[HeightOnePrime], None] = None

    def __post_init__(self):
        if self.regime not in ("torus", "finite", "krull"):
            raise MalformedInput(f"unknown regime {self.regime!r}")


def qf_member(q: QfQuery) -> bool:
    if q.regime == "torus":
        return qf_member_torus(q.element, q.data)
    if q.regime == "finite":
        return qf_member_finite(q.element, q.data)
    return qf_member_krull(q.element, q.data)


def _denominator(f) -> LaurentPoly:
    """The denominator as an element of ``S``: monomials count in polynomial rings."""
    r = as_fraction(f)
    return r.den if r.ring.laurent else polynomial_parts(r)[1]


def qf_member_torus(f, g: Grading) -> bool:
    """True iff the reduced denominator of ``f`` is homogeneous for ``g``."""
    r = as_fraction(f)
    g.check(r.ring)
    return is_homogeneous(_denominator(r), g)


def qf_member_finite(f, a: CyclicAction = None) -> bool:
    """Always true: a finite group gives ``Q_F(S) = Q(S)``."""
    as_fraction(f)
    return True


def valuation(f, P: LaurentPoly) -> int:
    """``v_(P)(f)`` for a principal prime ``(P)``, by repeated exact division."""
    r = as_fraction(f)
    if r.is_zero():
        raise MalformedInput("the valuation of 0 is infinite")
    if r.ring.laurent:
        num, den = r.num, r.den
        divide = exact_divide
    else:
        num, den = polynomial_parts(r)
        divide = poly_divide
        if not P.is_polynomial():
            raise MalformedInput(f"{P} is not a polynomial")

    def order(h):
        k = 0
        while True:
            q = divide(h, P)
            if q is None:
                return k
            h, k = q, k + 1

    return order(num) - order(den)


def qf_member_krull(f, primes: Sequence[HeightOnePrime]) -> bool:
    """True iff ``v_P(f) >= 0`` at every listed prime with ``P* = 0``.

    The answer is only meaningful when the list contains every prime
    dividing the denominator; see :func:`covers_denominator`.
    """
    r = as_fraction(f)
    if r.is_zero():
        return True
    for P in primes:
        if P.pstar_nonzero is None:
            raise MalformedInput(f"no P* flag supplied for the prime ({P.generator})")
        if not P.pstar_nonzero and valuation(r, P.generator) < 0:
            return False
    return True


def covers_denominator(f, primes: Sequence[HeightOnePrime]) -> bool:
    """True when the denominator factors into the listed primes times a unit."""
    r = as_fraction(f)
    h = _denominator(r)
    divide = exact_divide if r.ring.laurent else poly_divide
    for P in primes:
        while True:
            q = divide(h, P.generator)
            if q is None:
                break
            h = q
    return h.is_constant() or (r.ring.laurent and h.is_unit())


def homogeneous_multiple(q: LaurentPoly, g: Grading, bound: int) -> Optional[LaurentPoly]:
    """A nonzero homogeneous ``q * r`` with ``r`` a polynomial of degree at most ``bound``.

    Degrees of ``r`` are tried in increasing order, so the first hit has
    least degree.  Each step is exact linear algebra: the coefficients of
    ``r`` must kill every component of ``q * r`` outside one target degree.
    """
    g.check(q.ring)
    if q.is_zero():
        raise MalformedInput("zero has no homogeneous multiple worth reporting")
    if is_homogeneous(q, g):
        return q
    ring = q.ring
    F = ring.field
    for d in range(1, bound + 1):
        mons = degree_box(ring.nvars, d)
        # the product's monomials and their degrees
        product = {}
        for j, m in enumerate(mons):
            for e, c in q.terms.items():
                mu = tuple(a + b for a, b in zip(e, m))
                product.setdefault(mu, []).append((j, c))
        targets = sorted({g.degree(mu) for mu in product})
        for delta in targets:
            rows = []
            for mu, contrib in product.items():
                if g.degree(mu) == delta:
                    continue
                row = [F.zero] * len(mons)
                for j, c in contrib:
                    row[j] = row[j] + c
                rows.append(row)
            basis = nullspace(rows, len(mons), F)
            if basis:
                r = LaurentPoly(ring, {mons[j]: x for j, x in enumerate(basis[0]) if x})
                return q * r
    return None


def colon_witness_search(f, g: Grading, degree_bound: int) -> Optional[LaurentPoly]:
    """Homogeneous ``h`` with ``h * f in S``, or None if none exists within the bound.

    For reduced ``f = p / q`` any such ``h`` is a multiple of ``q`` because
    ``p`` and ``q`` are coprime, so the search runs over ``h = q * r``.  None
    means inconclusive, not "not a member".
    """
    r = as_fraction(f)
    h = homogeneous_multiple(_denominator(r), g, degree_bound)
    if h is None:
        return None
    if not in_ring(r * h):
        raise AssertionError(f"colon witness {h} does not clear the denominator of {r}")
    return h


def pstar_flag_heuristic(P: LaurentPoly, g: Grading, bound: int, label: str = "") -> HeightOnePrime:
    """Flag ``P*`` nonzero when ``(P)`` contains a homogeneous element found within the bound.

    A failed search leaves the flag unknown: the bounded search can
    certify "nonzero" but never "zero".
    """
    found = homogeneous_multiple(P, g, bound) is not None
    return HeightOnePrime(P, True if found else None, HEURISTIC, label)
