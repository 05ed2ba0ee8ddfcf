"""Divisors over enumerated height-one primes.

Two settings are covered:

* toric rings ``k[M cap C]`` given by the inner facet normals of the cone
  ``C``; every facet is a height-one prime and ``v_P(x^m) = <n_P, m>``;
* an extension ``A subset S`` of Krull domains, where a :class:`PrimeTable`
  records where each height-one prime of ``S`` goes.

A :class:`DivisorVector` always stores the exponents of a divisorial ideal,
``I = intersection over P of P^(c_P)``.  So ``(x)`` has coefficient +1 at
``(x)`` and ``S y^-1`` has coefficient -1 at ``(y)``.  The opposite sign
convention is reached only through :func:`ideal_of_divisor`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Dict, Mapping, Optional, Sequence, Tuple

from .errors import MalformedInput
from .intlinalg import AbelianGroupPresentation, IntMatrix, cokernel, rational_rank, solve_integer


@dataclass(frozen=True)
class DivisorVector:
    """Integer coefficients indexed by the prime labels of an ambient ring."""

    labels: Tuple[str, ...]
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if len(self.labels) != len(self.coeffs):
            raise MalformedInput("one coefficient per prime label is required")
        if len(set(self.labels)) != len(self.labels):
            raise MalformedInput(f"duplicate prime labels in {self.labels}")

    @classmethod
    def zero(cls, labels: Sequence[str]) -> "DivisorVector":
        return cls(tuple(labels), (0,) * len(labels))

    @classmethod
    def from_mapping(cls, labels: Sequence[str], coeffs: Mapping[str, int]) -> "DivisorVector":
        unknown = set(coeffs) - set(labels)
        if unknown:
            raise MalformedInput(f"unknown prime labels {sorted(unknown)}")
        return cls(tuple(labels), tuple(coeffs.get(p, 0) for p in labels))

    def __getitem__(self, label: str) -> int:
        try:
            return self.coeffs[self.labels.index(label)]
        except ValueError:
            raise MalformedInput(f"unknown prime label {label!r}") from None

    def _check(self, other: "DivisorVector"):
        if not isinstance(other, DivisorVector) or other.labels != self.labels:
            raise MalformedInput("divisors live over different prime sets")

    def __add__(self, other):
        self._check(other)
        return DivisorVector(self.labels, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return DivisorVector(self.labels, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return DivisorVector(self.labels, tuple(-a for a in self.coeffs))

    def scale(self, k: int) -> "DivisorVector":
        return DivisorVector(self.labels, tuple(k * a for a in self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_effective(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def support(self):
        return tuple(p for p, c in zip(self.labels, self.coeffs) if c)

    def as_dict(self) -> Dict[str, int]:
        return dict(zip(self.labels, self.coeffs))

    def __str__(self):
        terms = [f"{c}<{p}>" if abs(c) != 1 else f"{'-' if c < 0 else ''}<{p}>" for p, c in zip(self.labels, self.coeffs) if c]
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def ideal_of_divisor(D: DivisorVector) -> DivisorVector:
    """Exponent vector of the fractional ideal ``{a : D + div(a) >= 0}``.

    That ideal is the intersection of ``P^(-c_P)``, so the conversion is a sign
    flip.  In particular the ideal attached to ``<P>`` has class ``-[P]``.
    This is the only place where the two conventions meet.
    """
    return -D


divisor_of_ideal = ideal_of_divisor


# ---------------------------------------------------------------------------
# toric rings


def _primitive(v: Sequence[int]) -> bool:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g == 1


@dataclass(frozen=True)
class ToricRing:
    """``k[M cap C]`` for the cone ``C = {m : <n_P, m> >= 0}`` in ``M = Z^d``.

    ``normals`` are the primitive inner facet normals, one per height-one
    prime.  ``generators`` (a Hilbert basis supplied by the caller) are only
    validated and used for display.
    """

    normals: Tuple[Tuple[int, ...], ...]
    generators: Tuple[Tuple[int, ...], ...] = ()
    labels: Tuple[str, ...] = ()
    generator_names: Tuple[str, ...] = ()

    def __post_init__(self):
        normals = tuple(tuple(int(x) for x in n) for n in self.normals)
        gens = tuple(tuple(int(x) for x in g) for g in self.generators)
        object.__setattr__(self, "normals", normals)
        object.__setattr__(self, "generators", gens)
        if not normals:
            raise MalformedInput("a toric ring needs at least one facet normal")
        d = len(normals[0])
        if any(len(n) != d for n in normals) or any(len(g) != d for g in gens):
            raise MalformedInput("normals and generators must all have the lattice rank as length")
        for n in normals:
            if not _primitive(n):
                raise MalformedInput(f"facet normal {n} is not primitive")
        if rational_rank(IntMatrix(normals, cols=d)) != d:
            raise MalformedInput("facet normals do not span the dual lattice; the cone is not pointed")
        for g in gens:
            if any(sum(a * b for a, b in zip(n, g)) < 0 for n in normals):
                raise MalformedInput(f"generator {g} lies outside the cone")
        if gens:
            total = tuple(sum(col) for col in zip(*gens))
            if any(sum(a * b for a, b in zip(n, total)) <= 0 for n in normals):
                raise MalformedInput("generators do not reach the interior of the cone")
        labels = tuple(self.labels) or tuple(f"P{i + 1}" for i in range(len(normals)))
        if len(labels) != len(normals) or len(set(labels)) != len(labels):
            raise MalformedInput("need one distinct label per facet")
        object.__setattr__(self, "labels", labels)
        names = tuple(self.generator_names)
        if names and len(names) != len(gens):
            raise MalformedInput("need one name per generator")
        object.__setattr__(self, "generator_names", names)

    @property
    def rank(self) -> int:
        return len(self.normals[0])

    def pairing_matrix(self) -> IntMatrix:
        """Rows are facets, columns the lattice coordinates."""
        return IntMatrix(self.normals, cols=self.rank)

    def zero_divisor(self) -> DivisorVector:
        return DivisorVector.zero(self.labels)

    def prime(self, label: str) -> DivisorVector:
        return symbolic_power(label, 1, self.labels)


def divisor_of_monomial(m: Sequence[int], R: ToricRing) -> DivisorVector:
    """``div(x^m)``: the coefficient at a facet is ``<n_P, m>``."""
    m = tuple(m)
    if len(m) != R.rank:
        raise MalformedInput(f"monomial exponent {m} does not have length {R.rank}")
    return DivisorVector(R.labels, R.pairing_matrix() @ m)


def toric_class_group(R: ToricRing) -> AbelianGroupPresentation:
    """Cokernel of ``M -> Z^facets``, ``m -> div(x^m)``."""
    return cokernel(R.pairing_matrix())


def is_principal(D: DivisorVector, R: ToricRing) -> Optional[Tuple[int, ...]]:
    """Exponent ``m`` with ``div(x^m) = D``, or None when ``D`` is not principal.

    Homogeneous witnesses suffice: the graded class group of a toric ring
    maps isomorphically onto its class group.
    """
    if D.labels != R.labels:
        raise MalformedInput("divisor is not over the facets of this ring")
    return solve_integer(R.pairing_matrix(), D.coeffs)


def divisorial_sum(I: DivisorVector, J: DivisorVector) -> DivisorVector:
    """Sum in the group of divisorial ideals; coefficientwise in exponent coordinates."""
    return I + J


def symbolic_power(P: str, n: int, labels: Sequence[str]) -> DivisorVector:
    """Exponent vector of ``P^(n)``: ``n`` at ``P`` and 0 elsewhere."""
    if n < 1:
        raise MalformedInput(f"symbolic power exponent must be positive, got {n}")
    labels = tuple(labels)
    if P not in labels:
        raise MalformedInput(f"unknown prime label {P!r}")
    return DivisorVector(labels, tuple(n if q == P else 0 for q in labels))


# ---------------------------------------------------------------------------
# extensions A subset S


MAPS, ZERO, HEIGHT2 = "maps", "zero", "height2"


@dataclass(frozen=True)
class PrimeLink:
    kind: str
    target: Optional[str] = None
    ramification: int = 1

    def __post_init__(self):
        if self.kind not in (MAPS, ZERO, HEIGHT2):
            raise MalformedInput(f"unknown link kind {self.kind!r}")
        if self.kind == MAPS:
            if self.target is None:
                raise MalformedInput("a maps-to link needs a target prime")
            if self.ramification < 1:
                raise MalformedInput(f"m(P) must be at least 1, got {self.ramification}")

    @classmethod
    def maps(cls, target: str, m: int = 1) -> "PrimeLink":
        return cls(MAPS, target, m)

    @classmethod
    def zero(cls) -> "PrimeLink":
        return cls(ZERO)

    @classmethod
    def height2(cls) -> "PrimeLink":
        return cls(HEIGHT2)


@dataclass(frozen=True)
class PrimeTable:
    """Where each height-one prime of ``S`` goes in ``A``.

    ``links`` maps an ``S``-label to a :class:`PrimeLink`; ``targets`` lists
    the height-one primes of ``A``.  The table is input data and is only
    checked for internal consistency.
    """

    links: Tuple[Tuple[str, PrimeLink], ...]
    targets: Tuple[str, ...]

    def __post_init__(self):
        links = tuple(self.links.items()) if isinstance(self.links, Mapping) else tuple(self.links)
        object.__setattr__(self, "links", links)
        object.__setattr__(self, "targets", tuple(self.targets))
        labels = [p for p, _ in links]
        if len(set(labels)) != len(labels):
            raise MalformedInput("duplicate prime in the table")
        if len(set(self.targets)) != len(self.targets):
            raise MalformedInput("duplicate target prime")
        hit = set()
        for p, link in links:
            if link.kind == MAPS:
                if link.target not in self.targets:
                    raise MalformedInput(f"{p} maps to unknown prime {link.target!r}")
                hit.add(link.target)
        missing = [t for t in self.targets if t not in hit]
        if missing:
            raise MalformedInput(f"primes {missing} of the subring lie under no listed prime")

    @property
    def source_labels(self) -> Tuple[str, ...]:
        return tuple(p for p, _ in self.links)

    def link(self, P: str) -> PrimeLink:
        for p, link in self.links:
            if p == P:
                return link
        raise MalformedInput(f"unknown prime {P!r}")

    def over(self, target: str):
        """``(P, m(P))`` for the primes lying over ``target``."""
        return [(p, l.ramification) for p, l in self.links if l.kind == MAPS and l.target == target]


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def contract_divisorial(I: DivisorVector, tbl: PrimeTable) -> DivisorVector:
    """Exponents of ``I cap Q(A)`` from those of ``I``.

    ``n_p = max over P above p of ceil(v_P(I) / m(P))``; primes contracting to
    a height-two prime do not contribute.  A prime contracting to zero with
    positive exponent is rejected: then ``I cap Q(A)`` is not divisorial.
    """
    if I.labels != tbl.source_labels:
        raise MalformedInput("ideal is not indexed by the primes of the table")
    for p, link in tbl.links:
        if link.kind == ZERO and I[p] > 0:
            raise MalformedInput(
                f"v_{p}(I) = {I[p]} > 0 at a prime contracting to zero; I cap Q(A) cannot be divisorial"
            )
    coeffs = []
    for t in tbl.targets:
        coeffs.append(max(_ceil_div(I[p], m) for p, m in tbl.over(t)))
    return DivisorVector(tbl.targets, tuple(coeffs))
