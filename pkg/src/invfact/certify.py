"""Certificate checkers: non-primality witnesses, group-like elements, dimension arithmetic."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .actions import Action, is_invariant, principal_invariant_contract
from .errors import MalformedInput, MalformedWitness
from .laurent import LaurentPoly, RationalFunction, Ring, as_fraction, in_ring


# ---------------------------------------------------------------------------
# non-primality


@dataclass(frozen=True)
class NotPrimeWitness:
    """``f`` divides ``a * b`` in the invariant ring but divides neither factor."""

    f: RationalFunction
    a: RationalFunction
    b: RationalFunction

    def __post_init__(self):
        for name in ("f", "a", "b"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))


def _in_invariant_ring(x, action: Action) -> bool:
    return in_ring(x) and is_invariant(x, action)


def verify_not_prime(w: NotPrimeWitness, action: Action) -> bool:
    """True when ``w`` certifies that ``f`` is not a prime element of ``S^G``.

    Raises :class:`MalformedWitness` when the data is not a witness at all:
    an element outside the invariant ring, or ``a * b`` not a multiple of
    ``f`` there.  A well-formed witness that fails to certify (``f`` divides
    a factor) returns False.
    """
    for name in ("f", "a", "b"):
        x = getattr(w, name)
        if not _in_invariant_ring(x, action):
            raise MalformedWitness(f"{name} = {x} is not in the invariant ring")
    if w.f.is_zero():
        raise MalformedWitness("f must be nonzero")
    c = w.a * w.b / w.f
    if not _in_invariant_ring(c, action):
        raise MalformedWitness(f"a*b/f = {c} is not in the invariant ring, so f does not divide a*b")
    return not principal_invariant_contract(w.f, w.a, action) and not principal_invariant_contract(
        w.f, w.b, action
    )


# ---------------------------------------------------------------------------
# substitution and comultiplication


def substitute(f: LaurentPoly, images: Sequence, target: Ring) -> LaurentPoly:
    """Ring map ``x_i -> images[i]``; negative exponents need unit images."""
    if len(images) != f.ring.nvars:
        raise MalformedInput("need one image per variable")
    images = [target.const(g) if not isinstance(g, LaurentPoly) else g for g in images]
    out = target.zero
    for e, c in f.terms.items():
        term = target.const(c)
        for g, k in zip(images, e):
            if k:
                term = term * g ** k
        out = out + term
    return out


def _primed(names: Sequence[str], k: int) -> Tuple[str, ...]:
    return tuple(n + "'" * k for n in names)


@dataclass(frozen=True)
class ComultiplicationTable:
    """Explicit ``Delta`` and counit on the generators of a coordinate ring.

    ``images[i]`` is ``Delta(x_i)`` in the doubled ring whose variables are
    ``x_1..x_n`` (left tensor factor) followed by ``x_1'..x_n'`` (right).
    Counit and coassociativity are checked on construction.
    """

    ring: Ring
    images: Tuple[LaurentPoly, ...]
    counit: Tuple

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        n = self.ring.nvars
        F = self.ring.field
        object.__setattr__(self, "counit", tuple(F(c) for c in self.counit))
        if len(self.images) != n or len(self.counit) != n:
            raise MalformedInput("need one image and one counit value per generator")
        dbl = self.doubled()
        for g in self.images:
            if g.ring != dbl:
                raise MalformedInput(f"{g} does not live in the doubled ring {dbl}")
        self._check_counit()
        self._check_coassociative()

    @classmethod
    def from_strings(cls, ring: Ring, images: Mapping[str, str], counit: Mapping[str, object]):
        dbl = doubled_ring(ring)
        imgs = []
        for name in ring.names:
            if name not in images:
                raise MalformedInput(f"no comultiplication image for {name}")
            imgs.append(_as_poly(dbl.parse(images[name])))
        return cls(ring, tuple(imgs), tuple(counit[n] for n in ring.names))

    def doubled(self) -> Ring:
        return doubled_ring(self.ring)

    def delta(self, f: LaurentPoly) -> LaurentPoly:
        """``Delta(f)``, extended multiplicatively from the generators."""
        if f.ring != self.ring:
            raise MalformedInput("element is not in the table's ring")
        return substitute(f, self.images, self.doubled())

    def _check_counit(self):
        n = self.ring.nvars
        R = self.ring
        x = R.gens()
        eps = [R.const(c) for c in self.counit]
        for i, g in enumerate(self.images):
            left = substitute(g, eps + x, R)
            right = substitute(g, x + eps, R)
            if left != x[i] or right != x[i]:
                raise MalformedInput(f"counit identity fails on {R.names[i]}")

    def _check_coassociative(self):
        n = self.ring.nvars
        tri = Ring(self.ring.field, self.ring.names + _primed(self.ring.names, 1) + _primed(self.ring.names, 2), self.ring.laurent)
        g = tri.gens()
        x, x1, x2 = g[:n], g[n : 2 * n], g[2 * n :]
        delta_01 = [substitute(d, x + x1, tri) for d in self.images]
        delta_12 = [substitute(d, x1 + x2, tri) for d in self.images]
        for i, d in enumerate(self.images):
            left = substitute(d, delta_01 + x2, tri)
            right = substitute(d, x + delta_12, tri)
            if left != right:
                raise MalformedInput(f"comultiplication is not coassociative on {self.ring.names[i]}")


def doubled_ring(R: Ring) -> Ring:
    return Ring(R.field, R.names + _primed(R.names, 1), R.laurent)


def _as_poly(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    r = as_fraction(x)
    if not r.den.is_one():
        raise MalformedInput(f"{r} is not a polynomial")
    return r.num


def verify_grouplike(ct: ComultiplicationTable, f: LaurentPoly) -> bool:
    """``Delta(f) == f (x) f`` exactly, with ``f != 0``."""
    f = _as_poly(f)
    if f.is_zero():
        return False
    n = ct.ring.nvars
    dbl = ct.doubled()
    g = dbl.gens()
    left = substitute(f, g[:n], dbl)
    right = substitute(f, g[n:], dbl)
    return ct.delta(f) == left * right


@dataclass
class SemiinvariantReport:
    """Outcome of testing whether ``k f`` is a stable line.

    ``coaction[mu]`` is the scalar ``lambda`` with ``Delta(f)`` having
    coefficient ``lambda * f`` at the right-hand monomial ``mu``.  ``weight``
    is the character ``sum lambda_mu x^mu`` when every coefficient is a scalar
    multiple of ``f``.
    """

    semiinvariant: bool
    over: str
    weight: Optional[LaurentPoly]
    coaction: Dict[Tuple[int, ...], object] = field(default_factory=dict)
    extension_scalars: List[Tuple[Tuple[int, ...], object]] = field(default_factory=list)
    reason: str = ""

    def as_dict(self):
        return {
            "semiinvariant": self.semiinvariant,
            "over": self.over,
            "weight": None if self.weight is None else str(self.weight),
            "extension_scalars": [str(c) for _, c in self.extension_scalars],
            "reason": self.reason,
        }


def verify_semiinvariant_failure(f: LaurentPoly, ct: ComultiplicationTable, over: str = "base") -> SemiinvariantReport:
    """Expand ``Delta(f)`` along right-hand monomials and compare each coefficient with ``f``.

    With ``over="base"`` the scalars must lie in the base field, i.e. the
    line ``k f`` must be stable.  With ``over="extension"`` any scalar of
    the coefficient field is accepted.
    """
    if over not in ("base", "extension"):
        raise MalformedInput("over must be 'base' or 'extension'")
    f = _as_poly(f)
    if f.is_zero():
        raise MalformedInput("zero is not a semiinvariant")
    R = ct.ring
    F = R.field
    n = R.nvars
    parts: Dict[Tuple[int, ...], dict] = {}
    for e, c in ct.delta(f).terms.items():
        parts.setdefault(e[n:], {})[e[:n]] = c
    lead_e, lead_c = next(iter(sorted(f.terms.items())))
    coaction = {}
    for mu, terms in sorted(parts.items()):
        g = LaurentPoly(R, terms)
        lam = g.coefficient(lead_e) / lead_c
        if g != f * lam:
            return SemiinvariantReport(
                False, over, None, coaction, [], f"coefficient at {mu} is not a scalar multiple of f"
            )
        coaction[mu] = lam
    offending = [(mu, c) for mu, c in coaction.items() if not F.in_base(c)]
    weight = LaurentPoly(R, coaction)
    if over == "base" and offending:
        scal = ", ".join(str(c) for _, c in offending)
        return SemiinvariantReport(
            False, over, weight, coaction, offending, f"coaction needs scalars outside the base field: {scal}"
        )
    return SemiinvariantReport(True, over, weight, coaction, offending, "")


# ---------------------------------------------------------------------------
# dimension arithmetic for the determinantal example


@dataclass(frozen=True)
class DimensionReport:
    """Formula evaluations for ``S = k[x_ij]/I_t`` with ``m x n`` generic matrix.

    ``r = dim S - dim S^U`` and ``s`` is the orbit dimension; the check is
    ``r == s``.  These are formula evaluations, not independent proofs.
    """

    m: int
    n: int
    t: int
    dim_S: int
    dim_SU: int
    orbit_dim: int
    quotient_dim: int
    height_PU: int
    r: int
    s: int

    def as_dict(self):
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def _integral(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise AssertionError(f"{what} evaluated to the non-integer {x}")
    return int(x)


def determinantal_dimensions(m: int, n: int, t: int) -> DimensionReport:
    if not (n >= m >= t >= 2):
        raise MalformedInput(f"need n >= m >= t >= 2, got m={m}, n={n}, t={t}")
    h = Fraction(1, 2)
    dim_S = _integral(Fraction((t - 1) * (m + n - t + 1)), "dim S")
    dim_SU = _integral((t - 1) * (n + 1 - t * h), "dim S^U")
    orbit = _integral((t - 1) * (m - t * h), "orbit dimension")
    quotient = _integral((t - 2) * (n + 1 - (t - 1) * h), "dim S^U/P^U")
    height = dim_SU - quotient
    if height != n - t + 2:
        raise AssertionError(f"height of P^U is {height}, expected {n - t + 2}")
    if dim_S - dim_SU != orbit:
        raise AssertionError(f"dim S - dim S^U = {dim_S - dim_SU} differs from the orbit dimension {orbit}")
    return DimensionReport(m, n, t, dim_S, dim_SU, orbit, quotient, height, dim_S - dim_SU, orbit)
