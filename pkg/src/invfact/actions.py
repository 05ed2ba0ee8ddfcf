"""Finite cyclic groups acting by monomial automorphisms, and torus actions as gradings.

A monomial automorphism sends ``x_j`` to ``c_j * x^(T e_j)``: column ``j`` of
the unimodular matrix ``T`` is the exponent vector of the image of ``x_j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from .errors import BoxNotStable, MalformedInput, OrderMismatch, UnsupportedAction
from .fields import FieldDescriptor
from .intlinalg import IntMatrix
from .laurent import (
    Grading,
    LaurentPoly,
    RationalFunction,
    Ring,
    as_fraction,
    in_ring,
    is_homogeneous,
)


class MonomialAutomorphism:
    __slots__ = ("ring", "T", "scalars")

    def __init__(self, ring: Ring, T, scalars: Optional[Sequence] = None):
        T = T if isinstance(T, IntMatrix) else IntMatrix(T)
        n = ring.nvars
        if T.shape != (n, n):
            raise MalformedInput(f"exponent matrix must be {n}x{n}, got {T.rows}x{T.cols}")
        if not T.is_unimodular():
            raise MalformedInput(f"exponent matrix {T.tolist()} is not unimodular (det {T.det()})")
        if scalars is None:
            scalars = [1] * n
        if len(scalars) != n:
            raise MalformedInput("need one scalar per variable")
        scalars = tuple(ring.field(c) for c in scalars)
        if any(not c for c in scalars):
            raise MalformedInput("automorphism scalars must be nonzero")
        self.ring = ring
        self.T = T
        self.scalars = scalars

    @classmethod
    def identity(cls, ring: Ring) -> "MonomialAutomorphism":
        return cls(ring, IntMatrix.identity(ring.nvars))

    def image_of_monomial(self, e: Sequence[int]):
        """``(scalar, exponent)`` with ``phi(x^e) = scalar * x^exponent``."""
        c = self.ring.field.one
        for cj, ej in zip(self.scalars, e):
            if ej:
                c = c * cj ** ej
        return c, self.T @ tuple(e)

    def __call__(self, f):
        return apply(self, f)

    def compose(self, other: "MonomialAutomorphism") -> "MonomialAutomorphism":
        """``self o other`` (apply ``other`` first)."""
        if other.ring != self.ring:
            raise MalformedInput("ring mismatch")
        scalars = []
        for j in range(self.ring.nvars):
            c, _ = self.image_of_monomial(other.T.column(j))
            scalars.append(other.scalars[j] * c)
        return MonomialAutomorphism(self.ring, self.T @ other.T, scalars)

    def __mul__(self, other):
        return self.compose(other)

    def __pow__(self, k: int) -> "MonomialAutomorphism":
        if k < 0:
            raise MalformedInput("negative powers are not supported")
        result = MonomialAutomorphism.identity(self.ring)
        for _ in range(k):
            result = self.compose(result)
        return result

    def is_identity(self) -> bool:
        return self.T.is_identity() and all(c == 1 for c in self.scalars)

    def has_trivial_scalars(self) -> bool:
        return all(c == 1 for c in self.scalars)

    def __eq__(self, other):
        return (
            isinstance(other, MonomialAutomorphism)
            and self.ring == other.ring
            and self.T == other.T
            and self.scalars == other.scalars
        )

    def __hash__(self):
        return hash((self.ring, self.T, self.scalars))

    def __repr__(self):
        return f"MonomialAutomorphism(T={self.T.tolist()}, scalars={[str(c) for c in self.scalars]})"


def apply(phi: MonomialAutomorphism, f):
    """Image of a Laurent polynomial or rational function under ``phi``."""
    if isinstance(f, RationalFunction):
        return as_fraction(f) if f.num.is_zero() else apply(phi, f.num) / apply(phi, f.den)
    if f.ring != phi.ring:
        raise MalformedInput(f"ring mismatch: {f.ring} vs {phi.ring}")
    out = {}
    for e, c in f.terms.items():
        s, img = phi.image_of_monomial(e)
        out[img] = out.get(img, phi.ring.field.zero) + c * s
    return LaurentPoly(phi.ring, out)


@dataclass(frozen=True)
class CyclicAction:
    """``Z/s`` acting through ``generator``; build with :func:`check_cyclic`."""

    generator: MonomialAutomorphism
    order: int

    @property
    def ring(self) -> Ring:
        return self.generator.ring

    def elements(self) -> List[MonomialAutomorphism]:
        out = [MonomialAutomorphism.identity(self.ring)]
        for _ in range(self.order - 1):
            out.append(self.generator.compose(out[-1]))
        return out


def check_cyclic(phi: MonomialAutomorphism, s: int) -> CyclicAction:
    """Validate that ``phi`` has order exactly ``s``."""
    if s < 1:
        raise MalformedInput("group order must be positive")
    power = MonomialAutomorphism.identity(phi.ring)
    for k in range(1, s + 1):
        power = phi.compose(power)
        if power.is_identity() and k < s:
            raise OrderMismatch(
                f"check_cyclic: generator already has order {k}, not {s} (identity at power {k})", k
            )
    if not power.is_identity():
        # report the first power at which the declared order fails
        raise OrderMismatch(f"check_cyclic: generator^{s} is not the identity (failed at power {s})", s)
    return CyclicAction(phi, s)


Action = Union[CyclicAction, Grading]


def is_invariant(f, a: Action) -> bool:
    """Invariance under a cyclic action (cross-multiplied for fractions) or a torus.

    For a torus given by a grading, invariants are the homogeneous elements of
    degree zero.
    """
    if isinstance(a, Grading):
        r = as_fraction(f)
        if r.num.is_zero():
            return True
        if not (is_homogeneous(r.num, a) and is_homogeneous(r.den, a)):
            return False
        dn = a.degree(next(iter(r.num.terms)))
        dd = a.degree(next(iter(r.den.terms)))
        return dn == dd
    g = a.generator
    if isinstance(f, RationalFunction):
        return apply(g, f.num) * f.den == f.num * apply(g, f.den)
    return apply(g, f) == f


def invariant_ring_contains(f, a: Action) -> bool:
    """``f`` lies in the ring of invariants: ring membership plus invariance."""
    return in_ring(f) and is_invariant(f, a)


# ---------------------------------------------------------------------------
# truncated invariants


def exponent_box(n: int, lo: int, hi: int) -> List[Tuple[int, ...]]:
    """All exponent vectors with every entry in ``[lo, hi]``."""
    out = [()]
    for _ in range(n):
        out = [e + (x,) for e in out for x in range(lo, hi + 1)]
    return out


def degree_box(n: int, d: int) -> List[Tuple[int, ...]]:
    """Nonnegative exponent vectors of total degree at most ``d``."""
    out = [()]
    for i in range(n):
        out = [e + (x,) for e in out for x in range(0, d + 1 - sum(e))]
    return sorted(out, key=lambda e: (sum(e), e))


def orbit(e: Sequence[int], a: CyclicAction) -> List[Tuple[int, ...]]:
    T = a.generator.T
    out = [tuple(e)]
    cur = T @ tuple(e)
    while cur != out[0]:
        out.append(cur)
        cur = T @ cur
    return out


def stable_part(box: Iterable[Sequence[int]], a: CyclicAction):
    """Split ``box`` into the union of orbits it contains and the orbits it cuts.

    Returns ``(stable, cut_orbits, enlargement)`` where ``enlargement`` is the
    smallest stable set containing the box.
    """
    box = [tuple(e) for e in box]
    members = set(box)
    seen = set()
    stable, cut = [], []
    for e in box:
        if e in seen:
            continue
        orb = orbit(e, a)
        seen.update(orb)
        if all(x in members for x in orb):
            stable.extend(orb)
        else:
            cut.append(orb)
    enlargement = sorted(set(box).union(*[set(o) for o in cut]))
    return stable, cut, enlargement


@dataclass
class TruncatedInvariants:
    basis: List[LaurentPoly]
    monomials: List[Tuple[int, ...]]
    dropped_orbits: List[List[Tuple[int, ...]]]

    def __iter__(self):
        return iter(self.basis)

    def __len__(self):
        return len(self.basis)


def invariants_truncated(a: CyclicAction, box: Iterable[Sequence[int]], strict: bool = False) -> TruncatedInvariants:
    """Basis of the invariants supported on the stable part of ``box``.

    The generator permutes monomials up to scalars, so the fixed space of
    ``sigma - 1`` splits over orbits.  Each orbit carries at most one
    invariant, present exactly when the scalars picked up around the orbit
    multiply to 1.  No averaging is involved, so this is valid in every
    characteristic.  With ``strict=True`` a box that is not closed under the
    action raises :class:`BoxNotStable` naming the first orbit that leaves it.
    """
    stable, cut, enlargement = stable_part(box, a)
    if cut and strict:
        raise BoxNotStable(
            f"box is not stable: orbit {cut[0]} leaves it; smallest stable enlargement has {len(enlargement)} monomials",
            cut[0],
            enlargement,
        )
    ring = a.ring
    one = ring.field.one
    seen = set()
    basis = []
    for e in sorted(stable, key=lambda e: (sum(e), e)):
        if e in seen:
            continue
        orb = orbit(e, a)
        seen.update(orb)
        coeff = one
        terms = {}
        for x in orb:
            terms[x] = coeff
            c, _ = a.generator.image_of_monomial(x)
            coeff = coeff * c
        if coeff == one:
            basis.append(LaurentPoly(ring, terms))
    mons = sorted(set(stable), key=lambda e: (sum(e), e))
    return TruncatedInvariants(basis, mons, cut)


def orbit_sum(f: LaurentPoly, a: CyclicAction) -> LaurentPoly:
    out = f.ring.zero
    for g in a.elements():
        out = out + apply(g, f)
    return out


def reynolds(f: LaurentPoly, a: CyclicAction) -> LaurentPoly:
    """Average over the group; only defined when the characteristic does not divide the order."""
    p = f.ring.field.characteristic
    if p and a.order % p == 0:
        raise UnsupportedAction(f"Reynolds operator needs {a.order} invertible in characteristic {p}")
    return orbit_sum(f, a) / a.order


def semiinvariant_weight(f: LaurentPoly, g: Grading) -> Optional[Tuple[int, ...]]:
    """The weight of ``f`` when it is homogeneous (a semiinvariant of the split torus), else None."""
    g.check(f.ring)
    if f.is_zero():
        return None
    degs = {g.degree(e) for e in f.terms}
    if len(degs) != 1:
        return None
    return degs.pop()


# ---------------------------------------------------------------------------
# unit group


@dataclass(frozen=True)
class LatticeGModule:
    """``Z^rank`` with the generator of ``Z/order`` acting by ``matrix``."""

    matrix: IntMatrix
    order: int

    def __post_init__(self):
        M = self.matrix if isinstance(self.matrix, IntMatrix) else IntMatrix(self.matrix)
        object.__setattr__(self, "matrix", M)
        if M.rows != M.cols:
            raise MalformedInput("action matrix must be square")
        if self.order < 1:
            raise MalformedInput("order must be positive")
        if not (M ** self.order).is_identity():
            raise MalformedInput(f"action matrix to the power {self.order} is not the identity")

    @property
    def rank(self) -> int:
        return self.matrix.rows

    def norm_map(self) -> IntMatrix:
        """``1 + T + ... + T^(s-1)``."""
        n = self.rank
        acc = IntMatrix.zeros(n, n)
        P = IntMatrix.identity(n)
        for _ in range(self.order):
            acc = acc + P
            P = P @ self.matrix
        return acc

    def augmentation_map(self) -> IntMatrix:
        """``1 - T``."""
        return IntMatrix.identity(self.rank) - self.matrix

    @classmethod
    def regular(cls, s: int, copies: int = 1) -> "LatticeGModule":
        """Free module ``Z[Z/s]^copies`` with the generator acting by cyclic shift."""
        n = s * copies
        grid = [[0] * n for _ in range(n)]
        for c in range(copies):
            for i in range(s):
                grid[c * s + (i + 1) % s][c * s + i] = 1
        return cls(IntMatrix(grid, cols=n), s)

    @classmethod
    def trivial(cls, rank: int, s: int) -> "LatticeGModule":
        return cls(IntMatrix.identity(rank), s)


@dataclass(frozen=True)
class UnitGroupModule:
    """``S^x = k^x (+) Z^n`` for a Laurent ring, the group acting trivially on ``k^x``."""

    field_part: FieldDescriptor
    lattice_part: LatticeGModule
    field_action_trivial: bool = True


def unit_group_module(a: CyclicAction) -> UnitGroupModule:
    """Units of ``k[x^+-1]`` modulo scalars, as a lattice with the exponent action."""
    g = a.generator
    if not g.ring.laurent:
        raise UnsupportedAction("unit group decomposition needs a Laurent ring")
    if not g.has_trivial_scalars():
        raise UnsupportedAction(
            "generator has nontrivial scalars; the unit group does not split with trivial action on k^x"
        )
    return UnitGroupModule(g.ring.field, LatticeGModule(g.T, a.order))


# ---------------------------------------------------------------------------


def principal_invariant_contract(f, g, a: Action) -> bool:
    """Decide ``g in f * S^G`` for invariant ``f, g`` via ``g/f in S`` and ``g/f`` invariant."""
    f = as_fraction(f)
    g = as_fraction(g)
    if f.is_zero():
        raise MalformedInput("principal_invariant_contract: f must be nonzero")
    if not is_invariant(f, a):
        raise MalformedInput(f"principal_invariant_contract: {f} is not invariant")
    if not is_invariant(g, a):
        raise MalformedInput(f"principal_invariant_contract: {g} is not invariant")
    q = g / f
    return in_ring(q) and is_invariant(q, a)


def monomial_map(f: LaurentPoly, M: IntMatrix, target: Ring) -> LaurentPoly:
    """Ring map sending ``x^e`` to ``y^(M e)``; coefficients are carried over."""
    if M.cols != f.ring.nvars or M.rows != target.nvars:
        raise MalformedInput("monomial map has the wrong shape")
    out = {}
    for e, c in f.terms.items():
        img = M @ e
        out[img] = out.get(img, target.field.zero) + c
    return LaurentPoly(target, out)
