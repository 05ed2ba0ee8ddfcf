"""H^0 and H^1 of a finite cyclic group on lattices and on roots of unity.

For ``G = Z/s`` with generator ``T`` the periodic resolution gives

    H^0(G, M) = Ker(1 - T),    H^1(G, M) = Ker(N) / Im(1 - T),

with ``N = 1 + T + ... + T^(s-1)``.  For the trivial action on ``k^x`` this
makes ``H^1 = mu_s(k)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .actions import CyclicAction, LatticeGModule, unit_group_module
from .errors import CriterionInapplicable, MalformedInput
from .fields import FieldDescriptor, QQ
from .intlinalg import AbelianGroupPresentation, IntMatrix, cokernel, kernel_basis, solve_integer


@dataclass(frozen=True)
class CohomologyReport:
    h0: AbelianGroupPresentation
    h1: AbelianGroupPresentation
    norm_kernel_rank: int
    coboundary_rank: int
    notes: tuple = field(default=())

    def as_dict(self):
        return {
            "h0": str(self.h0),
            "h1": str(self.h1),
            "norm_kernel_rank": self.norm_kernel_rank,
            "coboundary_rank": self.coboundary_rank,
        }


def _coboundary_in_kernel_coords(L: LatticeGModule):
    """Express the columns of ``1 - T`` in a basis ``K`` of ``Ker N``.

    Returns ``(K, Y)`` with ``K @ Y == 1 - T``.  The image of ``1 - T`` lies in
    ``Ker N`` because ``N (1 - T) = 1 - T^s = 0``.
    """
    K = kernel_basis(L.norm_map())
    D = L.augmentation_map()
    k = K.cols
    cols = []
    for j in range(D.cols):
        y = solve_integer(K, D.column(j))
        if y is None:
            # impossible for a validated module; K is saturated
            raise MalformedInput("coboundary does not land in the norm kernel")
        cols.append(y)
    return K, IntMatrix.from_columns(cols, k)


def h1_lattice(L: LatticeGModule) -> AbelianGroupPresentation:
    """``Ker(N) / Im(1 - T)`` as a canonical abelian group."""
    K, Y = _coboundary_in_kernel_coords(L)
    if K.cols == 0:
        return AbelianGroupPresentation.trivial()
    return cokernel(Y)


def h0_lattice(L: LatticeGModule) -> AbelianGroupPresentation:
    """Fixed sublattice ``Ker(1 - T)``; always free."""
    return AbelianGroupPresentation.free(kernel_basis(L.augmentation_map()).cols)


def cohomology_report(L: LatticeGModule) -> CohomologyReport:
    K, Y = _coboundary_in_kernel_coords(L)
    h1 = cokernel(Y) if K.cols else AbelianGroupPresentation.trivial()
    return CohomologyReport(h0_lattice(L), h1, K.cols, L.augmentation_map().rank())


def _strip(s: int, p: int) -> int:
    while p and s % p == 0:
        s //= p
    return s


def roots_of_unity_order(fd: FieldDescriptor, s: int, algebraically_closed: bool = None) -> int:
    """Order of the ``s``-torsion subgroup of ``k^x``.

    The closedness flag is taken from the argument when given, else from the
    descriptor; it is never inferred.
    """
    if s < 1:
        raise MalformedInput("group order must be positive")
    closed = fd.closed if algebraically_closed is None else algebraically_closed
    p = fd.characteristic
    if closed:
        return _strip(s, p)
    if fd.kind == "Fp":
        return gcd(s, fd.p - 1)
    if fd.kind == "Q":
        return gcd(s, 2)
    # one quadratic layer over Q or F_p
    if fd.base.kind == "Fp":
        return gcd(s, fd.base.p ** 2 - 1)
    return gcd(s, _rational_quadratic_roots(fd.t))


def _rational_quadratic_roots(t) -> int:
    """Number of roots of unity in ``Q(sqrt t)``: 4 for ``Q(i)``, 6 for ``Q(sqrt -3)``, else 2."""
    for d, count in ((-1, 4), (-3, 6)):
        # Q(sqrt t) = Q(sqrt d) iff t/d is a rational square
        if QQ.is_square(QQ(t) / d):
            return count
    return 2


def h1_roots_of_unity(fd: FieldDescriptor, s: int, algebraically_closed: bool = None) -> AbelianGroupPresentation:
    """``H^1(Z/s, k^x)`` for the trivial action, i.e. ``mu_s(k)``."""
    n = roots_of_unity_order(fd, s, algebraically_closed)
    return AbelianGroupPresentation.from_orders([n]) if n > 1 else AbelianGroupPresentation.trivial()


def fixed_locus_codim(a: CyclicAction) -> int:
    """Minimum over nontrivial group elements of ``rank(T^i - I)``.

    This is the codimension in the torus of the fixed locus of the most
    degenerate element.  A value of at least 2 certifies that the quotient map
    is unramified in codimension one.  For the trivial group there are no
    nontrivial elements and the value is 0 by convention.
    """
    n = a.ring.nvars
    T = a.generator.T
    best = None
    P = T
    for _ in range(1, a.order):
        r = (P - IntMatrix.identity(n)).rank()
        best = r if best is None else min(best, r)
        P = P @ T
    return 0 if best is None else best


def class_group_of_quotient(
    a: CyclicAction, fd: FieldDescriptor = None, algebraically_closed: bool = None
) -> AbelianGroupPresentation:
    """``Cl(S^G) = H^1(G, S^x) = H^1(G, k^x) + H^1(G, Z^n)`` for a Laurent ring ``S``.

    Refuses with :class:`CriterionInapplicable` unless the fixed locus has
    codimension at least 2.  The trivial group is accepted directly since
    ``S^G = S`` is a Laurent ring, hence factorial.
    """
    fd = a.ring.field if fd is None else fd
    module = unit_group_module(a)
    if a.order == 1:
        return AbelianGroupPresentation.trivial()
    codim = fixed_locus_codim(a)
    if codim < 2:
        raise CriterionInapplicable(
            f"fixed locus has codimension {codim} < 2; the quotient is not unramified in codimension one"
        )
    return h1_roots_of_unity(fd, a.order, algebraically_closed) + h1_lattice(module.lattice_part)
