"""Exact class-group and factoriality computations for invariant rings."""

from .actions import (
    CyclicAction,
    LatticeGModule,
    MonomialAutomorphism,
    UnitGroupModule,
    apply,
    check_cyclic,
    degree_box,
    exponent_box,
    invariants_truncated,
    is_invariant,
    principal_invariant_contract,
    semiinvariant_weight,
    unit_group_module,
)
from .certify import (
    ComultiplicationTable,
    DimensionReport,
    NotPrimeWitness,
    determinantal_dimensions,
    verify_grouplike,
    verify_not_prime,
    verify_semiinvariant_failure,
)
from .cohomology import (
    CohomologyReport,
    class_group_of_quotient,
    fixed_locus_codim,
    h0_lattice,
    h1_lattice,
    h1_roots_of_unity,
)
from .divisors import (
    DivisorVector,
    PrimeLink,
    PrimeTable,
    ToricRing,
    contract_divisorial,
    divisor_of_monomial,
    divisorial_sum,
    ideal_of_divisor,
    is_principal,
    symbolic_power,
    toric_class_group,
)
from .eqfrac import (
    HeightOnePrime,
    QfQuery,
    colon_witness_search,
    qf_member,
    qf_member_finite,
    qf_member_krull,
    qf_member_torus,
)
from .errors import (
    BoxNotStable,
    CriterionInapplicable,
    InvfactError,
    MalformedInput,
    MalformedWitness,
    OrderMismatch,
    ParseError,
    UnsupportedAction,
)
from .fields import QQ, FieldDescriptor
from .intlinalg import (
    AbelianGroupPresentation,
    IntMatrix,
    SmithDecomposition,
    cokernel,
    kernel_basis,
    smith_normal_form,
)
from .laurent import (
    Grading,
    LaurentPoly,
    RationalFunction,
    Ring,
    homogeneous_components,
    is_unit,
    laurent_arith,
    laurent_membership,
    reduce,
)
from .problem import ProblemFile, Report, parse_problem, run

__version__ = "0.1.0"
