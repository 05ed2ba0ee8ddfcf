import pytest
from hypothesis import given
from hypothesis import strategies as st

from invfact import (
    FieldDescriptor,
    Grading,
    LaurentPoly,
    MonomialAutomorphism,
    Ring,
    check_cyclic,
    degree_box,
    exponent_box,
    invariants_truncated,
    is_invariant,
    principal_invariant_contract,
    semiinvariant_weight,
    unit_group_module,
)
from invfact.actions import LatticeGModule, apply, orbit_sum, reynolds, stable_part
from invfact.errors import BoxNotStable, MalformedInput, OrderMismatch, UnsupportedAction
from invfact.fields import nullspace, rank
from invfact.laurent import in_ring

QQ = FieldDescriptor.parse("Q")
F7 = FieldDescriptor.parse("Fp:7")


def _actions():
    out = {}
    R = Ring(FieldDescriptor.parse("Fp:3"), ("A", "B"))
    out["z3"] = check_cyclic(MonomialAutomorphism(R, [[0, -1], [1, -1]]), 3)
    R = Ring(QQ, ("A", "B"))
    out["swap"] = check_cyclic(MonomialAutomorphism(R, [[0, 1], [1, 0]]), 2)
    out["inverse"] = check_cyclic(MonomialAutomorphism(R, [[-1, 0], [0, -1]]), 2)
    out["sign"] = check_cyclic(MonomialAutomorphism(R, [[1, 0], [0, 1]], [-1, 1]), 2)
    R = Ring(QQ, ("x", "y", "z"))
    out["cycle"] = check_cyclic(MonomialAutomorphism(R, [[0, 0, 1], [1, 0, 0], [0, 1, 0]]), 3)
    R = Ring(F7, ("x", "y"))
    out["diagonal"] = check_cyclic(MonomialAutomorphism(R, [[1, 0], [0, 1]], [2, 4]), 3)
    return out


ACTIONS = _actions()


def dense_invariant_dimension(a, monomials):
    """Fixed space of sigma - 1 on the span of ``monomials`` by plain linear algebra."""
    index = {e: i for i, e in enumerate(monomials)}
    F = a.ring.field
    n = len(monomials)
    M = [[F.zero] * n for _ in range(n)]
    for j, e in enumerate(monomials):
        c, img = a.generator.image_of_monomial(e)
        M[index[img]][j] = M[index[img]][j] + c
        M[j][j] = M[j][j] - F.one
    return len(nullspace(M, n, F)) if n else 0


def coefficient_rows(polys, monomials):
    F = polys[0].ring.field
    return [[p.coefficient(e) if e in p.terms else F.zero for e in monomials] for p in polys]


# -- the Z/3 example ---------------------------------------------------------


def test_sigma_on_generators(z3):
    assert z3.sigma(z3.A) == z3.B
    assert z3.sigma(z3.B) == z3.A**-1 * z3.B**-1
    assert (z3.sigma**3).is_identity()


def test_generators_invariant_and_in_ring(z3):
    for name, f in z3.generators.items():
        assert is_invariant(f, z3.action), name
        assert in_ring(f), name
    assert not is_invariant(z3.A, z3.action)


def test_delta_over_e3_is_invariant(z3):
    assert is_invariant(z3.delta / z3.e3, z3.action)


def test_principal_contract_on_example(z3):
    e1, e2, e3 = z3.e1, z3.e2, z3.e3
    f = e1**3 / e3
    u = e1 * e2 / e3
    assert not principal_invariant_contract(f, u, z3.action)
    assert principal_invariant_contract(f, f * u, z3.action)
    with pytest.raises(MalformedInput):
        principal_invariant_contract(z3.A, u, z3.action)
    with pytest.raises(MalformedInput):
        principal_invariant_contract(z3.ring.zero, u, z3.action)


# -- check_cyclic -------------------------------------------------------------


def test_check_cyclic_rejects_wrong_orders(z3):
    with pytest.raises(OrderMismatch, match="check_cyclic") as info:
        check_cyclic(z3.sigma, 2)
    assert info.value.power == 2
    with pytest.raises(OrderMismatch, match="already has order 3"):
        check_cyclic(z3.sigma, 6)
    with pytest.raises(MalformedInput):
        check_cyclic(z3.sigma, 0)


def test_scalars_change_the_order():
    R = Ring(QQ, ("x",))
    phi = MonomialAutomorphism(R, [[1]], [-1])
    assert check_cyclic(phi, 2).order == 2
    with pytest.raises(OrderMismatch):
        check_cyclic(phi, 1)


def test_automorphism_validation():
    R = Ring(QQ, ("x", "y"))
    with pytest.raises(MalformedInput, match="unimodular"):
        MonomialAutomorphism(R, [[2, 0], [0, 1]])
    with pytest.raises(MalformedInput):
        MonomialAutomorphism(R, [[1]])
    with pytest.raises(MalformedInput):
        MonomialAutomorphism(R, [[1, 0], [0, 1]], [0, 1])


# -- truncated invariants ---------------------------------------------------


def test_permutation_invariants_up_to_degree_two():
    R = Ring(QQ, ("x", "y", "z"), laurent=False)
    a = check_cyclic(MonomialAutomorphism(R, [[0, 0, 1], [1, 0, 0], [0, 1, 0]]), 3)
    inv = invariants_truncated(a, degree_box(3, 2), strict=True)
    x, y, z = R.gens()
    assert len(inv) == 4
    assert set(map(str, inv)) == {str(R.one), str(x + y + z), str(x**2 + y**2 + z**2), str(x * y + y * z + x * z)}


def test_scalar_orbits_can_carry_no_invariant():
    a = ACTIONS["diagonal"]
    inv = invariants_truncated(a, exponent_box(2, 0, 3))
    for f in inv:
        ((e, _),) = f.terms.items()
        assert (e[0] + 2 * e[1]) % 3 == 0
    assert len(inv) == sum(1 for e in exponent_box(2, 0, 3) if (e[0] + 2 * e[1]) % 3 == 0)


def test_strict_box_names_leaving_orbit(z3):
    with pytest.raises(BoxNotStable) as info:
        invariants_truncated(z3.action, exponent_box(2, 0, 1), strict=True)
    assert info.value.orbit
    enlargement = set(info.value.enlargement)
    stable, cut, _ = stable_part(enlargement, z3.action)
    assert not cut
    relaxed = invariants_truncated(z3.action, exponent_box(2, 0, 1))
    assert relaxed.dropped_orbits


@pytest.mark.parametrize("name", sorted(ACTIONS))
@pytest.mark.parametrize("lo, hi", [(-1, 1), (-2, 2), (0, 2)])
def test_invariants_match_dense_nullspace(name, lo, hi):
    a = ACTIONS[name]
    box = exponent_box(a.ring.nvars, lo, hi)
    inv = invariants_truncated(a, box)
    assert len(inv) == dense_invariant_dimension(a, inv.monomials)
    for f in inv:
        assert is_invariant(f, a)
    if len(inv):
        assert rank(coefficient_rows(inv.basis, inv.monomials), len(inv.monomials), a.ring.field) == len(inv)


# -- properties ---------------------------------------------------------------


def polys(ring, max_terms=4):
    exps = st.tuples(*[st.integers(-2, 2)] * ring.nvars)
    return st.dictionaries(exps, st.integers(-4, 4), max_size=max_terms).map(lambda d: LaurentPoly(ring, d))


ACTION_NAMES = st.sampled_from(sorted(ACTIONS))


@given(st.data())
def test_apply_is_a_ring_homomorphism(data):
    a = ACTIONS[data.draw(ACTION_NAMES)]
    f = data.draw(polys(a.ring))
    g = data.draw(polys(a.ring))
    phi = a.generator
    assert apply(phi, f * g) == apply(phi, f) * apply(phi, g)
    assert apply(phi, f + g) == apply(phi, f) + apply(phi, g)
    assert apply(phi ** a.order, f) == f


@given(st.data())
def test_orbit_sums_are_invariant(data):
    a = ACTIONS[data.draw(ACTION_NAMES)]
    f = data.draw(polys(a.ring))
    assert is_invariant(orbit_sum(f, a), a)


@given(st.data())
def test_invariants_closed_under_products(data):
    a = ACTIONS[data.draw(ACTION_NAMES)]
    f = orbit_sum(data.draw(polys(a.ring)), a)
    g = orbit_sum(data.draw(polys(a.ring)), a)
    assert is_invariant(f * g, a)
    if not g.is_zero():
        assert is_invariant(f / g, a)


@given(polys(Ring(QQ, ("A", "B"))))
def test_reynolds_is_a_projection(f):
    a = ACTIONS["swap"]
    r = reynolds(f, a)
    assert reynolds(r, a) == r


def test_reynolds_refuses_modular_case(z3):
    with pytest.raises(UnsupportedAction):
        reynolds(z3.A, z3.action)


@given(polys(Ring(QQ, ("x", "y", "s", "t")), 1), polys(Ring(QQ, ("x", "y", "s", "t")), 1))
def test_semiinvariant_weight_is_additive(f, g):
    grading = Grading([[1, 1, -1, -1]])
    wf, wg = semiinvariant_weight(f, grading), semiinvariant_weight(g, grading)
    if wf is None or wg is None:
        return
    assert semiinvariant_weight(f * g, grading) == tuple(x + y for x, y in zip(wf, wg))


def test_semiinvariant_weight_examples():
    R = Ring(QQ, ("x", "y", "s", "t"), laurent=False)
    x, y, s, t = R.gens()
    g = Grading([[1, 1, -1, -1]])
    assert semiinvariant_weight(x * s, g) == (0,)
    assert semiinvariant_weight(x + y, g) == (1,)
    assert semiinvariant_weight(x + s, g) is None
    assert semiinvariant_weight(R.zero, g) is None
    assert is_invariant(x * s / (y * t), g)
    assert not is_invariant(x / y + 1 / s, g)


# -- unit group -------------------------------------------------------------


def test_unit_group_module(z3):
    U = unit_group_module(z3.action)
    assert U.lattice_part.matrix == z3.sigma.T and U.lattice_part.order == 3


def test_unit_group_module_refusals():
    R = Ring(QQ, ("x", "y"), laurent=False)
    with pytest.raises(UnsupportedAction, match="Laurent"):
        unit_group_module(check_cyclic(MonomialAutomorphism(R, [[0, 1], [1, 0]]), 2))
    with pytest.raises(UnsupportedAction, match="scalars"):
        unit_group_module(ACTIONS["sign"])


def test_lattice_module_checks_order():
    with pytest.raises(MalformedInput):
        LatticeGModule([[0, -1], [1, -1]], 2)
    M = LatticeGModule.regular(3, 2)
    assert M.rank == 6 and (M.matrix**3).is_identity()
