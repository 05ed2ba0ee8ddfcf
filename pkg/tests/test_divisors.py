import pytest
from hypothesis import given
from hypothesis import strategies as st

from invfact import (
    AbelianGroupPresentation,
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
from invfact.errors import MalformedInput
from oracles import cokernel_orders

QUADRIC = ToricRing(
    normals=[(0, 1), (2, -1)],
    generators=[(1, 0), (1, 1), (1, 2)],
    generator_names=("t2", "st", "s2"),
)
SEGRE = ToricRing(
    normals=[(1, 1, 0), (0, 0, 1), (1, 0, 1), (0, 1, 0)],
    generators=[(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, 1, 1)],
    labels=("x", "y", "s", "t"),
    generator_names=("xs", "xt", "ys", "yt"),
)


# -- toric examples --------------------------------------------------------------


def test_quadric_class_group():
    assert toric_class_group(QUADRIC) == AbelianGroupPresentation.cyclic(2)
    P1 = QUADRIC.prime("P1")
    assert is_principal(P1, QUADRIC) is None
    m = is_principal(P1.scale(2), QUADRIC)
    assert m is not None and divisor_of_monomial(m, QUADRIC) == P1.scale(2)
    assert divisor_of_monomial((1, 2), QUADRIC).as_dict() == {"P1": 2, "P2": 0}
    assert divisor_of_monomial((1, 1), QUADRIC).as_dict() == {"P1": 1, "P2": 1}


def test_segre_class_group():
    assert toric_class_group(SEGRE) == AbelianGroupPresentation.free(1)
    x = SEGRE.prime("x")
    assert is_principal(x, SEGRE) is None
    # xs is the product of the primes x and s
    assert divisor_of_monomial((1, 0, 0), SEGRE).as_dict() == {"x": 1, "y": 0, "s": 1, "t": 0}
    # [x] = -[t] = [y] generates Cl = Z
    assert is_principal(x + SEGRE.prime("t"), SEGRE) == (0, 1, 0)
    assert is_principal(x - SEGRE.prime("y"), SEGRE) == (1, 0, -1)
    assert is_principal(x + SEGRE.prime("y"), SEGRE) is None


def test_polynomial_ring_is_factorial():
    R = ToricRing(normals=[(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert toric_class_group(R).is_trivial()
    assert R.labels == ("P1", "P2", "P3")


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(normals=[(2, 0), (0, 1)]),
        dict(normals=[(1, 0), (1, 0)]),
        dict(normals=[(1, 0), (0, 1)], generators=[(-1, 0)]),
        dict(normals=[(1, 0), (0, 1)], generators=[(1, 0)]),
        dict(normals=[(1, 0), (0, 1)], labels=("a",)),
        dict(normals=[]),
    ],
)
def test_toric_validation(kwargs):
    with pytest.raises(MalformedInput):
        ToricRing(**kwargs)


# -- divisor vectors ---------------------------------------------------------------


def test_divisor_vector_basics():
    labels = ("P", "Q")
    D = DivisorVector.from_mapping(labels, {"P": 2, "Q": -1})
    assert str(D) == "2<P> - <Q>"
    assert D["Q"] == -1 and D.support() == ("P", "Q")
    assert not D.is_effective() and (D + D.scale(-1)).is_zero()
    assert ideal_of_divisor(D).as_dict() == {"P": -2, "Q": 1}
    assert ideal_of_divisor(ideal_of_divisor(D)) == D
    assert divisorial_sum(D, D) == D.scale(2)
    with pytest.raises(MalformedInput):
        DivisorVector.from_mapping(labels, {"R": 1})
    with pytest.raises(MalformedInput):
        D + DivisorVector.zero(("P",))
    with pytest.raises(MalformedInput):
        D["R"]


def test_symbolic_power():
    assert symbolic_power("Q", 3, ("P", "Q")).as_dict() == {"P": 0, "Q": 3}
    with pytest.raises(MalformedInput):
        symbolic_power("Q", 0, ("P", "Q"))
    with pytest.raises(MalformedInput):
        symbolic_power("R", 1, ("P", "Q"))


# -- contraction -------------------------------------------------------------------

RAMIFIED = PrimeTable({"X": PrimeLink.maps("p", 2), "Y": PrimeLink.zero(), "Z": PrimeLink.maps("q", 1)}, ("p", "q"))


@pytest.mark.parametrize(
    "exps, expected",
    [
        ({"X": 3, "Y": 0, "Z": 0}, {"p": 2, "q": 0}),
        ({"X": -3, "Y": -1, "Z": 2}, {"p": -1, "q": 2}),
        ({"X": 4, "Y": -2, "Z": -1}, {"p": 2, "q": -1}),
        ({"X": 1, "Y": 0, "Z": 0}, {"p": 1, "q": 0}),
        ({"X": -1, "Y": 0, "Z": 0}, {"p": 0, "q": 0}),
    ],
)
def test_contract_examples(exps, expected):
    I = DivisorVector.from_mapping(RAMIFIED.source_labels, exps)
    assert contract_divisorial(I, RAMIFIED).as_dict() == expected


def test_contract_refuses_positive_exponent_at_zero_link():
    I = DivisorVector.from_mapping(RAMIFIED.source_labels, {"Y": 1})
    with pytest.raises(MalformedInput, match="divisorial"):
        contract_divisorial(I, RAMIFIED)


def test_height_two_primes_do_not_contribute():
    tbl = PrimeTable({"X": PrimeLink.maps("p"), "W": PrimeLink.height2()}, ("p",))
    I = DivisorVector.from_mapping(tbl.source_labels, {"X": 1, "W": 5})
    assert contract_divisorial(I, tbl).as_dict() == {"p": 1}


def test_prime_table_validation():
    with pytest.raises(MalformedInput, match="lie under no"):
        PrimeTable({"X": PrimeLink.maps("p")}, ("p", "q"))
    with pytest.raises(MalformedInput, match="unknown prime"):
        PrimeTable({"X": PrimeLink.maps("r")}, ("p",))
    with pytest.raises(MalformedInput):
        PrimeLink.maps("p", 0)
    with pytest.raises(MalformedInput):
        PrimeLink("sideways")
    assert RAMIFIED.over("p") == [("X", 2)]


def monomial_span_contraction(exps, tables):
    """Brute-force oracle.

    Model ``S = k[x_P]`` and ``A`` generated by ``u_t = prod over P above t of x_P^m(P)``.
    ``I = prod x_P^(a_P) S`` meets ``k(A)`` in the monomials ``u^n``; the exponent at
    ``t`` is the least ``n`` with ``u_t^n`` in ``I``, found by search.
    """
    out = {}
    for t, over in tables.items():
        for n in range(-20, 21):
            if all(m * n >= exps[p] for p, m in over):
                out[t] = n
                break
    return out


@st.composite
def prime_tables(draw):
    ntargets = draw(st.integers(1, 3))
    targets = tuple(f"t{i}" for i in range(ntargets))
    links = {}
    for i, t in enumerate(targets):
        for j in range(draw(st.integers(1, 3))):
            links[f"P{i}{j}"] = PrimeLink.maps(t, draw(st.integers(1, 4)))
    return PrimeTable(links, targets)


@given(prime_tables(), st.data())
def test_contraction_matches_monomial_span_oracle(tbl, data):
    exps = {p: data.draw(st.integers(-6, 6)) for p in tbl.source_labels}
    I = DivisorVector.from_mapping(tbl.source_labels, exps)
    expected = monomial_span_contraction(exps, {t: tbl.over(t) for t in tbl.targets})
    assert contract_divisorial(I, tbl).as_dict() == expected


@given(prime_tables(), st.data())
def test_contraction_invariant_under_relabelling(tbl, data):
    exps = {p: data.draw(st.integers(-6, 6)) for p in tbl.source_labels}
    order = data.draw(st.permutations(list(tbl.links)))
    shuffled = PrimeTable(tuple(order), tbl.targets)
    I = DivisorVector.from_mapping(tbl.source_labels, exps)
    J = DivisorVector.from_mapping(shuffled.source_labels, exps)
    assert contract_divisorial(I, tbl) == contract_divisorial(J, shuffled)


@given(prime_tables(), st.data())
def test_contraction_is_monotone(tbl, data):
    a = {p: data.draw(st.integers(-6, 6)) for p in tbl.source_labels}
    b = {p: a[p] + data.draw(st.integers(0, 3)) for p in tbl.source_labels}
    ca = contract_divisorial(DivisorVector.from_mapping(tbl.source_labels, a), tbl)
    cb = contract_divisorial(DivisorVector.from_mapping(tbl.source_labels, b), tbl)
    assert (cb - ca).is_effective()


@st.composite
def toric_rings(draw):
    # simplicial cones: normals are the rows of a random nonsingular matrix with primitive rows
    d = draw(st.integers(1, 3))
    rows = draw(st.lists(st.lists(st.integers(-3, 3), min_size=d, max_size=d), min_size=d, max_size=d + 1))
    try:
        return ToricRing(normals=rows)
    except MalformedInput:
        return ToricRing(normals=[tuple(int(i == j) for j in range(d)) for i in range(d)])


@given(toric_rings())
def test_toric_class_group_matches_cokernel_oracle(R):
    torsion, free = cokernel_orders([list(n) for n in R.normals])
    assert toric_class_group(R) == AbelianGroupPresentation.from_orders(torsion, free)


@given(toric_rings(), st.data())
def test_divisor_of_monomial_is_additive_and_principal(R, data):
    m1 = tuple(data.draw(st.integers(-4, 4)) for _ in range(R.rank))
    m2 = tuple(data.draw(st.integers(-4, 4)) for _ in range(R.rank))
    total = tuple(a + b for a, b in zip(m1, m2))
    assert divisor_of_monomial(total, R) == divisor_of_monomial(m1, R) + divisor_of_monomial(m2, R)
    w = is_principal(divisor_of_monomial(m1, R), R)
    assert w is not None and divisor_of_monomial(w, R) == divisor_of_monomial(m1, R)
