import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zerocycles.chowcore import (
    DivisorGenerator,
    LaurentPoly,
    ModelValidationError,
    RegularModelData,
    UnsupportedInputError,
    chatelet_coefficients,
    chow_zero_cycles,
    paper_fixture,
    validate,
)
from zerocycles.galmod import ComponentOrbit, SpecialFiber, xi_weights


@pytest.fixture
def model():
    return paper_fixture()


def with_generators(model, gens):
    return RegularModelData(model.fiber, tuple(gens))


def test_fixture_shape(model):
    assert len(model.fiber) == 7
    assert len(model.generators) == 10
    assert xi_weights(model.fiber) == (2, 2, 1, 1, 2, 2, 4)
    assert [g.name for g in model.generators] == [
        "l_A", "d_RA", "d_SA", "d_MA", "f_D", "l_B", "d_RB", "d_SB", "d_MB", "f_C"]


def test_fixture_chow_group(model):
    res = chow_zero_cycles(model)
    assert res.free_rank == 1
    assert res.invariant_factors == (2,)
    assert res.order == 2
    assert res.describe() == "Z/2Z"
    assert res.columns_degree_zero == (True,) * 10


def test_validate_fixture(model):
    rep = validate(model)
    assert rep.passed
    assert [c.xi_value for c in rep.checks] == [0] * 10


def test_perturbed_column_fails(model):
    gens = list(model.generators)
    col = list(gens[0].column)
    col[2] += 1  # row C
    gens[0] = DivisorGenerator(gens[0].name, col)
    bad = with_generators(model, gens)
    rep = validate(bad)
    assert not rep.passed
    assert [(c.name, c.xi_value) for c in rep.failing] == [("l_A", 1)]
    with pytest.raises(ModelValidationError, match="l_A"):
        chow_zero_cycles(bad)


def test_empty_generators_vacuous(model):
    empty = with_generators(model, [])
    assert validate(empty).passed
    res = chow_zero_cycles(empty)
    assert (res.free_rank, res.invariant_factors) == (7, ())


def test_unimodular_column():
    fiber = SpecialFiber((ComponentOrbit("X"), ComponentOrbit("Y")))
    res = chow_zero_cycles(RegularModelData(fiber, (DivisorGenerator("g", (1, -1)),)))
    assert (res.free_rank, res.invariant_factors) == (1, ())


def test_two_generator_subset(model):
    sub = [g for g in model.generators if g.name in ("d_RA", "d_RB")]
    res = chow_zero_cycles(with_generators(model, sub))
    assert (res.free_rank, res.invariant_factors) == (5, ())


def test_duplicate_names_flagged(model):
    gens = list(model.generators) + [model.generators[0]]
    rep = validate(with_generators(model, gens))
    assert not rep.passed
    assert any("l_A" in s for s in rep.issues)


def test_dimension_mismatch(model):
    bad = with_generators(model, [DivisorGenerator("g", (1, -1))])
    with pytest.raises(ValueError):
        validate(bad)


def test_model_json_round_trip(model):
    text = json.dumps(model.to_json_obj())
    assert RegularModelData.from_json(text) == model
    assert chow_zero_cycles(RegularModelData.from_json(text)).to_json_obj() == {
        "free_rank": 1, "invariant_factors": [2], "columns_degree_zero": [True] * 10}


@pytest.mark.parametrize("text", ["{", "[]", '{"fiber": {}}', '{"fiber": {"orbits": [{"name": "A"}]}, "generators": [{"name": "g"}]}'])
def test_malformed_model_json(text):
    with pytest.raises(ValueError):
        RegularModelData.from_json(text)


# -- invariance properties ------------------------------------------------------

def chow(model):
    r = chow_zero_cycles(model)
    return r.free_rank, r.invariant_factors


@settings(max_examples=40, deadline=None)
@given(st.permutations(range(10)), st.lists(st.booleans(), min_size=10, max_size=10))
def test_permuting_and_negating_generators(perm, signs):
    m = paper_fixture()
    gens = []
    for i, neg in zip(perm, signs):
        g = m.generators[i]
        gens.append(DivisorGenerator(g.name, tuple(-x for x in g.column) if neg else g.column))
    assert chow(with_generators(m, gens)) == (1, (2,))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 9), st.integers(0, 9), st.integers(-5, 5))
def test_elementary_column_operation(i, j, k):
    m = paper_fixture()
    if i == j:
        return
    gens = list(m.generators)
    new = tuple(a + k * b for a, b in zip(gens[i].column, gens[j].column))
    gens[i] = DivisorGenerator(gens[i].name, new)
    assert chow(with_generators(m, gens)) == (1, (2,))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 9))
def test_duplicate_generator_is_harmless(i):
    m = paper_fixture()
    dup = DivisorGenerator(m.generators[i].name + "'", m.generators[i].column)
    assert chow(with_generators(m, list(m.generators) + [dup])) == (1, (2,))


@settings(max_examples=30, deadline=None)
@given(st.permutations(range(7)))
def test_reordering_orbits(perm):
    m = paper_fixture()
    fiber = SpecialFiber(tuple(m.fiber.orbits[i] for i in perm))
    gens = [DivisorGenerator(g.name, tuple(g.column[i] for i in perm)) for g in m.generators]
    assert chow(RegularModelData(fiber, tuple(gens))) == (1, (2,))


def test_free_rank_at_least_one_on_random_valid_models():
    rng = random.Random(2)
    for _ in range(100):
        n = rng.randint(1, 6)
        fiber = SpecialFiber(tuple(ComponentOrbit(f"Y{i}", rng.randint(1, 3), rng.randint(1, 3)) for i in range(n)))
        w = xi_weights(fiber)
        gens = []
        for j in range(rng.randint(0, 8)):
            # integer combinations of w_b e_a - w_a e_b lie in the kernel of xi
            col = [0] * n
            for _ in range(3):
                a, b = rng.randrange(n), rng.randrange(n)
                k = rng.randint(-3, 3)
                col[a] += k * w[b]
                col[b] -= k * w[a]
            gens.append(DivisorGenerator(f"g{j}", tuple(col)))
        res = chow_zero_cycles(RegularModelData(fiber, tuple(gens)))
        assert res.free_rank >= 1


# -- Laurent polynomials and the Chatelet form ---------------------------------

pi = LaurentPoly.pi()


def test_chatelet_units():
    e1, e2 = chatelet_coefficients(LaurentPoly.constant(1), LaurentPoly.constant(1))
    assert e1 == 1 - pi ** 2 + pi ** 3
    assert e2 == pi


def test_chatelet_unit_gamma():
    e1, e2 = chatelet_coefficients(LaurentPoly.constant(5), LaurentPoly.constant(1))
    assert e2 == 5 * pi
    assert e2.valuation == 1


def test_chatelet_symbolic_echo():
    gamma = LaurentPoly({0: 3, 1: 2})
    beta = LaurentPoly.monomial(Fraction(1, 2), 1)
    e1, e2 = chatelet_coefficients(gamma, beta)
    assert e1 == gamma - pi ** 2 + pi ** 3 * LaurentPoly.monomial(2, -1)
    assert e2 == gamma * 2  # gamma * pi / (pi / 2)
    assert e1 * beta == gamma * beta - pi ** 2 * beta + pi ** 3


def test_chatelet_mod_p():
    p = 7
    one = LaurentPoly.constant(1, p)
    e1, e2 = chatelet_coefficients(LaurentPoly.constant(3, p), LaurentPoly.constant(2, p))
    assert e2 == LaurentPoly({1: 5}, p)  # 3/2 = 5 mod 7
    assert e1 == LaurentPoly({0: 3, 2: -1, 3: 4}, p)
    assert one * 8 == one


def test_chatelet_rejects_non_monomial_beta():
    with pytest.raises(UnsupportedInputError):
        chatelet_coefficients(LaurentPoly.constant(1), 1 + pi)
    with pytest.raises(UnsupportedInputError):
        chatelet_coefficients(LaurentPoly.constant(1), LaurentPoly())


def test_laurent_arithmetic():
    a = LaurentPoly({-1: 2, 0: 1})
    assert (a * pi) == LaurentPoly({0: 2, 1: 1})
    assert (a * pi).divide_exact(pi) == a
    assert ((1 + pi) ** 2).divide_exact(1 + pi) == 1 + pi
    assert a.valuation == -1 and a.lowest_coefficient() == 2
    assert pi.is_monomial() and not a.is_monomial()
    assert pi ** -2 == LaurentPoly.monomial(1, -2)
