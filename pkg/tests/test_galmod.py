import pytest
from hypothesis import given
from hypothesis import strategies as st

from zerocycles import chowcore
from zerocycles.galmod import (
    ComponentOrbit,
    InvariantHom,
    SpecialFiber,
    degree_zero_check,
    evaluate_xi,
    xi_weights,
)
from zerocycles.intlat import IntMatrix


@pytest.fixture
def fiber():
    return chowcore.paper_fixture().fiber


def fibers():
    orbit = st.tuples(st.integers(1, 5), st.integers(1, 4))
    return st.lists(orbit, min_size=1, max_size=8).map(
        lambda rows: SpecialFiber(tuple(ComponentOrbit(f"Y{i}", m, s) for i, (m, s) in enumerate(rows)))
    )


def test_fixture_weights(fiber):
    assert fiber.names == ["A", "B", "C", "D", "R", "S", "M"]
    assert xi_weights(fiber) == (2, 2, 1, 1, 2, 2, 4)


def test_single_orbit_weights():
    assert xi_weights(SpecialFiber((ComponentOrbit("Y"),))) == (1,)
    assert xi_weights(SpecialFiber((ComponentOrbit("Y", 3, 2),))) == (6,)


def test_xi_on_basis_vector(fiber):
    assert evaluate_xi(fiber.basis_vector("A"), fiber) == 2


def test_worked_instance_degree_zero(fiber):
    """(-2).2 + 1.2 + 2.1 = 0"""
    h = -2 * fiber.basis_vector("A") + fiber.basis_vector("B") + 2 * fiber.basis_vector("D")
    assert h.coeffs == (-2, 1, 0, 2, 0, 0, 0)
    assert evaluate_xi(h, fiber) == 0


def test_xi_of_zero(fiber):
    assert evaluate_xi(InvariantHom((0,) * 7), fiber) == 0


def test_dimension_mismatch(fiber):
    with pytest.raises(ValueError):
        evaluate_xi((1, 2), fiber)
    with pytest.raises(ValueError):
        degree_zero_check(IntMatrix.zeros(3, 1), fiber)


def test_fixture_columns_degree_zero(fiber):
    checks = degree_zero_check(chowcore.paper_fixture().matrix(), fiber)
    assert len(checks) == 10
    assert all(c.passed and c.value == 0 for c in checks)


def test_single_basis_column_fails(fiber):
    (check,) = degree_zero_check(IntMatrix.from_columns([[1, 0, 0, 0, 0, 0, 0]]), fiber)
    assert not check.passed and check.value == 2


def test_empty_matrix_vacuous(fiber):
    assert degree_zero_check(IntMatrix.zeros(7, 0), fiber) == []


@pytest.mark.parametrize("m, s", [(0, 1), (1, 0), (-1, 2)])
def test_orbit_validation(m, s):
    with pytest.raises(ValueError):
        ComponentOrbit("Y", m, s)


def test_fiber_validation():
    with pytest.raises(ValueError):
        SpecialFiber(())
    with pytest.raises(ValueError):
        SpecialFiber((ComponentOrbit("Y"), ComponentOrbit("Y")))


def test_fiber_json_round_trip(fiber):
    obj = fiber.to_json_obj()
    assert obj["orbits"][6] == {"name": "M", "multiplicity": 2, "orbit_size": 2}
    assert SpecialFiber.from_json_obj(obj) == fiber
    with pytest.raises(ValueError):
        SpecialFiber.from_json_obj({"orbits": [{"multiplicity": 1}]})


@given(fibers())
def test_doubling_multiplicities_doubles_weights(f):
    doubled = SpecialFiber(tuple(ComponentOrbit(o.name, 2 * o.multiplicity, o.orbit_size) for o in f.orbits))
    assert xi_weights(doubled) == tuple(2 * w for w in xi_weights(f))


@given(fibers().flatmap(lambda f: st.tuples(
    st.just(f),
    st.lists(st.integers(-50, 50), min_size=len(f), max_size=len(f)),
    st.lists(st.integers(-50, 50), min_size=len(f), max_size=len(f)),
)))
def test_xi_additive(data):
    f, a, b = data
    h1, h2 = InvariantHom(tuple(a)), InvariantHom(tuple(b))
    assert evaluate_xi(h1 + h2, f) == evaluate_xi(h1, f) + evaluate_xi(h2, f)
    assert evaluate_xi(h1 - h2, f) == evaluate_xi(h1, f) - evaluate_xi(h2, f)


@given(fibers().flatmap(lambda f: st.tuples(
    st.just(f),
    st.lists(st.lists(st.integers(-4, 4), min_size=len(f), max_size=len(f)), max_size=6),
)))
def test_degree_check_matches_dot_products(data):
    f, cols = data
    M = IntMatrix.from_columns(cols, rows=len(f))
    w = xi_weights(f)
    for check, col in zip(degree_zero_check(M, f), cols):
        dot = sum(x * y for x, y in zip(col, w))
        assert check.value == dot
        assert check.passed == (dot == 0)
