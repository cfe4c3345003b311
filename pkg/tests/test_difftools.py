import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from germinv import RingContext
from germinv.difftools import (
    GenericityError,
    MapGerm,
    OneFormCollection,
    PolyMatrix,
    beta_generators,
    certify_generic,
    delta_determinant,
    determinant,
    jacobian_matrix,
    minors,
    random_linear_collection,
    shape_sizes,
    suspension_build,
)
from germinv.logarithmic import VarietyGerm
from oracles import random_poly

R = RingContext(("x", "y", "z"))
x, y, z = R.gens()
P = R.parse


def _leibniz(rows):
    # permutation expansion, independent of the cofactor and Bareiss paths
    import itertools

    n = len(rows)
    total = R.zero()
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = R.one()
        for i in range(n):
            term = term * rows[i][perm[i]]
        total = total + (-term if inv % 2 else term)
    return total


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_determinant_matches_permutation_expansion(n):
    rng = random.Random(n)
    for _ in range(3):
        rows = [[random_poly(R, rng, 2, 2, 0) for _ in range(n)] for _ in range(n)]
        assert determinant(rows) == _leibniz(rows)


def test_determinant_with_zero_pivot():
    rows = [[R.zero(), x, R.one(), y], [x, R.zero(), y, R.one()], [R.one(), y, R.zero(), x], [y, R.one(), x, R.zero()]]
    assert determinant(rows) == _leibniz(rows)


def test_determinant_rejects_non_square():
    with pytest.raises(ValueError):
        determinant([[x, y]])


def test_minors_count_and_range():
    M = jacobian_matrix([x**2 + y, y * z])
    assert M.shape == (2, 3)
    assert len(minors(M, 2)) == 3
    assert len(minors(M, 1)) == 6
    with pytest.raises(ValueError):
        minors(M, 3)


def test_matrix_validation():
    with pytest.raises(ValueError):
        PolyMatrix(R, [[x, y], [x]])


def test_map_components_vanish():
    with pytest.raises(ValueError):
        MapGerm(R, [x + 1])


def test_delta_needs_square_jacobian():
    with pytest.raises(ValueError):
        delta_determinant(MapGerm(R, []), MapGerm(R, [x, y]))
    d = delta_determinant(MapGerm(R, [z]), MapGerm(R, [x, y]))
    assert d == R.one()


coeff_polys = st.lists(
    st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.integers(-3, 3)), min_size=1, max_size=4
).map(lambda ts: sum((c * x**a * y**b * z**e for a, b, e, c in ts if a + b + e > 0), R.zero()))


@given(coeff_polys, coeff_polys, coeff_polys)
@settings(max_examples=25, deadline=None)
def test_beta_rows_combine_to_zero(phi, f1, f2):
    phi_m, f = MapGerm(R, [phi] if phi else []), MapGerm(R, [f1, f2])
    if len(phi_m) + len(f) != 3:
        return
    betas = beta_generators(phi_m, f)
    delta = delta_determinant(phi_m, f)
    assert betas[-1] == delta
    rows = jacobian_matrix(list(phi_m) + list(f) + [delta], R).rows
    for j in range(3):
        assert sum((b * row[j] for b, row in zip(betas, rows)), R.zero()) == R.zero()


def test_collection_shapes():
    C = OneFormCollection.of_differentials(R, [[x + y, x - y + 3 * z], [x + y - z, x - y + 5 * z]], 2)
    assert C.ks == (1, 1) and C.s == 2
    with pytest.raises(ValueError, match="sum to d"):
        OneFormCollection.of_differentials(R, [[x], [y]], 2)
    with pytest.raises(ValueError, match="coefficients"):
        OneFormCollection(R, [[(x, y)]], 1)
    assert shape_sizes(3, (1, 2)) == [3, 2]
    with pytest.raises(ValueError):
        shape_sizes(3, (1, 1))


def test_random_collection_is_seeded():
    a, fa = random_linear_collection(R, 2, (1, 1), seed=11)
    b, fb = random_linear_collection(R, 2, (1, 1), seed=11)
    assert fa == fb and a == b
    assert all(f.degree() == 1 for sub in fa for f in sub)


def test_certify_generic():
    _, value, values = certify_generic(lambda C: 7, R, 2, (2,), seed=0)
    assert value == 7 and values == [7, 7, 7]
    counter = iter(range(10))
    with pytest.raises(GenericityError):
        certify_generic(lambda C: next(counter), R, 2, (2,), seed=0)
    with pytest.raises(GenericityError):
        certify_generic(lambda C: float("inf"), R, 2, (2,), seed=0)
    with pytest.raises(ValueError):
        certify_generic(lambda C: 1, R, 2, (2,), seed=0, trials=1)


def test_suspension_build():
    R2 = RingContext(("x", "y"))
    X = VarietyGerm(R2, [R2.parse("x*y")])
    W = RingContext(("w",))
    Xt, F = suspension_build(X, R2.parse("x+y"), W.parse("w^3"))
    assert Xt.ring.variables == ("x", "y", "w")
    assert F == Xt.ring.parse("x + y + w^3")
    assert suspension_build(X, R2.parse("x"), None) == (X, R2.parse("x"))
    with pytest.raises(ValueError, match="clash"):
        suspension_build(X, R2.parse("x"), RingContext(("y",)).parse("y^2"))
