import pytest

from germinv import RingContext
from germinv.engine import Submodule, TermVector, module_contains
from germinv.logarithmic import (
    VarietyGerm,
    cohen_macaulay_report,
    contains_coordinate_multiples,
    cotangent_ring,
    df_of_theta,
    is_tangent,
    lcv_minus_ideal,
    tangent_module,
    theta_equal,
)

R2 = RingContext(("x", "y"))
R3 = RingContext(("x", "y", "z"))
x, y = R2.gens()


def tv(*ps):
    return TermVector(ps)


def test_theta_of_normal_crossing():
    X = VarietyGerm(R2, [x * y])
    T = tangent_module(X)
    assert theta_equal(T, [tv(x, R2.zero()), tv(R2.zero(), y)])


def test_theta_of_cusp_is_euler_plus_hamiltonian():
    f = x**2 + y**3
    X = VarietyGerm(R2, [f])
    T = tangent_module(X)
    euler = tv(3 * x, 2 * y)
    hamilton = tv(f.diff(1), -f.diff(0))
    assert theta_equal(T, [euler, hamilton])
    for d in T.generators:
        assert is_tangent(X, d)
    assert contains_coordinate_multiples(X, T)


def test_theta_of_smooth_ambient():
    T = tangent_module(VarietyGerm(R2, []))
    assert len(T.generators) == 2
    assert df_of_theta(x**2 + y**2, T).generators


def test_non_tangent_field():
    assert not is_tangent(VarietyGerm(R2, [x * y]), tv(R2.one(), R2.zero()))


def test_theta_of_space_curve_contains_ideal_multiples():
    P = R3.parse
    X = VarietyGerm(R3, [P("x*y"), P("x^2+y^2+z^3")])
    T = tangent_module(X)
    assert all(is_tangent(X, d) for d in T.generators)
    assert contains_coordinate_multiples(X, T)


def test_cotangent_names_avoid_clashes():
    C, names = cotangent_ring(RingContext(("x", "p1")))
    assert names == ["xi1", "xi2"]
    assert C.variables == ("x", "p1", "xi1", "xi2")


def test_lcv_minus_of_plane_curve_is_cm():
    X = VarietyGerm(R2, [x * y])
    L = lcv_minus_ideal(X, tangent_module(X))
    assert L.cotangent_ring.n == 4
    rep = cohen_macaulay_report(L)
    assert rep.dim == 2 and rep.is_cm
    assert rep.as_dict()["betti"][0] == 1


def test_cm_report_detects_failure():
    W = RingContext(("a", "b", "c", "d"))
    a, b, c, d = W.gens()
    rep = cohen_macaulay_report(Submodule.ideal(W, [a * c, a * d, b * c, b * d]))
    assert (rep.dim, rep.depth, rep.is_cm) == (2, 1, False)


def test_ring_mismatch():
    with pytest.raises(Exception):
        df_of_theta(R3.parse("x"), tangent_module(VarietyGerm(R2, [])))
