import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from germinv import RingContext
from germinv import invariants as inv
from germinv.difftools import MapGerm, OneFormCollection
from germinv.engine import INFINITE, Budget
from germinv.logarithmic import VarietyGerm
from oracles import ideal_colength, milnor_by_oracle

R1 = RingContext(("x",))
R2 = RingContext(("x", "y"))
R3 = RingContext(("x", "y", "z"))
P2, P3 = R2.parse, R3.parse


@pytest.mark.parametrize("f, mu", [("x^2+y^2+z^2", 1), ("x^3+y^3", 4), ("x^2*y", INFINITE)])
def test_milnor_numbers(f, mu):
    R = R3 if "z" in f else R2
    assert inv.milnor_hypersurface(R.parse(f)) == mu


def test_le_greuel_colengths():
    assert inv.le_greuel_colength([P3("x^2+y^2+z^2")], P3("x")) == 2
    assert inv.le_greuel_colength([], P2("x^3+y^3")) == 4


def test_milnor_restricted_on_smooth_ambient_is_milnor():
    f = P2("x^3+x*y^2+y^5")
    assert inv.milnor_restricted(VarietyGerm(R2, []), f) == inv.milnor_hypersurface(f)


def test_milnor_icis_of_space_curve():
    # complete intersection of two quadric cones: mu = 5
    X = VarietyGerm(R3, [P3("x^2+y^2+z^2"), P3("x*y")])
    assert inv.milnor_icis(X) == 5


@pytest.mark.parametrize("f", ["x^2+y^3", "x^2+y^5", "x^3+y^4", "x^3+y^3"])
def test_quasihomogeneous_curves_have_mu_equal_tau(f):
    X = VarietyGerm(R2, [P2(f)])
    assert inv.tjurina_icis(X) == inv.milnor_icis(X) == milnor_by_oracle(P2(f))


def test_tjurina_values():
    assert inv.tjurina_icis(VarietyGerm(R2, [P2("x^2+y^3")])) == 2
    assert inv.tjurina_icis(VarietyGerm(R3, [P3("x^2+y^2+z^2")])) == 1
    # not quasihomogeneous: tau < mu
    f = P2("x^4+y^5+x^2*y^3")
    X = VarietyGerm(R2, [f])
    assert inv.tjurina_icis(X) < inv.milnor_icis(X) == 12


def test_bruce_roberts_numbers():
    assert inv.bruce_roberts(P2("x+y"), VarietyGerm(R2, [P2("x*y")]), True) == 1
    assert inv.bruce_roberts(P2("x^2+y^2"), VarietyGerm(R2, [P2("x")]), False) == 2
    assert inv.bruce_roberts(P2("x^3+y^3"), VarietyGerm(R2, []), False) == 4


def test_relative_bruce_roberts_two_routes_on_cusp():
    X = VarietyGerm(R2, [P2("x^2+y^3")])
    assert inv.br_minus_via_formula(X, P2("y")) == inv.bruce_roberts(P2("y"), X, True) == 1


def test_chern_index_of_x_dx():
    C = OneFormCollection(R1, [[(R1.parse("x"),)]], 1)
    assert inv.chern_index(VarietyGerm(R1, []), C) == 1


def test_index_ideal_checks_dimension():
    C = OneFormCollection.of_differentials(R3, [[P3("x"), P3("y")], [P3("z"), P3("x+y")]], 2)
    with pytest.raises(ValueError):
        inv.index_ideal(VarietyGerm(R3, []), C)


def test_whitney_cusp_and_fold():
    plane = VarietyGerm(R2, [])
    f = MapGerm(R2, [P2("x"), P2("y^3+x*y")])
    e1, _, _ = inv.eta_collections(plane, f)
    assert inv.chern_index(plane, e1) == 1
    assert inv.cusps_count(plane, f) == 1
    assert inv.cusps_count(plane, MapGerm(R2, [P2("x"), P2("y^2")])) == 0


def test_generic_linear_index_is_seeded():
    X = VarietyGerm(R3, [P3("x^2+y^2+z^2")])
    a = inv.generic_linear_index(X, (1, 1), seed=4)
    b = inv.generic_linear_index(X, (1, 1), seed=4)
    assert a.value == b.value and a.functions == b.functions
    assert len(set(a.trial_values)) == 1
    assert "seed 4" in a.note()


def test_euler_obstruction_smooth_case():
    rep = inv.euler_obstruction_function(VarietyGerm(R3, []), P3("x^2+y^2"), P3("z"), seed=1)
    assert rep.value == 1
    assert "sign_convention" in rep.metadata
    json.dumps(rep.as_dict())


def test_json_values():
    assert inv.json_value(INFINITE) == "INFINITE"
    assert inv.json_value(math.nan) == "UNDEFINED"
    assert inv.json_value(3) == 3


def test_digest_is_stable():
    X = VarietyGerm(R2, [P2("x*y")])
    assert inv.inputs_digest(X, P2("x")) == inv.inputs_digest(VarietyGerm(R2, [P2("x*y")]), P2("x"))
    assert inv.inputs_digest(X, P2("x")) != inv.inputs_digest(X, P2("y"))


def test_identity_report_on_whitney_cusp():
    checks = inv.identity_report(VarietyGerm(R2, []), MapGerm(R2, [P2("x"), P2("y^3+x*y")]), seed=3)
    assert checks and all(c.holds for c in checks), [c.as_dict() for c in checks]
    for c in checks:
        json.dumps(c.as_dict())


def test_identity_report_reports_budget_inline():
    X = VarietyGerm(R3, [P3("x^3+x^2*y^2+y^7+z^2")])
    f = MapGerm(R3, [P3("y+z^2"), P3("x^2+x*y+y^2")])
    checks = inv.identity_report(X, f, seed=0, budget=Budget(max_steps=50))
    assert any(c.error for c in checks)
    assert not any(c.holds for c in checks if c.error)


def test_infinite_values_never_hold():
    c = inv._check("demo", INFINITE, INFINITE, "a = b")
    assert not c.holds


@pytest.mark.parametrize("h, expected", [(None, 1), ("w^2", 1), ("w^3", 2), ("w^4", 3)])
def test_suspension_on_crossing(h, expected):
    X = VarietyGerm(R2, [P2("x*y")])
    hp = None if h is None else RingContext(("w",)).parse(h)
    c = inv.suspension_check(X, P2("x+y"), hp)
    assert c.holds and c.left == expected


def test_ring_mismatch_is_rejected():
    with pytest.raises(Exception):
        inv.milnor_restricted(VarietyGerm(R2, [P2("x*y")]), P3("x"))


small = st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(-3, 3)), min_size=1, max_size=4)


@given(small, st.integers(2, 5), st.integers(2, 6))
@settings(max_examples=30, deadline=None)
def test_milnor_against_oracle(terms, a, b):
    x, y = R2.gens()
    f = x**a + y**b + sum((c * x**i * y**j for i, j, c in terms if i + j >= 2), R2.zero())
    expected = ideal_colength([f.diff(0), f.diff(1)], 30)
    if expected is None:
        return
    assert inv.milnor_hypersurface(f) == expected
