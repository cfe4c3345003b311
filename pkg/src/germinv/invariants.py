"""Singularity invariants as colengths, and the identities relating them.

Every invariant here is the dimension of a quotient of the local ring (or a
free module over it) at the origin, computed from a Mora standard basis.
Values are ints or :data:`INFINITE`.
"""

from __future__ import annotations

import hashlib
import json
import math
import random
from dataclasses import asdict, dataclass, field
from typing import Sequence

from .difftools import (
    COEFF_RANGE,
    GenericityError,
    MapGerm,
    OneFormCollection,
    PolyMatrix,
    beta_generators,
    certify_generic,
    delta_determinant,
    gradient,
    jacobian_matrix,
    maximal_minors,
    random_linear_functions,
    suspension_build,
)
from .engine import INFINITE, Budget, BudgetExceeded, Submodule, TermVector, colength
from .logarithmic import VarietyGerm, df_of_theta, tangent_module
from .poly import LOCAL, Polynomial, RingMismatchError

DEFAULT_TRIALS = 3

EU_CH_SIGN_NOTE = (
    "values are unsigned colength differences; the topological Euler obstruction "
    "relates to the Chern number by the sign (-1)^(d-1)"
)


def _ideal(R, polys) -> Submodule:
    return Submodule.ideal(R, [p for p in polys if p])


def _colength(M: Submodule, budget: Budget | None):
    if not M.generators:
        return INFINITE
    return colength(M, LOCAL, budget)


def _phi(X: VarietyGerm) -> list[Polynomial]:
    return list(X.generators)


def _check_ring(X: VarietyGerm, *polys: Polynomial) -> None:
    for p in polys:
        if p.ring != X.ring:
            raise RingMismatchError("function and germ live in different rings")


def _diff(a, b):
    if a == INFINITE or b == INFINITE:
        return INFINITE if a != b else math.nan
    return a - b


# ---------------------------------------------------------------------------
# Milnor / Tjurina


def milnor_hypersurface(f: Polynomial, budget: Budget | None = None):
    """dim O_n / J(f)."""
    if f.constant_term():
        raise ValueError("f must vanish at the origin")
    return _colength(_ideal(f.ring, [f.diff(i) for i in range(f.ring.n)]), budget)


def le_greuel_colength(phi: Sequence[Polynomial], g: Polynomial, budget: Budget | None = None):
    """dim O_n / (<phi> + maximal minors of the Jacobian of (phi, g)).

    For an ICIS pair this is mu(V(phi)) + mu(V(phi, g)).
    """
    phi = list(phi)
    R = g.ring
    J = jacobian_matrix(phi + [g], R)
    return _colength(_ideal(R, phi) + maximal_minors(J), budget)


def milnor_restricted(X: VarietyGerm, f: Polynomial, budget: Budget | None = None):
    """mu(f|_X) = dim O_n / (I_X + J(phi, f))."""
    _check_ring(X, f)
    return le_greuel_colength(_phi(X), f, budget)


def milnor_icis(X: VarietyGerm, budget: Budget | None = None):
    """mu(X) by telescoping the Lê-Greuel formula along phi_1, (phi_1, phi_2), ...

    Every partial intersection must be an ICIS; 0 for the ambient space.
    """
    phi = _phi(X)
    total, sign = 0, 1
    for j in range(len(phi) - 1, -1, -1):
        v = le_greuel_colength(phi[:j], phi[j], budget)
        if v == INFINITE:
            return INFINITE
        total += sign * v
        sign = -sign
    return total


def tjurina_module(X: VarietyGerm) -> Submodule:
    """Submodule of O^k spanned by the columns of d(phi) and I_X * O^k."""
    R, n, k = X.ring, X.ring.n, X.k
    cols = [TermVector([h.diff(i) for h in X.generators]) for i in range(n)]
    cols += [TermVector.unit(R, k, l, h) for l in range(k) for h in X.generators]
    return Submodule(R, k, [c for c in cols if not c.is_zero()])


def tjurina_icis(X: VarietyGerm, budget: Budget | None = None):
    """tau(X) = dim O^k / (d(phi) O^n + I_X O^k); 0 for the ambient space."""
    if X.k == 0:
        return 0
    return _colength(tjurina_module(X), budget)


# ---------------------------------------------------------------------------
# Bruce-Roberts numbers


def bruce_roberts(f: Polynomial, X: VarietyGerm, relative: bool = True, budget: Budget | None = None, theta=None):
    """mu_BR(f, X) = dim O/df(Theta_X); with ``relative`` add I_X."""
    _check_ring(X, f)
    T = theta if theta is not None else tangent_module(X, budget)
    M = df_of_theta(f, T)
    if relative:
        M = M + X.ideal() if X.generators else M
    return _colength(M, budget)


def br_minus_via_formula(X: VarietyGerm, f: Polynomial, budget: Budget | None = None):
    """mu(X cap f=0) + mu(X) - tau(X) for an ICIS X (Lê-Greuel minus Tjurina)."""
    _check_ring(X, f)
    return _diff(le_greuel_colength(_phi(X), f, budget), tjurina_icis(X, budget))


# ---------------------------------------------------------------------------
# Chern indices of 1-form collections


def index_ideal(X: VarietyGerm, C: OneFormCollection) -> Submodule:
    """I_X + sum_i maximal minors of the matrix [d phi; omega^(i)]."""
    R = X.ring
    if C.ring != R:
        raise RingMismatchError("collection and germ live in different rings")
    if C.d != X.expected_dimension():
        raise ValueError(f"collection shape is for dimension {C.d}, germ has dimension {X.expected_dimension()}")
    dphi = [tuple(gradient(h)) for h in X.generators]
    M = X.ideal() if X.generators else Submodule(R, 1, [])
    for sub in C.subcollections:
        stacked = PolyMatrix(R, dphi + list(sub))
        M = M + maximal_minors(stacked)
    return M


def chern_index(X: VarietyGerm, C: OneFormCollection, budget: Budget | None = None):
    return _colength(index_ideal(X, C), budget)


@dataclass(frozen=True)
class GenericIndex:
    value: int
    functions: tuple[tuple[str, ...], ...]
    trial_values: tuple
    seed: int

    def note(self) -> str:
        return (
            f"generic linear data certified by {len(self.trial_values)} agreeing random trials "
            f"(seed {self.seed}, coefficients in [{COEFF_RANGE[0]}, {COEFF_RANGE[1]}])"
        )


def generic_linear_index(
    X: VarietyGerm, ks: Sequence[int], seed: int, trials: int = DEFAULT_TRIALS, budget: Budget | None = None
) -> GenericIndex:
    d = X.expected_dimension()
    coll, value, values = certify_generic(
        lambda c: chern_index(X, c, budget), X.ring, d, ks, seed, trials
    )
    funcs = _linear_functions_of(coll)
    return GenericIndex(value, funcs, tuple(values), seed)


def _linear_functions_of(coll: OneFormCollection) -> tuple[tuple[str, ...], ...]:
    R = coll.ring
    out = []
    for sub in coll.subcollections:
        out.append(tuple(str(sum((R.var(i) * c for i, c in enumerate(form)), R.zero())) for form in sub))
    return tuple(out)


def chern_number(
    X: VarietyGerm, C: OneFormCollection, seed: int, trials: int = DEFAULT_TRIALS, budget: Budget | None = None
):
    """ind{omega} - ind{generic linear collection of the same shape}."""
    ind = chern_index(X, C, budget)
    if ind == INFINITE:
        return INFINITE
    gen = generic_linear_index(X, C.ks, seed, trials, budget)
    return ind - gen.value


def eta_collections(X: VarietyGerm, f: MapGerm) -> tuple[OneFormCollection, OneFormCollection, Polynomial]:
    """{{df1, df2}, {df1, dDelta}} and {{df1, df2}, {df2, dDelta}} on X."""
    if len(f) != 2:
        raise ValueError("need a map germ to the plane")
    f1, f2 = f
    delta = _delta(X, f)
    d = X.expected_dimension()
    R = X.ring
    eta1 = OneFormCollection.of_differentials(R, [[f1, f2], [f1, delta]], d)
    eta2 = OneFormCollection.of_differentials(R, [[f1, f2], [f2, delta]], d)
    return eta1, eta2, delta


def _delta(X: VarietyGerm, f: MapGerm) -> Polynomial:
    return delta_determinant(MapGerm(X.ring, X.generators), f)


def cusps_count(X: VarietyGerm, f: MapGerm, budget: Budget | None = None):
    """c(f|_X) = dim O_n / (I_X + <beta_1, ..., beta_{n+1}>)."""
    if len(f) != 2:
        raise ValueError("cusps are counted for map germs to the plane")
    if f.ring != X.ring:
        raise RingMismatchError("map and germ live in different rings")
    betas = beta_generators(MapGerm(X.ring, X.generators), f)
    M = _ideal(X.ring, betas)
    if X.generators:
        M = X.ideal() + M
    return _colength(M, budget)


# ---------------------------------------------------------------------------
# Chern number of {df1} on X cap f2 = 0, two routes


def _generic_br_minus(Y: VarietyGerm, seed: int, trials: int, budget, theta) -> tuple[int, list]:
    rng_values = []
    rng = random.Random(seed)
    for _ in range(trials):
        (L,), = random_linear_functions(Y.ring, 1, [1], rng)
        rng_values.append((bruce_roberts(L, Y, True, budget, theta), L))
    vals = [v for v, _ in rng_values]
    if any(v != vals[0] for v in vals) or vals[0] == INFINITE:
        raise GenericityError(f"generic relative Bruce-Roberts number not certified: trial values {vals}")
    return vals[0], rng_values


def chern_df1_minors(
    X: VarietyGerm, f1: Polynomial, f2: Polynomial, seed: int, trials: int = DEFAULT_TRIALS, budget=None
):
    """Ch_{X cap f2=0}{df1} = ind{df1} - ind{L} via maximal minors."""
    Y = X.cut(f2)
    d = Y.expected_dimension()
    C = OneFormCollection.of_differentials(Y.ring, [[f1]], d)
    return chern_number(Y, C, seed, trials, budget)


def chern_df1_via_br(
    X: VarietyGerm, f1: Polynomial, f2: Polynomial, seed: int, trials: int = DEFAULT_TRIALS, budget=None
):
    """mu_BR^-(f1, Y) - mu_BR^-(L, Y) with Y = X cap f2 = 0 and L generic linear."""
    _check_ring(X, f1, f2)
    Y = X.cut(f2)
    theta = tangent_module(Y, budget)
    a = bruce_roberts(f1, Y, True, budget, theta)
    if a == INFINITE:
        return INFINITE
    b, _ = _generic_br_minus(Y, seed, trials, budget, theta)
    return a - b


# ---------------------------------------------------------------------------
# reports


def inputs_digest(*parts) -> str:
    def canon(x):
        if isinstance(x, Polynomial):
            return {"ring": list(x.ring.variables), "poly": str(x)}
        if isinstance(x, VarietyGerm):
            return {"ring": list(x.ring.variables), "variety": [str(g) for g in x.generators]}
        if isinstance(x, MapGerm):
            return {"map": [str(g) for g in x.components]}
        if isinstance(x, OneFormCollection):
            return {"forms": [[[str(c) for c in form] for form in sub] for sub in x.subcollections]}
        if isinstance(x, (list, tuple)):
            return [canon(y) for y in x]
        return x

    blob = json.dumps([canon(p) for p in parts], sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()


def json_value(v):
    if isinstance(v, float) and math.isinf(v):
        return "INFINITE"
    if isinstance(v, float) and math.isnan(v):
        return "UNDEFINED"
    return v


@dataclass
class InvariantReport:
    name: str
    value: object
    route: str
    inputs_digest: str
    assumptions: list[str] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["value"] = json_value(self.value)
        return d


@dataclass
class IdentityCheck:
    name: str
    left: object
    right: object
    holds: bool
    citation: str
    assumptions: list[str] = field(default_factory=list)
    error: str | None = None

    def as_dict(self) -> dict:
        d = asdict(self)
        d["left"] = json_value(self.left)
        d["right"] = json_value(self.right)
        return d


def _finite(*vals) -> bool:
    return all(isinstance(v, int) for v in vals)


def _check(name, left, right, citation, assumptions=()) -> IdentityCheck:
    holds = _finite(left, right) and left == right
    return IdentityCheck(name, left, right, holds, citation, list(assumptions))


def euler_obstruction_function(
    X: VarietyGerm, f1: Polynomial, f2: Polynomial, seed: int, trials: int = DEFAULT_TRIALS, budget=None
) -> InvariantReport:
    """Eu_{f1, X cap f2=0}(0), read off as the Chern number of {df1}."""
    value = chern_df1_minors(X, f1, f2, seed, trials, budget)
    Y = X.cut(f2)
    return InvariantReport(
        name="euler_obstruction_function",
        value=value,
        route="Ch_{Y,0}{df1} = ind{df1} - ind{L} on Y = X cap {f2=0}",
        inputs_digest=inputs_digest(X, f1, f2, seed),
        assumptions=[
            "X, X cap {f2=0} and X cap {f1=f2=0} are ICIS (not verified)",
            "f1 is tractable at the origin with respect to a good stratification relative to f2 (not verified)",
            f"generic linear form certified by {trials} agreeing random trials (seed {seed})",
        ],
        metadata={"dimension": Y.expected_dimension(), "sign_convention": EU_CH_SIGN_NOTE},
    )


def identity_report(
    X: VarietyGerm, f: MapGerm, seed: int, trials: int = DEFAULT_TRIALS, budget=None
) -> list[IdentityCheck]:
    """Evaluate both sides of each identity by independent routes."""
    f1, f2 = f
    checks: list[IdentityCheck] = []
    values: dict = {}

    def get(key, fn):
        if key not in values:
            try:
                values[key] = fn()
            except (BudgetExceeded, GenericityError) as exc:
                values[key] = exc
        v = values[key]
        if isinstance(v, Exception):
            raise v
        return v

    def guarded(name, citation, assumptions, compute):
        try:
            left, right = compute()
            checks.append(_check(name, left, right, citation, assumptions))
        except (BudgetExceeded, GenericityError) as exc:
            checks.append(IdentityCheck(name, None, None, False, citation, list(assumptions), str(exc)))

    d = X.expected_dimension()
    afinite = "f is A-finite (not verified)"
    icis = "X is an ICIS (not verified)"
    generic = f"generic linear data certified by {trials} agreeing random trials (seed {seed})"

    if d == 2:
        eta1, eta2, _ = eta_collections(X, f)
        c = lambda: get("c", lambda: cusps_count(X, f, budget))
        mu1 = lambda: get("mu1", lambda: milnor_restricted(X, f1, budget))
        mu2 = lambda: get("mu2", lambda: milnor_restricted(X, f2, budget))
        indl = lambda: get("indl", lambda: generic_linear_index(X, (1, 1), seed, trials, budget).value)
        ind1 = lambda: get("ind1", lambda: chern_index(X, eta1, budget))
        ind2 = lambda: get("ind2", lambda: chern_index(X, eta2, budget))

        guarded(
            "cusps_chern_eta1",
            "Ch{eta1} = c(f|X) + mu(f1|X) - ind{l}",
            [icis, afinite, generic],
            lambda: (_diff(ind1(), indl()), _diff(c() + mu1(), indl()) if _finite(c(), mu1()) else INFINITE),
        )
        guarded(
            "cusps_chern_eta2",
            "Ch{eta2} = c(f|X) + mu(f2|X) - ind{l}",
            [icis, afinite, generic],
            lambda: (_diff(ind2(), indl()), _diff(c() + mu2(), indl()) if _finite(c(), mu2()) else INFINITE),
        )
        guarded(
            "chern_difference_milnor_difference",
            "Ch{eta1} - Ch{eta2} = mu(f1|X) - mu(f2|X)",
            [icis, afinite, generic],
            lambda: (_diff(_diff(ind1(), indl()), _diff(ind2(), indl())), _diff(mu1(), mu2())),
        )

    if X.ring.n - X.k - 1 >= 1:
        tract = "f1 is tractable at the origin with respect to a good stratification relative to f2 (not verified)"
        guarded(
            "chern_df1_bruce_roberts",
            "Ch_{X cap f2=0}{df1} = mu_BR^-(f1, X cap f2=0) - mu_BR^-(L, X cap f2=0)",
            [icis, "X cap {f2=0} and X cap {f1=f2=0} are ICIS (not verified)", tract, generic],
            lambda: (
                get("ch_df1", lambda: chern_df1_minors(X, f1, f2, seed, trials, budget)),
                get("br_df1", lambda: chern_df1_via_br(X, f1, f2, seed, trials, budget)),
            ),
        )
        guarded(
            "chern_df2_bruce_roberts",
            "Ch_{X cap f1=0}{df2} = mu_BR^-(f2, X cap f1=0) - mu_BR^-(L, X cap f1=0)",
            [icis, "X cap {f1=0} and X cap {f1=f2=0} are ICIS (not verified)", generic],
            lambda: (
                get("ch_df2", lambda: chern_df1_minors(X, f2, f1, seed, trials, budget)),
                get("br_df2", lambda: chern_df1_via_br(X, f2, f1, seed, trials, budget)),
            ),
        )
        guarded(
            "relative_br_formula_f1",
            "mu_BR^-(f1, X cap f2=0) = mu(X cap f2=0 cap f1=0) + mu(X cap f2=0) - tau(X cap f2=0)",
            ["X cap {f2=0} and X cap {f1=f2=0} are ICIS (not verified)"],
            lambda: (
                get("brm_f1_Y2", lambda: bruce_roberts(f1, X.cut(f2), True, budget)),
                get("brm_formula_f1_Y2", lambda: br_minus_via_formula(X.cut(f2), f1, budget)),
            ),
        )

    if d == 2:
        def sections():
            # Ch{eta1} - Ch{eta2} against the slices Y1 = X cap f1=0, Y2 = X cap f2=0
            Y1, Y2 = X.cut(f1), X.cut(f2)
            left = _diff(_diff(ind1(), indl()), _diff(ind2(), indl()))
            ch_y2 = get("ch_df1", lambda: chern_df1_minors(X, f1, f2, seed, trials, budget))
            ch_y1 = get("ch_df2", lambda: chern_df1_minors(X, f2, f1, seed, trials, budget))
            l_y2 = get("brl_Y2", lambda: _generic_br_minus(Y2, seed, trials, budget, tangent_module(Y2, budget))[0])
            l_y1 = get("brl_Y1", lambda: _generic_br_minus(Y1, seed, trials, budget, tangent_module(Y1, budget))[0])
            t_y2 = get("tau_Y2", lambda: tjurina_icis(Y2, budget))
            t_y1 = get("tau_Y1", lambda: tjurina_icis(Y1, budget))
            if not _finite(ch_y1, ch_y2, l_y1, l_y2, t_y1, t_y2):
                return left, INFINITE
            return left, ch_y1 - ch_y2 + l_y1 - l_y2 + t_y1 - t_y2

        guarded(
            "chern_difference_slices",
            "Ch{eta1} - Ch{eta2} = Ch_{X cap f1=0}{df2} - Ch_{X cap f2=0}{df1}"
            " + mu_BR^-(l, X cap f1=0) - mu_BR^-(l, X cap f2=0) + tau(X cap f1=0) - tau(X cap f2=0)",
            [icis, afinite, "X cap {f1=0}, X cap {f2=0}, X cap {f1=f2=0} are ICIS (not verified)", generic],
            sections,
        )
        premise = [values.get(k) for k in ("brl_Y1", "brl_Y2", "tau_Y1", "tau_Y2")]
        if _finite(*premise) and premise[0] == premise[1] and premise[2] == premise[3]:
            # only meaningful when the slices agree on the generic terms
            guarded(
                "chern_difference_slices_reduced",
                "Ch{eta1} - Ch{eta2} = Ch_{X cap f1=0}{df2} - Ch_{X cap f2=0}{df1}"
                " when the slice terms mu_BR^-(l, .) and tau(.) agree",
                [icis, afinite, "target coordinates generic (premise checked on this instance)", generic],
                lambda: (
                    _diff(_diff(ind1(), indl()), _diff(ind2(), indl())),
                    _diff(values["ch_df2"], values["ch_df1"]),
                ),
            )
    return checks


def suspension_check(
    X: VarietyGerm, f: Polynomial, h: Polynomial | None, budget: Budget | None = None
) -> IdentityCheck:
    """mu_BR^-(f + h, X x C^t) against mu(h) * mu_BR^-(f, X)."""
    Xt, F = suspension_build(X, f, h)
    left = bruce_roberts(F, Xt, True, budget)
    mu_h = 1 if h is None else milnor_hypersurface(h, budget)
    base = bruce_roberts(f, X, True, budget)
    right = INFINITE if not _finite(mu_h, base) else mu_h * base
    return _check(
        "suspension_multiplicativity",
        left,
        right,
        "mu_BR^-(F, X x C^t) = mu(h) * mu_BR^-(f, X)",
        ["mu(h) and mu_BR^-(f, X) finite"],
    )
