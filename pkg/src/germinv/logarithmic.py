"""Logarithmic vector fields, df(Theta_X), the relative logarithmic
characteristic ideal and its Cohen-Macaulay test."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .engine import Budget, Submodule, TermVector, krull_dimension, module_equality, syzygy_module
from .poly import GLOBAL, LOCAL, Polynomial, RingContext, RingMismatchError


@dataclass(frozen=True)
class VarietyGerm:
    """(X, 0) given by generators of a reduced ideal I_X.

    An empty generator list means X is the whole ambient space.
    """

    ring: RingContext
    generators: tuple[Polynomial, ...]
    icis_claimed: bool = False

    def __init__(self, ring: RingContext, generators: Sequence[Polynomial] = (), icis_claimed: bool = False):
        gens = tuple(g for g in generators if g)
        for g in gens:
            if g.ring != ring:
                raise RingMismatchError("generator from a different ring")
            if g.constant_term() != 0:
                raise ValueError(f"generator {g} does not vanish at the origin")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "icis_claimed", icis_claimed)

    @property
    def k(self) -> int:
        return len(self.generators)

    @property
    def is_smooth_ambient(self) -> bool:
        return not self.generators

    def ideal(self) -> Submodule:
        return Submodule.ideal(self.ring, self.generators)

    def cut(self, *functions: Polynomial) -> VarietyGerm:
        """X intersected with the zero sets of ``functions``."""
        return VarietyGerm(self.ring, self.generators + tuple(functions), self.icis_claimed)

    def expected_dimension(self) -> int:
        return self.ring.n - self.k


@dataclass(frozen=True)
class TangentModule:
    ring: RingContext
    generators: tuple[TermVector, ...]

    def module(self) -> Submodule:
        return Submodule(self.ring, self.ring.n, self.generators)

    def apply(self, f: Polynomial) -> list[Polynomial]:
        """df(delta) for every generator delta."""
        grad = [f.diff(i) for i in range(self.ring.n)]
        return [sum((d * g for d, g in zip(delta, grad)), self.ring.zero()) for delta in self.generators]


_THETA_CACHE: dict = {}
_THETA_CACHE_SIZE = 64


def tangent_module(X: VarietyGerm, budget: Budget | None = None) -> TangentModule:
    """Vector fields xi with dh(xi) in I_X for every generator h.

    Solves sum_i xi_i dh_l/dx_i = sum_j a_lj h_j as a syzygy problem in
    R^k and keeps the first n coordinates.  Results are cached per germ.
    """
    key = (X.ring, X.generators)
    hit = _THETA_CACHE.get(key)
    if hit is None:
        hit = _tangent_module(X, budget)
        if len(_THETA_CACHE) >= _THETA_CACHE_SIZE:
            _THETA_CACHE.pop(next(iter(_THETA_CACHE)))
        _THETA_CACHE[key] = hit
    return hit


def _tangent_module(X: VarietyGerm, budget: Budget | None) -> TangentModule:
    R, n, k = X.ring, X.ring.n, X.k
    if k == 0:
        return TangentModule(R, tuple(TermVector.unit(R, n, i) for i in range(n)))
    cols = [TermVector([h.diff(i) for h in X.generators]) for i in range(n)]
    for l in range(k):
        for h in X.generators:
            cols.append(TermVector.unit(R, k, l, h))
    # plain Buchberger with tail reduction usually wins here
    syz = syzygy_module(cols, None, budget, prefer=GLOBAL)
    gens = []
    seen = set()
    for s in syz.generators:
        v = TermVector(s.components[:n])
        if not v.is_zero() and v not in seen:
            seen.add(v)
            gens.append(v)
    return TangentModule(R, tuple(gens))


def df_of_theta(f: Polynomial, T: TangentModule) -> Submodule:
    if f.ring != T.ring:
        raise RingMismatchError("function and tangent module from different rings")
    return Submodule.ideal(T.ring, [p for p in T.apply(f) if p])


def contains_coordinate_multiples(X: VarietyGerm, T: TangentModule) -> bool:
    """I_X * e_i lies in Theta_X for every i (always true for a correct Theta_X)."""
    R, n = X.ring, X.ring.n
    extra = Submodule(R, n, [TermVector.unit(R, n, i, h) for h in X.generators for i in range(n)])
    from .engine import module_contains

    return not extra.generators or module_contains(T.module(), extra)


def is_tangent(X: VarietyGerm, delta: TermVector) -> bool:
    from .engine import module_membership

    if X.is_smooth_ambient:
        return True
    I = X.ideal()
    for h in X.generators:
        dh = sum((delta[i] * h.diff(i) for i in range(X.ring.n)), X.ring.zero())
        if not module_membership(TermVector([dh]), I):
            return False
    return True


def theta_equal(T: TangentModule, generators: Sequence[TermVector]) -> bool:
    return module_equality(T.module(), Submodule(T.ring, T.ring.n, generators))


# ---------------------------------------------------------------------------
# relative logarithmic characteristic ideal


def cotangent_ring(R: RingContext) -> tuple[RingContext, list[str]]:
    """R extended by fibre coordinates p1..pn (x's first, then p's)."""
    for prefix in ("p", "xi", "q", "cp"):
        names = [f"{prefix}{i + 1}" for i in range(R.n)]
        if not set(names) & set(R.variables):
            return R.extend(names), names
    raise ValueError("could not find names for the cotangent coordinates")


@dataclass(frozen=True)
class LcvMinusIdeal:
    cotangent_ring: RingContext
    generators: tuple[Polynomial, ...]
    base_ring: RingContext

    def ideal(self) -> Submodule:
        return Submodule.ideal(self.cotangent_ring, self.generators)


def lcv_minus_ideal(X: VarietyGerm, T: TangentModule) -> LcvMinusIdeal:
    """<sum_i delta_ij p_i : j> + I_X in the 2n-variable cotangent ring."""
    R = X.ring
    C, names = cotangent_ring(R)
    ps = [C.var(name) for name in names]
    gens = []
    for delta in T.generators:
        g = sum((d.embed(C) * p for d, p in zip(delta, ps)), C.zero())
        if g:
            gens.append(g)
    gens.extend(h.embed(C) for h in X.generators)
    return LcvMinusIdeal(C, tuple(gens), R)


@dataclass(frozen=True)
class CohenMacaulayReport:
    dim: int
    depth: int
    is_cm: bool
    betti: tuple[int, ...] = ()
    notes: tuple[str, ...] = field(default=())

    def as_dict(self) -> dict:
        return {
            "dim": self.dim,
            "depth": self.depth,
            "is_cm": self.is_cm,
            "betti": list(self.betti),
            "notes": list(self.notes),
        }


CM_LOCATION_NOTE = (
    "dimension and depth computed at the origin of the cotangent space; "
    "the Morse-count interpretation needs Cohen-Macaulayness at (0, df(0))"
)


def cohen_macaulay_report(L: LcvMinusIdeal | Submodule, budget: Budget | None = None) -> CohenMacaulayReport:
    from .engine import minimal_free_resolution

    M = L.ideal() if isinstance(L, LcvMinusIdeal) else L
    dim = krull_dimension(M, LOCAL, budget)
    res = minimal_free_resolution(M, LOCAL, budget)
    dp = M.ring.n - res.length
    return CohenMacaulayReport(dim, dp, dim == dp, res.ranks, (CM_LOCATION_NOTE,))
