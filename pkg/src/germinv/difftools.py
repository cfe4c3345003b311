"""Jacobians, minors, the discriminant-type determinant Delta and the
beta-minors, collections of 1-forms, generic linear collections and
suspensions."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Sequence

from .engine import Submodule
from .poly import Polynomial, RingContext, RingMismatchError

COEFF_RANGE = (-17, 17)


@dataclass(frozen=True)
class MapGerm:
    """A polynomial map germ (components vanish at the origin)."""

    ring: RingContext
    components: tuple[Polynomial, ...]

    def __init__(self, ring: RingContext, components: Sequence[Polynomial]):
        comps = tuple(components)
        for c in comps:
            if c.ring != ring:
                raise RingMismatchError("map component from a different ring")
            if c.constant_term() != 0:
                raise ValueError(f"map component {c} does not vanish at the origin")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "components", comps)

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __add__(self, other: MapGerm) -> MapGerm:
        if other.ring != self.ring:
            raise RingMismatchError("map germs from different rings")
        return MapGerm(self.ring, self.components + other.components)


class PolyMatrix:
    """Rectangular matrix of polynomials over one ring."""

    __slots__ = ("ring", "rows")

    def __init__(self, ring: RingContext, rows: Sequence[Sequence[Polynomial]]):
        rows = tuple(tuple(r) for r in rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("matrix rows have different lengths")
        for r in rows:
            for p in r:
                if p.ring != ring:
                    raise RingMismatchError("matrix entry from a different ring")
        self.ring = ring
        self.rows = rows

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else self.ring.n)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def stack(self, other: PolyMatrix) -> PolyMatrix:
        if self.rows and other.rows and self.shape[1] != other.shape[1]:
            raise ValueError("column counts differ")
        return PolyMatrix(self.ring, self.rows + other.rows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> list[list[Polynomial]]:
        return [[self.rows[i][j] for j in cols] for i in rows]

    def columns(self) -> list[tuple[Polynomial, ...]]:
        nr, nc = self.shape
        return [tuple(self.rows[i][j] for i in range(nr)) for j in range(nc)]

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyMatrix) and self.ring == other.ring and self.rows == other.rows

    def __repr__(self) -> str:
        return "PolyMatrix([" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in self.rows) + "])"


def gradient(p: Polynomial) -> tuple[Polynomial, ...]:
    return tuple(p.diff(i) for i in range(p.ring.n))


def jacobian_matrix(m: MapGerm | Sequence[Polynomial], ring: RingContext | None = None) -> PolyMatrix:
    """Row i is the gradient of component i."""
    comps = list(m)
    ring = ring or (m.ring if isinstance(m, MapGerm) else comps[0].ring)
    return PolyMatrix(ring, [gradient(c) for c in comps])


def determinant(rows: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Exact determinant; cofactor expansion up to 3x3, Bareiss beyond."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        raise ValueError("determinant of an empty matrix needs a ring")
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if n == 3:
        a, b, c = rows
        return (
            a[0] * (b[1] * c[2] - b[2] * c[1])
            - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0])
        )
    return _bareiss(rows)


def _exact_div(a: Polynomial, b: Polynomial) -> Polynomial:
    """Exact polynomial division a / b (b must divide a)."""
    from .poly import GLOBAL

    ring = a.ring
    q = ring.zero()
    r = a
    be, bc = b.leading_term(GLOBAL)
    while r:
        re_, rc = r.leading_term(GLOBAL)
        m = tuple(x - y for x, y in zip(re_, be))
        if any(x < 0 for x in m):
            raise ArithmeticError("inexact division in Bareiss elimination")
        t = Polynomial(ring, {m: rc / bc})
        q = q + t
        r = r - t * b
    return q


def _bareiss(rows: Sequence[Sequence[Polynomial]]) -> Polynomial:
    a = [list(r) for r in rows]
    n = len(a)
    ring = a[0][0].ring
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return ring.zero()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = _exact_div(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev)
        prev = a[k][k]
    return a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1]


def minors(M: PolyMatrix, t: int) -> list[Polynomial]:
    nr, nc = M.shape
    if not 1 <= t <= min(nr, nc):
        raise ValueError(f"minor order {t} out of range for a {nr}x{nc} matrix")
    out = []
    for rs in itertools.combinations(range(nr), t):
        for cs in itertools.combinations(range(nc), t):
            out.append(determinant(M.submatrix(rs, cs)))
    return out


def minors_of_order(M: PolyMatrix, t: int) -> Submodule:
    """Ideal generated by all t x t minors of ``M``."""
    return Submodule.ideal(M.ring, [p for p in minors(M, t) if p])


def maximal_minors(M: PolyMatrix) -> Submodule:
    nr, nc = M.shape
    return minors_of_order(M, min(nr, nc))


def delta_determinant(phi: MapGerm, f: MapGerm) -> Polynomial:
    """Determinant of the Jacobian of (phi, f); needs len(phi) + len(f) == n."""
    if len(phi) + len(f) != f.ring.n:
        raise ValueError(
            f"(phi, f) has {len(phi) + len(f)} components, need {f.ring.n} for a square Jacobian"
        )
    return determinant(jacobian_matrix(list(phi) + list(f), f.ring).rows)


def beta_generators(phi: MapGerm, f: MapGerm) -> list[Polynomial]:
    """The n+1 maximal minors of the Jacobian of (phi, f, Delta).

    beta_i is (-1)^(n+1-i) times the minor obtained by deleting row i
    (1-based), so that beta_{n+1} = Delta and sum_i beta_i * row_i = 0.
    """
    ring = f.ring
    delta = delta_determinant(phi, f)
    J = jacobian_matrix(list(phi) + list(f) + [delta], ring)
    n = ring.n
    out = []
    for i in range(n + 1):
        rows = [J.rows[k] for k in range(n + 1) if k != i]
        m = determinant(rows)
        out.append(m if (n - i) % 2 == 0 else -m)
    return out


# ---------------------------------------------------------------------------
# 1-form collections


@dataclass(frozen=True)
class OneFormCollection:
    """Collection {omega_j^(i)} of 1-forms, grouped in subcollections.

    Each 1-form is the n-tuple of its coefficients on dx_1..dx_n.  For a
    germ of dimension d, subcollection i has d - k_i + 1 forms and the k_i
    sum to d.
    """

    ring: RingContext
    subcollections: tuple[tuple[tuple[Polynomial, ...], ...], ...]
    d: int

    def __init__(self, ring: RingContext, subcollections, d: int):
        subs = tuple(tuple(tuple(form) for form in sub) for sub in subcollections)
        for sub in subs:
            if not sub:
                raise ValueError("empty subcollection")
            for form in sub:
                if len(form) != ring.n:
                    raise ValueError(f"1-form with {len(form)} coefficients in a ring of {ring.n} variables")
                for c in form:
                    if c.ring != ring:
                        raise RingMismatchError("1-form coefficient from a different ring")
        ks = [d - len(sub) + 1 for sub in subs]
        if any(k < 0 for k in ks):
            raise ValueError(f"a subcollection has more than d + 1 = {d + 1} forms")
        if sum(ks) != d:
            raise ValueError(f"shape mismatch: k_i = {ks} must sum to d = {d}")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "subcollections", subs)
        object.__setattr__(self, "d", d)

    @classmethod
    def of_differentials(cls, ring: RingContext, functions: Sequence[Sequence[Polynomial]], d: int):
        return cls(ring, [[gradient(f) for f in sub] for sub in functions], d)

    @property
    def s(self) -> int:
        return len(self.subcollections)

    @property
    def ks(self) -> tuple[int, ...]:
        return tuple(self.d - len(sub) + 1 for sub in self.subcollections)

    @property
    def shape(self) -> tuple[int, tuple[int, ...]]:
        return self.d, self.ks


def shape_sizes(d: int, ks: Sequence[int]) -> list[int]:
    if sum(ks) != d or any(k < 0 for k in ks):
        raise ValueError(f"k_i = {list(ks)} must be non-negative and sum to d = {d}")
    return [d - k + 1 for k in ks]


def random_linear_functions(
    ring: RingContext, d: int, ks: Sequence[int], rng: random.Random, coeff_range=COEFF_RANGE
) -> list[list[Polynomial]]:
    """Linear functions with integer coefficients drawn uniformly from ``coeff_range``.

    Each subcollection's coefficient rows are redrawn until linearly independent.
    """
    lo, hi = coeff_range
    out = []
    for size in shape_sizes(d, ks):
        if size > ring.n:
            raise ValueError("more linear forms in a subcollection than variables")
        while True:
            rows = [[rng.randint(lo, hi) for _ in range(ring.n)] for _ in range(size)]
            if _rank(rows) == size:
                break
        out.append([sum((ring.var(i) * c for i, c in enumerate(row) if c), ring.zero()) for row in rows])
    return out


def _rank(rows) -> int:
    from fractions import Fraction

    a = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(a[0]) if a else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(a)) if a[i][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(len(a)):
            if i != rank and a[i][col]:
                f = a[i][col] / a[rank][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def random_linear_collection(
    ring: RingContext, d: int, ks: Sequence[int], seed: int, coeff_range=COEFF_RANGE
) -> tuple[OneFormCollection, list[list[Polynomial]]]:
    """A seeded collection of linear 1-forms dl of the given shape.

    Returns the collection together with the linear functions themselves.
    """
    rng = random.Random(seed)
    funcs = random_linear_functions(ring, d, ks, rng, coeff_range)
    return OneFormCollection.of_differentials(ring, funcs, d), funcs


class GenericityError(RuntimeError):
    """Random linear data gave disagreeing values across trials."""


def certify_generic(
    index_of: Callable[[OneFormCollection], object],
    ring: RingContext,
    d: int,
    ks: Sequence[int],
    seed: int,
    trials: int = 3,
    coeff_range=COEFF_RANGE,
):
    """Evaluate ``index_of`` on ``trials`` independent random linear collections.

    Certification succeeds when all trials return the same finite value;
    returns (first collection, value, list of per-trial values).
    """
    if trials < 2:
        raise ValueError("certification needs at least two trials")
    rng = random.Random(seed)
    values = []
    first = None
    for _ in range(trials):
        funcs = random_linear_functions(ring, d, ks, rng, coeff_range)
        coll = OneFormCollection.of_differentials(ring, funcs, d)
        if first is None:
            first = coll
        values.append(index_of(coll))
    if any(v != values[0] for v in values) or values[0] == float("inf"):
        raise GenericityError(f"generic linear index not certified: trial values {values}")
    return first, values[0], values


# ---------------------------------------------------------------------------
# suspension


def suspension_build(X, f: Polynomial, h: Polynomial | None):
    """Build the product germ X x C^t and F(x, y) = f(x) + h(y).

    ``X`` is a :class:`~germinv.logarithmic.VarietyGerm` over the ring of
    ``f``; ``h`` lives in a ring of t new variables whose names must not
    clash.  ``h=None`` stands for t = 0 and returns ``(X, f)`` unchanged.
    """
    from .logarithmic import VarietyGerm

    if h is None:
        return X, f
    R, H = f.ring, h.ring
    if X.ring != R:
        raise RingMismatchError("germ and function live in different rings")
    clash = set(R.variables) & set(H.variables)
    if clash:
        raise ValueError(f"suspension variables clash with the germ's ring: {sorted(clash)}")
    big = R.extend(H.variables)
    Xt = VarietyGerm(big, [g.embed(big) for g in X.generators], icis_claimed=False)
    return Xt, f.embed(big) + h.embed(big)
