"""Standard bases of submodules of free modules over Q[x] and its localization.

Global orderings give Buchberger's algorithm; local orderings give Mora's
tangent-cone algorithm (ecart-driven weak normal form), which computes in the
local ring at the origin.  On top of that: colength, Krull dimension,
syzygies, minimal free resolutions and depth.

Internally a module element is a dict ``{(component, exponents): int}``.
Coefficients are kept integral and primitive; every operation here only
cares about elements up to a nonzero rational factor.
"""

from __future__ import annotations

import heapq
import itertools
import logging
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from operator import add, le, sub
from typing import Iterable, Sequence

from .poly import GLOBAL, LOCAL, MonomialOrdering, Polynomial, RingContext, RingMismatchError

log = logging.getLogger(__name__)

INFINITE = math.inf


class BudgetExceeded(RuntimeError):
    """A computation ran past its step or time budget."""


@dataclass
class Budget:
    """Step and wall-clock limits shared by one computation.

    ``max_steps`` bounds the number of reduction steps (weighted by operand size); ``seconds`` bounds the
    elapsed time.  ``None`` means unlimited.
    """

    max_steps: int | None = None
    seconds: float | None = None
    steps: int = 0
    _deadline: float | None = field(default=None, repr=False)
    _calls: int = field(default=0, repr=False)

    def __post_init__(self):
        if self.max_steps is not None and self.max_steps <= 0:
            raise ValueError("step budget must be positive")
        if self.seconds is not None:
            if self.seconds <= 0:
                raise ValueError("time budget must be positive")
            self._deadline = time.monotonic() + self.seconds

    def tick(self, n: int = 1) -> None:
        self.steps += n
        if self.max_steps is not None and self.steps > self.max_steps:
            raise BudgetExceeded(f"step budget of {self.max_steps} reduction steps exhausted")
        # weighted steps jump around, so poll the clock by call count or on heavy steps
        self._calls += 1
        if self._deadline is not None and (n > 1 or not self._calls & 63) and time.monotonic() > self._deadline:
            raise BudgetExceeded(f"time budget of {self.seconds}s exhausted")


# ---------------------------------------------------------------------------
# public value types


class TermVector:
    """An element of the free module R^r, stored as r polynomials."""

    __slots__ = ("components",)

    def __init__(self, components: Iterable[Polynomial]):
        comps = tuple(components)
        if not comps:
            raise ValueError("a term vector needs at least one component")
        ring = comps[0].ring
        if any(c.ring != ring for c in comps):
            raise RingMismatchError("components live in different rings")
        self.components = comps

    @classmethod
    def unit(cls, ring: RingContext, r: int, i: int, coeff: Polynomial | int = 1) -> TermVector:
        comps = [ring.zero()] * r
        comps[i] = coeff if isinstance(coeff, Polynomial) else ring.const(coeff)
        return cls(comps)

    @property
    def ring(self) -> RingContext:
        return self.components[0].ring

    @property
    def r(self) -> int:
        return len(self.components)

    def __getitem__(self, i: int) -> Polynomial:
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __add__(self, other: TermVector) -> TermVector:
        _same_shape(self, other)
        return TermVector(a + b for a, b in zip(self, other))

    def __sub__(self, other: TermVector) -> TermVector:
        _same_shape(self, other)
        return TermVector(a - b for a, b in zip(self, other))

    def __neg__(self) -> TermVector:
        return TermVector(-a for a in self)

    def scale(self, p) -> TermVector:
        return TermVector(a * p for a in self)

    def dot(self, other: TermVector) -> Polynomial:
        _same_shape(self, other)
        return sum((a * b for a, b in zip(self, other)), self.ring.zero())

    def __eq__(self, other) -> bool:
        return isinstance(other, TermVector) and self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def __repr__(self) -> str:
        return "TermVector([" + ", ".join(str(c) for c in self.components) + "])"


def _same_shape(a: TermVector, b: TermVector) -> None:
    if a.r != b.r:
        raise ValueError(f"rank mismatch: {a.r} vs {b.r}")
    if a.ring != b.ring:
        raise RingMismatchError("term vectors from different rings")


class Submodule:
    """A finitely generated submodule of R^r; ideals are the case r = 1."""

    __slots__ = ("ring", "r", "generators")

    def __init__(self, ring: RingContext, r: int, generators: Iterable[TermVector] = ()):
        if r < 1:
            raise ValueError("rank must be at least 1")
        gens = tuple(generators)
        for g in gens:
            if g.r != r:
                raise ValueError(f"generator of rank {g.r} in a rank-{r} module")
            if g.ring != ring:
                raise RingMismatchError("generator from a different ring")
        self.ring = ring
        self.r = r
        self.generators = gens

    @classmethod
    def ideal(cls, ring: RingContext, polys: Iterable[Polynomial]) -> Submodule:
        polys = list(polys)
        for p in polys:
            if p.ring != ring:
                raise RingMismatchError("polynomial from a different ring")
        return cls(ring, 1, [TermVector([p]) for p in polys])

    @classmethod
    def from_columns(cls, ring: RingContext, columns: Sequence[Sequence[Polynomial]]) -> Submodule:
        cols = [TermVector(c) for c in columns]
        if not cols:
            raise ValueError("need at least one column to infer the rank")
        return cls(ring, cols[0].r, cols)

    @property
    def is_ideal(self) -> bool:
        return self.r == 1

    def polys(self) -> list[Polynomial]:
        if self.r != 1:
            raise ValueError("not an ideal")
        return [g[0] for g in self.generators]

    def __add__(self, other: Submodule) -> Submodule:
        if other.r != self.r or other.ring != self.ring:
            raise ValueError("cannot add submodules of different free modules")
        return Submodule(self.ring, self.r, self.generators + other.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def __repr__(self) -> str:
        return f"Submodule(r={self.r}, {list(self.generators)!r})"


@dataclass(frozen=True)
class StandardBasisResult:
    basis: tuple[TermVector, ...]
    ordering: MonomialOrdering
    leading_module: tuple[tuple[int, tuple[int, ...]], ...]
    ring: RingContext
    r: int
    steps: int = 0


@dataclass(frozen=True)
class Resolution:
    """Free resolution ``0 <- F_0 <- F_1 <- ... <- F_len``.

    ``maps[i]`` is the matrix of ``F_{i+1} -> F_i`` given as a list of
    columns (each a TermVector of rank ``ranks[i]``).
    """

    maps: tuple[tuple[TermVector, ...], ...]
    ranks: tuple[int, ...]
    minimal: bool
    ring: RingContext

    @property
    def length(self) -> int:
        return len(self.maps)

    def entry(self, i: int, row: int, col: int) -> Polynomial:
        return self.maps[i][col][row]


# ---------------------------------------------------------------------------
# conversion between public and internal representations


def _to_vec(v: TermVector) -> dict:
    return _primitive(_to_int_vec(v)[0])


def _to_int_vec(v: TermVector) -> tuple[dict, int]:
    """(den * v, den) with den the lcm of the coefficient denominators."""
    den = 1
    for p in v.components:
        for c in p._terms.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
    out = {}
    for i, p in enumerate(v.components):
        for e, c in p._terms.items():
            out[(i, e)] = c.numerator * (den // c.denominator)
    return out, den


def _from_vec(vec: dict, ring: RingContext, r: int) -> TermVector:
    comps: list[dict] = [{} for _ in range(r)]
    for (c, e), v in vec.items():
        comps[c][e] = Fraction(v)
    return TermVector(Polynomial._raw(ring, d) for d in comps)


def _primitive(vec: dict) -> dict:
    if not vec:
        return vec
    g = math.gcd(*vec.values())
    if g != 1:
        vec = {t: v // g for t, v in vec.items()}
    return vec


# ---------------------------------------------------------------------------
# the algorithm


def _neg(key: tuple) -> tuple:
    return tuple(-k for k in key)


def _cost(terms: int, a: int, b: int) -> int:
    """Budget steps charged for one reduction: 1 plus a size-weighted share,
    so that coefficient swell counts against the budget."""
    return 1 + ((terms * (a.bit_length() + b.bit_length())) >> 12)


class _Elem:
    __slots__ = ("vec", "lt", "lc", "ecart", "comp", "exp", "idx")

    def __init__(self, vec, lt, ecart, idx):
        self.vec = vec
        self.lt = lt
        self.comp, self.exp = lt
        self.lc = vec[lt]
        self.ecart = ecart
        self.idx = idx


def _divides(a, b) -> bool:
    return all(map(le, a, b))


def _lcm(a, b):
    return tuple(map(max, a, b))


def _coprime(a, b) -> bool:
    return not any(x and y for x, y in zip(a, b))


class _Engine:
    """Ordering-specific caches plus the reduction machinery."""

    def __init__(self, ordering: MonomialOrdering, n: int, budget: Budget | None = None):
        self.ordering = ordering
        self.n = n
        self.local = ordering.is_local
        self.budget = budget or Budget()
        self._keys: dict = {}
        self._zero = (0,) * n
        self.trunc: int | None = None
        self.corner_components = 0

    def enable_corner(self, r: int) -> None:
        """Allow dropping terms that lie in a power of the maximal ideal already
        contained in the leading module (valid for colength only)."""
        if not self.local or self.ordering.module != "top" or self.ordering.eliminate:
            raise ValueError("corner truncation needs a degree-compatible local ordering")
        self.corner_components = r

    def auto_corner(self, r: int) -> None:
        """Enable corner truncation whenever the ordering allows it.

        If the leading terms of elements of M contain m^D, then m^D lies in M
        (Nakayama), so dropping terms of degree >= D keeps every element in M.
        """
        if self.local and self.ordering.module == "top" and not self.ordering.eliminate:
            self.corner_components = r

    def _truncate(self, vec: dict) -> dict:
        D = self.trunc
        return {t: v for t, v in vec.items() if sum(t[1]) < D}

    def _update_corner(self, leads) -> bool:
        """Lower the truncation degree from pure powers among ``leads``."""
        n, r = self.n, self.corner_components
        best = [[None] * n for _ in range(r)]
        for c, e in leads:
            support = [i for i, x in enumerate(e) if x]
            if len(support) == 1:
                i = support[0]
                if best[c][i] is None or e[i] < best[c][i]:
                    best[c][i] = e[i]
            elif not support:
                best[c] = [1] * n
        if any(x is None for row in best for x in row):
            return False
        # every monomial of degree >= D is divisible by a pure power
        D = max(sum(x - 1 for x in row) for row in best) + 1
        if self.trunc is None or D < self.trunc:
            self.trunc = D
            return True
        return False

    def key(self, t):
        k = self._keys.get(t)
        if k is None:
            k = self._keys[t] = self.ordering.term_key(t[0], t[1])
        return k

    def lead(self, vec):
        return max(vec, key=self.key)

    def ecart(self, vec, lt) -> int:
        return max(sum(e) for _, e in vec) - sum(lt[1])

    def make(self, vec, idx=-1) -> _Elem:
        vec = _primitive(vec)
        lt = self.lead(vec)
        if vec[lt] < 0:
            vec = {t: -v for t, v in vec.items()}
        return _Elem(vec, lt, self.ecart(vec, lt) if self.local else 0, idx)

    # -- reduction --------------------------------------------------------
    def reduce_by(self, h: dict, hlt, g: _Elem) -> dict:
        """h <- a*h - b*m*g cancelling the leading term of h."""
        m = tuple(map(sub, hlt[1], g.exp))
        a, b = g.lc, h[hlt]
        self.budget.tick(_cost(len(h) + len(g.vec), a, b))
        d = math.gcd(a, b)
        a, b = a // d, b // d
        out = {t: v * a for t, v in h.items()} if a != 1 else dict(h)
        get = out.get
        for (c, e), v in g.vec.items():
            t = (c, tuple(map(add, e, m)))
            nv = get(t, 0) - b * v
            if nv:
                out[t] = nv
            else:
                del out[t]
        if self.trunc is not None:
            out = self._truncate(out)
        return _primitive(out)

    def spoly(self, f: _Elem, g: _Elem, lcm) -> dict:
        mf = tuple(map(sub, lcm, f.exp))
        mg = tuple(map(sub, lcm, g.exp))
        a, b = g.lc, f.lc
        self.budget.tick(_cost(len(f.vec) + len(g.vec), a, b))
        d = math.gcd(a, b)
        a, b = a // d, b // d
        out = {}
        for (c, e), v in f.vec.items():
            out[(c, tuple(map(add, e, mf)))] = a * v
        get = out.get
        for (c, e), v in g.vec.items():
            t = (c, tuple(map(add, e, mg)))
            nv = get(t, 0) - b * v
            if nv:
                out[t] = nv
            else:
                del out[t]
        if self.trunc is not None:
            out = self._truncate(out)
        return _primitive(out)

    def tail_reduce(self, h: dict, lt, reducers: list[_Elem]) -> dict:
        """Reduce every term of ``h`` below ``lt`` (global orderings only)."""
        done = {lt: h.pop(lt)}
        key = self.key
        # max-heap of pending terms; reducing t only creates terms below t
        heap = [(_neg(key(t)), t) for t in h]
        heapq.heapify(heap)
        while heap:
            _, t = heapq.heappop(heap)
            if t not in h:
                continue
            g = self._find_reducer(reducers, t)
            if g is None:
                done[t] = h.pop(t)
                continue
            m = tuple(map(sub, t[1], g.exp))
            a, b = g.lc, h[t]
            self.budget.tick(_cost(len(h) + len(done) + len(g.vec), a, b))
            d = math.gcd(a, b)
            a, b = a // d, b // d
            if a != 1:
                h = {u: v * a for u, v in h.items()}
                done = {u: v * a for u, v in done.items()}
            for (c, e), v in g.vec.items():
                u = (c, tuple(map(add, e, m)))
                old = h.get(u)
                nv = (old or 0) - b * v
                if nv:
                    if old is None:
                        heapq.heappush(heap, (_neg(key(u)), u))
                    h[u] = nv
                elif old is not None:
                    del h[u]
            content = math.gcd(*done.values(), *h.values())
            if content != 1:
                h = {u: v // content for u, v in h.items()}
                done = {u: v // content for u, v in done.items()}
        return done

    def _find_reducer(self, reducers, lt):
        c, e = lt
        best = None
        for g in reducers:
            if g.comp == c and _divides(g.exp, e):
                if not self.local:
                    return g
                if best is None or g.ecart < best.ecart:
                    best = g
                    if not g.ecart:
                        break
        return best

    def normal_form(self, h: dict, reducers: list[_Elem]) -> dict:
        """Top-reduce ``h``: Buchberger division (global) or Mora's weak normal form (local)."""
        if not self.local:
            while h:
                lt = self.lead(h)
                g = self._find_reducer(reducers, lt)
                if g is None:
                    return self.tail_reduce(h, lt, reducers)
                h = self.reduce_by(h, lt, g)
            return h
        T = list(reducers)
        while h:
            lt = self.lead(h)
            g = self._find_reducer(T, lt)
            if g is None:
                return h
            eh = self.ecart(h, lt)
            if g.ecart > eh:
                T.append(_Elem(h, lt, eh, -1))
            h = self.reduce_by(h, lt, g)
        return h

    # -- standard basis ---------------------------------------------------
    def standard_basis(self, vecs: Iterable[dict], ideal: bool) -> list[_Elem]:
        elems: list[_Elem] = []
        active: list[_Elem] = []
        pairs: list = []
        counter = itertools.count()

        def update(h: _Elem):
            nonlocal active, pairs
            hc, he = h.lt
            cands = [(g, _lcm(g.exp, he)) for g in active if g.comp == hc]
            kept = []
            while cands:
                g, L = cands.pop()
                cop = ideal and _coprime(g.exp, he)
                if cop or not (
                    any(_divides(L2, L) for _, L2 in cands) or any(_divides(L2, L) for _, L2, _ in kept)
                ):
                    kept.append((g, L, cop))
            new_pairs = [(g, L) for g, L, cop in kept if not cop]
            pairs = [
                p
                for p in pairs
                if not (
                    p[4] == hc
                    and _divides(he, p[5])
                    and _lcm(p[2].exp, he) != p[5]
                    and _lcm(p[3].exp, he) != p[5]
                )
            ]
            for g, L in new_pairs:
                pairs.append((sum(L), next(counter), g, h, hc, L))
            heapq.heapify(pairs)
            active = [g for g in active if not (g.comp == hc and _divides(he, g.exp))]
            active.append(h)

        def corner():
            if self.corner_components and self._update_corner(g.lt for g in active):
                log.debug("truncating at degree %d", self.trunc)
                for g in elems:
                    vec = self._truncate(g.vec)
                    vec[g.lt] = g.lc
                    g.vec = vec
                    g.ecart = self.ecart(vec, g.lt)

        for v in vecs:
            if v:
                h = self.make(v, len(elems))
                elems.append(h)
                update(h)
        corner()

        while pairs:
            _, _, f, g, _, L = heapq.heappop(pairs)
            s = self.spoly(f, g, L)
            h = self.normal_form(s, active)
            if h:
                h = self.make(h, len(elems))
                log.debug("pair (%d,%d) -> new element %d, lead %s", f.idx, g.idx, h.idx, h.lt)
                elems.append(h)
                update(h)
                corner()
            else:
                log.debug("pair (%d,%d) reduced to zero", f.idx, g.idx)
        active.sort(key=lambda g: self.key(g.lt), reverse=True)
        return active


def _minimal_leads(leads):
    """Drop leading terms divisible by another (keeps one of equal terms)."""
    out = []
    for c, e in sorted(set(leads), key=lambda t: (t[0], sum(t[1]), t[1])):
        if not any(c == c2 and _divides(e2, e) for c2, e2 in out):
            out.append((c, e))
    return out


def _check_ordering(ordering: MonomialOrdering) -> MonomialOrdering:
    if not isinstance(ordering, MonomialOrdering):
        raise TypeError("ordering must be a MonomialOrdering")
    return ordering


# ---------------------------------------------------------------------------
# public operations


def standard_basis(
    M: Submodule, ordering: MonomialOrdering = LOCAL, budget: Budget | None = None
) -> StandardBasisResult:
    """Gröbner basis (global ordering) or Mora standard basis (local ordering) of ``M``."""
    _check_ordering(ordering)
    eng = _Engine(ordering, M.ring.n, budget)
    eng.auto_corner(M.r)
    start = eng.budget.steps
    basis = eng.standard_basis((_to_vec(g) for g in M.generators), ideal=M.r == 1)
    leads = tuple(_minimal_leads(g.lt for g in basis))
    return StandardBasisResult(
        basis=tuple(_from_vec(g.vec, M.ring, M.r) for g in basis),
        ordering=ordering,
        leading_module=leads,
        ring=M.ring,
        r=M.r,
        steps=eng.budget.steps - start,
    )


def normal_form(
    v: TermVector, G: Sequence[TermVector], ordering: MonomialOrdering = LOCAL, budget: Budget | None = None
) -> TermVector:
    """Reduce ``v`` by ``G`` until its leading term is not divisible by any leading term of ``G``.

    Under a local ordering this is Mora's weak normal form: the result equals
    ``u*v - sum(a_i G_i)`` for some unit ``u``, and it is normalised up to a
    rational factor.
    """
    _check_ordering(ordering)
    for g in G:
        _same_shape(v, g)
    eng = _Engine(ordering, v.ring.n, budget)
    reducers = [eng.make(_to_vec(g)) for g in G if not g.is_zero()]
    eng.auto_corner(v.r)
    if eng.corner_components:
        eng._update_corner(g.lt for g in reducers)
    h = eng.normal_form(_to_vec(v), reducers)
    return _from_vec(h, v.ring, v.r)


def _sb_elems(M: Submodule, ordering, budget) -> tuple[_Engine, list[_Elem]]:
    eng = _Engine(ordering, M.ring.n, budget)
    eng.auto_corner(M.r)
    return eng, eng.standard_basis((_to_vec(g) for g in M.generators), ideal=M.r == 1)


def module_membership(
    v: TermVector, M: Submodule, ordering: MonomialOrdering = LOCAL, budget: Budget | None = None
) -> bool:
    if v.r != M.r:
        raise ValueError(f"rank mismatch: {v.r} vs {M.r}")
    if v.ring != M.ring:
        raise RingMismatchError("vector and module from different rings")
    eng, basis = _sb_elems(M, ordering, budget)
    return not eng.normal_form(_to_vec(v), basis)


def module_contains(
    A: Submodule, B: Submodule, ordering: MonomialOrdering = LOCAL, budget: Budget | None = None
) -> bool:
    """True when every generator of ``B`` lies in ``A``."""
    if A.r != B.r:
        raise ValueError(f"rank mismatch: {A.r} vs {B.r}")
    eng, basis = _sb_elems(A, ordering, budget)
    return all(not eng.normal_form(_to_vec(g), basis) for g in B.generators)


def module_equality(
    A: Submodule, B: Submodule, ordering: MonomialOrdering = LOCAL, budget: Budget | None = None
) -> bool:
    return module_contains(A, B, ordering, budget) and module_contains(B, A, ordering, budget)


def _count_standard(monos: list[tuple], n: int, max_degree: int | None = None):
    """Number of monomials in n variables divisible by none of ``monos``,
    optionally only those of total degree at most ``max_degree``."""
    memo = {}

    def minimalize(ms):
        out = []
        for m in sorted(set(ms), key=sum):
            if not any(_divides(o, m) for o in out):
                out.append(m)
        return tuple(sorted(out))

    def count(ms, k, bound):
        if bound is not None and bound < 0:
            return 0
        if any(not any(m) for m in ms):
            return 0
        if k == 0:
            return 1
        key = (ms, k, bound)
        if key in memo:
            return memo[key]
        pure = [m[0] for m in ms if not any(m[1:])]
        if not pure and bound is None:
            return INFINITE
        top = min(pure) if pure else bound + 1
        if bound is not None:
            top = min(top, bound + 1)
        total = 0
        for a in range(top):
            sub_ms = minimalize(m[1:] for m in ms if m[0] <= a)
            c = count(sub_ms, k - 1, None if bound is None else bound - a)
            if c == INFINITE:
                memo[key] = INFINITE
                return INFINITE
            total += c
        memo[key] = total
        return total

    if n == 0:
        return 0 if monos else 1
    return count(minimalize(monos), n, max_degree)


def colength_of_leading_module(leads: Iterable[tuple[int, tuple]], r: int, n: int, max_degree: int | None = None):
    by_comp: dict[int, list] = {c: [] for c in range(r)}
    for c, e in leads:
        by_comp[c].append(e)
    total = 0
    for c in range(r):
        k = _count_standard(by_comp[c], n, max_degree)
        if k == INFINITE:
            return INFINITE
        total += k
    return total


def colength(M: Submodule, ordering: MonomialOrdering = LOCAL, budget: Budget | None = None):
    """dim_Q of R^r / M, localized at the origin when ``ordering`` is local.

    Returns :data:`INFINITE` when the quotient is infinite dimensional.
    """
    if not ordering.is_local:
        raise ValueError("colength at the origin needs a local ordering")
    # The quotient does not depend on the ordering.  Work modulo m^(N+1) for
    # growing N: once no standard monomial has degree N, m^N lies in M
    # (Nakayama) and the truncated count is exact.
    n, r = M.ring.n, M.r
    vecs = [_to_vec(g) for g in M.generators]
    N = _FIRST_TRUNCATION
    while N <= _LAST_TRUNCATION:
        leads = _colength_leads(vecs, r, n, N + 1, budget)
        upto = colength_of_leading_module(leads, r, n, max_degree=N)
        if upto == colength_of_leading_module(leads, r, n, max_degree=N - 1):
            return upto
        N *= 2
    return colength_of_leading_module(_colength_leads(vecs, r, n, None, budget), r, n)


_FIRST_TRUNCATION = 8
_LAST_TRUNCATION = 64


def _colength_leads(vecs, r: int, n: int, trunc: int | None, budget: Budget | None):
    eng = _Engine(LOCAL, n, budget)
    eng.enable_corner(r)
    eng.trunc = trunc
    if trunc is not None:
        vecs = [_primitive(eng._truncate(v)) for v in vecs]
    basis = eng.standard_basis((v for v in vecs if v), ideal=r == 1)
    return _minimal_leads(g.lt for g in basis)


def krull_dimension(M: Submodule, ordering: MonomialOrdering = LOCAL, budget: Budget | None = None) -> int:
    """Krull dimension of R/M for an ideal M (-1 when M is the unit ideal)."""
    if M.r != 1:
        raise ValueError("krull_dimension is implemented for ideals")
    n = M.ring.n
    sb = standard_basis(M, ordering, budget)
    supports = []
    for _, e in sb.leading_module:
        supports.append(sum(1 << i for i, x in enumerate(e) if x))
    if any(s == 0 for s in supports):
        return -1
    for size in range(n, -1, -1):
        for combo in itertools.combinations(range(n), size):
            mask = sum(1 << i for i in combo)
            if not any(s & ~mask == 0 for s in supports):
                return size
    return 0


def _syzygy_vecs(
    vecs: list[dict], r: int, ordering: MonomialOrdering, n: int, budget: Budget | None, scales=None
) -> list[dict]:
    """Syzygies of ``vecs``; when ``scales`` is given, vecs[i] stands for
    the generator multiplied by scales[i]."""
    eng = _Engine(ordering.with_elimination(r), n, budget)
    aug = []
    one = (0,) * n
    for i, v in enumerate(vecs):
        w = dict(v)
        w[(r + i, one)] = scales[i] if scales else 1
        aug.append(w)
    basis = eng.standard_basis(aug, ideal=False)
    out = []
    for g in basis:
        if g.comp >= r:
            out.append({(c - r, e): v for (c, e), v in g.vec.items()})
    out.sort(key=lambda v: sorted((c, e) for c, e in v))
    return out


class _CapReached(BudgetExceeded):
    pass


class _StepCap(Budget):
    """A step cap nested inside another budget."""

    def __init__(self, parent: Budget, cap: int):
        super().__init__(max_steps=cap)
        self.parent = parent

    def tick(self, n: int = 1) -> None:
        self.parent.tick(n)
        self.steps += n
        if self.steps > self.max_steps:
            raise _CapReached(f"step cap {self.max_steps} reached")


_FIRST_CAP = 20000


def _syzygy_vecs_auto(vecs, r: int, n: int, budget: Budget | None, scales=None, first=LOCAL) -> list[dict]:
    """Local syzygies by whichever ordering finishes first.

    Polynomial syzygies generate the local ones, so a global computation is
    as good as a Mora one; which is faster depends on the input.  The two are
    tried in turn under growing step caps, so the outcome is deterministic.
    """
    budget = budget or Budget()
    cap = _FIRST_CAP
    while True:
        for ordering in (first, GLOBAL if first is LOCAL else LOCAL):
            try:
                return _syzygy_vecs(vecs, r, ordering, n, _StepCap(budget, cap), scales)
            except _CapReached:
                log.debug("syzygies under %s gave up after %d steps", ordering.kind, cap)
        cap *= 4


def syzygy_module(
    G: Sequence[TermVector] | Submodule,
    ordering: MonomialOrdering | None = None,
    budget: Budget | None = None,
    prefer: MonomialOrdering = LOCAL,
) -> Submodule:
    """Generators of {a : sum a_i G_i = 0}, computed from a standard basis of
    the augmented vectors (G_i, e_i) under an ordering that eliminates the
    first block of components.

    With ``ordering=None`` the result generates the syzygies over the local
    ring and the ordering is chosen automatically, trying ``prefer`` first."""
    gens = list(G.generators) if isinstance(G, Submodule) else list(G)
    if not gens:
        raise ValueError("need at least one generator")
    ring, r = gens[0].ring, gens[0].r
    for g in gens:
        _same_shape(gens[0], g)
    ints = [_to_int_vec(g) for g in gens]
    vecs, scales = [v for v, _ in ints], [d for _, d in ints]
    if ordering is None:
        syz = _syzygy_vecs_auto(vecs, r, ring.n, budget, scales, prefer)
    else:
        syz = _syzygy_vecs(vecs, r, ordering, ring.n, budget, scales)
    m = len(gens)
    return Submodule(ring, m, [_from_vec(s, ring, m) for s in syz])


# -- resolutions ------------------------------------------------------------


def _component(vec: dict, i: int) -> dict:
    return {e: v for (c, e), v in vec.items() if c == i}


def _poly_times_vec(p: dict, vec: dict) -> dict:
    out: dict = {}
    get = out.get
    for pe, pv in p.items():
        for (c, e), v in vec.items():
            t = (c, tuple(map(add, pe, e)))
            nv = get(t, 0) + pv * v
            if nv:
                out[t] = nv
            else:
                del out[t]
    return out


def _vec_sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for t, v in b.items():
        nv = out.get(t, 0) - v
        if nv:
            out[t] = nv
        else:
            del out[t]
    return out


def _prune_units(rels: list[dict], r: int, n: int) -> tuple[list[dict], list[int]]:
    """Eliminate basis vectors of R^r made redundant by relations with a unit entry.

    Returns the surviving relations (re-indexed) and the surviving basis indices.
    """
    zero = (0,) * n
    rels = [_primitive(v) for v in rels if v]
    alive = list(range(r))
    while True:
        hit = None
        for j, s in enumerate(rels):
            units = sorted(c for (c, e) in s if e == zero)
            if units:
                if hit is None or len(s) < len(rels[hit[0]]):
                    hit = (j, units[0])
        if hit is None:
            break
        j, i = hit
        s = rels[j]
        si = _component(s, i)
        new = []
        for k, s2 in enumerate(rels):
            if k == j:
                continue
            s2i = _component(s2, i)
            if s2i:
                s2 = _vec_sub(_poly_times_vec(si, s2), _poly_times_vec(s2i, s))
                s2 = _primitive(s2)
            if s2:
                new.append(s2)
        rels = new
        alive.remove(i)
    index = {old: k for k, old in enumerate(alive)}
    rels = [{(index[c], e): v for (c, e), v in s.items()} for s in rels]
    return rels, alive


def minimal_free_resolution(
    M: Submodule, ordering: MonomialOrdering = LOCAL, budget: Budget | None = None
) -> Resolution:
    """Minimal free resolution of R^r / M over the local ring at the origin.

    Syzygies are iterated and pruned of unit entries (Nakayama) at each step.
    """
    if not ordering.is_local:
        raise ValueError("minimal resolutions are computed over the local ring; pass a local ordering")
    ring, n = M.ring, M.ring.n
    rels, alive = _prune_units([_to_vec(g) for g in M.generators], M.r, n)
    ranks = [len(alive)]
    maps: list[list[dict]] = []
    while rels:
        if len(maps) > n + 1:
            raise RuntimeError("resolution longer than the number of variables; this is a bug")
        syz = _syzygy_vecs_auto(rels, ranks[-1], n, budget)
        syz, kept = _prune_units(syz, len(rels), n)
        maps.append([rels[j] for j in kept])
        ranks.append(len(kept))
        rels = syz
    public_maps = tuple(
        tuple(_from_vec(col, ring, ranks[i]) for col in cols) for i, cols in enumerate(maps)
    )
    return Resolution(maps=public_maps, ranks=tuple(ranks), minimal=True, ring=ring)


def projective_dimension(M: Submodule, ordering: MonomialOrdering = LOCAL, budget: Budget | None = None) -> int:
    res = minimal_free_resolution(M, ordering, budget)
    if res.ranks[0] == 0:
        raise ValueError("the quotient is the zero module")
    return res.length


def depth(M: Submodule, ordering: MonomialOrdering = LOCAL, budget: Budget | None = None) -> int:
    """Depth of R^r / M at the origin, by Auslander-Buchsbaum."""
    return M.ring.n - projective_dimension(M, ordering, budget)


def s_vector_residues(sb: StandardBasisResult) -> list[TermVector]:
    """Normal forms of all S-vectors of a computed basis; all zero for a standard basis."""
    eng = _Engine(sb.ordering, sb.ring.n)
    elems = [eng.make(_to_vec(b)) for b in sb.basis if not b.is_zero()]
    eng.auto_corner(sb.r)
    if eng.corner_components:
        eng._update_corner(e.lt for e in elems)
    out = []
    for f, g in itertools.combinations(elems, 2):
        if f.comp != g.comp:
            continue
        s = eng.spoly(f, g, _lcm(f.exp, g.exp))
        h = eng.normal_form(s, elems)
        if h:
            out.append(_from_vec(h, sb.ring, sb.r))
    return out
