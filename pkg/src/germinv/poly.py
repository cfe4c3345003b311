"""Exact multivariate polynomials over the rationals.

Polynomials are immutable maps from exponent tuples to nonzero
:class:`fractions.Fraction` coefficients, bound to a :class:`RingContext`
that names the variables.  Term order for iteration and printing comes from
a :class:`MonomialOrdering` (degree-reverse-lexicographic by default).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence

Scalar = Fraction
Monomial = tuple  # tuple[int, ...] of length ring.n


class RingMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class RingContext:
    """Ordered, named variables of a polynomial ring over Q."""

    variables: tuple[str, ...]

    def __init__(self, variables: Iterable[str]):
        names = tuple(variables)
        if not names:
            raise ValueError("a ring needs at least one variable")
        for name in names:
            if not name or not (name[0].isalpha() or name[0] == "_") or not all(
                ch.isalnum() or ch == "_" for ch in name
            ):
                raise ValueError(f"invalid variable name {name!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        object.__setattr__(self, "variables", names)

    @property
    def n(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def gens(self) -> list[Polynomial]:
        return [self.var(i) for i in range(self.n)]

    def var(self, i: int | str) -> Polynomial:
        if isinstance(i, str):
            i = self.index(i)
        e = [0] * self.n
        e[i] = 1
        return Polynomial(self, {tuple(e): Fraction(1)})

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.const(1)

    def const(self, c) -> Polynomial:
        c = Fraction(c)
        return Polynomial(self, {(0,) * self.n: c} if c else {})

    def parse(self, src: str) -> Polynomial:
        from .parser import parse_polynomial

        return parse_polynomial(src, self)

    def extend(self, names: Iterable[str]) -> RingContext:
        return RingContext(self.variables + tuple(names))

    def __repr__(self) -> str:
        return f"RingContext({', '.join(self.variables)})"


# ---------------------------------------------------------------------------
# orderings


GLOBAL_KINDS = ("degrevlex",)
LOCAL_KINDS = ("negdegrevlex",)


@dataclass(frozen=True)
class MonomialOrdering:
    """A monomial (or module-monomial) ordering.

    ``kind`` is ``"degrevlex"`` (global: every variable > 1) or
    ``"negdegrevlex"`` (local: every variable < 1).  For free modules,
    ``module`` picks term-over-position (``"top"``) or position-over-term
    (``"pot"``); lower component indices rank higher.  With ``eliminate=k``
    every term in components ``0..k-1`` outranks every term in the remaining
    components, which makes the ordering an elimination ordering for the
    trailing block (used to extract syzygies).
    """

    kind: str = "degrevlex"
    module: str = "top"
    eliminate: int = 0

    def __post_init__(self):
        if self.kind not in GLOBAL_KINDS + LOCAL_KINDS:
            raise ValueError(f"unknown ordering kind {self.kind!r}")
        if self.module not in ("top", "pot"):
            raise ValueError(f"unknown module extension {self.module!r}")
        if self.eliminate < 0:
            raise ValueError("eliminate must be non-negative")

    @property
    def is_local(self) -> bool:
        return self.kind in LOCAL_KINDS

    @property
    def is_global(self) -> bool:
        return not self.is_local

    def with_elimination(self, k: int) -> MonomialOrdering:
        return MonomialOrdering(self.kind, self.module, k)

    def monomial_key(self, e: Sequence[int]) -> tuple:
        """Sort key: a larger key means a larger monomial."""
        d = sum(e)
        rev = tuple(-x for x in reversed(e))
        return (d,) + rev if self.is_global else (-d,) + rev

    def term_key(self, comp: int, e: Sequence[int]) -> tuple:
        mk = self.monomial_key(e)
        if self.module == "top":
            key = mk + (-comp,)
        else:
            key = (-comp,) + mk
        if self.eliminate:
            key = (comp < self.eliminate,) + key
        return key


GLOBAL = MonomialOrdering("degrevlex")
LOCAL = MonomialOrdering("negdegrevlex")


def compare_monomials(ordering: MonomialOrdering, a: Sequence[int], b: Sequence[int]) -> int:
    """Return -1, 0 or 1 as monomial ``a`` is less than, equal to, or greater than ``b``."""
    if len(a) != len(b):
        raise RingMismatchError("monomials from rings of different size")
    ka, kb = ordering.monomial_key(a), ordering.monomial_key(b)
    return (ka > kb) - (ka < kb)


# ---------------------------------------------------------------------------
# polynomials


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


class Polynomial:
    """Immutable polynomial with exact rational coefficients."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: RingContext, terms: Mapping[Monomial, object] | None = None):
        self.ring = ring
        clean: dict[Monomial, Fraction] = {}
        n = ring.n
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != n or any(x < 0 for x in e):
                raise ValueError(f"bad exponent vector {e} for {ring}")
            c = Fraction(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
                if not clean[e]:
                    del clean[e]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring: RingContext, terms: dict) -> Polynomial:
        p = cls.__new__(cls)
        p.ring = ring
        p._terms = terms
        p._hash = None
        return p

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self, ordering: MonomialOrdering = GLOBAL) -> list[tuple[Monomial, Fraction]]:
        """Terms in descending order under ``ordering``."""
        return sorted(self._terms.items(), key=lambda t: ordering.monomial_key(t[0]), reverse=True)

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def lowest_degree(self) -> int:
        """Order of vanishing at the origin (-1 for the zero polynomial)."""
        return min((sum(e) for e in self._terms), default=-1)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.ring.n, Fraction(0))

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def coefficient(self, e: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(e), Fraction(0))

    def leading_term(self, ordering: MonomialOrdering = GLOBAL) -> tuple[Monomial, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self._terms, key=ordering.monomial_key)
        return e, self._terms[e]

    def variables_used(self) -> set[int]:
        return {i for e in self._terms for i, x in enumerate(e) if x}

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: Polynomial) -> None:
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Rational)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial._raw(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def scale(self, c) -> Polynomial:
        c = Fraction(c)
        if not c:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {e: v * c for e, v in self._terms.items()})

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, (int, Rational)) and not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, Fraction] = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                e = _mono_mul(ea, eb)
                v = out.get(e, 0) + ca * cb
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Polynomial._raw(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def diff(self, v: int | str) -> Polynomial:
        return partial_derivative(self, v)

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        pt = [Fraction(x) for x in point]
        if len(pt) != self.ring.n:
            raise ValueError("point has wrong dimension")
        for e, c in self._terms.items():
            term = c
            for x, k in zip(pt, e):
                if k:
                    term *= x**k
            total += term
        return total

    def embed(self, ring: RingContext, positions: Sequence[int] | None = None) -> Polynomial:
        """Re-read this polynomial in ``ring``; variable i goes to ``positions[i]``.

        By default variables are matched by name.
        """
        if positions is None:
            positions = [ring.index(name) for name in self.ring.variables]
        out = {}
        for e, c in self._terms.items():
            f = [0] * ring.n
            for i, k in enumerate(e):
                if k:
                    f[positions[i]] += k
            out[tuple(f)] = c
        return Polynomial._raw(ring, out)

    # -- comparison / display -------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Rational)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"


def partial_derivative(p: Polynomial, v: int | str) -> Polynomial:
    """Formal partial derivative of ``p`` with respect to variable ``v``."""
    if isinstance(v, str):
        v = p.ring.index(v)
    if not 0 <= v < p.ring.n:
        raise IndexError(f"variable index {v} out of range for {p.ring}")
    out = {}
    for e, c in p._terms.items():
        k = e[v]
        if k:
            out[e[:v] + (k - 1,) + e[v + 1 :]] = c * k
    return Polynomial._raw(p.ring, out)


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(e: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for name, k in zip(names, e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_polynomial(p: Polynomial, ordering: MonomialOrdering = GLOBAL) -> str:
    """Canonical text: terms descending under ``ordering``, explicit ``*`` and ``^``."""
    if not p._terms:
        return "0"
    out = []
    for i, (e, c) in enumerate(p.items(ordering)):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = format_monomial(e, p.ring.variables)
        if not mono:
            body = _format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_coeff(a)}*{mono}"
        if i == 0:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)
