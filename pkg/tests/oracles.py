"""Independent reference computations used by the tests.

Nothing here calls the standard-basis engine: colengths come from exact
linear algebra on truncated polynomial spaces.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

from germinv import Polynomial, RingContext


def monomials_below(n: int, D: int) -> list[tuple[int, ...]]:
    """Exponent vectors of total degree < D."""
    out = []
    for d in range(D):
        for c in itertools.combinations_with_replacement(range(n), d):
            e = [0] * n
            for i in c:
                e[i] += 1
            out.append(tuple(e))
    return out


def rank(rows: list[dict]) -> int:
    """Exact rank of sparse rows {column: Fraction}."""
    pivots: dict = {}
    r = 0
    for row in rows:
        row = {k: Fraction(v) for k, v in row.items() if v}
        while row:
            col = min(row)
            if col not in pivots:
                pivots[col] = row
                r += 1
                break
            prow = pivots[col]
            f = row[col] / prow[col]
            for k, v in prow.items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return r


def truncated_colength(gens: list[Polynomial], r: int, n: int, D: int) -> int:
    """dim of O^r / (M + m^D O^r) via the Macaulay matrix of M in degrees < D.

    ``gens`` are lists of r polynomials (module elements).  Modulo m^D every
    polynomial with non-zero constant term is a unit, so the polynomial span
    already equals the local one.
    """
    monos = monomials_below(n, D)
    col = {(c, e): i for i, (c, e) in enumerate((c, e) for c in range(r) for e in monos)}
    rows = []
    for g in gens:
        for m in monos:
            row = {}
            for c, p in enumerate(g):
                for e, coef in p.terms.items():
                    t = tuple(a + b for a, b in zip(e, m))
                    if sum(t) < D:
                        row[col[(c, t)]] = row.get(col[(c, t)], 0) + coef
            if row:
                rows.append(row)
    return len(col) - rank(rows)


def local_colength(gens: list[Polynomial], r: int, n: int, max_degree: int = 40):
    """Stabilised truncated colength; None if it has not stabilised by ``max_degree``.

    Equal values at D and D+1 mean m^D lies in M + m^(D+1), hence in M.
    """
    prev = truncated_colength(gens, r, n, 1)
    for D in range(2, max_degree + 1):
        cur = truncated_colength(gens, r, n, D)
        if cur == prev:
            return cur
        prev = cur
    return None


def ideal_colength(polys: list[Polynomial], max_degree: int = 40):
    n = polys[0].ring.n
    return local_colength([[p] for p in polys], 1, n, max_degree)


def random_poly(R: RingContext, rng: random.Random, terms: int, max_deg: int, min_deg: int = 1) -> Polynomial:
    out = R.zero()
    for _ in range(terms):
        d = rng.randint(min_deg, max_deg)
        e = [0] * R.n
        for _ in range(d):
            e[rng.randrange(R.n)] += 1
        out = out + Polynomial(R, {tuple(e): rng.randint(-5, 5)})
    return out


def random_zero_dim_ideal(rng: random.Random) -> list[Polynomial]:
    """Perturbed pure powers, mixed together and multiplied by units.

    Unit factors and low-degree perturbations make the local colength differ
    from the global one, which is what the oracle must catch.
    """
    n = rng.randint(1, 3)
    R = RingContext(("x", "y", "z")[:n])
    gens = []
    for i in range(n):
        a = rng.randint(1, 6 if n < 3 else 4)
        g = R.var(i) ** a + random_poly(R, rng, rng.randint(0, 3), a + 3, 1)
        if rng.random() < 0.5:
            g = g * (R.one() + random_poly(R, rng, rng.randint(1, 2), 2, 1))
        gens.append(g)
    if n > 1 and rng.random() < 0.5:
        i, j = rng.sample(range(n), 2)
        gens[i] = gens[i] + random_poly(R, rng, 1, 2, 0) * gens[j]
    for _ in range(rng.randint(0, 2)):
        gens.append(random_poly(R, rng, rng.randint(1, 3), 4, 1))
    return [g for g in gens if g]


def milnor_by_oracle(f: Polynomial):
    return ideal_colength([f.diff(i) for i in range(f.ring.n)])


def is_infinite(v) -> bool:
    return isinstance(v, float) and math.isinf(v)
