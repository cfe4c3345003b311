"""Local invariants of singular germs: Milnor, Tjurina, Bruce-Roberts numbers,
Chern numbers of 1-form collections and cusp counts, computed exactly."""

from .poly import GLOBAL, LOCAL, MonomialOrdering, Polynomial, RingContext, compare_monomials, partial_derivative
from .parser import parse_polynomial

__version__ = "0.1.0"
