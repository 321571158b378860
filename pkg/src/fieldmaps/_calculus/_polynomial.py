"""Truncated arithmetic on polynomials in monomial form.

A polynomial maps canonical tuples to monomial coefficients. All products
are truncated by a `TruncationOptions`, and every function reports whether
a nonzero term was dropped.
"""

import collections
from typing import Dict, Sequence, Tuple

from fieldmaps._data import TruncationOptions
from fieldmaps._series._coefficient_system import Monomials
from fieldmaps._series._multi_tuple import concatenate, empty_key, MultiTuple, profile


def multiply(a: Monomials, b: Monomials, truncation: TruncationOptions) -> Tuple[Monomials, bool]:
    out: Dict[MultiTuple, complex] = collections.defaultdict(complex)
    dropped = False
    for ka, ca in a.items():
        for kb, cb in b.items():
            key = concatenate(ka, kb)
            if truncation.allows(profile(key)):
                out[key] += ca * cb
            else:
                dropped = True
    return dict(out), dropped


def add_into(target: Dict[MultiTuple, complex], poly: Monomials, scale: complex = 1) -> None:
    for k, v in poly.items():
        target[k] = target.get(k, 0j) + scale * v


class Substituter:
    """Substitutes polynomials for the fields of a polynomial in r fields.

    Each factor gamma_j(y) of an outer monomial is replaced by the inner
    polynomial `inner[j][y]` (in s fields). Products of factor sequences are
    memoized by prefix, so outer monomials sharing factors (for example the
    same kernel at different output points) share work.

    Inner polynomials must not have a constant term. This makes truncating
    intermediate products exact: the degree of a product never decreases
    when more factors are multiplied in.
    """

    def __init__(self,
                 inner: Sequence[Dict[int, Monomials]],
                 arity: int,
                 truncation: TruncationOptions):
        self.inner = inner
        self.arity = arity
        self.truncation = truncation
        self.dropped = False
        self._one: Monomials = {empty_key(arity): 1 + 0j}
        self._products: Dict[Tuple[Tuple[int, int], ...], Monomials] = {(): self._one}

    def _factor(self, j: int, y: int) -> Monomials:
        return self.inner[j].get(y, {})

    def product(self, factors: Tuple[Tuple[int, int], ...]) -> Monomials:
        cached = self._products.get(factors)
        if cached is not None:
            return cached
        if len(factors) > self.truncation.degree_cap:
            result: Monomials = {}
            if all(self._factor(j, y) for j, y in factors):
                self.dropped = True
        else:
            head = self.product(factors[:-1])
            if head:
                result, dropped = multiply(head, self._factor(*factors[-1]), self.truncation)
                self.dropped |= dropped
            else:
                result = {}
        self._products[factors] = result
        return result

    def substitute(self, outer: Monomials) -> Monomials:
        out: Dict[MultiTuple, complex] = {}
        for key, c in outer.items():
            factors = tuple((j, y) for j, slot in enumerate(key) for y in slot)
            add_into(out, self.product(factors), c)
        return out


def drop_zeros(poly: Monomials) -> Monomials:
    return {k: v for k, v in poly.items() if v != 0}
