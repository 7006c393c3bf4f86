"""Finite MV-algebras given by explicit operation tables, and their filters."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Iterable

from .chain import Chain
from .errors import NotAnAlgebra

Element = Hashable


class FiniteMVAlgebra:
    """A finite MV-algebra as explicit tables for oplus and negation.

    The remaining operations (odot, implication, the lattice order) are
    derived.  Construction validates closure of the supplied tables.
    """

    def __init__(self, elements: Iterable[Element], oplus, neg, zero: Element):
        self.elements = tuple(elements)
        self._universe = set(self.elements)
        self._oplus = dict(oplus)
        self._neg = dict(neg)
        self.zero = zero
        self._validate()
        self.one = self.neg(zero)

    def _validate(self):
        if self.zero not in self._universe:
            raise NotAnAlgebra("zero not in carrier")
        for a in self.elements:
            if self._neg.get(a) not in self._universe:
                raise NotAnAlgebra(f"negation not closed at {a!r}")
            for b in self.elements:
                if self._oplus.get((a, b)) not in self._universe:
                    raise NotAnAlgebra(f"oplus not closed at ({a!r}, {b!r})")

    def oplus(self, a, b):
        return self._oplus[(a, b)]

    def neg(self, a):
        return self._neg[a]

    def odot(self, a, b):
        return self.neg(self.oplus(self.neg(a), self.neg(b)))

    def implies(self, a, b):
        return self.oplus(self.neg(a), b)

    def leq(self, a, b) -> bool:
        return self.implies(a, b) == self.one

    def odot_power(self, a, k: int):
        out = self.one
        for _ in range(k):
            out = self.odot(out, a)
        return out

    def stable_odot_power(self, a):
        """Iterate a -> a odot a ... until the value stops changing."""
        seen = set()
        cur = a
        while cur not in seen:
            seen.add(cur)
            cur = self.odot(cur, a)
        return cur

    @classmethod
    def from_chain(cls, chain: Chain) -> "FiniteMVAlgebra":
        n = chain.n
        elems = range(n + 1)
        oplus = {(a, b): min(a + b, n) for a in elems for b in elems}
        neg = {a: n - a for a in elems}
        return cls(elems, oplus, neg, 0)

    @classmethod
    def power_of_chain(cls, chain: Chain, size: int) -> "FiniteMVAlgebra":
        """The product algebra of chain-valued tuples of the given length."""
        n = chain.n
        elems = list(itertools.product(range(n + 1), repeat=size))
        oplus = {
            (a, b): tuple(min(x + y, n) for x, y in zip(a, b))
            for a in elems
            for b in elems
        }
        neg = {a: tuple(n - x for x in a) for a in elems}
        return cls(elems, oplus, neg, tuple([0] * size))


@dataclass
class MVFilterView:
    """A candidate filter F inside a finite MV-algebra."""

    algebra: FiniteMVAlgebra
    members: frozenset = field(default_factory=frozenset)


def is_mv_filter(view: MVFilterView) -> bool:
    """Check the three filter axioms: contains 1, odot-closed, upward closed."""
    alg, members = view.algebra, view.members
    if not members <= set(alg.elements):
        raise NotAnAlgebra("filter members outside the carrier")
    if alg.one not in members:
        return False
    for x in members:
        for y in members:
            if alg.odot(x, y) not in members:
                return False
        for y in alg.elements:
            if alg.leq(x, y) and y not in members:
                return False
    return True


def principal_filter(algebra: FiniteMVAlgebra, x) -> MVFilterView:
    """The smallest filter containing x: the upward set of the stable odot power."""
    floor = algebra.stable_odot_power(x)
    members = frozenset(y for y in algebra.elements if algebra.leq(floor, y))
    return MVFilterView(algebra, members)


def check_grigolia(chain: Chain) -> bool:
    """Verify both Grigolia identities pointwise on the chain.

    The first identity equates the n-fold and (n+1)-fold odot powers; the
    second relates oplus and odot powers for every m in 2..n-1 that does not
    divide n.
    """
    alg = FiniteMVAlgebra.from_chain(chain)
    n = chain.n

    def oplus_power(a, k):
        out = alg.zero
        for _ in range(k):
            out = alg.oplus(out, a)
        return out

    for x in alg.elements:
        if alg.odot_power(x, n) != alg.odot_power(x, n + 1):
            return False
    for m in range(2, n):
        if n % m == 0:
            continue
        for x in alg.elements:
            lhs = oplus_power(alg.odot_power(x, m), n + 1)
            rhs = alg.odot_power(oplus_power(alg.odot_power(x, m - 1), m), n + 1)
            if lhs != rhs:
                return False
    return True
