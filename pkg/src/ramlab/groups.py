"""Finite groups given by an explicit multiplication table on integer ids."""

from __future__ import annotations

import itertools
from functools import cached_property
from math import gcd
from typing import Iterable, Mapping

from .errors import DomainError


class FiniteGroup:
    """A finite group on the ids ``elements`` with ``table[(a, b)] = a*b``."""

    def __init__(self, elements: Iterable[int], identity: int, table: Mapping[tuple[int, int], int]):
        self.elements = tuple(sorted(elements))
        self.identity = identity
        self.table = dict(table)
        self._index = {g: i for i, g in enumerate(self.elements)}

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        return cls(range(n), 0, {(a, b): (a + b) % n for a in range(n) for b in range(n)})

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, a: int, b: int) -> int:
        return self.table[(a, b)]

    def inverse(self, a: int) -> int:
        for b in self.elements:
            if self.table[(a, b)] == self.identity:
                return b
        raise DomainError(f"element {a} has no inverse")

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    @cached_property
    def abelian(self) -> bool:
        return all(self.table[(a, b)] == self.table[(b, a)]
                   for a, b in itertools.combinations(self.elements, 2))

    def is_abelian(self) -> bool:
        return self.abelian

    def is_subgroup(self, H: Iterable[int]) -> bool:
        H = set(H)
        if self.identity not in H or not H <= set(self.elements):
            return False
        return all(self.table[(a, b)] in H for a in H for b in H)

    def is_normal(self, H: Iterable[int]) -> bool:
        H = set(H)
        if not self.is_subgroup(H):
            return False
        if self.abelian:
            return True
        for g in self.elements:
            gi = self.inverse(g)
            if any(self.mul(self.mul(g, h), gi) not in H for h in H):
                return False
        return True

    def exponent(self) -> int:
        e = 1
        for a in self.elements:
            k = self.element_order(a)
            e = e * k // gcd(e, k)
        return e

    def characters(self) -> list[tuple[int, ...]]:
        """All homomorphisms to Z/|G|, as value tuples aligned with ``elements``.

        Only defined for abelian groups; the trivial character comes first.
        """
        if not self.is_abelian():
            raise DomainError("characters are only enumerated for abelian groups")
        N = self.order
        gens: list[int] = []
        span = {self.identity}
        for g in self.elements:
            if g not in span:
                gens.append(g)
                span = self._closure(span | {g})
        found = set()
        choices = [range(0, N, N // self.element_order(g)) for g in gens]
        for vals in itertools.product(*choices):
            chi = self._extend(gens, vals)
            if chi is not None:
                found.add(chi)
        return sorted(found)

    def _closure(self, S: set[int]) -> set[int]:
        S = set(S)
        while True:
            new = {self.mul(a, b) for a in S for b in S} - S
            if not new:
                return S
            S |= new

    def _extend(self, gens, vals):
        N = self.order
        chi = {self.identity: 0}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g, v in zip(gens, vals):
                    y = self.mul(x, g)
                    val = (chi[x] + v) % N
                    if y in chi:
                        if chi[y] != val:
                            return None
                    else:
                        chi[y] = val
                        nxt.append(y)
            frontier = nxt
        for a in self.elements:
            for b in self.elements:
                if chi[self.mul(a, b)] != (chi[a] + chi[b]) % N:
                    return None
        return tuple(chi[g] for g in self.elements)
