"""Swan and Artin conductors of representations of a filtered Galois group.

A representation is described only through the function H -> dim V^H on
subgroups, which is all that the conductor formulas use.  Supported kinds:
characters with values in Z/|G| (abelian groups), permutation
representations, the regular representation, and direct sums of these.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DomainError, InconsistencyError, IntegralityError
from .groups import FiniteGroup
from .ramification import UpperFiltration, is_bounded_by

KINDS = ("character", "permutation", "regular", "direct_sum")


@dataclass(frozen=True, eq=False)
class GroupRepresentation:
    kind: str
    group: FiniteGroup
    values: tuple[int, ...] = ()
    perms: tuple[tuple[int, ...], ...] = ()
    parts: tuple["GroupRepresentation", ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown representation kind {self.kind!r}")
        G = self.group
        if self.kind == "character":
            if len(self.values) != G.order:
                raise DomainError("character needs one value per group element")
            N = G.order
            chi = dict(zip(G.elements, (v % N for v in self.values)))
            object.__setattr__(self, "values", tuple(chi[g] for g in G.elements))
            for a in G.elements:
                for b in G.elements:
                    if chi[G.mul(a, b)] != (chi[a] + chi[b]) % N:
                        raise DomainError("character is not a homomorphism")
        elif self.kind == "permutation":
            if len(self.perms) != G.order:
                raise DomainError("permutation action needs one permutation per group element")
            n = len(self.perms[0])
            act = dict(zip(G.elements, self.perms))
            if any(sorted(p) != list(range(n)) for p in self.perms):
                raise DomainError("action entries must be permutations of range(n)")
            if act[G.identity] != tuple(range(n)):
                raise DomainError("identity must act trivially")
            for a in G.elements:
                for b in G.elements:
                    ab = act[G.mul(a, b)]
                    if any(ab[x] != act[a][act[b][x]] for x in range(n)):
                        raise DomainError("permutation action does not respect composition")
        elif self.kind == "direct_sum":
            if not self.parts:
                raise DomainError("direct sum needs at least one summand")
            if any(part.group is not G for part in self.parts):
                raise DomainError("summands must share the group")

    @classmethod
    def character(cls, group: FiniteGroup, values: Iterable[int]) -> "GroupRepresentation":
        return cls("character", group, values=tuple(int(v) for v in values))

    @classmethod
    def trivial(cls, group: FiniteGroup) -> "GroupRepresentation":
        return cls.character(group, [0] * group.order)

    @classmethod
    def permutation(cls, group: FiniteGroup, perms: Mapping[int, Iterable[int]] | Iterable[Iterable[int]]):
        if isinstance(perms, Mapping):
            perms = [perms[g] for g in group.elements]
        return cls("permutation", group, perms=tuple(tuple(int(x) for x in p) for p in perms))

    @classmethod
    def regular(cls, group: FiniteGroup) -> "GroupRepresentation":
        return cls("regular", group)

    @classmethod
    def direct_sum(cls, *parts: "GroupRepresentation") -> "GroupRepresentation":
        return cls("direct_sum", parts[0].group, parts=tuple(parts))

    @property
    def dim(self) -> int:
        if self.kind == "character":
            return 1
        if self.kind == "permutation":
            return len(self.perms[0])
        if self.kind == "regular":
            return self.group.order
        return sum(part.dim for part in self.parts)


def all_characters(group: FiniteGroup) -> list[GroupRepresentation]:
    return [GroupRepresentation.character(group, v) for v in group.characters()]


def fixed_dim(rep: GroupRepresentation, H: Iterable[int]) -> int:
    """dim V^H."""
    H = frozenset(H)
    G = rep.group
    if not G.is_subgroup(H):
        raise DomainError(f"{sorted(H)} is not a subgroup")
    if rep.kind == "character":
        chi = dict(zip(G.elements, rep.values))
        return int(all(chi[h] == 0 for h in H))
    if rep.kind == "permutation":
        act = dict(zip(G.elements, rep.perms))
        seen: set[int] = set()
        orbits = 0
        for x in range(rep.dim):
            if x not in seen:
                orbits += 1
                seen |= {act[h][x] for h in H}
        return orbits
    if rep.kind == "regular":
        return G.order // len(H)
    return sum(fixed_dim(part, H) for part in rep.parts)


def _check_group(u: UpperFiltration, rep: GroupRepresentation):
    if u.group.elements != rep.group.elements or u.group.table != rep.group.table:
        raise DomainError("representation and filtration live on different groups")


def swan_conductor(u: UpperFiltration, rep: GroupRepresentation) -> int:
    """sum over positive upper breaks lam of lam * (dim V^(G^lam+) - dim V^(G^lam))."""
    _check_group(u, rep)
    total = Fraction(0)
    for lam in u.breaks:
        if lam > 0:
            total += lam * (fixed_dim(rep, u.subgroup_plus(lam)) - fixed_dim(rep, u.subgroup_at[lam]))
    if total.denominator != 1 or total < 0:
        raise IntegralityError(f"Swan conductor {total} is not a nonnegative integer")
    return int(total)


@dataclass(frozen=True)
class ConductorReport:
    swan: int
    epsilon: int
    artin: int

    def to_json(self) -> dict:
        return {"swan": self.swan, "epsilon": self.epsilon, "artin": self.artin}


def artin_conductor(u: UpperFiltration, rep: GroupRepresentation) -> ConductorReport:
    sw = swan_conductor(u, rep)
    eps = rep.dim - fixed_dim(rep, u.subgroup(0))
    return ConductorReport(sw, eps, eps + sw)


@dataclass(frozen=True)
class SwanBoundReport:
    swan: int
    dim: int
    lam: Fraction

    @property
    def bound(self) -> Fraction:
        return self.dim * self.lam

    def to_json(self) -> dict:
        b = Fraction(self.bound)
        return {"swan": self.swan, "dim": self.dim,
                "lambda": [Fraction(self.lam).numerator, Fraction(self.lam).denominator],
                "bound": [b.numerator, b.denominator], "holds": self.swan <= b}


def check_swan_dim_bound(u: UpperFiltration, rep: GroupRepresentation, lam) -> SwanBoundReport:
    """Sw(V) <= dim(V) * lam for a filtration bounded by lam."""
    lam = Fraction(lam)
    if not is_bounded_by(u, lam):
        raise DomainError(f"filtration is not bounded by {lam}")
    report = SwanBoundReport(swan_conductor(u, rep), rep.dim, lam)
    if report.swan > report.bound:
        raise InconsistencyError(f"Sw = {report.swan} exceeds dim * lambda = {report.bound}")
    return report
