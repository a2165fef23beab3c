"""Ramification filtrations, Herbrand functions, differents and discriminants.

Lower numbering is read off from the integers d_s = v_L(s(u) - u), where u is
the uniformizer of the datum: G_mu = {s : d_s >= mu + 1}.  Breaks are the
integers mu >= 0 with G_mu != G_(mu+1), i.e. the values d_s - 1.

All numbers are exact: lower breaks are ints, upper breaks and Herbrand
breakpoints are ``Fraction`` objects.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from typing import Sequence

from .algebra import FqPolynomial
from .errors import DomainError, InconsistencyError, PrecisionError
from .groups import FiniteGroup
from .local import (MAX_ESCALATIONS, ExtElement, GaloisDatum, LaurentSeries, base_change_tame,
                    verify_datum)


def _ceil(x) -> int:
    return math.ceil(Fraction(x))


@dataclass(frozen=True)
class RamificationFiltration:
    """Lower-numbering filtration of a finite group acting totally ramified.

    ``d_values`` maps every non-identity id to d_s; ``subgroup_at`` holds
    G_-1, G_0 and G_b for each break b.
    """

    group: FiniteGroup
    d_values: dict[int, int]
    breaks: tuple[int, ...] = ()
    subgroup_at: dict[int, frozenset[int]] = field(default_factory=dict)
    datum: GaloisDatum | None = None
    p: int | None = None

    @classmethod
    def from_d_values(cls, group: FiniteGroup, d_values: dict[int, int],
                      datum: GaloisDatum | None = None, p: int | None = None) -> "RamificationFiltration":
        if any(d < 1 for d in d_values.values()):
            raise InconsistencyError("v_L(s(u) - u) < 1: the extension is not totally ramified")
        breaks = tuple(sorted({d - 1 for d in d_values.values()}))
        G = frozenset(group.elements)
        sub = {-1: G, 0: G}
        for b in breaks:
            sub[b] = frozenset([group.identity] + [s for s, d in d_values.items() if d >= b + 1])
        f = cls(group, dict(d_values), breaks, sub, datum, p)
        f._check_invariants()
        return f

    @classmethod
    def from_chain(cls, orders: Sequence[int], breaks: Sequence[int], p: int | None = None) -> "RamificationFiltration":
        """Filtration on the cyclic group Z/N with G_(breaks[i]) of order ``orders[i]``.

        ``orders[0]`` is N; orders strictly decrease by divisors, and the
        subgroup after the last break is trivial.  Used for custom filtrations.
        """
        if len(orders) != len(breaks) or not orders:
            raise DomainError("need one subgroup order per break")
        N = orders[0]
        group = FiniteGroup.cyclic(N)
        d_values = {}
        for b, k, nxt in zip(breaks, orders, list(orders[1:]) + [1]):
            if k % nxt or k == nxt:
                raise DomainError("subgroup orders must strictly decrease along divisors")
            for s in range(1, N):
                in_k = s % (N // k) == 0
                in_next = s % (N // nxt) == 0
                if in_k and not in_next:
                    d_values[s] = b + 1
        return cls.from_d_values(group, d_values, p=p)

    @property
    def order(self) -> int:
        return self.group.order

    def subgroup(self, mu) -> frozenset[int]:
        """G_mu for any rational mu >= -1 (G_mu = G_ceil(mu))."""
        mu = Fraction(mu)
        if mu < -1:
            raise DomainError("lower numbering starts at -1")
        if mu <= 0:
            return frozenset(self.group.elements)
        k = _ceil(mu)
        return frozenset([self.group.identity] + [s for s, d in self.d_values.items() if d >= k + 1])

    def order_at(self, mu) -> int:
        return len(self.subgroup(mu))

    def _check_invariants(self):
        G = self.group
        prev = None
        for b in (-1, 0) + self.breaks:
            H = self.subgroup_at[b]
            if not G.is_normal(H):
                raise InconsistencyError(f"G_{b} is not a normal subgroup")
            if prev is not None and not H <= prev:
                raise InconsistencyError("filtration is not decreasing")
            prev = H
            if self.p is not None and b >= 1 and not _is_power_of(len(H), self.p):
                raise InconsistencyError(f"G_{b} has order {len(H)}, not a power of p={self.p}")


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def lower_filtration(d: GaloisDatum, *, precision: int | None = None, verify: bool = True) -> RamificationFiltration:
    """Compute d_s = v_L(s(u) - u) for every s != 1 and the resulting filtration.

    Working precision only matters for inexact data or negative powers of the
    generator; it starts at the datum default and doubles on precision errors.
    """
    if verify:
        report = verify_datum(d)
        if not report.ok:
            raise DomainError(f"datum fails verification: {', '.join(report.failed())}")
    rp = precision or d.default_precision()
    G = d.group_table
    last = None
    for _ in range(MAX_ESCALATIONS + 1):
        try:
            d_values = _d_values(d, rp)
            break
        except PrecisionError as exc:
            last = exc
            rp *= 2
    else:
        raise PrecisionError(f"{last} (after {MAX_ESCALATIONS} escalations, precision {rp // 2})")
    return RamificationFiltration.from_d_values(G, d_values, datum=d, p=d.params.p)


def _d_values(d: GaloisDatum, rel_prec: int) -> dict[int, int]:
    u = d.uniformizer(rel_prec)
    out = {}
    for g in d.group:
        if g.id == d.identity_id:
            continue
        try:
            v = (d.apply(g, u) - u).valuation()
        except PrecisionError as exc:
            raise PrecisionError(f"v_L(s(u) - u) undetermined for s = {g.id}: {exc}") from exc
        if v is None:
            raise InconsistencyError(f"group element {g.id} fixes the uniformizer")
        out[g.id] = v
    return out


@dataclass(frozen=True)
class HerbrandFunction:
    """Continuous increasing piecewise-linear map on [-1, oo).

    ``slopes[i]`` applies on [breakpoints[i], breakpoints[i+1]]; the last slope
    continues to infinity.  The function passes through (-1, -1) and (0, 0).
    """

    breakpoints: tuple[Fraction, ...]
    slopes: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.breakpoints) != len(self.slopes) or self.breakpoints[:2] != (-1, 0):
            raise DomainError("Herbrand breakpoints must start with -1, 0 and match the slopes")
        if any(s <= 0 for s in self.slopes):
            raise DomainError("Herbrand slopes must be positive")
        if any(a >= b for a, b in zip(self.breakpoints, self.breakpoints[1:])):
            raise DomainError("Herbrand breakpoints must increase")

    @cached_property
    def values(self) -> tuple[Fraction, ...]:
        ys = [Fraction(-1)]
        for i in range(1, len(self.breakpoints)):
            ys.append(ys[-1] + self.slopes[i - 1] * (self.breakpoints[i] - self.breakpoints[i - 1]))
        return tuple(ys)

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        if x < -1:
            raise DomainError("Herbrand functions are defined on [-1, oo)")
        bp, ys = self.breakpoints, self.values
        i = len(bp) - 1
        while bp[i] > x:
            i -= 1
        return ys[i] + self.slopes[i] * (x - bp[i])

    def inverse(self) -> "HerbrandFunction":
        return HerbrandFunction(self.values, tuple(1 / s for s in self.slopes))

    def is_concave(self) -> bool:
        """Non-increasing slopes on [0, oo) (and on [-1, oo) as a whole)."""
        return all(a >= b for a, b in zip(self.slopes, self.slopes[1:]))

    def is_convex(self) -> bool:
        return all(a <= b for a, b in zip(self.slopes, self.slopes[1:]))

    def sample(self, step, upto) -> list[tuple[Fraction, Fraction]]:
        step, upto = Fraction(step), Fraction(upto)
        if step <= 0:
            raise DomainError("sampling step must be positive")
        out = []
        x = Fraction(-1)
        while x <= upto:
            out.append((x, self(x)))
            x += step
        return out


def herbrand_phi(f: RamificationFiltration) -> HerbrandFunction:
    """phi(mu) = integral_0^mu dx / (G_0 : G_x), exactly."""
    g0 = f.order
    pos = [b for b in f.breaks if b > 0]
    bps = [Fraction(-1), Fraction(0)] + [Fraction(b) for b in pos]
    slopes = [Fraction(1)]
    for b in pos:
        slopes.append(Fraction(f.order_at(b), g0))
    slopes.append(Fraction(1, g0))
    return HerbrandFunction(tuple(bps), tuple(slopes))


def herbrand_psi(phi: HerbrandFunction) -> HerbrandFunction:
    return phi.inverse()


@dataclass(frozen=True)
class UpperFiltration:
    lower: RamificationFiltration
    phi: HerbrandFunction
    breaks: tuple[Fraction, ...]
    subgroup_at: dict[Fraction, frozenset[int]]

    @property
    def group(self) -> FiniteGroup:
        return self.lower.group

    def subgroup(self, lam) -> frozenset[int]:
        """G^lam = G_psi(lam)."""
        return self.lower.subgroup(self.phi.inverse()(lam))

    def subgroup_plus(self, lam) -> frozenset[int]:
        """G^(lam+): the subgroup at the smallest break above lam, else trivial."""
        lam = Fraction(lam)
        for b in self.breaks:
            if b > lam:
                return self.subgroup_at[b]
        return frozenset([self.group.identity])

    def max_break(self) -> Fraction | None:
        return self.breaks[-1] if self.breaks else None


def upper_filtration(f: RamificationFiltration) -> UpperFiltration:
    phi = herbrand_phi(f)
    breaks = tuple(phi(b) for b in f.breaks)
    sub = {phi(b): f.subgroup_at[b] for b in f.breaks}
    return UpperFiltration(f, phi, breaks, sub)


def quotient_filtration(f: RamificationFiltration, H) -> tuple[RamificationFiltration, list[frozenset[int]]]:
    """Lower filtration of G/H for a normal subgroup H, i.e. of the fixed field of H.

    Uses i_(G/H)(sH) = (1/|H|) * sum over t in sH of i_G(t), where i_G(t) = d_t
    for t != 1 and i_G(1) is never needed.  Returns the filtration on coset
    ids 0, 1, ... (cosets ordered by their least element) and the cosets.
    """
    G = f.group
    H = frozenset(H)
    if not G.is_normal(H):
        raise DomainError(f"{sorted(H)} is not a normal subgroup")
    cosets: list[frozenset[int]] = []
    for g in G.elements:
        if not any(g in c for c in cosets):
            cosets.append(frozenset(G.mul(g, h) for h in H))
    cosets.sort(key=min)
    index = {g: i for i, c in enumerate(cosets) for g in c}
    table = {(i, j): index[G.mul(min(a), min(b))] for i, a in enumerate(cosets) for j, b in enumerate(cosets)}
    Q = FiniteGroup(range(len(cosets)), index[G.identity], table)
    d_values = {}
    for i, c in enumerate(cosets):
        if G.identity in c:
            continue
        total = sum(f.d_values[g] for g in c)
        if total % len(H):
            raise InconsistencyError(f"quotient i-function {total}/{len(H)} is not integral")
        d_values[i] = total // len(H)
    return RamificationFiltration.from_d_values(Q, d_values, p=f.p), cosets


def quotient_upper_breaks(u: UpperFiltration, H) -> tuple[Fraction, ...]:
    """Upper breaks of G/H read off the upper filtration of G: images G^lam H / H."""
    H = frozenset(H)
    G = u.group
    out = []
    for lam in u.breaks:
        here = {G.mul(g, h) for g in u.subgroup_at[lam] for h in H}
        above = {G.mul(g, h) for g in u.subgroup_plus(lam) for h in H}
        if here != above:
            out.append(lam)
    return tuple(out)


def is_bounded_by(f, lam) -> bool:
    """True iff every upper break is <= lam, i.e. G^lam' = 1 for all lam' > lam."""
    lam = Fraction(lam)
    if lam < 0:
        raise DomainError("ramification bounds are nonnegative")
    u = f if isinstance(f, UpperFiltration) else upper_filtration(f)
    return all(b <= lam for b in u.breaks)


def different_valuation(f: RamificationFiltration) -> int:
    """v_L of the different, via Hilbert's formula, cross-checked against the chain."""
    total = sum(f.d_values.values())
    top = max(f.breaks, default=-1)
    chain = sum(f.order_at(mu) - 1 for mu in range(0, top + 1))
    if total != chain:
        raise InconsistencyError(f"Hilbert formula mismatch: sum d_s = {total}, sum (|G_mu|-1) = {chain}")
    return total


def uniformizer_minpoly(d: GaloisDatum, rel_prec: int | None = None) -> list[LaurentSeries]:
    """Coefficients (low to high) of prod_s (X - s(u)), which must lie in K."""
    rel_prec = rel_prec or d.default_precision()
    u = d.uniformizer(rel_prec)
    poly: list[ExtElement] = [d.one()]
    for g in d.group:
        root = d.apply(g, u)
        nxt = [d.const(LaurentSeries.zero(d.field)) for _ in range(len(poly) + 1)]
        for i, c in enumerate(poly):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] - c * root
        poly = nxt
    out = []
    for c in poly:
        if not c.in_base():
            raise InconsistencyError("conjugates of u do not give a polynomial over K")
        out.append(c.rep[0])
    return out


def _series_derivative(coeffs: Sequence[LaurentSeries]) -> list[LaurentSeries]:
    F = coeffs[0].field
    return [c.scale(F.from_int(i)) for i, c in enumerate(coeffs)][1:]


def resultant_valuation(f: Sequence[LaurentSeries], g: Sequence[LaurentSeries]) -> int:
    """v_t of Res(f, g) from the Sylvester matrix, by fraction-free elimination.

    ``g`` is taken with formal degree len(g) - 1 (leading zeros allowed).
    Entries must be exact Laurent polynomials.
    """
    F = f[0].field
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([LaurentSeries.zero(F)] * i + list(reversed(f)) + [LaurentSeries.zero(F)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([LaurentSeries.zero(F)] * i + list(reversed(g)) + [LaurentSeries.zero(F)] * (size - n - 1 - i))
    shift = 0
    mat = []
    for row in rows:
        if any(not c.is_exact for c in row):
            raise PrecisionError("resultant needs exact coefficients")
        low = min((c.lead for c in row if c.lead is not None), default=0)
        shift += low
        mat.append([_to_poly(c, -low) for c in row])
    det = _bareiss_det(mat)
    if det.is_zero():
        raise InconsistencyError("resultant vanishes: the polynomial is inseparable")
    v = next(i for i, c in enumerate(det.coeffs) if c)
    return v + shift


def _to_poly(c: LaurentSeries, shift: int) -> FqPolynomial:
    F = c.field
    if c.lead is None:
        return FqPolynomial(F)
    return FqPolynomial(F, [0] * (c.lead + shift) + list(c.coeffs))


def _bareiss_det(mat: list[list[FqPolynomial]]) -> FqPolynomial:
    n = len(mat)
    F = mat[0][0].field
    M = [row[:] for row in mat]
    sign = 1
    prev = FqPolynomial(F, (1,))
    for k in range(n - 1):
        if M[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not M[i][k].is_zero()), None)
            if swap is None:
                return FqPolynomial(F)
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * M[k][k] - M[i][k] * M[k][j]
                q, r = divmod(num, prev)
                assert r.is_zero()
                M[i][j] = q
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return det if sign == 1 else -det


def discriminant_by_resultant(d: GaloisDatum) -> int:
    """v_t(disc(minimal polynomial of u)) = v_t(Res(h, h')) for monic h."""
    h = uniformizer_minpoly(d)
    if len(h) == 2:
        return 0
    return resultant_valuation(h, _series_derivative(h))


def discriminant_valuation(f: RamificationFiltration, *, cross_check: bool = True) -> int:
    """v_K(D_(L/K)); equals v_L of the different because L/K is totally ramified."""
    v = different_valuation(f)
    if cross_check and f.datum is not None and _is_exact(f.datum):
        r = discriminant_by_resultant(f.datum)
        if r != v:
            raise InconsistencyError(f"discriminant mismatch: Hilbert {v}, resultant {r}")
    return v


def _is_exact(d: GaloisDatum) -> bool:
    return (all(c.is_exact for c in d.minpoly)
            and all(c.is_exact for g in d.group for c in g.action))


def disc_bound_to_ram_bound(m: int, n: int) -> int:
    """Bound n * n! * m on the ramification of a degree-n extension with v_K(D) <= m."""
    if m < 0 or n < 1:
        raise DomainError("need m >= 0 and n >= 1")
    return n * math.factorial(n) * m


@dataclass
class BaseChangeReport:
    e_prime: int
    lam: Fraction
    new_break: Fraction
    bound: Fraction

    @property
    def holds(self) -> bool:
        return self.new_break <= self.bound

    @property
    def tight(self) -> bool:
        return self.new_break == self.bound

    def to_json(self) -> dict:
        return {"e_prime": self.e_prime, "lambda": _frac(self.lam), "new_break": _frac(self.new_break),
                "bound": _frac(self.bound), "holds": self.holds}


def _frac(x: Fraction) -> list[int]:
    x = Fraction(x)
    return [x.numerator, x.denominator]


def check_base_change_bound(d: GaloisDatum, e_prime: int) -> BaseChangeReport:
    """Max upper break of L K'/K' against e' times the max upper break of L/K."""
    lam = upper_filtration(lower_filtration(d)).max_break()
    lam = Fraction(0) if lam is None else lam
    new = upper_filtration(lower_filtration(base_change_tame(d, e_prime))).max_break()
    new = Fraction(0) if new is None else new
    report = BaseChangeReport(e_prime, lam, new, e_prime * lam)
    if not report.holds:
        raise InconsistencyError(f"base change break {new} exceeds {e_prime} * {lam}")
    return report
