"""Divisors on P^1 over F_q and the census of cyclic covers with bounded ramification.

Artin-Schreier classes are handled through partial-fraction expansions: a
rational function g is written as a polynomial part plus, for each finite
pole z = (f), a list of f-adic digits a_j (deg a_j < deg f) standing for
sum_j a_j / f^j.  In these coordinates the map h -> h^p - h is explicit,
and the reduced representative of g + (h^p - h) is unique: no digit of
order divisible by p at any pole, and a constant term taken from a fixed
transversal of {c^p - c} in F_q.
"""

from __future__ import annotations

import itertools
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

from .algebra import (FieldParams, FqPolynomial, GF, Place, gf, monic_irreducibles, poly_gcd,
                      poly_inverse_mod)
from .errors import DomainError, InconsistencyError, ResourceError, UnsupportedFamilyError

MAX_CENSUS_DEGREE = 12
MAX_CENSUS_AMBIENT = 2 ** 20


# -- rational functions -------------------------------------------------------


class RationalFunction:
    """num/den in lowest terms with den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: FqPolynomial, den: FqPolynomial | None = None):
        F = num.field
        if den is None:
            den = FqPolynomial(F, (1,))
        if den.is_zero():
            raise DomainError("zero denominator")
        if num.is_zero():
            den = FqPolynomial(F, (1,))
        else:
            g = poly_gcd(num, den)
            num, den = num // g, den // g
            c = F.inv(den.lead)
            num, den = num.scale(c), den.scale(c)
        self.num = num
        self.den = den

    @property
    def field(self) -> GF:
        return self.num.field

    @classmethod
    def monomial(cls, field: GF, c: int, k: int) -> "RationalFunction":
        """c * t^k for any integer k."""
        if k >= 0:
            return cls(FqPolynomial.monomial(field, c, k))
        return cls(FqPolynomial.const(field, c), FqPolynomial.monomial(field, 1, -k))

    @classmethod
    def zero(cls, field: GF) -> "RationalFunction":
        return cls(FqPolynomial(field))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return RationalFunction(self.num.scale(self.field.from_int(other)), self.den)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def scale(self, c: int) -> "RationalFunction":
        return RationalFunction(self.num.scale(c), self.den)

    def __pow__(self, k: int):
        return RationalFunction(self.num ** k, self.den ** k)

    def artin_schreier(self) -> "RationalFunction":
        """h^p - h."""
        return self ** self.field.p - self

    def valuation(self, place: Place) -> int | None:
        if self.is_zero():
            return None
        if place.is_infinite:
            return self.den.degree - self.num.degree
        return _poly_val(self.num, place.poly) - _poly_val(self.den, place.poly)

    def pole_order(self, place: Place) -> int:
        v = self.valuation(place)
        return 0 if v is None or v >= 0 else -v

    def poles(self) -> dict[Place, int]:
        out = {}
        if self.num.degree > self.den.degree:
            out[Place.infinity()] = self.num.degree - self.den.degree
        for f, m in factor_poly(self.den):
            out[Place(f)] = m
        return out

    def key(self) -> tuple:
        return (self.num.coeffs, self.den.coeffs)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.field.params == other.field.params and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if self.den.degree == 0:
            return self.num.format("t")
        return f"({self.num.format('t')})/({self.den.format('t')})"

    def to_json(self) -> dict:
        return {"num": list(self.num.coeffs), "den": list(self.den.coeffs)}


def _poly_val(a: FqPolynomial, f: FqPolynomial) -> int:
    k = 0
    while True:
        q, r = divmod(a, f)
        if not r.is_zero():
            return k
        a, k = q, k + 1


def factor_poly(a: FqPolynomial) -> list[tuple[FqPolynomial, int]]:
    """Monic irreducible factors with multiplicity, by trial division (desk scale only)."""
    out = []
    a = a.monic()
    d = 1
    while a.degree >= 1:
        if d > a.degree:
            break
        for f in monic_irreducibles(a.field.params, d):
            m = _poly_val(a, f)
            if m:
                out.append((f, m))
                a = a // (f ** m)
        d += 1
    return sorted(out, key=lambda fm: fm[0].key())


# -- divisors -----------------------------------------------------------------


@dataclass(frozen=True)
class EffectiveDivisor:
    """sum m_z [z] with m_z > 0, stored sorted by place."""

    entries: tuple[tuple[Place, int], ...] = ()

    def __post_init__(self):
        merged: dict[Place, int] = {}
        for place, m in self.entries:
            if m < 0:
                raise DomainError("effective divisors have nonnegative multiplicities")
            merged[place] = merged.get(place, 0) + int(m)
        items = tuple(sorted(((z, m) for z, m in merged.items() if m), key=lambda zm: zm[0].sort_key()))
        object.__setattr__(self, "entries", items)

    @classmethod
    def from_dict(cls, d: dict[Place, int]) -> "EffectiveDivisor":
        return cls(tuple(d.items()))

    def mult(self, place: Place) -> int:
        for z, m in self.entries:
            if z == place:
                return m
        return 0

    @property
    def support(self) -> tuple[Place, ...]:
        return tuple(z for z, _ in self.entries)

    @property
    def degree(self) -> int:
        return sum(m * z.degree for z, m in self.entries)

    def __le__(self, other: "EffectiveDivisor") -> bool:
        return all(m <= other.mult(z) for z, m in self.entries)

    def __add__(self, other: "EffectiveDivisor") -> "EffectiveDivisor":
        return EffectiveDivisor(self.entries + other.entries)

    def floor_div(self, k: int) -> "EffectiveDivisor":
        return EffectiveDivisor(tuple((z, m // k) for z, m in self.entries))

    def __str__(self):
        return "+".join(f"{m}[{z}]" for z, m in self.entries) or "0"

    def to_json(self) -> dict:
        return {"entries": [{"place": z.to_json(), "mult": m} for z, m in self.entries]}


_TERM = re.compile(r"^(?:(\d+)\*?)?(t(?:\^(\d+))?)?$")


def parse_poly(text: str, field: GF) -> FqPolynomial:
    """Parse 't^2+t+1', '2*t+1', '[1,1,1]' (codes low to high) into a polynomial."""
    text = text.replace(" ", "")
    if text.startswith("["):
        return FqPolynomial(field, [int(x) for x in text.strip("[]").split(",") if x])
    coeffs: dict[int, int] = {}
    for term in text.split("+"):
        m = _TERM.match(term)
        if not term or not m or (m.group(1) is None and m.group(2) is None):
            raise DomainError(f"cannot parse polynomial term {term!r}")
        c = int(m.group(1)) if m.group(1) is not None else 1
        if not 0 <= c < field.q:
            raise DomainError(f"coefficient {c} is not an element code of F_{field.q}")
        k = 0 if m.group(2) is None else int(m.group(3) or 1)
        coeffs[k] = field.add(coeffs.get(k, 0), c)
    return FqPolynomial(field, [coeffs.get(k, 0) for k in range(max(coeffs) + 1)])


def parse_place(text: str, params: FieldParams) -> Place:
    """'inf', a polynomial such as 't+1', a bracketed code list, or an element code a for t - a."""
    F = gf(params)
    text = text.strip()
    if text in ("inf", "oo", "infinity"):
        return Place.infinity()
    if re.fullmatch(r"\d+", text):
        a = int(text)
        if not 0 <= a < F.q:
            raise DomainError(f"{a} is not an element code of F_{F.q}")
        return Place(FqPolynomial(F, (F.neg(a), 1)))
    return Place(parse_poly(text, F))


def parse_divisor(text: str, params: FieldParams) -> EffectiveDivisor:
    """Shorthand 'm1[p1]+m2[p2]', e.g. '3[inf]', '1[t]+1[inf]', '2[[1,1,1]]'; '0' is the zero divisor."""
    text = text.replace(" ", "")
    if text in ("", "0"):
        return EffectiveDivisor()
    entries = []
    pos = 0
    for m in re.finditer(r"(\d+)\[((?:\[[^\]]*\]|[^\[\]])+)\]", text):
        gap = text[pos:m.start()]
        if gap not in ("", "+"):
            raise DomainError(f"cannot parse divisor {text!r}")
        entries.append((parse_place(m.group(2), params), int(m.group(1))))
        pos = m.end()
    if pos != len(text) or not entries:
        raise DomainError(f"cannot parse divisor {text!r}")
    return EffectiveDivisor(tuple(entries))


def riemann_roch_basis(D: EffectiveDivisor, params: FieldParams | None = None) -> list[RationalFunction]:
    """Basis of L(D) = {g : div(g) >= -D}: 1, t, ..., t^m_inf, then t^i / f^j per finite place."""
    if params is None:
        fin = [z for z in D.support if not z.is_infinite]
        if not fin:
            raise DomainError("field parameters needed for a divisor supported at infinity only")
        params = fin[0].poly.field.params
    F = gf(params)
    out = [RationalFunction.monomial(F, 1, k) for k in range(D.mult(Place.infinity()) + 1)]
    for z, m in D.entries:
        if z.is_infinite:
            continue
        for j in range(1, m + 1):
            den = z.poly ** j
            for i in range(z.degree):
                out.append(RationalFunction(FqPolynomial.monomial(F, 1, i), den))
    return out


# -- partial-fraction expansions ----------------------------------------------


@dataclass
class _Expansion:
    """poly + sum over places of sum_j digits[j] / f^j (digits[0] unused)."""

    field: GF
    poly: list[int]
    parts: dict[Place, list[FqPolynomial]]

    def key(self) -> tuple:
        P = list(self.poly)
        while P and P[-1] == 0:
            P.pop()
        parts = []
        for z in sorted(self.parts, key=Place.sort_key):
            digits = [d.coeffs for d in self.parts[z]]
            while digits and not digits[-1]:
                digits.pop()
            if len(digits) > 1:
                parts.append((z.sort_key(), tuple(digits)))
        return (tuple(P), tuple(parts))

    def pole_orders(self) -> dict[Place, int]:
        out = {}
        P = self.poly
        deg = max((k for k, c in enumerate(P) if c), default=0)
        if deg > 0:
            out[Place.infinity()] = deg
        for z, digits in self.parts.items():
            top = max((j for j, d in enumerate(digits) if j and not d.is_zero()), default=0)
            if top:
                out[z] = top
        return out

    def to_function(self) -> RationalFunction:
        F = self.field
        g = RationalFunction(FqPolynomial(F, self.poly))
        for z, digits in self.parts.items():
            for j, a in enumerate(digits):
                if j and not a.is_zero():
                    g = g + RationalFunction(a, z.poly ** j)
        return g


def _fadic_digits(a: FqPolynomial, f: FqPolynomial) -> list[FqPolynomial]:
    out = []
    while not a.is_zero():
        a, r = divmod(a, f)
        out.append(r)
    return out


def expand(g: RationalFunction, support: Iterable[Place] | None = None) -> _Expansion:
    """Partial fractions of g; ``support`` (finite poles) skips factoring the denominator."""
    F = g.field
    if support is None:
        factors = factor_poly(g.den)
    else:
        factors = [(z.poly, _poly_val(g.den, z.poly)) for z in support if not z.is_infinite]
        factors = [(f, m) for f, m in factors if m]
        if reduce(lambda acc, fm: acc * fm[0] ** fm[1], factors, FqPolynomial(F, (1,))) != g.den:
            raise DomainError("denominator has poles outside the given support")
    P, R = divmod(g.num, g.den)
    parts = {}
    for f, m in factors:
        Dz = f ** m
        rest = g.den // Dz
        A = (R * poly_inverse_mod(rest, Dz)) % Dz
        digits = _fadic_digits(A, f)
        digits += [FqPolynomial(F)] * (m - len(digits))
        # A / f^m = sum_i digits[i] f^(i - m): digit of order j is digits[m - j]
        parts[Place(f)] = [FqPolynomial(F)] + [digits[m - j] for j in range(1, m + 1)]
    return _Expansion(F, list(P.coeffs) or [0], parts)


def _trace_one(F: GF) -> int:
    return min(x for x in F.elements() if F.trace(x) == 1)


def _reduce_expansion(ex: _Expansion) -> _Expansion:
    """Subtract h^p - h until no digit of order divisible by p survives; normalise the constant."""
    F = ex.field
    p = F.p
    P = list(ex.poly)
    for k in range(len(P) - 1, 0, -1):
        c = P[k]
        if c and k % p == 0:
            P[k] = 0
            P[k // p] = F.add(P[k // p], F.pth_root(c))
    parts = {}
    for z, digits in ex.parts.items():
        f = z.poly
        qd = F.q ** z.degree
        digits = list(digits)
        for j in range(len(digits) - 1, 0, -1):
            a = digits[j]
            if a.is_zero() or j % p:
                continue
            s = a.powmod(qd // p, f)
            for i, b in enumerate(_fadic_digits(s.pth_power(), f)):
                digits[j - i] = digits[j - i] - b
            assert digits[j].is_zero()
            digits[j // p] = digits[j // p] + s
        parts[z] = digits
    c0 = P[0] if P else 0
    P[0] = F.mul(F.from_int(F.trace(c0)), _trace_one(F))
    return _Expansion(F, P, parts)


@dataclass(frozen=True)
class ASClass:
    """Artin-Schreier class of g modulo {h^p - h}: y^p - y = reduced_rep."""

    reduced_rep: RationalFunction
    conductor: EffectiveDivisor

    @property
    def is_zero(self) -> bool:
        return self.reduced_rep.is_zero()

    @property
    def is_constant(self) -> bool:
        return not self.conductor.entries

    def to_json(self) -> dict:
        return self.reduced_rep.to_json()


def as_reduce(g: RationalFunction, support: Iterable[Place] | None = None) -> ASClass:
    red = _reduce_expansion(expand(g, support))
    return ASClass(red.to_function(), EffectiveDivisor.from_dict(red.pole_orders()))


def swan_divisor_of_class(c: ASClass) -> EffectiveDivisor:
    """Swan conductor divisor: the reduced pole order at each pole."""
    return c.conductor


def local_leading_coefficient(c: ASClass, place: Place) -> int:
    """Leading coefficient of the reduced rep at a rational place, in the parameter 1/t or t - a."""
    if place.degree != 1:
        raise DomainError("leading coefficients are taken at rational places only")
    ex = expand(c.reduced_rep)
    order = ex.pole_orders().get(place, 0)
    if order == 0:
        raise DomainError(f"class is unramified at {place}")
    if place.is_infinite:
        return ex.poly[order]
    return ex.parts[place][order][0]


# -- censuses -----------------------------------------------------------------


@dataclass
class CensusReport:
    classes: list
    count_classes: int
    count_fields: int
    count_constant: int

    def keys(self) -> set:
        return {c.reduced_rep.key() if isinstance(c, ASClass) else c.key() for c in self.classes}

    def to_json(self) -> dict:
        return {"count_classes": self.count_classes, "count_fields": self.count_fields,
                "count_constant": self.count_constant, "classes": [c.to_json() for c in self.classes]}


def _basis_expansions(params: FieldParams, D: EffectiveDivisor):
    """Coordinates of the L(D) basis: ('poly', k) or (place, j, i) for t^i / f^j."""
    slots = [("poly", k) for k in range(D.mult(Place.infinity()) + 1)]
    for z, m in D.entries:
        if not z.is_infinite:
            slots.extend((z, j, i) for j in range(1, m + 1) for i in range(z.degree))
    return slots


def _expansion_from_vector(F: GF, D: EffectiveDivisor, slots, vec) -> _Expansion:
    poly = [0] * (D.mult(Place.infinity()) + 1)
    parts: dict[Place, list[list[int]]] = {}
    for z, m in D.entries:
        if not z.is_infinite:
            parts[z] = [[0] * z.degree for _ in range(m + 1)]
    for slot, c in zip(slots, vec):
        if not c:
            continue
        if slot[0] == "poly":
            poly[slot[1]] = c
        else:
            z, j, i = slot
            parts[z][j][i] = c
    return _Expansion(F, poly, {z: [FqPolynomial(F, d) for d in ds] for z, ds in parts.items()})


def _census_chunk(args):
    params, D, first = args
    F = gf(params)
    slots = _basis_expansions(params, D)
    found = {}
    for rest in itertools.product(range(F.q), repeat=len(slots) - 1):
        red = _reduce_expansion(_expansion_from_vector(F, D, slots, (first,) + rest))
        k = red.key()
        if k not in found:
            found[k] = red
    return found


def census_artin_schreier(params: FieldParams, D: EffectiveDivisor, *, workers: int = 1,
                          max_degree: int = MAX_CENSUS_DEGREE,
                          max_ambient: int = MAX_CENSUS_AMBIENT) -> CensusReport:
    """All nonzero Artin-Schreier classes whose Swan divisor is <= D."""
    F = gf(params)
    if D.degree > max_degree:
        raise ResourceError(f"deg D = {D.degree} exceeds the census cap {max_degree}")
    if F.q ** (D.degree + 1) > max_ambient:
        raise ResourceError(f"L(D) has {F.q}^{D.degree + 1} elements, above the cap {max_ambient}")
    jobs = [(params, D, c) for c in range(F.q)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            chunks = list(ex.map(_census_chunk, jobs))
    else:
        chunks = [_census_chunk(j) for j in jobs]
    found = {}
    for chunk in chunks:
        for k, red in chunk.items():
            found.setdefault(k, red)
    classes = []
    for k in sorted(found):
        red = found[k]
        cond = EffectiveDivisor.from_dict(red.pole_orders())
        if not cond <= D:
            continue
        c = ASClass(red.to_function(), cond)
        if not c.is_zero:
            classes.append(c)
    orbits = set()
    for c in classes:
        orbit = min(c.reduced_rep.scale(F.from_int(a)).key() for a in range(1, F.p))
        orbits.add(orbit)
    return CensusReport(classes, len(classes), len(orbits), sum(1 for c in classes if c.is_constant))


@dataclass(frozen=True)
class KummerClass:
    """y^e = unit * prod f_z^(n_z) over finite z; the exponent at infinity is implied."""

    exponents: tuple[tuple[Place, int], ...]
    unit: int
    e: int

    def key(self) -> tuple:
        return (tuple((z.sort_key(), n) for z, n in self.exponents), self.unit)

    def function(self, field: GF) -> RationalFunction:
        g = RationalFunction(FqPolynomial.const(field, self.unit))
        for z, n in self.exponents:
            if not z.is_infinite and n:
                g = g * RationalFunction(z.poly ** n)
        return g

    @property
    def is_constant(self) -> bool:
        return all(n == 0 for _, n in self.exponents)

    def to_json(self) -> dict:
        F = None
        for z, _ in self.exponents:
            if not z.is_infinite:
                F = z.poly.field
        out = {"exponents": [{"place": z.to_json(), "n": n} for z, n in self.exponents], "unit": self.unit}
        if F is not None:
            out["function"] = self.function(F).to_json()
        else:
            out["function"] = {"num": [self.unit], "den": [1]}
        return out


def census_kummer(params: FieldParams, S: Iterable[Place], e: int) -> CensusReport:
    """Nontrivial pairs (exponents on S with degree-weighted sum 0 mod e, unit mod e-th powers)."""
    F = gf(params)
    if e < 1 or (F.q - 1) % e:
        raise UnsupportedFamilyError(f"Kummer census needs e | q - 1 (q={F.q}, e={e})")
    S = sorted(set(S), key=Place.sort_key)
    powers = {F.pow(x, e) for x in F.nonzero()}
    cosets = {}
    for x in F.nonzero():
        k = min(F.mul(x, y) for y in powers)
        cosets.setdefault(k, k)
    units = sorted(cosets)
    classes = []
    for ns in itertools.product(range(e), repeat=len(S)):
        if sum(z.degree * n for z, n in zip(S, ns)) % e:
            continue
        for c in units:
            if c == 1 and not any(ns):
                continue
            classes.append(KummerClass(tuple(zip(S, ns)), c, e))
    classes.sort(key=KummerClass.key)
    fields = set()
    for k in classes:
        orbit = []
        for s in range(1, e):
            if _gcd(s, e) != 1:
                continue
            u = F.pow(k.unit, s)
            u = min(F.mul(u, y) for y in powers)
            orbit.append((tuple((z.sort_key(), (n * s) % e) for z, n in k.exponents), u))
        fields.add(min(orbit) if orbit else k.key())
    return CensusReport(classes, len(classes), len(fields), sum(1 for k in classes if k.is_constant))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@dataclass
class ChainReport:
    divisors: list[EffectiveDivisor]
    counts: list[int]

    def to_json(self) -> dict:
        return {"divisors": [str(D) for D in self.divisors], "counts": self.counts,
                "inclusions": [True] * max(0, len(self.counts) - 1), "ok": True}


def census_monotonicity_check(params: FieldParams, chain: Sequence[EffectiveDivisor], *,
                              workers: int = 1) -> ChainReport:
    """Counts along D_1 <= D_2 <= ... are non-decreasing and the class sets nested."""
    for a, b in zip(chain, chain[1:]):
        if not a <= b:
            raise DomainError(f"chain is not ordered: {a} is not <= {b}")
    reports = [census_artin_schreier(params, D, workers=workers) for D in chain]
    for (a, ra), (b, rb) in zip(zip(chain, reports), zip(chain[1:], reports[1:])):
        if ra.count_classes > rb.count_classes or not ra.keys() <= rb.keys():
            raise InconsistencyError(f"census for {a} is not contained in the census for {b}")
    return ChainReport(list(chain), [r.count_classes for r in reports])
