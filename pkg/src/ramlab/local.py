"""Truncated Laurent series over F_q and explicit Galois extensions of F_q((t)).

A :class:`GaloisDatum` describes a totally ramified Galois extension L/K of
K = F_q((t)) by a generator theta of valuation ``w`` (in L, normalised so that
v_L(t) = e), its monic minimal polynomial over K, and one polynomial P_s per
group element with s(theta) = P_s(theta).  Elements of L are written as
sum c_i theta^i with 0 <= i < e and c_i in K; since gcd(w, e) = 1 the
summands have pairwise distinct valuations, which makes v_L computable
term by term.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

from .algebra import FieldParams, FqElement, GF, gf
from .errors import DomainError, InconsistencyError, PrecisionError, UnsupportedFamilyError
from .groups import FiniteGroup

PRECISION_ENV = "RAMLAB_PRECISION"
MAX_ESCALATIONS = 3


class LaurentSeries:
    """sum_{k >= lead} c_k t^k, known up to O(t^prec); ``prec is None`` means exact.

    ``lead`` is None when no nonzero coefficient is known: the series is then
    exactly zero (prec None) or zero to precision.
    """

    __slots__ = ("field", "lead", "coeffs", "prec")

    def __init__(self, field: GF, lead: int | None, coeffs: Iterable[int] = (), prec: int | None = None):
        c = [int(x) for x in coeffs]
        start = 0 if lead is None else lead
        i = 0
        while i < len(c) and c[i] == 0:
            i += 1
        c = c[i:]
        start += i
        if prec is not None:
            keep = prec - start
            c = c[:max(keep, 0)]
        while c and c[-1] == 0:
            c.pop()
        self.field = field
        self.coeffs = tuple(c)
        self.lead = start if c else None
        self.prec = prec

    # -- constructors --

    @classmethod
    def zero(cls, field: GF, prec: int | None = None) -> "LaurentSeries":
        return cls(field, None, (), prec)

    @classmethod
    def const(cls, field: GF, c: int, prec: int | None = None) -> "LaurentSeries":
        return cls(field, 0, (c,), prec)

    @classmethod
    def monomial(cls, field: GF, c: int, k: int, prec: int | None = None) -> "LaurentSeries":
        return cls(field, k, (c,), prec)

    @classmethod
    def from_terms(cls, field: GF, terms: dict[int, int], prec: int | None = None) -> "LaurentSeries":
        if not terms:
            return cls.zero(field, prec)
        lo, hi = min(terms), max(terms)
        return cls(field, lo, (terms.get(k, 0) for k in range(lo, hi + 1)), prec)

    # -- queries --

    @property
    def is_exact(self) -> bool:
        return self.prec is None

    def is_zero(self) -> bool:
        """True when no nonzero coefficient is known (exact zero or zero to precision)."""
        return self.lead is None

    def is_exact_zero(self) -> bool:
        return self.lead is None and self.prec is None

    def is_monomial(self) -> bool:
        return self.is_exact and len(self.coeffs) == 1

    def valuation(self) -> int | None:
        """Exact t-adic valuation, None for exact zero."""
        if self.lead is None:
            if self.prec is None:
                return None
            raise PrecisionError(f"series is zero to precision O(t^{self.prec})")
        return self.lead

    def lower_bound(self):
        """A lower bound for the valuation (the valuation itself when nonzero)."""
        if self.lead is not None:
            return self.lead
        return _INF if self.prec is None else self.prec

    def coefficient(self, k: int) -> int:
        if self.prec is not None and k >= self.prec:
            raise PrecisionError(f"coefficient of t^{k} unknown beyond O(t^{self.prec})")
        if self.lead is None or k < self.lead or k >= self.lead + len(self.coeffs):
            return 0
        return self.coeffs[k - self.lead]

    def terms(self) -> dict[int, int]:
        if self.lead is None:
            return {}
        return {self.lead + i: c for i, c in enumerate(self.coeffs) if c}

    @property
    def degree(self) -> int | None:
        """Exponent of the highest known nonzero term."""
        return None if self.lead is None else self.lead + len(self.coeffs) - 1

    # -- arithmetic --

    def _check(self, other):
        if isinstance(other, int):
            return LaurentSeries.const(self.field, self.field.from_int(other))
        if isinstance(other, FqElement):
            return LaurentSeries.const(self.field, other.value)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        if other.field.params != self.field.params:
            raise DomainError("series over different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        F = self.field
        prec = _min_prec(self.prec, other.prec)
        if self.lead is None:
            return LaurentSeries(F, other.lead, other.coeffs, prec)
        if other.lead is None:
            return LaurentSeries(F, self.lead, self.coeffs, prec)
        lo = min(self.lead, other.lead)
        hi = max(self.degree, other.degree)
        out = [0] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs):
            out[self.lead - lo + i] = c
        for i, c in enumerate(other.coeffs):
            k = other.lead - lo + i
            out[k] = F.add(out[k], c)
        return LaurentSeries(F, lo, out, prec)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return LaurentSeries(F, self.lead, (F.neg(c) for c in self.coeffs), self.prec)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        F = self.field
        if self.is_exact_zero() or other.is_exact_zero():
            return LaurentSeries.zero(F)
        va, vb = self.lower_bound(), other.lower_bound()
        pa = _INF if self.prec is None else self.prec
        pb = _INF if other.prec is None else other.prec
        bound = min(va + pb, vb + pa)
        prec = None if bound == _INF else int(bound)
        if self.lead is None or other.lead is None:
            return LaurentSeries.zero(F, prec)
        a, b = self.coeffs, other.coeffs
        if prec is not None:
            keep = prec - self.lead - other.lead
            a, b = a[:keep], b[:keep]
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = F.add(out[i + j], F.mul(x, y))
        return LaurentSeries(F, self.lead + other.lead, out, prec)

    __rmul__ = __mul__

    def scale(self, c: int) -> "LaurentSeries":
        F = self.field
        if c == 0:
            return LaurentSeries.zero(F)
        return LaurentSeries(F, self.lead, (F.mul(c, x) for x in self.coeffs), self.prec)

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by t^k."""
        prec = None if self.prec is None else self.prec + k
        lead = None if self.lead is None else self.lead + k
        return LaurentSeries(self.field, lead, self.coeffs, prec)

    def truncate(self, prec: int) -> "LaurentSeries":
        return LaurentSeries(self.field, self.lead, self.coeffs, _min_prec(self.prec, prec))

    def inv(self, rel_prec: int | None = None) -> "LaurentSeries":
        """Multiplicative inverse.

        Monomials invert exactly.  Otherwise the result carries ``rel_prec``
        significant terms, or the input's own relative precision if smaller.
        """
        F = self.field
        if self.lead is None:
            raise PrecisionError("cannot invert a series indistinguishable from zero")
        v = self.lead
        if self.is_monomial():
            return LaurentSeries(F, -v, (F.inv(self.coeffs[0]),))
        R = None if self.prec is None else self.prec - v
        if rel_prec is not None:
            R = rel_prec if R is None else min(R, rel_prec)
        if R is None:
            raise PrecisionError("inverting a non-monomial exact series needs a target precision")
        c = list(self.coeffs[:R]) + [0] * max(0, R - len(self.coeffs))
        inv0 = F.inv(c[0])
        b = [inv0] + [0] * (R - 1)
        for k in range(1, R):
            s = 0
            for i in range(1, k + 1):
                if c[i]:
                    s = F.add(s, F.mul(c[i], b[k - i]))
            b[k] = F.neg(F.mul(inv0, s))
        return LaurentSeries(F, -v, b, -v + R)

    def __pow__(self, k: int, rel_prec: int | None = None):
        if k < 0:
            return self.inv(rel_prec) ** (-k)
        res = LaurentSeries.const(self.field, 1)
        base = self
        while k:
            if k & 1:
                res = res * base
            base = base * base
            k >>= 1
        return res

    def compose_monomial(self, c: int, k: int) -> "LaurentSeries":
        """Substitute t -> c * t^k (k >= 1, c != 0)."""
        if k < 1:
            raise DomainError("compose_monomial needs k >= 1")
        F = self.field
        if c == 0:
            raise DomainError("compose_monomial needs a nonzero scalar")
        prec = None if self.prec is None else self.prec * k
        terms = {k * e: F.mul(x, F.pow(c, e)) for e, x in self.terms().items()}
        return LaurentSeries.from_terms(F, terms, prec)

    def agrees_with(self, other: "LaurentSeries") -> bool:
        """Equality up to the smaller of the two precisions."""
        return (self - other).is_zero()

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.field.params == other.field.params and self.lead == other.lead
                and self.coeffs == other.coeffs and self.prec == other.prec)

    def __hash__(self):
        return hash((self.lead, self.coeffs, self.prec))

    def __repr__(self):
        parts = []
        for k, c in sorted(self.terms().items()):
            cs = repr(FqElement(self.field, c))
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if mono and c == 1:
                parts.append(mono)
            elif mono:
                parts.append(f"{cs}*{mono}")
            else:
                parts.append(cs)
        if self.prec is not None:
            parts.append(f"O(t^{self.prec})")
        return " + ".join(parts) or "0"


class _Inf:
    """Positive infinity for integer precision bookkeeping, no floats involved."""

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return 0

    def __repr__(self):
        return "inf"


_INF = _Inf()


def _min_prec(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def series_arith(a: LaurentSeries, b, op: str, *, rel_prec: int | None = None) -> LaurentSeries:
    """Named dispatch for series operations: add, mul, inv, compose_monomial.

    For compose_monomial ``b`` is the pair (c, k) of the substitution t -> c*t^k.
    """
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inv(rel_prec)
    if op == "compose_monomial":
        c, k = b
        return a.compose_monomial(c.value if isinstance(c, FqElement) else c, k)
    raise DomainError(f"unknown series operation {op!r}")


# -- elements of L ---------------------------------------------------------


class ExtElement:
    """sum_i rep[i] * theta^i, reduced modulo the datum's minimal polynomial."""

    __slots__ = ("datum", "rep")

    def __init__(self, datum: "GaloisDatum", rep: Sequence[LaurentSeries]):
        e = datum.e
        rep = list(rep)
        if len(rep) > e:
            rep = _reduce_mod(rep, datum.minpoly_low, datum.field)
        rep += [LaurentSeries.zero(datum.field)] * (e - len(rep))
        self.datum = datum
        self.rep = tuple(rep)

    def _lift(self, other):
        if isinstance(other, ExtElement):
            return other
        if isinstance(other, (int, FqElement, LaurentSeries)):
            return self.datum.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return ExtElement(self.datum, [a + b for a, b in zip(self.rep, other.rep)])

    __radd__ = __add__

    def __neg__(self):
        return ExtElement(self.datum, [-a for a in self.rep])

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        F = self.datum.field
        e = self.datum.e
        out = [LaurentSeries.zero(F) for _ in range(2 * e - 1)]
        for i, a in enumerate(self.rep):
            if a.is_exact_zero():
                continue
            for j, b in enumerate(other.rep):
                if b.is_exact_zero():
                    continue
                out[i + j] = out[i + j] + a * b
        return ExtElement(self.datum, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise DomainError("negative powers of general elements are not supported")
        res = self.datum.one()
        base = self
        while k:
            if k & 1:
                res = res * base
            base = base * base
            k >>= 1
        return res

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.rep)

    def is_exact(self) -> bool:
        return all(c.is_exact for c in self.rep)

    def in_base(self) -> bool:
        """True when the element lies in K (all theta-coefficients above 0 vanish)."""
        return all(c.is_zero() for c in self.rep[1:])

    def valuation(self) -> int | None:
        return ext_valuation(self)

    def evaluate_poly(self, coeffs: Sequence[LaurentSeries]) -> "ExtElement":
        """sum coeffs[i] * self^i by Horner's rule."""
        acc = self.datum.const(LaurentSeries.zero(self.datum.field))
        for c in reversed(coeffs):
            acc = acc * self + c
        return acc

    def __eq__(self, other):
        if not isinstance(other, ExtElement):
            return NotImplemented
        return self.datum is other.datum and self.rep == other.rep

    def __hash__(self):
        return hash(self.rep)

    def __repr__(self):
        parts = []
        for i, c in enumerate(self.rep):
            if c.is_exact_zero():
                continue
            mono = "" if i == 0 else ("*th" if i == 1 else f"*th^{i}")
            parts.append(f"({c}){mono}")
        return " + ".join(parts) or "0"


def _reduce_mod(rep: list[LaurentSeries], low: Sequence[LaurentSeries], F: GF) -> list[LaurentSeries]:
    """Reduce sum rep[k] x^k modulo the monic x^e + sum low[i] x^i."""
    e = len(low)
    rep = list(rep)
    for k in range(len(rep) - 1, e - 1, -1):
        c = rep[k]
        if c.is_exact_zero():
            continue
        for i, a in enumerate(low):
            if not a.is_exact_zero():
                rep[k - e + i] = rep[k - e + i] - c * a
    return rep[:e]


def ext_valuation(x: ExtElement) -> int | None:
    """v_L(x) with v_L(t) = e; None stands for the zero element.

    The candidate values e*v_t(c_i) + i*w are distinct modulo e, so the minimum
    is attained exactly once.  A coefficient known only to be zero to precision
    P contributes the bound e*P + i*w and is harmless if that bound exceeds the
    minimum of the known terms.
    """
    d = x.datum
    known = []
    unknown = []
    for i, c in enumerate(x.rep):
        if c.lead is not None:
            known.append(d.e * c.lead + i * d.w)
        elif c.prec is not None:
            unknown.append(d.e * c.prec + i * d.w)
    if not known:
        if not unknown:
            return None
        raise PrecisionError("element is zero to the working precision")
    v = min(known)
    if any(b <= v for b in unknown):
        raise PrecisionError("valuation undetermined at the working precision")
    return v


# -- Galois data -------------------------------------------------------------


@dataclass(frozen=True)
class GroupElement:
    id: int
    action: tuple[LaurentSeries, ...]
    order: int = 1


@dataclass(frozen=True, eq=False)
class GaloisDatum:
    params: FieldParams
    e: int
    w: int
    minpoly: tuple[LaurentSeries, ...]
    group: tuple[GroupElement, ...]
    unif: tuple[int, int]
    label: str = "custom"
    family: tuple[tuple[str, object], ...] = dc_field(default=())

    def __post_init__(self):
        if len(self.minpoly) != self.e + 1:
            raise DomainError(f"minimal polynomial must have {self.e + 1} coefficients")
        top = self.minpoly[-1]
        if not (top.is_exact and top.terms() == {0: 1}):
            raise DomainError("minimal polynomial must be monic")

    @cached_property
    def field(self) -> GF:
        return gf(self.params)

    @property
    def minpoly_low(self) -> tuple[LaurentSeries, ...]:
        return self.minpoly[:-1]

    @property
    def family_params(self) -> dict:
        return dict(self.family)

    def element(self, rep: Sequence[LaurentSeries]) -> ExtElement:
        return ExtElement(self, rep)

    def const(self, c) -> ExtElement:
        F = self.field
        if isinstance(c, int):
            c = LaurentSeries.const(F, F.from_int(c))
        elif isinstance(c, FqElement):
            c = LaurentSeries.const(F, c.value)
        return ExtElement(self, [c])

    def one(self) -> ExtElement:
        return self.const(LaurentSeries.const(self.field, 1))

    def t(self) -> ExtElement:
        return self.const(LaurentSeries.monomial(self.field, 1, 1))

    def theta(self) -> ExtElement:
        F = self.field
        return ExtElement(self, [LaurentSeries.zero(F), LaurentSeries.const(F, 1)])

    def theta_inverse(self, rel_prec: int | None = None) -> ExtElement:
        """theta^-1 = -(theta^(e-1) + a_(e-1) theta^(e-2) + ... + a_1) / a_0."""
        low = self.minpoly_low
        a0 = low[0]
        if a0.is_zero():
            raise DomainError("minimal polynomial has zero constant term")
        inv0 = a0.inv(rel_prec)
        rep = [-(c * inv0) for c in list(low[1:]) + [self.minpoly[-1]]]
        return ExtElement(self, rep)

    def theta_power(self, k: int, rel_prec: int | None = None) -> ExtElement:
        if k >= 0:
            return self.theta() ** k
        return self.theta_inverse(rel_prec) ** (-k)

    def uniformizer(self, rel_prec: int | None = None) -> ExtElement:
        a, b = self.unif
        ta = self.const(LaurentSeries.monomial(self.field, 1, a))
        return ta * self.theta_power(b, rel_prec)

    def element_by_id(self, gid: int) -> GroupElement:
        for g in self.group:
            if g.id == gid:
                return g
        raise DomainError(f"no group element with id {gid}")

    @property
    def ids(self) -> tuple[int, ...]:
        return tuple(sorted(g.id for g in self.group))

    def image_of_theta(self, g: GroupElement) -> ExtElement:
        return self.theta().evaluate_poly(g.action)

    def apply(self, g: GroupElement, x: ExtElement) -> ExtElement:
        """g(x) for x = sum c_i theta^i, i.e. sum c_i P_g(theta)^i."""
        return self.image_of_theta(g).evaluate_poly(x.rep)

    @cached_property
    def identity_id(self) -> int:
        th = self.theta()
        for g in self.group:
            if (self.image_of_theta(g) - th).is_zero():
                return g.id
        raise InconsistencyError("group has no identity element")

    @cached_property
    def group_table(self) -> FiniteGroup:
        """Multiplication table, (s, t) -> s o t, built from action-polynomial composition."""
        images = {g.id: self.image_of_theta(g) for g in self.group}
        table = {}
        for s in self.group:
            for t in self.group:
                st = self.apply(s, images[t.id])
                match = [r for r, im in images.items() if (st - im).is_zero()]
                if len(match) != 1:
                    raise InconsistencyError(f"composition of {s.id} and {t.id} is not a group element")
                table[(s.id, t.id)] = match[0]
        return FiniteGroup(images, self.identity_id, table)

    def default_precision(self) -> int:
        env = os.environ.get(PRECISION_ENV)
        if env:
            try:
                return max(1, int(env))
            except ValueError:
                raise DomainError(f"{PRECISION_ENV} must be an integer, got {env!r}")
        return 4 * self.e * (1 + abs(self.w) * self.e)


def unif_exponents(e: int, w: int) -> tuple[int, int]:
    """(a, b) with a*e + b*w = 1 and 0 <= b < e."""
    if gcd(e, w) != 1:
        raise DomainError(f"gcd(w={w}, e={e}) must be 1")
    if e == 1:
        return (1, 0)
    b = pow(w, -1, e)
    a = (1 - b * w) // e
    return (a, b)


def build_tame_kummer(params: FieldParams, e: int) -> GaloisDatum:
    """theta^e = t with group {x -> z*x : z in mu_e(F_q)}."""
    F = gf(params)
    if e < 1:
        raise DomainError("degree must be positive")
    if e % params.p == 0 or (F.q - 1) % e != 0:
        raise UnsupportedFamilyError(f"tame Kummer needs p∤e and e | q-1 (q={F.q}, e={e})")
    zeros = LaurentSeries.zero(F)
    minpoly = [zeros] * (e + 1)
    minpoly[0] = LaurentSeries.monomial(F, F.neg(1), 1)
    minpoly[-1] = LaurentSeries.const(F, 1)
    roots = F.roots_of_unity(e)
    roots.remove(1)
    group = []
    for gid, z in enumerate([1] + roots):
        order = 1
        while F.pow(z, order) != 1:
            order += 1
        group.append(GroupElement(gid, (zeros, LaurentSeries.const(F, z)), order))
    return GaloisDatum(params, e, 1, tuple(minpoly), tuple(group), unif_exponents(e, 1),
                       "trivial" if e == 1 else "tame_kummer", (("e", e),))


def build_artin_schreier(params: FieldParams, m: int, c=1) -> GaloisDatum:
    """theta^p - theta = c * t^(-m), with group {x -> x + a : a in F_p}."""
    F = gf(params)
    p = params.p
    cv = c.value if isinstance(c, FqElement) else int(c)
    if m < 1:
        raise DomainError("pole order m must be positive")
    if m % p == 0:
        raise UnsupportedFamilyError(f"p={p} divides m={m}; reduce the class first")
    if not 0 < cv < F.q:
        raise DomainError("Artin-Schreier constant must be a nonzero element of F_q")
    zeros = LaurentSeries.zero(F)
    minpoly = [zeros] * (p + 1)
    minpoly[0] = LaurentSeries.monomial(F, F.neg(cv), -m)
    minpoly[1] = LaurentSeries.const(F, F.neg(1))
    minpoly[-1] = LaurentSeries.const(F, 1)
    one = LaurentSeries.const(F, 1)
    group = tuple(GroupElement(a, (LaurentSeries.const(F, a) if a else zeros, one), 1 if a == 0 else p)
                  for a in range(p))
    return GaloisDatum(params, p, -m, tuple(minpoly), group, unif_exponents(p, -m),
                       "artin_schreier", (("c", cv), ("m", m)))


def build_from_family(params: FieldParams, family: str, **kw) -> GaloisDatum:
    if family == "artin_schreier":
        return build_artin_schreier(params, int(kw["m"]), kw.get("c", 1))
    if family in ("tame_kummer", "trivial"):
        return build_tame_kummer(params, int(kw.get("e", 1)))
    raise UnsupportedFamilyError(f"unknown family {family!r}")


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class VerifyReport:
    checks: list[Check]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.ok]

    def to_json(self) -> dict:
        return {"ok": self.ok,
                "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in self.checks]}


def verify_datum(d: GaloisDatum) -> VerifyReport:
    """Check every hypothesis the filtration code relies on; never raises."""
    checks: list[Check] = []

    def add(name, fn):
        try:
            ok, detail = fn()
        except Exception as exc:  # a failing check, not a crash
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        checks.append(Check(name, bool(ok), detail))

    e, w = d.e, d.w
    add("coprime_w_e", lambda: (gcd(w, e) == 1, f"gcd({w}, {e})"))
    add("unif_exponents", lambda: (d.unif[0] * e + d.unif[1] * w == 1, f"{d.unif[0]}*{e} + {d.unif[1]}*{w}"))
    add("group_order", lambda: (len(d.group) == e and len(set(d.ids)) == e, f"|G|={len(d.group)}"))

    def newton():
        a0 = d.minpoly[0]
        if a0.is_zero() or a0.valuation() != w:
            return False, f"v_t(a_0) must equal w={w}"
        for i, a in enumerate(d.minpoly_low):
            if not a.is_zero() and e * a.valuation() < (e - i) * w:
                return False, f"coefficient {i} below the single-slope Newton polygon"
        return True, f"single slope {w}/{e}"

    add("newton_polygon", newton)
    add("identity_present", lambda: (d.identity_id is not None, f"id {d.identity_id}"))

    def roots():
        bad = [g.id for g in d.group if not d.image_of_theta(g).evaluate_poly(d.minpoly).is_zero()]
        return not bad, f"f(P_s(theta)) != 0 for {bad}" if bad else "all conjugates are roots"

    add("conjugates_are_roots", roots)

    def closure():
        G = d.group_table
        return True, f"closed, order {G.order}"

    add("composition_closure", closure)

    def orders():
        G = d.group_table
        bad = [g.id for g in d.group if G.element_order(g.id) != g.order or e % g.order]
        return not bad, f"order mismatch for {bad}" if bad else "orders consistent"

    add("element_orders", orders)

    def valuations():
        rp = d.default_precision()
        vt = ext_valuation(d.t())
        vu = ext_valuation(d.uniformizer(rp))
        return vt == e and vu == 1, f"v_L(t)={vt}, v_L(u)={vu}"

    add("uniformizer_valuation", valuations)
    return VerifyReport(checks)


def base_change_tame(d: GaloisDatum, e_prime: int) -> GaloisDatum:
    """The datum of L K'/K' where K' = F_q((s)) and t = s^e'.

    Tame Kummer data are rebuilt in normal form theta'^e = s (same field).
    Any other datum is transported by substituting t -> s^e' in all
    coefficients; this needs gcd(e', e) = 1 so that the compositum stays
    totally ramified of degree e, and the generator valuation becomes e'*w.
    """
    if e_prime < 1:
        raise DomainError("base-change index must be positive")
    if e_prime == 1:
        return d
    if gcd(e_prime, d.e) != 1:
        raise UnsupportedFamilyError(f"gcd(e'={e_prime}, e={d.e}) != 1: compositum is not totally ramified of degree e")
    if d.label in ("tame_kummer", "trivial"):
        return build_tame_kummer(d.params, d.e)
    minpoly = tuple(c.compose_monomial(1, e_prime) for c in d.minpoly)
    group = tuple(GroupElement(g.id, tuple(c.compose_monomial(1, e_prime) for c in g.action), g.order)
                  for g in d.group)
    w = e_prime * d.w
    fam = dict(d.family)
    if "m" in fam:
        fam["m"] = fam["m"] * e_prime
    return GaloisDatum(d.params, d.e, w, minpoly, group, unif_exponents(d.e, w), d.label,
                       tuple(sorted(fam.items())))
