"""Exact arithmetic over finite fields F_q, polynomials over F_q, and places of P^1.

Field elements are stored as integers in ``range(q)``: the base-p digits of
the integer are the coordinates of the element in the polynomial basis
1, x, ..., x^(n-1) of F_p[x]/(modulus).  ``GF`` does the arithmetic on those
integers through exp/log tables; ``FqElement`` wraps one for operator use.

Polynomials over F_q are ``FqPolynomial`` objects holding a tuple of such
integers, low degree first, with no trailing zeros (the zero polynomial is
the empty tuple).
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import DomainError, ResourceError

#: desk-scale cap on the field size; brute-force oracles must terminate
MAX_Q = 2 ** 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    k = 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q = p**n``; raise DomainError when q is not a prime power."""
    if q < 2:
        raise DomainError(f"{q} is not a prime power")
    ps = prime_factors(q)
    if len(ps) != 1:
        raise DomainError(f"{q} is not a prime power")
    p = ps[0]
    n = 0
    while q > 1:
        q //= p
        n += 1
    return p, n


# -- raw polynomial arithmetic over the prime field, used to bootstrap GF ----

def _fp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mulmod(a: Sequence[int], b: Sequence[int], mod: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    n = len(mod) - 1
    for k in range(len(prod) - 1, n - 1, -1):
        c = prod[k]
        if c:
            for i in range(n + 1):
                prod[k - n + i] = (prod[k - n + i] - c * mod[i]) % p
    return _fp_trim(prod[:n])


@dataclass(frozen=True)
class FieldParams:
    """Defining data of F_q: characteristic ``p``, degree ``n`` and the modulus.

    ``modulus`` lists the coefficients (low to high, in F_p) of a monic
    irreducible polynomial of degree ``n``.  For ``n == 1`` the modulus is
    ``x``, so that F_p[x]/(x) is just F_p.
    """

    p: int
    n: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "modulus", tuple(int(c) for c in self.modulus))
        if not is_prime(self.p):
            raise DomainError(f"characteristic {self.p} is not prime")
        if self.n < 1:
            raise DomainError("extension degree must be positive")
        if self.p ** self.n > MAX_Q:
            raise ResourceError(f"q = {self.p}^{self.n} exceeds the cap {MAX_Q}")
        m = self.modulus
        if len(m) != self.n + 1 or m[-1] != 1 or any(not 0 <= c < self.p for c in m):
            raise DomainError(f"modulus {m} is not monic of degree {self.n} over F_{self.p}")
        if self.n > 1:
            prime = GF(FieldParams(self.p, 1, (0, 1)))
            if not poly_is_irreducible(FqPolynomial(prime, m)):
                raise DomainError(f"modulus {m} is reducible over F_{self.p}")

    @property
    def q(self) -> int:
        return self.p ** self.n

    @classmethod
    def standard(cls, p: int, n: int = 1) -> "FieldParams":
        """Canonical parameters: the lexicographically least irreducible modulus."""
        return _standard_params(p, n)

    @classmethod
    def from_q(cls, q: int) -> "FieldParams":
        p, n = prime_power(q)
        return cls.standard(p, n)

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj: dict) -> "FieldParams":
        if "modulus" in obj:
            mod = tuple(obj["modulus"])
            return cls(int(obj["p"]), int(obj.get("n", len(mod) - 1)), mod)
        if "q" in obj:
            return cls.from_q(int(obj["q"]))
        return cls.standard(int(obj["p"]), int(obj.get("n", 1)))


@functools.lru_cache(maxsize=None)
def _standard_params(p: int, n: int) -> FieldParams:
    if not is_prime(p):
        raise DomainError(f"characteristic {p} is not prime")
    if p ** n > MAX_Q:
        raise ResourceError(f"q = {p}^{n} exceeds the cap {MAX_Q}")
    if n == 1:
        return FieldParams(p, 1, (0, 1))
    prime = GF(FieldParams(p, 1, (0, 1)))
    # integer order with the constant term least significant
    for low in itertools.product(range(p), repeat=n):
        coeffs = tuple(reversed(low)) + (1,)
        if coeffs[0] == 0:
            continue
        if poly_is_irreducible(FqPolynomial(prime, coeffs)):
            return FieldParams(p, n, coeffs)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class GF:
    """Arithmetic tables for the field F_q described by ``params``.

    Use :func:`gf` to obtain a shared instance; building the tables costs
    O(q * n^2).
    """

    def __init__(self, params: FieldParams):
        self.params = params
        self.p = params.p
        self.n = params.n
        self.q = params.p ** params.n
        self._build_tables()

    def _build_tables(self):
        p, _n, q = self.p, self.n, self.q
        mod = self.params.modulus
        self._digits = [self._to_digits(v) for v in range(q)]
        if q == 2:
            gen = 1
        else:
            rs = prime_factors(q - 1)
            gen = None
            for cand in range(2, q):
                d = self._digits[cand]
                if all(self._slow_pow(d, (q - 1) // r) != [1] for r in rs):
                    gen = cand
                    break
            assert gen is not None
        self.generator = gen
        exp = [0] * (2 * (q - 1))
        log = [0] * q
        cur = [1]
        gd = self._digits[gen]
        for k in range(q - 1):
            v = self._from_digits(cur)
            exp[k] = v
            log[v] = k
            cur = _fp_mulmod(cur, gd, mod, p)
        exp[q - 1:] = exp[:q - 1]
        self._exp = exp
        self._log = log
        if p == 2:
            self._add_table = None
        elif q <= 256:
            self._add_table = [[self._slow_add(a, b) for b in range(q)] for a in range(q)]
        else:
            self._add_table = None

    def _to_digits(self, v: int) -> list[int]:
        out = []
        while v:
            v, r = divmod(v, self.p)
            out.append(r)
        return out

    def _from_digits(self, d: Sequence[int]) -> int:
        v = 0
        for c in reversed(d):
            v = v * self.p + c
        return v

    def _slow_pow(self, d, k):
        res, base = [1], list(d)
        while k:
            if k & 1:
                res = _fp_mulmod(res, base, self.params.modulus, self.p)
            base = _fp_mulmod(base, base, self.params.modulus, self.p)
            k >>= 1
        return res

    def _slow_add(self, a: int, b: int) -> int:
        p = self.p
        v, scale = 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            v += ((x + y) % p) * scale
            scale *= p
        return v

    # -- arithmetic on integer-coded elements --

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self._add_table is not None:
            return self._add_table[a][b]
        return self._slow_add(a, b)

    def neg(self, a: int) -> int:
        if self.p == 2 or a == 0:
            return a
        return self.mul(self.p - 1, a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DomainError("inverse of zero in F_q")
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise DomainError("inverse of zero in F_q")
            return 1 if k == 0 else 0
        return self._exp[(self._log[a] * k) % (self.q - 1)]

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def pth_root(self, a: int) -> int:
        return self.pow(a, self.q // self.p)

    def trace(self, a: int) -> int:
        """Absolute trace to F_p, returned as an integer in range(p)."""
        s, x = 0, a
        for _ in range(self.n):
            s = self.add(s, x)
            x = self.frobenius(x)
        return s

    def from_int(self, k: int) -> int:
        """Image of the integer k under Z -> F_p -> F_q."""
        return k % self.p

    def coords(self, a: int) -> tuple[int, ...]:
        d = self._digits[a]
        return tuple(d) + (0,) * (self.n - len(d))

    def from_coords(self, coords: Iterable[int]) -> int:
        d = [int(c) % self.p for c in coords]
        if len(d) > self.n:
            raise DomainError(f"too many coordinates for F_{self.q}: {d}")
        return self._from_digits(d)

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def roots_of_unity(self, e: int) -> list[int]:
        """All x with x^e = 1, sorted by integer code."""
        return sorted(x for x in self.nonzero() if self.pow(x, e) == 1)

    def elem(self, v) -> "FqElement":
        return FqElement(self, v)

    def __repr__(self):
        return f"GF({self.q})"

    def __reduce__(self):
        return gf, (self.params,)


@functools.lru_cache(maxsize=None)
def gf(params: FieldParams) -> GF:
    return GF(params)


def field_for_q(q: int) -> GF:
    return gf(FieldParams.from_q(q))


class FqElement:
    """An element of F_q with the usual operators."""

    __slots__ = ("field", "value")

    def __init__(self, field: GF, value):
        if isinstance(value, FqElement):
            value = value.value
        elif isinstance(value, (list, tuple)):
            value = field.from_coords(value)
        if not 0 <= value < field.q:
            raise DomainError(f"{value} is not an element code of F_{field.q}")
        self.field = field
        self.value = int(value)

    def _coerce(self, other) -> int:
        if isinstance(other, FqElement):
            if other.field.params != self.field.params:
                raise DomainError("elements of different fields")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        return FqElement(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return FqElement(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        return FqElement(self.field, self.field.sub(b, self.value))

    def __neg__(self):
        return FqElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        return FqElement(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        return FqElement(self.field, self.field.div(self.value, b))

    def __pow__(self, k: int):
        return FqElement(self.field, self.field.pow(self.value, k))

    def inv(self) -> "FqElement":
        return FqElement(self.field, self.field.inv(self.value))

    def frobenius(self) -> "FqElement":
        return FqElement(self.field, self.field.frobenius(self.value))

    @property
    def coordinates(self) -> tuple[int, ...]:
        return self.field.coords(self.value)

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, FqElement):
            return self.field.params == other.field.params and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.params, self.value))

    def __repr__(self):
        if self.field.n == 1:
            return f"{self.value}"
        terms = []
        for i, c in enumerate(self.coordinates):
            if c:
                mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(mono if c == 1 and mono else f"{c}{mono}")
        return "+".join(reversed(terms)) or "0"


def fq_arith(a: FqElement, b, op: str) -> FqElement:
    """Dispatch one field operation by name (add, mul, inv, pow, frobenius).

    ``b`` is ignored for inv and frobenius and is an integer exponent for pow.
    """
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inv()
    if op == "pow":
        return a ** int(b)
    if op == "frobenius":
        return a.frobenius()
    raise DomainError(f"unknown field operation {op!r}")


class FqPolynomial:
    """Univariate polynomial over F_q with integer-coded coefficients, low first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: GF, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.field = field
        self.coeffs = tuple(c)

    @classmethod
    def x(cls, field: GF) -> "FqPolynomial":
        return cls(field, (0, 1))

    @classmethod
    def const(cls, field: GF, c: int) -> "FqPolynomial":
        return cls(field, (c,))

    @classmethod
    def monomial(cls, field: GF, c: int, k: int) -> "FqPolynomial":
        return cls(field, (0,) * k + (c,))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lead == 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def _same(self, other: "FqPolynomial"):
        if isinstance(other, int):
            return FqPolynomial(self.field, (self.field.from_int(other),))
        if not isinstance(other, FqPolynomial):
            return NotImplemented
        if other.field.params != self.field.params:
            raise DomainError("polynomials over different fields")
        return other

    def __add__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return FqPolynomial(F, (F.add(self[i], other[i]) for i in range(n)))

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return FqPolynomial(F, (F.neg(c) for c in self.coeffs))

    def __sub__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return FqPolynomial(F)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = F.add(out[i + j], F.mul(x, y))
        return FqPolynomial(F, out)

    __rmul__ = __mul__

    def scale(self, c: int) -> "FqPolynomial":
        F = self.field
        return FqPolynomial(F, (F.mul(c, x) for x in self.coeffs))

    def shift(self, k: int) -> "FqPolynomial":
        return FqPolynomial(self.field, (0,) * k + self.coeffs)

    def __divmod__(self, other):
        other = self._same(other)
        if other.is_zero():
            raise DomainError("polynomial division by zero")
        F = self.field
        r = list(self.coeffs)
        db = other.degree
        inv_lead = F.inv(other.lead)
        if len(r) - 1 < db:
            return FqPolynomial(F), FqPolynomial(F, r)
        quo = [0] * (len(r) - db)
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k]
            if c:
                c = F.mul(c, inv_lead)
                quo[k - db] = c
                for i, y in enumerate(other.coeffs):
                    r[k - db + i] = F.sub(r[k - db + i], F.mul(c, y))
        return FqPolynomial(F, quo), FqPolynomial(F, r[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, k: int):
        res = FqPolynomial(self.field, (1,))
        base = self
        while k:
            if k & 1:
                res = res * base
            base = base * base
            k >>= 1
        return res

    def powmod(self, k: int, mod: "FqPolynomial") -> "FqPolynomial":
        res = FqPolynomial(self.field, (1,)) % mod
        base = self % mod
        while k:
            if k & 1:
                res = (res * base) % mod
            base = (base * base) % mod
            k >>= 1
        return res

    def monic(self) -> "FqPolynomial":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lead))

    def derivative(self) -> "FqPolynomial":
        F = self.field
        return FqPolynomial(F, (F.mul(F.from_int(i), c) for i, c in enumerate(self.coeffs) if i))

    def __call__(self, x: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def pth_power(self) -> "FqPolynomial":
        """self ** p, computed coefficientwise (Frobenius is additive)."""
        F = self.field
        out = [0] * (self.degree * F.p + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[i * F.p] = F.frobenius(c)
        return FqPolynomial(F, out)

    def key(self) -> tuple:
        """Sort key: degree first, then coefficients as a base-q integer."""
        return (self.degree, tuple(reversed(self.coeffs)))

    def __eq__(self, other):
        if isinstance(other, FqPolynomial):
            return self.field.params == other.field.params and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self == FqPolynomial(self.field, (self.field.from_int(other),))
        return NotImplemented

    def __hash__(self):
        return hash((self.field.params, self.coeffs))

    def __lt__(self, other):
        return self.key() < other.key()

    def format(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        F = self.field
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = repr(FqElement(F, c))
            if F.n > 1 and "+" in cs:
                cs = f"({cs})"
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono:
                terms.append(f"{cs}*{mono}")
            else:
                terms.append(cs)
        return "+".join(terms)

    def __repr__(self):
        return self.format("t")


def poly_gcd(a: FqPolynomial, b: FqPolynomial) -> FqPolynomial:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: FqPolynomial, b: FqPolynomial):
    """Return (g, s, t) with s*a + t*b = g monic."""
    F = a.field
    r0, r1 = a, b
    s0, s1 = FqPolynomial(F, (1,)), FqPolynomial(F)
    t0, t1 = FqPolynomial(F), FqPolynomial(F, (1,))
    while not r1.is_zero():
        qt, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - qt * s1
        t0, t1 = t1, t0 - qt * t1
    c = F.inv(r0.lead)
    return r0.scale(c), s0.scale(c), t0.scale(c)


def poly_inverse_mod(a: FqPolynomial, m: FqPolynomial) -> FqPolynomial:
    g, s, _ = poly_xgcd(a % m, m)
    if g.degree != 0:
        raise DomainError(f"{a} is not invertible modulo {m}")
    return s % m


def poly_is_irreducible(f: FqPolynomial) -> bool:
    """Rabin-style test: gcd(f, x^(q^d) - x) = 1 for d <= deg/2, and x^(q^deg) = x mod f."""
    if f.degree < 1 or not f.is_monic():
        raise DomainError("irreducibility test needs a monic polynomial of degree >= 1")
    F = f.field
    x = FqPolynomial.x(F)
    h = x % f
    n = f.degree
    for d in range(1, n // 2 + 1):
        h = h.powmod(F.q, f)
        if poly_gcd(f, h - x).degree > 0:
            return False
    for _ in range(n // 2 + 1, n + 1):
        h = h.powmod(F.q, f)
    return h == x % f


def monic_polynomials(field: GF, d: int) -> Iterator[FqPolynomial]:
    """All monic polynomials of degree d, in increasing :meth:`FqPolynomial.key` order."""
    for low in itertools.product(range(field.q), repeat=d):
        yield FqPolynomial(field, tuple(reversed(low)) + (1,))


@functools.lru_cache(maxsize=None)
def monic_irreducibles(params: FieldParams, d: int) -> tuple[FqPolynomial, ...]:
    F = gf(params)
    return tuple(f for f in monic_polynomials(F, d) if poly_is_irreducible(f))


@dataclass(frozen=True)
class Place:
    """A closed point of P^1 over F_q: a monic irreducible polynomial, or infinity."""

    poly: FqPolynomial | None = None

    def __post_init__(self):
        if self.poly is not None:
            if not self.poly.is_monic() or self.poly.degree < 1:
                raise DomainError(f"place polynomial {self.poly} must be monic of degree >= 1")
            if self.poly.degree > 1 and not poly_is_irreducible(self.poly):
                raise DomainError(f"place polynomial {self.poly} is reducible")

    @classmethod
    def infinity(cls) -> "Place":
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree

    def sort_key(self) -> tuple:
        return (0,) if self.poly is None else (1,) + self.poly.key()

    def __lt__(self, other: "Place"):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return "inf" if self.poly is None else self.poly.format("t")

    def __repr__(self):
        return f"Place({self})"

    def to_json(self):
        return "inf" if self.poly is None else list(self.poly.coeffs)


def places_up_to_degree(params: FieldParams, d: int) -> list[Place]:
    """Infinity, then every monic irreducible of degree <= d in increasing order."""
    if d < 1:
        raise DomainError("degree bound must be positive")
    out = [Place.infinity()]
    for k in range(1, d + 1):
        out.extend(Place(f) for f in monic_irreducibles(params, k))
    return out
