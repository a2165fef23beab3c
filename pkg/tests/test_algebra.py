import itertools

import pytest
from hypothesis import given, settings, strategies as st

from ramlab.algebra import (FieldParams, FqElement, FqPolynomial, Place, fq_arith, gf, monic_irreducibles,
                            monic_polynomials, places_up_to_degree, poly_gcd, poly_inverse_mod,
                            poly_is_irreducible, poly_xgcd)
from ramlab.errors import DomainError, ResourceError

QS = [2, 3, 4, 5, 8, 9]


def mobius(n):
    out, k, m = 1, 2, n
    while k * k <= m:
        if m % k == 0:
            m //= k
            if m % k == 0:
                return 0
            out = -out
        k += 1
    return -out if m > 1 else out


def necklace(q, d):
    return sum(mobius(d // k) * q ** k for k in range(1, d + 1) if d % k == 0) // d


def brute_irreducible(f):
    """Irreducible iff no monic factor of degree 1..deg/2 divides f."""
    F = f.field
    return not any((f % g).is_zero()
                   for k in range(1, f.degree // 2 + 1) for g in monic_polynomials(F, k))


def test_standard_moduli():
    assert FieldParams.standard(2, 2).modulus == (1, 1, 1)
    assert FieldParams.standard(3, 2).modulus == (1, 0, 1)
    assert FieldParams.standard(5).modulus == (0, 1)
    assert FieldParams.from_q(8).n == 3


def test_field_params_errors():
    with pytest.raises(DomainError):
        FieldParams(4, 1, (0, 1))
    with pytest.raises(DomainError):
        FieldParams(2, 2, (1, 0, 1))  # x^2 + 1 = (x + 1)^2
    with pytest.raises(ResourceError):
        FieldParams.standard(2, 17)


def test_field_params_json_round_trip():
    for q in QS:
        params = FieldParams.from_q(q)
        assert FieldParams.from_json(params.to_json()) == params
    assert FieldParams.from_json({"q": 9}) == FieldParams.standard(3, 2)
    assert FieldParams.from_json({"p": 2, "modulus": [1, 1, 1]}).q == 4


@pytest.mark.parametrize("q", QS)
def test_field_axioms_exhaustive(q):
    F = gf(FieldParams.from_q(q))
    for a in F.elements():
        assert F.pow(a, q) == a
        assert F.add(a, F.neg(a)) == 0
        assert F.pth_root(F.frobenius(a)) == a
        assert F.trace(a) in range(F.p)
        if a:
            assert F.mul(a, F.inv(a)) == 1
    for a, b in itertools.product(F.elements(), repeat=2):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))


@pytest.mark.parametrize("q", QS)
def test_trace_is_onto_and_balanced(q):
    F = gf(FieldParams.from_q(q))
    counts = [0] * F.p
    for a in F.elements():
        counts[F.trace(a)] += 1
    assert counts == [q // F.p] * F.p


@pytest.mark.parametrize("q", [2, 3, 4])
@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_irreducible_count_matches_necklace_formula(q, d):
    params = FieldParams.from_q(q)
    irr = monic_irreducibles(params, d)
    assert len(irr) == necklace(q, d)
    if q ** d <= 81:
        F = gf(params)
        assert {f for f in monic_polynomials(F, d) if brute_irreducible(f)} == set(irr)


def test_irreducible_test_rejects_bad_input():
    F = gf(FieldParams.standard(2))
    with pytest.raises(DomainError):
        poly_is_irreducible(FqPolynomial(F, (1,)))
    with pytest.raises(DomainError):
        poly_is_irreducible(FqPolynomial(F, (1, 0)))


def test_fq_element_operators():
    F = gf(FieldParams.from_q(4))
    x = FqElement(F, 2)
    assert x * x == x + 1
    assert (x / x) == FqElement(F, 1)
    assert x.frobenius() == x + 1
    assert fq_arith(x, FqElement(F, 3), "add") == FqElement(F, 1)
    assert x + 3 == x + 1  # integers act through Z -> F_p
    assert fq_arith(x, 3, "pow") == FqElement(F, 1)
    with pytest.raises(DomainError):
        fq_arith(x, 3, "+")
    assert x.coordinates == (0, 1)
    with pytest.raises(DomainError):
        FqElement(F, 0).inv()


def polys(q, max_deg=5):
    F = gf(FieldParams.from_q(q))
    return st.lists(st.integers(0, q - 1), max_size=max_deg + 1).map(lambda c: FqPolynomial(F, c))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 4, 5]).flatmap(lambda q: st.tuples(polys(q), polys(q), polys(q))))
def test_polynomial_ring_laws(abc):
    a, b, c = abc
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    if not b.is_zero():
        qt, r = divmod(a, b)
        assert qt * b + r == a
        assert r.degree < b.degree
        g, s, t = poly_xgcd(a, b)
        assert s * a + t * b == g
        assert g == poly_gcd(a, b)
        assert (a % g).is_zero() and (b % g).is_zero()


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 4]).flatmap(lambda q: st.tuples(polys(q, 4), st.integers(1, 3), st.just(q))))
def test_inverse_mod_irreducible(data):
    a, d, q = data
    f = monic_irreducibles(FieldParams.from_q(q), d)[0]
    a = a % f
    if a.is_zero():
        with pytest.raises(DomainError):
            poly_inverse_mod(a, f)
    else:
        assert (a * poly_inverse_mod(a, f)) % f == FqPolynomial(a.field, (1,))


def test_pth_power_and_derivative():
    F = gf(FieldParams.from_q(9))
    a = FqPolynomial(F, (1, 4, 7))
    assert a.pth_power() == a ** 3
    assert FqPolynomial(F, (0, 0, 0, 1)).derivative().is_zero()


def test_places():
    params = FieldParams.standard(2)
    pl = places_up_to_degree(params, 2)
    assert [str(z) for z in pl] == ["inf", "t", "t+1", "t^2+t+1"]
    assert Place.infinity().degree == 1
    with pytest.raises(DomainError):
        Place(FqPolynomial(gf(params), (1, 0, 1)))
