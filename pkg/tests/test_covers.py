import itertools

import pytest
from hypothesis import given, settings, strategies as st

import ramlab.covers as covers
from ramlab.algebra import FieldParams, FqPolynomial, Place, gf, monic_irreducibles
from ramlab.conductors import all_characters, swan_conductor
from ramlab.covers import (EffectiveDivisor, RationalFunction, as_reduce, census_artin_schreier, census_kummer,
                           census_monotonicity_check, local_leading_coefficient, parse_divisor, parse_place,
                           parse_poly, riemann_roch_basis, swan_divisor_of_class)
from ramlab.errors import DomainError, InconsistencyError, ResourceError, UnsupportedFamilyError
from ramlab.local import build_artin_schreier
from ramlab.ramification import lower_filtration, upper_filtration

P2 = FieldParams.standard(2)
F2 = gf(P2)
INF = Place.infinity()


def rf(params, num, den=(1,)):
    F = gf(params)
    return RationalFunction(FqPolynomial(F, num), FqPolynomial(F, den))


from oracles import coset_oracle, kummer_oracle, riemann_roch_space

CENSUS_CASES = [
    (2, "0"), (2, "1[inf]"), (2, "3[inf]"), (2, "1[0]"), (2, "1[0]+1[inf]"), (2, "2[0]+2[inf]"),
    (2, "3[inf]+2[1]"), (2, "2[[1,1,1]]"), (2, "1[t]+1[t+1]+1[inf]"),
    (3, "2[inf]"), (3, "1[0]+1[inf]"), (3, "3[inf]"), (3, "3[0]"),
    (4, "1[inf]"), (4, "2[inf]"), (4, "1[0]+1[1]"), (5, "1[inf]"),
]


@pytest.mark.parametrize("q,text", CENSUS_CASES)
def test_census_matches_coset_oracle(q, text):
    params = FieldParams.from_q(q)
    D = parse_divisor(text, params)
    report = census_artin_schreier(params, D)
    cosets, W = coset_oracle(params, D)
    assert report.count_classes == len(cosets) - 1
    assert report.count_classes <= q ** (D.degree + 1) - 1
    assert report.count_fields * (params.p - 1) == report.count_classes
    assert report.count_constant == params.p - 1
    member_of = {g.key(): k for k, members in cosets.items() for g in members}
    reps = [c.reduced_rep for c in report.classes]
    assert len({member_of[r.key()] for r in reps}) == len(reps)
    zero_coset = member_of[RationalFunction.zero(gf(params)).key()]
    assert zero_coset not in {member_of[r.key()] for r in reps}
    rep_of = {member_of[r.key()]: r for r in reps}
    for k, members in cosets.items():
        for g in members[:6]:
            red = as_reduce(g).reduced_rep
            assert red == rep_of.get(k, RationalFunction.zero(gf(params)))


# -- module examples ----------------------------------------------------------


def test_riemann_roch_examples():
    assert [str(g) for g in riemann_roch_basis(parse_divisor("3[inf]", P2), P2)] == ["1", "t", "t^2", "t^3"]
    assert len(riemann_roch_basis(EffectiveDivisor(), P2)) == 1
    basis = riemann_roch_basis(parse_divisor("1[0]+1[inf]", P2), P2)
    assert set(basis) == {rf(P2, (1,)), rf(P2, (0, 1)), rf(P2, (1,), (0, 1))}


@pytest.mark.parametrize("q,text", CENSUS_CASES)
def test_riemann_roch_basis_spans(q, text):
    params = FieldParams.from_q(q)
    D = parse_divisor(text, params)
    basis = riemann_roch_basis(D, params)
    assert len(basis) == D.degree + 1
    for g in basis:
        assert all(g.pole_order(z) <= D.mult(z) for z in g.poles())
    if q ** len(basis) <= 256:
        span = set()
        for cs in itertools.product(range(q), repeat=len(basis)):
            g = RationalFunction.zero(gf(params))
            for c, b in zip(cs, basis):
                g = g + b.scale(c)
            span.add(g)
        assert span == set(riemann_roch_space(params, D))


def test_as_reduce_examples():
    assert as_reduce(rf(P2, (0, 0, 1))).reduced_rep == rf(P2, (0, 1))
    assert as_reduce(rf(P2, (1,), (0, 0, 1))).reduced_rep == rf(P2, (1,), (0, 1))
    h = rf(P2, (1, 1, 0, 1), (1, 0, 1, 1))
    assert as_reduce(h.artin_schreier()).is_zero


def test_swan_divisor_examples():
    assert swan_divisor_of_class(as_reduce(rf(P2, (0, 0, 0, 1)))) == parse_divisor("3[inf]", P2)
    assert swan_divisor_of_class(as_reduce(rf(P2, (1,), (0, 1)))) == parse_divisor("1[0]", P2)
    c = as_reduce(rf(P2, (1,)))
    assert c.is_constant and not c.is_zero and swan_divisor_of_class(c) == EffectiveDivisor()


def test_census_examples():
    assert census_artin_schreier(P2, parse_divisor("3[inf]", P2)).count_classes == 7
    assert census_artin_schreier(P2, parse_divisor("3[inf]", P2)).count_fields == 7
    assert census_artin_schreier(P2, parse_divisor("1[inf]", P2)).count_classes == 3
    r = census_artin_schreier(P2, EffectiveDivisor())
    assert r.count_classes == 1 and r.count_constant == 1


def test_census_reps_for_3_inf():
    r = census_artin_schreier(P2, parse_divisor("3[inf]", P2))
    expected = {rf(P2, (c, a1, 0, a3)) for c, a1, a3 in itertools.product((0, 1), repeat=3) if (c, a1, a3) != (0, 0, 0)}
    assert {c.reduced_rep for c in r.classes} == expected


def test_census_caps():
    with pytest.raises(ResourceError):
        census_artin_schreier(P2, parse_divisor("13[inf]", P2))
    with pytest.raises(ResourceError):
        census_artin_schreier(FieldParams.from_q(16), parse_divisor("5[inf]", FieldParams.from_q(16)))


def test_census_workers_do_not_change_output():
    params = FieldParams.standard(3)
    D = parse_divisor("1[0]+2[inf]", params)
    a = census_artin_schreier(params, D).to_json()
    b = census_artin_schreier(params, D, workers=3).to_json()
    assert a == b


def test_kummer_examples():
    P3 = FieldParams.standard(3)
    r = census_kummer(P3, [parse_place("0", P3), INF], 2)
    assert r.count_classes == 3
    functions = {c.function(gf(P3)) for c in r.classes}
    assert functions == {rf(P3, (0, 1)), rf(P3, (0, 2)), rf(P3, (2,))}
    assert census_kummer(P3, [], 2).count_classes == 1
    assert census_kummer(FieldParams.standard(5), [INF, parse_place("0", FieldParams.standard(5))], 1).count_classes == 0
    with pytest.raises(UnsupportedFamilyError):
        census_kummer(P3, [INF], 3)


@pytest.mark.parametrize("q,e", [(3, 2), (4, 3), (5, 2), (5, 4), (7, 3), (7, 6), (9, 4)])
@pytest.mark.parametrize("nplaces", [0, 1, 2, 3])
def test_kummer_matches_count_formula(q, e, nplaces):
    params = FieldParams.from_q(q)
    places = ([INF] + [Place(f) for f in monic_irreducibles(params, 1)[:3]]
              + [Place(f) for f in monic_irreducibles(params, 2)[:2]])
    for S in itertools.combinations(places, nplaces):
        r = census_kummer(params, S, e)
        assert r.count_classes == kummer_oracle(q, S, e)
        assert r.count_constant == e - 1


def test_kummer_degree_two_places():
    params = FieldParams.standard(3)
    f = Place(monic_irreducibles(params, 2)[0])
    assert census_kummer(params, [f], 2).count_classes == kummer_oracle(3, [f], 2) == 3
    assert census_kummer(params, [f, INF], 2).count_classes == kummer_oracle(3, [f, INF], 2) == 3


def test_monotonicity_examples():
    r = census_monotonicity_check(P2, [parse_divisor(x, P2) for x in ("0", "1[inf]", "3[inf]")])
    assert r.counts == [1, 3, 7]
    assert census_monotonicity_check(P2, [parse_divisor("3[inf]", P2)]).counts == [7]
    r = census_monotonicity_check(P2, [parse_divisor("1[0]", P2), parse_divisor("1[0]+1[inf]", P2)])
    assert r.counts == [3, 7]
    with pytest.raises(DomainError):
        census_monotonicity_check(P2, [parse_divisor("1[inf]", P2), parse_divisor("1[0]", P2)])


def test_monotonicity_detects_inclusion_failure(monkeypatch):
    real = covers.census_artin_schreier
    calls = []

    def shuffled(params, D, workers=1):
        calls.append(D)
        return real(params, parse_divisor("1[0]" if len(calls) == 2 else "1[inf]", params))

    monkeypatch.setattr(covers, "census_artin_schreier", shuffled)
    with pytest.raises(InconsistencyError):
        census_monotonicity_check(P2, [parse_divisor("1[inf]", P2), parse_divisor("3[inf]", P2)])


# -- properties ---------------------------------------------------------------


def rational_functions(q):
    params = FieldParams.from_q(q)
    F = gf(params)
    dens = [FqPolynomial(F, (1,))] + [f ** k for d in (1, 2) for f in monic_irreducibles(params, d)[:2] for k in (1, 2, 3)]

    @st.composite
    def build(draw):
        den = draw(st.sampled_from(dens)) * draw(st.sampled_from(dens[:4]))
        num = FqPolynomial(F, draw(st.lists(st.integers(0, q - 1), max_size=den.degree + 5)))
        return RationalFunction(num, den)

    return build()


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 4]).flatmap(lambda q: st.tuples(rational_functions(q), rational_functions(q))))
def test_reduction_is_a_class_invariant(gh):
    g, h = gh
    p = g.field.p
    c = as_reduce(g)
    assert as_reduce(g + h.artin_schreier()) == c
    assert as_reduce(c.reduced_rep) == c
    for z, m in c.reduced_rep.poles().items():
        assert m % p != 0
        assert c.conductor.mult(z) == m
    assert set(c.conductor.support) == set(c.reduced_rep.poles())


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3]).flatmap(lambda q: rational_functions(q)), st.integers(1, 2))
def test_scaling_fixes_the_field(g, a):
    p = g.field.p
    a = a % p or 1
    if as_reduce(g).is_zero:
        return
    assert as_reduce(g.scale(a)).conductor == as_reduce(g).conductor
    assert (as_reduce(g.scale(a)).reduced_rep == as_reduce(g).reduced_rep) == (a == 1)


@pytest.mark.parametrize("q,text", [(2, "3[inf]+2[1]"), (3, "1[0]+2[inf]"), (4, "2[inf]+1[0]")])
def test_local_global_consistency(q, text):
    """Swan multiplicity at a rational place equals the Swan conductor of the localized character."""
    params = FieldParams.from_q(q)
    report = census_artin_schreier(params, parse_divisor(text, params))
    for c in report.classes:
        for z, m in c.conductor.entries:
            if m % params.p == 0:
                continue
            lead = local_leading_coefficient(c, z)
            f = lower_filtration(build_artin_schreier(params, m, lead))
            u = upper_filtration(f)
            assert f.breaks == (m,)
            assert {swan_conductor(u, chi) for chi in all_characters(f.group)[1:]} == {m}


# -- parsing and containers ---------------------------------------------------


def test_divisor_parsing():
    D = parse_divisor("3[inf]+1[t]+2[t+1]", P2)
    assert D.degree == 6 and D.mult(INF) == 3
    assert parse_divisor("1[0]+1[inf]", P2) == parse_divisor("1[t]+1[inf]", P2)
    assert parse_divisor("2[[1,1,1]]", P2).degree == 4
    assert parse_divisor("1[inf] + 1[inf]", P2).mult(INF) == 2
    assert str(D) == "3[inf]+1[t]+2[t+1]"
    assert D.to_json() == {"entries": [{"place": "inf", "mult": 3}, {"place": [0, 1], "mult": 1},
                                       {"place": [1, 1], "mult": 2}]}
    for bad in ("3[", "x[inf]", "1[t^2+1]", "1[7]", "2[inf]-1[t]"):
        with pytest.raises(DomainError):
            parse_divisor(bad, P2)


def test_poly_and_place_parsing():
    P3 = FieldParams.standard(3)
    assert parse_poly("2*t^2+t+1", gf(P3)) == FqPolynomial(gf(P3), (1, 1, 2))
    assert parse_place("2", P3).poly == FqPolynomial(gf(P3), (1, 1))  # t - 2
    with pytest.raises(DomainError):
        parse_poly("t^2+3", gf(P3))


def test_rational_function_basics():
    g = rf(P2, (1, 0, 1), (1, 1))  # (t^2 + 1) / (t + 1) = t + 1
    assert g == rf(P2, (1, 1))
    h = rf(P2, (1,), (0, 0, 1, 1))
    assert h.poles() == {parse_place("0", P2): 2, parse_place("1", P2): 1}
    assert h.valuation(INF) == 3
    assert h.to_json() == {"num": [1], "den": [0, 0, 1, 1]}
    with pytest.raises(DomainError):
        RationalFunction(FqPolynomial(F2, (1,)), FqPolynomial(F2))
    with pytest.raises(DomainError):
        EffectiveDivisor(((INF, -1),))
