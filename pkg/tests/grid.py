"""Shared test data: the grid of Galois data every acceptance criterion runs over."""

from ramlab.algebra import FieldParams, gf
from ramlab.local import GaloisDatum, GroupElement, LaurentSeries, build_artin_schreier, build_tame_kummer

AS_CASES = [(p, m) for p in (2, 3) for m in (1, 2, 4, 5) if m % p]
TAME_CASES = [(3, 2), (4, 3), (5, 2), (5, 4)]


def compositum_datum() -> GaloisDatum:
    """Biquadratic L/F_2((t)): x^4 + (1+s) x^2 + s x + s^2/t with s = 1/t + 1/t^2.

    With y = x^2 + x one has y = s z and z^2 + z = 1/t, so L contains the
    Artin-Schreier field of 1/t.  The group is {x -> x + b + a/t}.
    """
    params = FieldParams.standard(2)
    F = gf(params)
    S = lambda terms: LaurentSeries.from_terms(F, terms)
    minpoly = (S({-5: 1, -3: 1}), S({-1: 1, -2: 1}), S({0: 1, -1: 1, -2: 1}), S({}), S({0: 1}))
    group = []
    for a in (0, 1):
        for b in (0, 1):
            gid = 2 * a + b
            group.append(GroupElement(gid, (S({0: b, -1: a}), S({0: 1})), 1 if gid == 0 else 2))
    return GaloisDatum(params, 4, -5, minpoly, tuple(group), (4, 3), "compositum")


def grid() -> list[tuple[str, GaloisDatum]]:
    out = []
    for p, m in AS_CASES:
        out.append((f"AS(p={p},m={m})", build_artin_schreier(FieldParams.standard(p), m)))
    out.append(("AS(q=4,m=3,c=2)", build_artin_schreier(FieldParams.from_q(4), 3, 2)))
    for q, e in TAME_CASES:
        out.append((f"tame(q={q},e={e})", build_tame_kummer(FieldParams.from_q(q), e)))
    out.append(("trivial(q=2)", build_tame_kummer(FieldParams.standard(2), 1)))
    out.append(("compositum", compositum_datum()))
    return out
