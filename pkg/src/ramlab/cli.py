"""Command-line front end: every operation takes JSON or flags and prints a JSON report."""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from .algebra import FieldParams, Place
from .conductors import GroupRepresentation, all_characters, artin_conductor, check_swan_dim_bound, swan_conductor
from .covers import (census_artin_schreier, census_kummer, census_monotonicity_check, parse_divisor,
                     parse_place)
from .errors import DomainError, RamlabError
from .local import ExtElement, GaloisDatum, LaurentSeries, verify_datum
from .ramification import (RamificationFiltration, check_base_change_bound, disc_bound_to_ram_bound,
                           discriminant_by_resultant, discriminant_valuation, herbrand_phi, herbrand_psi,
                           is_bounded_by, lower_filtration, upper_filtration, different_valuation)
from .serialize import (SCHEMA_VERSION, datum_from_json, divisor_from_json, filtration_report, frac,
                        herbrand_to_json, representation_from_json)

COMMANDS = ("filtration", "herbrand", "swan", "artin", "different", "bound", "base-change-check",
            "census-as", "census-kummer", "census-chain", "verify")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise DomainError(message)


def _load_json(text: str) -> Any:
    text = text.strip()
    if not text.startswith(("{", "[")):
        try:
            text = Path(text).read_text()
        except OSError as exc:
            raise DomainError(f"cannot read input {text!r}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"malformed JSON: {exc.msg} at line {exc.lineno} column {exc.colno}") from None


def _field(args) -> FieldParams:
    if args.q is not None:
        params = FieldParams.from_q(args.q)
        if args.p is not None and args.p != params.p:
            raise DomainError(f"q={args.q} is not a power of p={args.p}")
        return params
    if args.p is not None:
        return FieldParams.standard(args.p)
    raise DomainError("give --q or --p")


def _datum(args) -> GaloisDatum:
    if args.input is not None:
        return datum_from_json(_load_json(args.input))
    if args.family is None:
        raise DomainError("give --input or --family")
    obj: dict[str, Any] = {"family": args.family}
    for key in ("p", "q", "m", "e", "c"):
        val = getattr(args, key)
        if val is not None:
            obj[key] = val
    return datum_from_json(obj)


def _filtrations(args):
    f = lower_filtration(_datum(args))
    return f, upper_filtration(f)


def _rep(args, group) -> GroupRepresentation:
    if args.rep is None:
        return GroupRepresentation.regular(group)
    return representation_from_json(_load_json(args.rep), group)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"{text!r} is not a rational number") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise DomainError(f"{text!r} is not a comma-separated integer list") from None


# -- commands -----------------------------------------------------------------


def cmd_filtration(args) -> dict:
    f, u = _filtrations(args)
    return filtration_report(f, u)


def cmd_herbrand(args) -> dict:
    if args.orders is not None or args.breaks is not None:
        if args.orders is None or args.breaks is None:
            raise DomainError("custom filtrations need both --orders and --breaks")
        f = RamificationFiltration.from_chain(_int_list(args.orders), _int_list(args.breaks))
    else:
        f = lower_filtration(_datum(args))
    phi = herbrand_phi(f)
    out = {"schema_version": SCHEMA_VERSION, "phi": herbrand_to_json(phi), "psi": herbrand_to_json(herbrand_psi(phi))}
    if args.sample is not None:
        step = _fraction(args.sample)
        upto = _fraction(args.upto) if args.upto is not None else Fraction(max(f.breaks, default=0) + 2)
        out["samples"] = [[frac(x), frac(y)] for x, y in phi.sample(step, upto)]
    return out


def cmd_swan(args) -> dict:
    f, u = _filtrations(args)
    rep = _rep(args, f.group)
    out = {"schema_version": SCHEMA_VERSION, "swan": swan_conductor(u, rep), "dim": rep.dim}
    if args.lam is not None:
        out["bound"] = check_swan_dim_bound(u, rep, _fraction(args.lam)).to_json()
    return out


def cmd_artin(args) -> dict:
    f, u = _filtrations(args)
    if args.rep is None and f.group.is_abelian():
        reports = [artin_conductor(u, chi) for chi in all_characters(f.group)]
        total = sum(r.artin for r in reports)
        reg = artin_conductor(u, GroupRepresentation.regular(f.group))
        return {"schema_version": SCHEMA_VERSION, **reg.to_json(),
                "characters": [dict(r.to_json(), values=list(chi.values))
                               for r, chi in zip(reports, all_characters(f.group))],
                "sum_artin": total, "discriminant": discriminant_valuation(f)}
    return {"schema_version": SCHEMA_VERSION, **artin_conductor(u, _rep(args, f.group)).to_json()}


def cmd_different(args) -> dict:
    d = _datum(args)
    f = lower_filtration(d)
    return {"schema_version": SCHEMA_VERSION, "different": different_valuation(f),
            "discriminant": discriminant_valuation(f), "resultant": discriminant_by_resultant(d),
            "hilbert_chain": sum(f.order_at(mu) - 1 for mu in range(0, max(f.breaks, default=-1) + 1))}


def cmd_bound(args) -> dict:
    if args.m is None:
        raise DomainError("bound needs --m")
    if args.input is None and args.family is None:
        if args.n is None:
            raise DomainError("bound needs --n or a datum")
        return {"schema_version": SCHEMA_VERSION, "m": args.m, "n": args.n,
                "bound": disc_bound_to_ram_bound(args.m, args.n)}
    f = lower_filtration(_datum(args))
    n = f.order
    disc = discriminant_valuation(f)
    bound = disc_bound_to_ram_bound(args.m, n)
    return {"schema_version": SCHEMA_VERSION, "m": args.m, "n": n, "bound": bound, "discriminant": disc,
            "applies": disc <= args.m, "bounded": is_bounded_by(f, bound)}


def cmd_base_change(args) -> dict:
    return {"schema_version": SCHEMA_VERSION, **check_base_change_bound(_datum(args), args.e_prime).to_json()}


def _divisor(args, params: FieldParams, text: str | None):
    if text is None:
        raise DomainError("give --divisor")
    if text.strip().startswith("{"):
        return divisor_from_json(_load_json(text), params)
    return parse_divisor(text, params)


def cmd_census_as(args) -> dict:
    params = _field(args)
    D = _divisor(args, params, args.divisor)
    report = census_artin_schreier(params, D, workers=args.workers)
    return {"schema_version": SCHEMA_VERSION, "divisor": D.to_json(), **report.to_json()}


def cmd_census_kummer(args) -> dict:
    params = _field(args)
    if args.e is None:
        raise DomainError("census-kummer needs --e")
    places = [parse_place(x, params) for x in (args.places or "").split(",") if x.strip()]
    report = census_kummer(params, places, args.e)
    return {"schema_version": SCHEMA_VERSION, "places": [z.to_json() for z in sorted(set(places), key=Place.sort_key)],
            **report.to_json()}


def cmd_census_chain(args) -> dict:
    params = _field(args)
    if not args.chain:
        raise DomainError("census-chain needs --chain")
    chain = [parse_divisor(x, params) for x in args.chain.split(";")]
    return {"schema_version": SCHEMA_VERSION,
            **census_monotonicity_check(params, chain, workers=args.workers).to_json()}


def _random_element(d: GaloisDatum, rng: random.Random) -> ExtElement:
    F = d.field
    rep = []
    for _ in range(d.e):
        lead = rng.randint(-3, 3)
        rep.append(LaurentSeries(F, lead, [rng.randrange(F.q) for _ in range(3)]))
    return d.element(rep)


def cmd_verify(args) -> dict:
    """Structural checks plus sampled checks that each group element is a ring automorphism."""
    d = _datum(args)
    report = verify_datum(d).to_json()
    rng = random.Random(args.seed)
    failures = []
    for i in range(args.samples):
        x, y = _random_element(d, rng), _random_element(d, rng)
        for g in d.group:
            if not (d.apply(g, x * y) - d.apply(g, x) * d.apply(g, y)).is_zero():
                failures.append({"sample": i, "id": g.id, "law": "multiplicative"})
            if not (d.apply(g, x + y) - d.apply(g, x) - d.apply(g, y)).is_zero():
                failures.append({"sample": i, "id": g.id, "law": "additive"})
    report["sampled"] = {"seed": args.seed, "samples": args.samples, "failures": failures}
    report["ok"] = report["ok"] and not failures
    return {"schema_version": SCHEMA_VERSION, **report}


HANDLERS = {
    "filtration": cmd_filtration,
    "herbrand": cmd_herbrand,
    "swan": cmd_swan,
    "artin": cmd_artin,
    "different": cmd_different,
    "bound": cmd_bound,
    "base-change-check": cmd_base_change,
    "census-as": cmd_census_as,
    "census-kummer": cmd_census_kummer,
    "census-chain": cmd_census_chain,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ramlab", description="Ramification invariants of local fields and covers of P^1.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--input", help="datum JSON: a path or an inline document")
        sp.add_argument("--output", help="write the report here instead of stdout")
        sp.add_argument("--workers", type=int, default=1)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--family", choices=["artin_schreier", "tame_kummer", "trivial"])
        sp.add_argument("--p", type=int)
        sp.add_argument("--q", type=int)
        sp.add_argument("--m", type=int)
        sp.add_argument("--c", type=int)
        sp.add_argument("--e", type=int)
        if name in ("swan", "artin"):
            sp.add_argument("--rep", help="representation JSON (default: regular)")
        if name == "swan":
            sp.add_argument("--lam", help="also check Sw <= dim * lam")
        if name == "herbrand":
            sp.add_argument("--orders", help="custom filtration: subgroup orders, e.g. 4,2")
            sp.add_argument("--breaks", help="custom filtration: lower breaks, e.g. 1,5")
            sp.add_argument("--sample", help="sampling step, e.g. 1/2")
            sp.add_argument("--upto", help="sampling range end")
        if name == "bound":
            sp.add_argument("--n", type=int)
        if name == "base-change-check":
            sp.add_argument("--e-prime", type=int, required=True)
        if name in ("census-as",):
            sp.add_argument("--divisor", help='shorthand such as "3[inf]+1[t]" or divisor JSON')
        if name == "census-kummer":
            sp.add_argument("--places", help='comma-separated places, e.g. "inf,0"')
        if name == "census-chain":
            sp.add_argument("--chain", help='semicolon-separated divisors, e.g. "0;1[inf];3[inf]"')
        if name == "verify":
            sp.add_argument("--samples", type=int, default=8)
    return parser


def _emit(doc: dict, output: str | None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    output = None
    try:
        args = build_parser().parse_args(argv)
        output = args.output
        if args.workers < 1:
            raise DomainError("--workers must be positive")
        doc = HANDLERS[args.command](args)
    except RamlabError as exc:
        _emit({"schema_version": SCHEMA_VERSION,
               "error": {"kind": exc.kind, "message": str(exc), "exit_code": exc.exit_code}}, output)
        return exc.exit_code
    _emit(doc, output)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
