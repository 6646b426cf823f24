"""Command-line interface: one JSON document per invocation on stdout.

Exit codes: 0 success, 2 domain error, 3 precision error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

from . import discriminant as disc
from . import elliptic, kummer, unit_filtration
from .errors import LlabError, ParseError
from .finite_field import FiniteField, disc_parity, ff_factor, ff_poly_disc, irreducible_poly
from .local_field import LocalField, pi_expansion_str
from .presets import preset_spec
from .serialize import field_from_dict, jsonable, parse_element, parse_ff_poly


def _env_prec() -> Optional[int]:
    raw = os.environ.get("LLAB_PREC")
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"LLAB_PREC must be an integer, got {raw!r}") from None


def load_field(ref: str) -> LocalField:
    """A field from a JSON file, inline JSON, or a preset name."""
    prec = _env_prec()
    path = Path(ref)
    if path.is_file():
        spec = json.loads(path.read_text())
    elif ref.lstrip().startswith("{"):
        try:
            spec = json.loads(ref)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
    else:
        try:
            spec = preset_spec(path.name)
        except KeyError:
            raise ParseError(f"no field file or preset named {ref!r}") from None
    return field_from_dict(spec, prec)


# ---------------------------------------------------------------------------
# commands; each returns (result, certificates, precision_used)


def cmd_field_info(a):
    K = load_field(a.field)
    table = unit_filtration.filtration_dims(K, K.p)
    result = {
        "invariants": K.invariants(),
        "descriptor": K.descriptor(),
        "epsilon": K.eps.with_prec(K.prec),
        "filtration": table,
    }
    certs = {}
    if K.mu_p:
        certs["zeta"] = K.zeta
        certs["root_of_minus_p"] = K.Pi
    return result, certs, K.prec


def cmd_unit_level(a):
    K = load_field(a.field)
    u = parse_element(K, a.u)
    m, xi = unit_filtration.level_with_witness(K, a.l, u)
    certs = {"xi": xi} if xi is not None else {}
    return {"level": repr(m) if m is unit_filtration.TRIVIAL else m}, certs, u.prec


def cmd_classify(a):
    K = load_field(a.field)
    mu = parse_element(K, a.mu)
    report = kummer.classify_line(K, a.l, mu)
    certs: dict[str, Any] = {}
    if a.verify:
        certs["witness_check"] = kummer.verify_report(K, a.l, report)
        if not report.is_unramified:
            certs["break_oracle"] = kummer.break_oracle(K, a.l, mu)
        if not certs["witness_check"] or certs.get("break_oracle", report.t) != report.t:
            raise LlabError("report failed re-verification")
    return report, certs, report.precision_used


def cmd_splitting(a):
    K = load_field(a.field)
    mu = parse_element(K, a.mu)
    return {"type": disc.splitting_type(K, a.l, mu)}, {}, mu.prec


def cmd_census(a):
    K = load_field(a.field)
    census = kummer.count_by_break(K, a.l, exhaustive=a.exhaustive or None)
    return census, {"filtration_rows": kummer.census_by_filtration(K, a.l) if a.l == K.p else None}, K.prec


def cmd_mass(a):
    K = load_field(a.field)
    census = kummer.count_by_break(K, a.l, exhaustive=False)
    return kummer.mass_from_rows(a.l, K.f, census.rows), {"rows": census.rows}, K.prec


def cmd_pairing(a):
    K = load_field(a.field)
    eta = parse_element(K, a.eta)
    value = kummer.kummer_pairing(K, eta, a.a)
    certs = {}
    if a.oracle:
        oracle = kummer.pairing_oracle(K, eta)
        certs["oracle_exponent"] = (a.a * oracle.exponent) % K.p
    return value, certs, eta.prec


def cmd_filtration_m(a):
    K = load_field(a.field)
    return kummer.galois_filtration_M(K), {"filtration": unit_filtration.filtration_dims(K, K.p)}, K.prec


def _load_chain(ref: str) -> list:
    path = Path(ref)
    text = path.read_text() if path.is_file() else ref
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid chain JSON: {exc}") from None
    if not isinstance(raw, list) or not raw:
        raise ParseError("chain must be a non-empty list of links")
    links = []
    prec = _env_prec()
    for item in raw:
        try:
            fspec, l, mu = item["field"], int(item["l"]), item["mu"]
        except (KeyError, TypeError, ValueError):
            raise ParseError("each link needs field, l and mu") from None
        if isinstance(fspec, str):
            K = load_field(fspec)
        else:
            K = field_from_dict(fspec, prec)
        links.append(disc.Link(K, l, parse_element(K, mu)))
    return links


def cmd_pipeline(a):
    links = _load_chain(a.chain)
    res = disc.relative_disc_pipeline(links)
    certs = {g: disc.pipeline_regrouped(links, g) for g in ("halves", "bottom", "top")}
    return res, {"regrouped": certs}, min(k.field.prec for k in links)


def cmd_ff_disc(a):
    F = FiniteField(a.p, a.f)
    g = parse_ff_poly(F, a.poly)
    parity = disc_parity(g)
    result = {
        "disc": list(ff_poly_disc(g).coeffs),
        "even_degree_factor_count": parity.even_degree_factor_count,
        "class_trivial": parity.class_trivial,
        "factors": [{"factor": h.to_json(), "multiplicity": k} for h, k in ff_factor(g)],
    }
    certs = {}
    if a.p == 2:
        certs["lift_class"] = disc.disc_class_via_lift(g)
    return result, certs, None


def cmd_ec_realize(a):
    K = load_field(a.field)
    delta = parse_element(K, a.delta)
    cubic = elliptic.realize_disc(K, delta)
    return {"cubic": cubic}, {"d": cubic.d}, delta.prec


def cmd_ec_class(a):
    K = load_field(a.field)
    try:
        coeffs = json.loads(a.a) if a.a.strip().startswith("[") else [int(x) for x in a.a.split(",")]
    except ValueError:
        raise ParseError("--a expects five comma-separated integers or a JSON list") from None
    if len(coeffs) != 5:
        raise ParseError("a Weierstrass cubic has five coefficients a1, a2, a3, a4, a6")
    cubic = elliptic.weierstrass_invariants(*[parse_element(K, c) for c in coeffs])
    cls = elliptic.disc_class(K, cubic)
    return cls, {"d": cubic.d, "c4": cubic.c4, "c6": cubic.c6}, K.prec


# ---------------------------------------------------------------------------
# worked examples


def reproduce_ex47() -> dict:
    """Squares of (o/4o)^x over Q_2(cbrt 2), as pi-adic expansions mod pi^6."""
    K = load_field("q2cbrt2")
    n = 6
    squares = {}
    for x in K.elements_mod(n, units_only=True):
        y = x * x
        squares[y.key()] = y
    found = sorted(pi_expansion_str(y, n) for y in squares.values())
    expected = sorted(["1", "1+pi^2+pi^4", "1+pi^2+pi^5", "1+pi^4+pi^5"])
    return {"squares_mod_4": found, "expected": expected, "match": found == expected}


def reproduce_ex48() -> dict:
    """Square classes mod pi^7 of discriminants of unramified extensions of Q_2(cbrt 2)."""
    K = load_field("q2cbrt2")
    n = 7
    reps = {"1": K.one, "1+pi^6": 1 + K.pi_power(6)}
    F2 = FiniteField(2, 1)
    by_degree = {}
    for r in range(1, 7):
        g = irreducible_poly(F2, r)
        D = K(disc.int_poly_disc([c.to_int() for c in g.coeffs]))
        classes = [name for name, rep in reps.items() if unit_filtration.is_lth_power_mod(K, 2, D * rep.inverse(), n)]
        if len(classes) != 1:
            raise LlabError(f"degree {r}: discriminant lies in {len(classes)} of the two classes")
        by_degree[r] = classes[0]
        structured = disc.unramified_disc(K, r).representative
        if pi_expansion_str(structured, n) != classes[0]:
            raise LlabError(f"degree {r}: structured class disagrees with the lifted discriminant")
    return {
        "class_by_degree": by_degree,
        "odd_degree_classes": sorted({c for r, c in by_degree.items() if r % 2}),
        "even_degree_classes": sorted({c for r, c in by_degree.items() if r % 2 == 0}),
        "match": all(by_degree[r] == ("1" if r % 2 else "1+pi^6") for r in by_degree),
    }


def reproduce_ex50() -> dict:
    """K(sqrt(-1)) over K = Q_2(sqrt 3) is unramified."""
    K = load_field("q2sqrt3")
    level = unit_filtration.unit_level(K, 2, K(-1))
    report = kummer.classify_line(K, 2, K(-1))
    congruence = ((1 + K.pi) ** 2 - K(-1)).valuation() >= 4
    return {
        "unit_level": level,
        "is_unramified": report.is_unramified,
        "minus_one_is_square_mod_pi4": congruence,
        "match": level == 4 and report.is_unramified and congruence,
    }


EXAMPLES = {"ex47": reproduce_ex47, "ex48": reproduce_ex48, "ex50": reproduce_ex50}


def cmd_reproduce(a):
    out = EXAMPLES[a.example]()
    return out, {}, None


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="llab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=fn)
        return p

    def field_arg(p):
        p.add_argument("--field", required=True, help="field JSON file, inline JSON or preset name")

    p = add("field-info", cmd_field_info, "invariants, epsilon, zeta and the filtration table")
    field_arg(p)
    p = add("unit-level", cmd_unit_level, "level of a unit in K^x / K^x^l")
    field_arg(p)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--u", required=True)
    p = add("classify", cmd_classify, "classify the Kummer line of mu")
    field_arg(p)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--verify", action="store_true", help="recheck the report from its witnesses")
    p = add("splitting", cmd_splitting, "Split / Inert / Ramified for K(mu^(1/l))")
    field_arg(p)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--mu", required=True)
    p = add("census", cmd_census, "number of Kummer lines by break")
    field_arg(p)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--exhaustive", action="store_true", help="classify every line")
    p = add("mass", cmd_mass, "contribution of Kummer extensions to the mass formula")
    field_arg(p)
    p.add_argument("--l", type=int, required=True)
    p = add("pairing", cmd_pairing, "the pairing with the Frobenius of the unramified extension")
    field_arg(p)
    p.add_argument("--eta", required=True)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--oracle", action="store_true", help="also compute it in the unramified extension")
    p = add("filtration-m", cmd_filtration_m, "ramification filtration of the maximal elementary Kummer extension")
    field_arg(p)
    p = add("pipeline", cmd_pipeline, "discriminant valuation of a tower of Kummer steps")
    p.add_argument("--chain", required=True, help="JSON file or inline JSON list of {field, l, mu}")
    p = add("ff-disc", cmd_ff_disc, "discriminant and its class for a polynomial over F_q")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--f", type=int, default=1)
    p.add_argument("--poly", required=True, help="little-endian coefficients as JSON")
    p = add("ec-realize", cmd_ec_realize, "a good-reduction cubic with prescribed unit discriminant")
    field_arg(p)
    p.add_argument("--delta", required=True)
    p = add("ec-class", cmd_ec_class, "discriminant class of a Weierstrass cubic")
    field_arg(p)
    p.add_argument("--a", required=True, help="a1,a2,a3,a4,a6")
    p = add("reproduce", cmd_reproduce, "replay a worked example")
    p.add_argument("example", choices=sorted(EXAMPLES))
    return ap


def _inputs(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "command")}


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        result, certs, prec = args.func(args)
        doc = {
            "command": args.command,
            "inputs": _inputs(args),
            "result": jsonable(result),
            "certificates": jsonable(certs),
            "precision_used": prec,
        }
        code = 0
    except LlabError as exc:
        doc = {"error": exc.code, "detail": str(exc)}
        code = exc.exit_code
    except (json.JSONDecodeError, OSError) as exc:
        doc = {"error": "ParseError", "detail": str(exc)}
        code = 2
    out.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    return code


def main() -> None:
    sys.exit(run())

