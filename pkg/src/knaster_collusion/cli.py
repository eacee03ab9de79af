"""Command-line interface.

Input is either ``--values 10,6,3,2,1`` (agents labelled 1..n) or a JSON
document ``{"agents": [{"label": "A", "valuation": "10"}, ...]}`` given with
``--input FILE`` (``-`` for stdin).  Output is JSON on stdout unless
``--format table`` is requested.  Every number is emitted both as an exact
fraction string and as a rounded decimal.

Exit codes: 0 success, 1 input error, 2 invariant violation.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Optional, Sequence

from . import attitude, coalitions, identities, knaster, shapley
from .errors import CollusionError, InvariantViolation
from .gain_game import GainGame
from .valuations import ValuationProfile, canonicalize, to_fraction

EXIT_OK, EXIT_INPUT, EXIT_INVARIANT = 0, 1, 2


class InputError(CollusionError):
    pass


def format_decimal(x: Fraction, places: int) -> str:
    """Fixed-point rendering of ``x``, rounded half-to-even at ``places``."""
    scaled = round(x * 10**places)
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(places + 1, "0")
    if places == 0:
        return sign + digits
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def parse_number(obj: dict) -> Fraction:
    """Inverse of the number rendering: reads back the exact fraction."""
    return Fraction(obj["fraction"])


class Renderer:
    def __init__(self, places: int):
        self.places = places

    def num(self, x: Fraction) -> dict:
        return {"fraction": str(x), "decimal": format_decimal(x, self.places)}


# -- input -----------------------------------------------------------------

def load_profile(args: argparse.Namespace) -> ValuationProfile:
    if args.values is not None and args.input is not None:
        raise InputError("give either --values or --input, not both")
    if args.values is not None:
        items = [tok for tok in args.values.split(",") if tok.strip()]
        if not items:
            raise InputError("--values is empty")
        return ValuationProfile.from_values(to_fraction(tok) for tok in items)
    if args.input is None:
        raise InputError("a valuation profile is required (--values or --input)")
    if args.input == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {args.input}: {exc.strerror}") from exc
    return profile_from_document(text)


def profile_from_document(text: str) -> ValuationProfile:
    try:
        doc = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from exc
    agents = doc.get("agents") if isinstance(doc, dict) else None
    if not isinstance(agents, list) or not agents:
        raise InputError('document must be an object with a non-empty "agents" list')
    raw = []
    for entry in agents:
        if not isinstance(entry, dict) or "label" not in entry or "valuation" not in entry:
            raise InputError('each agent needs "label" and "valuation"')
        raw.append((str(entry["label"]), entry["valuation"]))
    return canonicalize(raw)


# -- report sections ---------------------------------------------------------

def profile_section(profile: ValuationProfile, r: Renderer) -> dict:
    return {
        "agents": [
            {"position": i, "label": lab, "valuation": r.num(v)}
            for i, (lab, v) in enumerate(profile.items(), start=1)
        ]
    }


def cmd_allocate(args, profile: ValuationProfile, r: Renderer) -> tuple[dict, int]:
    alloc = knaster.allocate(profile)
    agents = []
    for i, lab in enumerate(profile.labels):
        agents.append({
            "label": lab,
            "initial_share": r.num(alloc.initial_shares[i]),
            "adjusted_share": r.num(alloc.adjusted_shares[i]),
            "compensation": r.num(alloc.compensations[i]),
        })
    return {
        "allocation": {
            "winner": profile.label(alloc.winner),
            "surplus": r.num(alloc.surplus),
            "agents": agents,
        }
    }, EXIT_OK


def cmd_worth(args, profile: ValuationProfile, r: Renderer) -> tuple[dict, int]:
    game = GainGame(profile)
    by_name = {str(lab): i for i, lab in enumerate(profile.labels, start=1)}
    names = [tok.strip() for tok in (args.coalition or "").split(",") if tok.strip()]
    unknown = [nm for nm in names if nm not in by_name]
    if unknown:
        raise InputError(f"unknown agent labels: {unknown}")
    members = sorted({by_name[nm] for nm in names})
    return {
        "worth": {
            "coalition": [profile.label(i) for i in members],
            "positions": members,
            "worth": r.num(game.worth(members)),
            "per_capita": r.num(game.per_capita_worth(members)),
        }
    }, EXIT_OK


SHAPLEY_METHODS = {
    "closed": shapley.shapley_closed_form,
    "fast": shapley.shapley_fast,
}


def cmd_shapley(args, profile: ValuationProfile, r: Renderer) -> tuple[dict, int]:
    game = GainGame(profile)
    if args.method == "bruteforce":
        result = shapley.shapley_bruteforce(game, cap=args.oracle_cap)
    else:
        result = SHAPLEY_METHODS[args.method](game)
    section: dict[str, Any] = {
        "method": args.method,
        "values": [
            {"position": i, "label": lab, "value": r.num(val)}
            for i, (lab, val) in enumerate(zip(profile.labels, result.values), start=1)
        ],
    }
    code = EXIT_OK
    if args.check:
        if game.n <= args.oracle_cap:
            oracle = shapley.shapley_bruteforce(game, cap=args.oracle_cap)
            routes = [result, shapley.shapley_closed_form(game), shapley.shapley_fast(game)]
            match = all(x.values == oracle.values for x in routes)
            section["oracle"] = {"checked": True, "match": match}
            if not match:
                code = EXIT_INVARIANT
        else:
            section["oracle"] = {
                "checked": False,
                "match": None,
                "reason": f"n={game.n} exceeds oracle cap {args.oracle_cap}",
            }
    return {"shapley": section}, code


def cmd_coalitions(args, profile: ValuationProfile, r: Renderer) -> tuple[dict, int]:
    game = GainGame(profile)
    an = coalitions.analyze(game)
    trace = coalitions.form_coalition(game, args.criterion, args.threshold)
    lab = profile.label
    bounds = None
    if an.bounds is not None:
        b = an.bounds
        bounds = {
            "s_double_star_le_s_star": b.order_ok,
            "s_star_range": b.total_ok,
            "s_double_star_range": b.percapita_ok,
            "even_half": b.even_half_ok,
            "plateau": b.plateau_ok,
        }
    section = {
        "per_size": [
            {
                "s": e.s,
                "coalition": [lab(i) for i in sorted(e.coalition)],
                "worth": r.num(e.worth),
                "per_capita": r.num(e.per_capita),
            }
            for e in an.per_size
        ],
        "deltas": [r.num(x) for x in an.deltas],
        "small_deltas": [r.num(x) for x in an.small_deltas],
        "s_star": an.s_star,
        "s_double_star": an.s_double_star,
        "bounds": bounds,
        "formation": {
            "criterion": trace.criterion.value,
            "threshold": r.num(trace.threshold),
            "steps": [
                {"agent": lab(st.agent), "increment": r.num(st.increment), "accepted": st.accepted}
                for st in trace.steps
            ],
            "final_coalition": [lab(i) for i in sorted(trace.final_coalition)],
            "final_worth": r.num(trace.final_worth),
        },
    }
    code = EXIT_OK if an.bounds is None or an.bounds.all_ok else EXIT_INVARIANT
    return {"coalitions": section}, code


def cmd_pattern(args, r: Renderer) -> tuple[dict, int]:
    rows = attitude.ladder(args.max_n)
    return {
        "pattern": {
            "max_n": args.max_n,
            "ladder": [
                {"n": e.n, "kind": e.kind.value, "positions": list(e.positions)} for e in rows
            ],
        }
    }, EXIT_OK


def cmd_verify(args, r: Renderer) -> tuple[dict, int]:
    run_all = not (args.identities or args.pattern)
    out: dict[str, Any] = {}
    ok = True
    if args.identities or run_all:
        checks = identities.verify_identities(args.max)
        failures = [{"j": c.j, "t": c.t} for c in checks if not c.holds]
        out["identities"] = {"max": args.max, "checked": len(checks), "failures": failures}
        ok &= not failures
    if args.pattern or run_all:
        mismatches = []
        for n in range(2, args.max_n + 1):
            try:
                attitude.classify(n)
            except InvariantViolation:
                mismatches.append(n)
        out["pattern"] = {"max_n": args.max_n, "mismatches": mismatches}
        ok &= not mismatches
    out["ok"] = ok
    return {"verify": out}, EXIT_OK if ok else EXIT_INVARIANT


PROFILE_COMMANDS = {
    "allocate": cmd_allocate,
    "worth": cmd_worth,
    "shapley": cmd_shapley,
    "coalitions": cmd_coalitions,
}


# -- table rendering ---------------------------------------------------------

def render_table(report: dict) -> str:
    lines: list[str] = []
    if "profile" in report:
        lines.append("pos  label  valuation")
        for a in report["profile"]["agents"]:
            lines.append(f"{a['position']:>3}  {str(a['label']):<5}  {a['valuation']['decimal']}")
        lines.append("")
    if "pattern" in report:
        lines.extend(_pattern_grid(report["pattern"]["ladder"]))
    for key in ("allocation", "worth", "shapley", "coalitions", "verify"):
        if key in report:
            lines.append(f"[{key}]")
            lines.extend(_flatten(report[key]))
    return "\n".join(lines)


def _pattern_grid(ladder_rows: list[dict]) -> list[str]:
    width = max(row["n"] for row in ladder_rows)
    head = " n |" + "".join(f"{p:>3}" for p in range(1, width + 1))
    lines = [head, "-" * len(head)]
    for row in ladder_rows:
        mark = "⊙" if row["kind"] == "two_weak" else "⊗"
        cells = [
            mark if p in row["positions"] else "·" for p in range(1, row["n"] + 1)
        ]
        lines.append(f"{row['n']:>2} |" + "".join(f"{c:>3}" for c in cells))
    return lines


def _flatten(obj: Any, prefix: str = "") -> list[str]:
    if isinstance(obj, dict) and set(obj) == {"fraction", "decimal"}:
        return [f"{prefix} = {obj['decimal']}  ({obj['fraction']})"]
    if isinstance(obj, dict):
        out = []
        for k, v in obj.items():
            out.extend(_flatten(v, f"{prefix}.{k}" if prefix else str(k)))
        return out
    if isinstance(obj, list) and not any(isinstance(v, (dict, list)) for v in obj):
        return [f"{prefix} = [{', '.join(str(v) for v in obj)}]"]
    if isinstance(obj, list):
        out = []
        for i, v in enumerate(obj):
            out.extend(_flatten(v, f"{prefix}[{i}]"))
        return out
    return [f"{prefix} = {obj}"]


# -- argument parsing ----------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage errors are input errors, exit 1
        raise InputError(message)


def _fraction_arg(text: str) -> Fraction:
    try:
        return to_fraction(text)
    except CollusionError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--precision", type=int, default=6, help="decimal places")

    source = _Parser(add_help=False)
    source.add_argument("--values", help="comma-separated valuations, labelled 1..n")
    source.add_argument("--input", help="JSON profile document, '-' for stdin")

    parser = _Parser(prog="knaster-collusion", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("allocate", parents=[common, source], help="Knaster allocation")
    p = sub.add_parser("worth", parents=[common, source], help="worth of a coalition")
    p.add_argument("--coalition", required=True, help="comma-separated agent labels")

    p = sub.add_parser("shapley", parents=[common, source], help="Shapley value")
    p.add_argument("--method", choices=("closed", "fast", "bruteforce"), default="fast")
    p.add_argument("--check", action="store_true", help="compare against enumeration")
    p.add_argument("--oracle-cap", type=int, default=shapley.DEFAULT_ORACLE_CAP)

    p = sub.add_parser("coalitions", parents=[common, source], help="maximal-gain coalitions")
    p.add_argument("--criterion", choices=("total", "percapita"), default="total")
    p.add_argument("--threshold", type=_fraction_arg, default=Fraction(0))

    p = sub.add_parser("pattern", parents=[common], help="averse-position ladder")
    p.add_argument("--max-n", type=int, default=15)

    p = sub.add_parser("verify", parents=[common], help="run built-in identity checks")
    p.add_argument("--identities", action="store_true")
    p.add_argument("--pattern", action="store_true")
    p.add_argument("--max", type=int, default=30, help="largest j and t for identities")
    p.add_argument("--max-n", type=int, default=200)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> tuple[dict, int, str]:
    """Execute a command; returns ``(report, exit_code, output_format)``."""
    fmt = "json"
    try:
        args = build_parser().parse_args(argv)
        fmt = args.format
        if args.precision < 0:
            raise InputError("--precision must be non-negative")
        r = Renderer(args.precision)
        report: dict[str, Any] = {"command": args.command}
        if args.command in PROFILE_COMMANDS:
            profile = load_profile(args)
            report["profile"] = profile_section(profile, r)
            body, code = PROFILE_COMMANDS[args.command](args, profile, r)
        elif args.command == "pattern":
            body, code = cmd_pattern(args, r)
        else:
            body, code = cmd_verify(args, r)
        report.update(body)
        return report, code, fmt
    except InvariantViolation as exc:
        return {"error": {"type": "InvariantViolation", "message": str(exc)}}, EXIT_INVARIANT, fmt
    except (CollusionError, ValueError) as exc:
        return {"error": {"type": type(exc).__name__, "message": str(exc)}}, EXIT_INPUT, fmt


def main(argv: Optional[Sequence[str]] = None) -> int:
    report, code, fmt = run(argv)
    if fmt == "table" and "error" not in report:
        text = render_table(report)
    else:
        text = json.dumps(report, indent=2, ensure_ascii=False)
    sys.stdout.write(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
