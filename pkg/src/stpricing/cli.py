"""Command-line front end.

    stpricing price  --dist st-petersburg --epsilon 2^-28 --k 0.5 --mu 20
    stpricing stp    {simulate,feller,two-banker,decompose} ...
    stpricing option {price,diverge} ...

Every report carries the fully resolved parameters, so re-running with them
reproduces it.  Machine formats (json, csv) print floats with 17 significant
digits; an unbounded price is rendered as the string ``"unbounded"``.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
import warnings

from . import distributions as dists
from .densities import make_density
from .errors import DegenerateBoundsWarning, NoFiniteTruncation, PricingError
from .lab import (
    MAX_TOSSES,
    SimulationConfig,
    feller_check,
    feller_fair_fee,
    simulate_session,
    two_banker_demo,
    verify_decomposition,
)
from .options import (
    EpsilonQuantile,
    ExplicitBounds,
    ExplicitMultiple,
    OptionSpec,
    divergence_table,
    truncated_price,
)
from .rules import (
    BuyerProfile,
    buyer_accepts,
    buyer_max_price,
    seller_min_price_committed,
    seller_quote_closeable,
    truncated_expectation,
)

UNBOUNDED_TEXT = "unbounded"

_POWER = re.compile(r"^\s*([0-9.eE+-]+)\s*\^\s*([+-]?[0-9.eE+-]+)\s*$")


def parse_number(text: str) -> float:
    """Parse a decimal or a power such as ``2^-28`` (computed exactly for integer bases)."""
    match = _POWER.match(text)
    if match:
        base, exp = float(match.group(1)), float(match.group(2))
        if base == 2 and exp.is_integer():
            return math.ldexp(1.0, int(exp))
        return base**exp
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def parse_list(text: str) -> list[float]:
    return [parse_number(part) for part in text.split(",") if part.strip()]


def load_distribution(source: str) -> dists.DiscretePayoutDistribution:
    """Resolve ``st-petersburg``, ``lottery:K`` or ``file:PATH``."""
    if source in ("st-petersburg", "st_petersburg"):
        return dists.st_petersburg()
    if source.startswith("lottery:"):
        try:
            k = int(source.split(":", 1)[1])
        except ValueError:
            raise PricingError(f"bad lottery index in {source!r}") from None
        return dists.lottery_game(k)
    if source.startswith("file:"):
        path = source[len("file:"):]
        try:
            return dists.load(path)
        except OSError as exc:
            raise PricingError(f"cannot read {path}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise PricingError(f"{path} is not valid JSON: {exc}") from None
    raise PricingError(f"unknown distribution {source!r}; use st-petersburg, lottery:K or file:PATH")


# -- rendering ---------------------------------------------------------------


def _format_float(x: float, digits: int) -> str:
    if math.isinf(x):
        return json.dumps(UNBOUNDED_TEXT) if x > 0 else json.dumps("-" + UNBOUNDED_TEXT)
    if math.isnan(x):
        return "null"
    text = format(x, f".{digits}g")
    # keep floats recognisable as floats after a JSON round trip
    if not any(c in text for c in ".en"):
        text += ".0"
    return text


def render_json(obj, indent: int = 0) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {render_json(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{inner}{render_json(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _format_float(obj, 17)
    return json.dumps(str(obj))


def _cell(value, digits: int) -> str:
    if isinstance(value, bool) or value is None:
        return json.dumps(value)
    if isinstance(value, float):
        text = _format_float(value, digits)
        return text.strip('"')
    if isinstance(value, (list, tuple)):
        return ";".join(_cell(v, digits) for v in value)
    return str(value)


def render_csv(report: dict) -> str:
    result = report["result"]
    rows = result.get("rows")
    if rows is None:
        rows = [result]
    # parameters ride along on every row so each line is self-describing
    rows = [{**report["params"], **row} for row in rows]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = list(rows[0]) if rows else []
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(row[h], 17) for h in header])
    return buf.getvalue().rstrip("\n")


def render_table(report: dict) -> str:
    lines = [f"{report['command']}"]
    for key, value in report["params"].items():
        lines.append(f"  {key:<24} {_cell(value, 12)}")
    lines.append("")
    result = report["result"]
    rows = result.get("rows")
    if rows is not None:
        header = list(rows[0]) if rows else []
        cells = [[_cell(row[h], 12) for h in header] for row in rows]
        widths = [max([len(h)] + [len(c[i]) for c in cells]) for i, h in enumerate(header)]
        lines.append("  ".join(h.rjust(w) for h, w in zip(header, widths)))
        lines.extend("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells)
    else:
        for key, value in result.items():
            lines.append(f"{key + ':':<26} {_cell(value, 12)}")
    return "\n".join(lines)


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return render_json(report)
    if fmt == "csv":
        return render_csv(report)
    return render_table(report)


# -- commands ----------------------------------------------------------------


def cmd_price(args) -> dict:
    dist = load_distribution(args.dist)
    profile = BuyerProfile(args.epsilon, args.k)
    seller_k = args.k if args.seller_k is None else args.seller_k
    params = {
        "dist": args.dist,
        "epsilon": args.epsilon,
        "k": args.k,
        "seller_k": seller_k,
        "mu": args.mu,
    }
    try:
        trunc = truncated_expectation(dist, args.epsilon).to_dict()
    except NoFiniteTruncation as exc:
        trunc = {"n_epsilon": None, "e_epsilon": math.inf, "retained_mass": 1.0}
        warnings.warn(str(exc), RuntimeWarning, stacklevel=1)
    try:
        closeable = seller_quote_closeable(dist, args.epsilon, seller_k)
    except PricingError as exc:
        closeable = None
        warnings.warn(f"no closeable seller quote: {exc}", RuntimeWarning, stacklevel=1)
    result = {
        **trunc,
        "buyer_max_price": buyer_max_price(dist, profile),
        "seller_committed_price": seller_min_price_committed(dist),
        "seller_closeable_quote": closeable,
    }
    if args.mu is not None:
        result["buyer_accepts"] = buyer_accepts(dist, profile, args.mu)
    return {"command": "price", "params": params, "result": result}


def _config(seed, n, max_tosses) -> SimulationConfig:
    return SimulationConfig(seed=seed, num_plays=n, max_tosses=max_tosses)


def cmd_stp(args) -> dict:
    sub = args.stp_command
    if sub == "simulate":
        report = simulate_session(_config(args.seed, args.n, args.max_tosses))
        params = {"seed": args.seed, "n": args.n, "max_tosses": args.max_tosses}
        return {"command": "stp simulate", "params": params, "result": report.to_dict()}
    if sub == "feller":
        params = {"n": args.n, "sessions": args.sessions, "seed": args.seed, "max_tosses": args.max_tosses}
        if args.sessions:
            result = feller_check(_config(args.seed, args.n, args.max_tosses), args.sessions).to_dict()
        else:
            result = {"n": args.n, "feller_fee": feller_fair_fee(args.n)}
        return {"command": "stp feller", "params": params, "result": result}
    if sub == "two-banker":
        report = two_banker_demo(
            _config(args.seed1, args.n1, args.max_tosses),
            _config(args.seed2, args.n2, args.max_tosses),
        )
        params = {
            "n1": args.n1, "n2": args.n2,
            "seed1": args.seed1, "seed2": args.seed2,
            "max_tosses": args.max_tosses,
        }
        return {"command": "stp two-banker", "params": params, "result": report.to_dict()}
    report = verify_decomposition(args.depth)
    return {"command": "stp decompose", "params": {"depth": args.depth}, "result": report.to_dict()}


def _bound_mode(args):
    if args.mode == "epsilon":
        if args.epsilon is None:
            raise PricingError("--mode epsilon needs --epsilon")
        return EpsilonQuantile(args.epsilon)
    if args.mode == "bounds":
        if args.lower is None or args.upper is None:
            raise PricingError("--mode bounds needs --lower and --upper")
        return ExplicitBounds(args.lower, args.upper)
    return ExplicitMultiple(args.upper_mult, args.lower_mult)


def cmd_option(args) -> dict:
    density = make_density(args.density, args.location, args.scale)
    base = {"density": args.density, "location": args.location, "scale": args.scale, "strike": args.strike}
    if args.option_command == "diverge":
        rows = divergence_table(density, args.strike, args.uppers)
        result = {"rows": [{"upper": m, "partial_price": v} for m, v in rows]}
        return {"command": "option diverge", "params": {**base, "uppers": list(args.uppers)}, "result": result}

    spec = OptionSpec(args.spot, args.strike, args.rate, args.maturity, args.side)
    mode = _bound_mode(args)
    params = {
        **base,
        "spot": args.spot,
        "rate": args.rate,
        "maturity": args.maturity,
        "side": args.side,
        "mode": args.mode,
    }
    if args.mode == "epsilon":
        params["epsilon"] = args.epsilon
    elif args.mode == "bounds":
        params.update(lower=args.lower, upper=args.upper)
    else:
        params.update(upper_mult=args.upper_mult, lower_mult=args.lower_mult)
    quote = truncated_price(density, spec, mode)
    return {"command": "option price", "params": params, "result": quote.to_dict()}


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("table", "json", "csv"), default="table")

    parser = argparse.ArgumentParser(prog="stpricing", description=__doc__.split("\n")[0])
    commands = parser.add_subparsers(dest="command", required=True)

    price = commands.add_parser("price", parents=[fmt], help="buyer and seller prices for a payout distribution")
    price.add_argument("--dist", required=True, help="st-petersburg, lottery:K or file:PATH")
    price.add_argument("--epsilon", type=parse_number, required=True, help="hopeless probability, e.g. 2^-28")
    price.add_argument("--k", type=parse_number, default=1.0, help="buyer cost-effectiveness factor")
    price.add_argument("--seller-k", type=parse_number, help="seller factor for the closeable quote (default: --k)")
    price.add_argument("--mu", type=parse_number, help="quoted price to accept or reject")
    price.set_defaults(func=cmd_price)

    stp = commands.add_parser("stp", help="St. Petersburg experiments")
    stp_commands = stp.add_subparsers(dest="stp_command", required=True)
    sim = stp_commands.add_parser("simulate", parents=[fmt])
    sim.add_argument("--n", type=int, required=True)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--max-tosses", type=int, default=MAX_TOSSES)
    fel = stp_commands.add_parser("feller", parents=[fmt])
    fel.add_argument("--n", type=int, required=True)
    fel.add_argument("--sessions", type=int, default=0, help="also run this many seeded sessions")
    fel.add_argument("--seed", type=int, default=0)
    fel.add_argument("--max-tosses", type=int, default=MAX_TOSSES)
    two = stp_commands.add_parser("two-banker", parents=[fmt])
    two.add_argument("--n1", type=int, default=1024)
    two.add_argument("--n2", type=int, default=1024)
    two.add_argument("--seed1", type=int, default=1)
    two.add_argument("--seed2", type=int, default=2)
    two.add_argument("--max-tosses", type=int, default=MAX_TOSSES)
    dec = stp_commands.add_parser("decompose", parents=[fmt])
    dec.add_argument("--depth", type=int, default=50)
    stp.set_defaults(func=cmd_stp)

    option = commands.add_parser("option", help="truncated option prices")
    option_commands = option.add_subparsers(dest="option_command", required=True)
    dens = argparse.ArgumentParser(add_help=False)
    dens.add_argument("--density", choices=("cauchy", "gaussian"), default="cauchy")
    dens.add_argument("--location", type=parse_number, default=0.0)
    dens.add_argument("--scale", type=parse_number, default=1.0)
    dens.add_argument("--strike", type=parse_number, required=True)
    op = option_commands.add_parser("price", parents=[fmt, dens])
    op.add_argument("--spot", type=parse_number, required=True)
    op.add_argument("--rate", type=parse_number, default=0.0)
    op.add_argument("--maturity", type=parse_number, default=0.0)
    op.add_argument("--side", choices=("call", "put"), default="call")
    op.add_argument("--mode", choices=("epsilon", "multiple", "bounds"), default="multiple")
    op.add_argument("--epsilon", type=parse_number)
    op.add_argument("--upper-mult", type=parse_number, default=100.0)
    op.add_argument("--lower-mult", type=parse_number, default=0.01)
    op.add_argument("--lower", type=parse_number)
    op.add_argument("--upper", type=parse_number)
    div = option_commands.add_parser("diverge", parents=[fmt, dens])
    div.add_argument("--uppers", type=parse_list, required=True, help="comma separated, e.g. 1e3,1e6,1e9")
    option.set_defaults(func=cmd_option)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            report = args.func(args)
        except (PricingError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
    notes = [str(w.message) for w in caught if issubclass(w.category, (DegenerateBoundsWarning, RuntimeWarning))]
    if notes:
        report["warnings"] = notes
    for note in notes:
        print(f"warning: {note}", file=sys.stderr)
    print(render(report, args.format))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
