"""Command line front door: ``span-lattice <command> ...``.

Exit codes: 0 on success, 1 when a claim cannot be spanned or is not
measurable (a JSON reason is printed on stdout), 2 for invalid input.
"""

from __future__ import annotations
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

import pandas as pd

from .closure import freudenthal_approx
from .errors import MeasurabilityError, SpanLatticeError
from .io import frame_to_text, load_market, write_table
from .lab import (
    build_counterexample,
    obstruction_certificate,
    row_limit_residuals,
    validate_row_law,
    y_sequence,
)
from .lattice import Payoff, format_number
from .options import option_space_basis, replicate
from .sigma import is_measurable, measurable_via_components, non_measurable_block, sigma_of

logger = logging.getLogger(__name__)


def _emit(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def cmd_replicate(args: argparse.Namespace) -> int:
    market = load_market(args.market)
    space = market.space(args.exact)
    f = market.payoff(args.asset, args.exact, space=space)
    g = market.payoff(args.claim, args.exact, space=space)

    portfolio = replicate(g, f)
    residual = (portfolio.evaluate() - g).sup_norm()
    if args.out:
        portfolio.save(args.out, underlying_name=args.asset)
    _emit(
        {
            "status": "success",
            "claim": args.claim,
            "residual": format_number(residual),
            "portfolio": portfolio.to_dict(underlying_name=args.asset),
        }
    )
    return 0


def cmd_span(args: argparse.Namespace) -> int:
    market = load_market(args.market)
    f = market.payoff(args.asset, args.exact)
    space = option_space_basis(f)
    blocks = sigma_of([f])
    _emit(
        {
            "status": "success",
            "asset": args.asset,
            "dimension": space.dimension,
            "basis": [
                {
                    "kind": kind,
                    "strike": format_number(strike),
                    "values": [format_number(v) for v in b.values],
                }
                for b, strike, kind in zip(space.basis, space.strikes, space.kinds)
            ],
            "blocks": blocks.to_list(),
        }
    )
    return 0


def cmd_measure(args: argparse.Namespace) -> int:
    market = load_market(args.market)
    space = market.space(args.exact)
    names = [name.strip() for name in args.algebra_from.split(",") if name.strip()]
    assets = [market.payoff(name, args.exact, space=space) for name in names]
    g = market.payoff(args.claim, args.exact, space=space)

    part = sigma_of(assets)
    direct = is_measurable(g, part)
    via_components = measurable_via_components(g, part, Payoff.one(space, exact=args.exact))
    payload = {
        "claim": args.claim,
        "algebra_from": names,
        "blocks": part.to_list(),
        "is_measurable": direct,
        "via_components": via_components,
    }
    if direct and via_components:
        _emit({"status": "success", **payload})
        return 0

    block = non_measurable_block(g, part)
    err = MeasurabilityError(
        f"Claim {args.claim!r} is not measurable with respect to sigma({', '.join(names)})",
        block=block,
    )
    _emit({**err.to_dict(), **payload})
    return 1


def cmd_counterexample(args: argparse.Namespace) -> int:
    exact = not args.float
    ce = build_counterexample(args.rows, args.cols, exact=exact)
    ys = y_sequence(ce.params)

    residuals = {"m": list(range(1, args.rows + 1))}
    residuals["u"] = list(row_limit_residuals(ce.u))
    residuals["v"] = list(row_limit_residuals(ce.v))
    for j, y in enumerate(ys, start=1):
        residuals[f"y{j}"] = list(row_limit_residuals(y))
    residual_frame = pd.DataFrame(residuals)

    z = validate_row_law(ys[-1])
    certificates = [obstruction_certificate(z, m) for m in range(1, args.rows + 1)]
    bound_frame = pd.DataFrame(
        {
            "m": list(range(1, args.rows + 1)),
            "z_m1": [z.entry(m, 1) for m in range(1, args.rows + 1)],
            "holds": [c.holds for c in certificates],
            "bound": [c.bound for c in certificates],
        }
    )

    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        ce.u.to_csv(out / "u.csv")
        ce.v.to_csv(out / "v.csv")
        ce.e.to_csv(out / "e.csv")
        for j, y in enumerate(ys, start=1):
            y.to_csv(out / f"y{j}.csv")
        write_table(residual_frame, out / "row_limit_residuals.csv")
        write_table(bound_frame, out / "obstruction_bounds.csv")

    worst = max(abs(r) for col in residual_frame.columns if col != "m" for r in residual_frame[col])
    _emit(
        {
            "status": "success",
            "rows": args.rows,
            "cols": args.cols,
            "exact": exact,
            "max_row_limit_residual": format_number(worst),
            "obstruction_bounds": [format_number(c.bound) for c in certificates],
        }
    )
    return 0


def cmd_approx(args: argparse.Namespace) -> int:
    market = load_market(args.market)
    space = market.space(args.exact)
    f = market.payoff(args.asset, args.exact, space=space)
    g = market.payoff(args.claim, args.exact, space=space)

    report = freudenthal_approx(g, sigma_of([f]), args.levels, scale=args.scale)
    frame = report.to_frame().rename(columns={"stage": "level"})
    for i, state in enumerate(market.states):
        frame[state] = [s.values[i] for s in report.stages]
    if args.out:
        write_table(frame, args.out)
    print(frame_to_text(frame), end="")
    return 0


def _add_market_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--market", required=True, help="Market JSON file")
    parser.add_argument("--exact", action="store_true", help="Rational arithmetic end-to-end")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="span-lattice",
        description="Option spanning, measurability and order-closure computations on finite markets.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("replicate", help="Replicate a claim by calls and puts on an asset")
    _add_market_args(p)
    p.add_argument("--asset", required=True)
    p.add_argument("--claim", required=True)
    p.add_argument("--out", help="Write the portfolio JSON here")
    p.set_defaults(handler=cmd_replicate)

    p = sub.add_parser("span", help="Option space of an asset and its level-set partition")
    _add_market_args(p)
    p.add_argument("--asset", required=True)
    p.set_defaults(handler=cmd_span)

    p = sub.add_parser("measure", help="Measurability of a claim with respect to generated sigma-algebra")
    _add_market_args(p)
    p.add_argument("--claim", required=True)
    p.add_argument("--algebra-from", required=True, help="Comma separated asset names")
    p.set_defaults(handler=cmd_measure)

    p = sub.add_parser("counterexample", help="Truncated uo-versus-order counterexample tables")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--out", help="Directory for CSV tables")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="Rational arithmetic (default)")
    mode.add_argument("--float", action="store_true", help="Float arithmetic")
    p.set_defaults(handler=cmd_counterexample)

    p = sub.add_parser("approx", help="Step-function approximation stages of a claim")
    _add_market_args(p)
    p.add_argument("--claim", required=True)
    p.add_argument("--asset", required=True)
    p.add_argument("--levels", type=int, required=True)
    p.add_argument("--scale", choices=("range", "dyadic"), default="range")
    p.add_argument("--out", help="Write the stage table CSV here")
    p.set_defaults(handler=cmd_approx)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one command.

    Parameters
    ----------
    argv : sequence of str, optional
        Arguments without the program name. Defaults to ``sys.argv[1:]``.

    Returns
    -------
    int
        Exit code.
    """
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    try:
        return args.handler(args)
    except MeasurabilityError as err:
        _emit(err.to_dict())
        return 1
    except SpanLatticeError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
