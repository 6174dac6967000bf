"""Command line front end.

Exit codes: 0 success, 1 usage or config error, 2 a check failed,
3 a factoring or search budget ran out.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import experiments as ex
from .errors import (BoundExceedsCap, ComponentOrderSearchExceeded, ConfigError,
                     EllipDivError, FactoringBudgetExceeded)

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_BUDGET = 0, 1, 2, 3

COMMANDS = {
    "count": ex.count_predicate,
    "height-count": ex.height_count,
    "census": ex.character_census,
    "chebotarev": ex.chebotarev_density,
    "equidist": ex.equidistribution,
    "period": ex.period_table,
    "star2": ex.star2_table,
    "reproduce": ex.reproduce_examples,
}

# flag name -> config key; values stay strings and are parsed by the config
FLAGS = {
    "curve": "a1,a2,a3,a4,a6",
    "point": "x,y (rationals allowed)",
    "characters": "comma list of kronecker:D or prime:q:j",
    "predicate": "|".join(ex.PREDICATES),
    "parity": "all|even|odd",
    "B_list": "comma list of bounds B",
    "H_list": "comma list of height bounds H",
    "identity_only": "true|false",
    "torsion": "';'-separated torsion points added to nP",
    "torsion_order": "order of the torsion subgroup",
    "D": "census bound on the modulus",
    "alpha_max": "largest index scanned for a witness",
    "X": "prime bound for chebotarev",
    "ells": "comma list of primes l",
    "x_list": "comma list of prime bounds for equidist",
    "s": "residue for equidist",
    "t": "modulus for equidist",
    "interval": "a,b for equidist",
    "moduli": "comma list of moduli for period",
    "window": "sign-fit window",
    "precision": "decimal digits for real logarithms",
    "trial_bound": "trial division bound",
    "rho_iterations": "Pollard rho iterations per composite",
    "seed": "random seed",
    "S_override": "comma list of primes excluded from the local test",
    "only": "comma list of item prefixes for reproduce",
    "tamper": "pair:n:value fault injection for reproduce",
    "workers": "worker processes",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ellipdiv", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="INI file with an [experiment] section")
        p.add_argument("--csv", help="write CSV here (default: stdout)")
        p.add_argument("--json", help="write JSON here")
        p.add_argument("--timestamp", action="store_true", help="add a timestamp header line")
        for key, text in FLAGS.items():
            p.add_argument("--" + key.replace("_", "-"), dest=key, help=text)
    return parser


def load_config(args) -> ex.ExperimentConfig:
    cfg = ex.ExperimentConfig()
    if args.config:
        try:
            cfg = ex.ExperimentConfig.from_ini(Path(args.config).read_text())
        except OSError as exc:
            raise ConfigError(str(exc)) from exc
    overrides = {k: getattr(args, k) for k in FLAGS if getattr(args, k) is not None}
    cfg = cfg.override(overrides)
    cfg.timestamp = args.timestamp or cfg.timestamp
    cfg.csv_path = args.csv or cfg.csv_path
    cfg.json_path = args.json or cfg.json_path
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = load_config(args)
        report = COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FactoringBudgetExceeded, BoundExceedsCap, ComponentOrderSearchExceeded) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except EllipDivError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    text = report.to_csv(cfg.timestamp)
    if cfg.csv_path:
        Path(cfg.csv_path).write_text(text)
    else:
        sys.stdout.write(text)
    if cfg.json_path:
        Path(cfg.json_path).write_text(report.to_json(cfg.timestamp))
    for note in report.notes:
        print(f"note: {note}", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
