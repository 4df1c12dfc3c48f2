"""Command-line interface.

    tiltbench check JOB.json [--report text|json] [--seed N] [--trials N]
                             [--max-path-len N] [--resolution-cap N]
                             [--out PATH]

Seed precedence: --seed, then the job file's options.seed, then the
TILTBENCH_SEED environment variable, then 42.

Exit codes: 0 all checks passed, 1 some check failed, 2 input error,
3 internal route disagreement (a tool bug worth reporting).
"""

from __future__ import annotations

import argparse
import os
import sys

from tiltbench import report as report_mod
from tiltbench.fitting import RadicalPreconditionViolated
from tiltbench.jobspec import SchemaError, ingest
from tiltbench.quiver import NotAdmissible


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tiltbench",
        description="exact checkers for higher cluster-tilting axioms on "
                    "bound quiver algebra inputs")
    sub = parser.add_subparsers(dest="command", required=True)
    check = sub.add_parser("check", help="run the checks requested by a job file")
    check.add_argument("job", help="path to a JSON job file")
    check.add_argument("--report", choices=("text", "json"), default="text")
    check.add_argument("--seed", type=int, default=None)
    check.add_argument("--trials", type=int, default=None)
    check.add_argument("--max-path-len", type=int, default=None)
    check.add_argument("--resolution-cap", type=int, default=None)
    check.add_argument("--out", default=None, help="write the report here "
                                                   "instead of stdout")
    return parser


def _resolve_seed(args, spec) -> int | None:
    if args.seed is not None:
        return args.seed
    if "seed" in spec.options:
        return None  # spec.option() picks it up
    env = os.environ.get("TILTBENCH_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise SchemaError("TILTBENCH_SEED", f"not an integer: {env!r}")
    return None


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        spec = ingest(args.job)
        if args.max_path_len is not None:
            spec.options["max_path_len"] = args.max_path_len
        if args.resolution_cap is not None:
            spec.options["resolution_cap"] = args.resolution_cap
        seed = _resolve_seed(args, spec)
        rpt = report_mod.run(spec, seed=seed, trials=args.trials)
    except FileNotFoundError as e:
        print(f"error: no such file: {e.filename}", file=sys.stderr)
        return report_mod.EXIT_INPUT_ERROR
    except (SchemaError, NotAdmissible, RadicalPreconditionViolated, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return report_mod.EXIT_INPUT_ERROR

    text = report_mod.emit(rpt, args.report)
    if args.out is not None:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return rpt.exit_code


if __name__ == "__main__":
    sys.exit(main(argv=sys.argv[1:]))
