"""Main entry point for SiegelTheta."""

import argparse
import json
import logging
import sys
import time
from typing import Any, Dict, List, Optional

from .classical import HECKE_LEVEL, Gamma0Element, hecke_sides
from .config import LOG_LEVELS, Config, config
from .errors import (
    DimensionError,
    DomainError,
    InputFormatError,
    InvalidElementError,
    InvalidPointError,
    SingularMatrixError,
    TermBudgetExceeded,
    ThetaTooSmallError,
)
from .point import SiegelJacobiPoint
from .reduction import reduce_point
from .suites import SUITES, RunReport, SuiteParams, replay, run_suite
from .theta import theta

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3
EXIT_VIOLATION = 4

INPUT_ERRORS = (InputFormatError, InvalidPointError, InvalidElementError,
                DimensionError, DomainError, json.JSONDecodeError, OSError)
NUMERIC_ERRORS = (TermBudgetExceeded, SingularMatrixError, ThetaTooSmallError, OverflowError)


def _read_json(path: str) -> Any:
    """Read JSON from a file, or from standard input when path is '-'."""
    if path == '-':
        return json.load(sys.stdin)
    with open(path, 'r', encoding='utf-8') as f:
        return json.load(f)


def _emit(data: Dict[str, Any]) -> None:
    sys.stdout.write(json.dumps(data, indent=2, sort_keys=True) + "\n")


def _note(message: str) -> None:
    print(message, file=sys.stderr)


class SiegelThetaCLI:
    """Command dispatcher; every handler returns a process exit code."""

    def __init__(self, args: argparse.Namespace):
        self._args = args
        self._started = time.perf_counter()

    def run(self) -> int:
        handler = {
            'eval': self._cmd_eval,
            'verify': self._cmd_verify,
            'reduce': self._cmd_reduce,
            'hecke': self._cmd_hecke,
            'config': self._cmd_config,
        }[self._args.command]
        try:
            return handler()
        except INPUT_ERRORS as e:
            _note(f"error: {e}")
            return EXIT_INPUT
        except NUMERIC_ERRORS as e:
            _note(f"numeric failure: {e}")
            return EXIT_NUMERIC

    def _elapsed(self) -> float:
        return time.perf_counter() - self._started

    def _finish(self, data: Dict[str, Any]) -> None:
        if self._args.timing:
            data["wall_time"] = self._elapsed()
        _emit(data)

    def _load_point(self) -> SiegelJacobiPoint:
        return SiegelJacobiPoint.from_dict(_read_json(self._args.point))

    def _cmd_eval(self) -> int:
        """Evaluate Theta at a point file."""
        p = self._load_point()
        value = theta(p, self._args.tol)
        self._finish(value.to_dict())
        _note(f"Theta = {value.value:.12g} (tail <= {value.tail_bound:.3g}, "
              f"rounding <= {value.rounding_bound:.3g}, "
              f"{value.terms_used} terms, {value.reduction_steps} reduction steps, "
              f"{self._elapsed():.2f}s)")
        return EXIT_OK

    def _cmd_reduce(self) -> int:
        """Print the reduction trace of a point file."""
        p = self._load_point()
        trace = reduce_point(p)
        self._finish(trace.to_dict())
        state = "converged" if trace.converged else "step cap reached"
        _note(f"{len(trace.steps)} steps, {state}, multiplier {trace.multiplier:.12g}")
        return EXIT_OK

    def _cmd_hecke(self) -> int:
        """Both sides of Hecke's formula for one matrix and tau."""
        a, b, c, d = self._args.matrix
        gamma = Gamma0Element.create(a, b, c, d, level=HECKE_LEVEL)
        tau = complex(*self._args.tau)
        lhs, rhs = hecke_sides(gamma, tau, self._args.tol)
        defect = abs(lhs - rhs)
        passed = defect < self._args.tol
        self._finish({
            "gamma": gamma.to_dict(),
            "tau": [tau.real, tau.imag],
            "lhs": [lhs.real, lhs.imag],
            "rhs": [rhs.real, rhs.imag],
            "defect": defect,
            "passed": passed,
        })
        _note(f"defect {defect:.3g}: {'pass' if passed else 'FAIL'}")
        return EXIT_OK if passed else EXIT_VIOLATION

    def _cmd_verify(self) -> int:
        """Run a property suite, or replay serialised failures."""
        args = self._args
        if args.replay:
            report = replay(_read_json(args.replay), on_progress=logger.info)
        else:
            params = SuiteParams(args.g, args.m, args.tol, args.word_len)
            report = run_suite(args.suite, params, args.count, args.seed,
                               on_progress=logger.info)
        self._report(report)
        return EXIT_OK if report.ok else EXIT_VIOLATION

    def _cmd_config(self) -> int:
        """Show, change or reset the stored defaults."""
        args = self._args
        if args.action == 'set':
            try:
                config.set_from_text(args.key, args.value)
            except ValueError as e:
                raise DomainError(f"{args.key}: {e}") from e
            _note(f"{args.key} = {config.to_dict()[args.key]} saved to {config.path}")
        elif args.action == 'reset':
            config.reset()
            config.save()
            _note(f"defaults saved to {config.path}")
        _emit({"path": str(config.path), "settings": config.to_dict()})
        return EXIT_OK

    def _report(self, report: RunReport) -> None:
        if self._args.timing:
            report.wall_time = self._elapsed()
        _emit(report.to_dict())
        name = report.command.get("suite", "replay")
        _note(f"{name}: {report.passed}/{report.cases} passed, {report.failed} failed "
              f"({self._elapsed():.2f}s)")
        if report.summary is not None:
            _note(f"{name} summary: {report.summary}")


def build_parser() -> argparse.ArgumentParser:
    """Argument parser; defaults come from the user configuration."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--tol', type=float, default=config.tol,
                        help=f"Absolute tolerance (default: {config.tol:g}).")
    common.add_argument('--log-level', default=config.log_level,
                        choices=LOG_LEVELS,
                        help="Logging level for standard error.")
    common.add_argument('--timing', action='store_true',
                        help="Include wall time in the JSON output.")

    parser = argparse.ArgumentParser(
        prog='siegeltheta',
        description="Theta series on the Siegel-Jacobi space and its transformation law.",
    )
    sub = parser.add_subparsers(dest='command', required=True)

    p_eval = sub.add_parser('eval', parents=[common], help="Evaluate Theta(Omega, Z).")
    p_eval.add_argument('point', help="Point JSON file ('-' for standard input).")

    p_reduce = sub.add_parser('reduce', parents=[common], help="Show the reduction trace of a point.")
    p_reduce.add_argument('point', help="Point JSON file ('-' for standard input).")

    p_verify = sub.add_parser('verify', parents=[common], help="Run a seeded property suite.")
    p_verify.add_argument('--suite', choices=sorted(SUITES), default='theorem',
                          help="Property suite to run (default: theorem).")
    p_verify.add_argument('--seed', type=int, default=config.seed,
                          help=f"Seed of the run (default: {config.seed}).")
    p_verify.add_argument('--count', type=int, default=config.count,
                          help=f"Number of cases (default: {config.count}).")
    p_verify.add_argument('--g', type=int, default=config.g, help="Degree g.")
    p_verify.add_argument('--m', type=int, default=config.m, help="Number of rows m of Z.")
    p_verify.add_argument('--word-len', type=int, default=config.word_len, dest='word_len',
                          help=f"Longest random word (default: {config.word_len}).")
    p_verify.add_argument('--replay', metavar='FILE',
                          help="Re-run the failures serialised in a report file.")

    p_hecke = sub.add_parser('hecke', parents=[common], help="Check Hecke's formula once.")
    p_hecke.add_argument('--matrix', type=int, nargs=4, required=True,
                         metavar=('A', 'B', 'C', 'D'), help="Element of Gamma_0(4).")
    p_hecke.add_argument('--tau', type=float, nargs=2, default=[0.0, 1.0],
                         metavar=('RE', 'IM'), help="Point of the upper half plane (default: i).")

    p_config = sub.add_parser('config', parents=[common], help="Show or change the stored defaults.")
    p_config.add_argument('action', choices=['show', 'set', 'reset'])
    p_config.add_argument('key', nargs='?', choices=sorted(Config.DEFAULT_CONFIG),
                          help="Setting to change (with set).")
    p_config.add_argument('value', nargs='?', help="New value (with set).")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Application entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=getattr(logging, args.log_level), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")

    if args.command == 'verify' and not args.replay:
        if args.count < 0:
            parser.error("--count must be non-negative")
        if args.g < 1 or args.m < 1:
            parser.error("--g and --m must be positive")
    if args.command == 'config' and args.action == 'set' and (args.key is None or args.value is None):
        parser.error("config set needs KEY and VALUE")

    return SiegelThetaCLI(args).run()


if __name__ == '__main__':
    sys.exit(main())
