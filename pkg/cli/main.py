"""
Command line: realize a bivector, verify a realization, list the examples.

Exit codes are 0 on success, 1 when a check fails or a golden report
differs, and 2 for input errors. Messages go to standard error.
"""
import json
import logging
import sys
from pathlib import Path
from typing import Optional

import typer
from sympy import Rational, SympifyError

from backgrounds import (DEFAULT_ORACLE_CAP, EXAMPLES, PreconditionError, SingularityError, build_example,
                         check_oracles)
from octonion import verify_contractions
from poly import StructuralError
from realization import (Bivector, ExtendedBrackets, Realization, extended_brackets, fundamental_identity_defect,
                         realize)
from tensor import ConsistencyError

from .bivector_file import BivectorFileError, parse_bivector_file
from .report import build_report, compare_golden, dump_json, dump_text

__all__ = ["app", "EXIT_OK", "EXIT_DEFECT", "EXIT_INPUT"]

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DEFECT = 1
EXIT_INPUT = 2

app = typer.Typer(add_completion=False, help="Symplectic realizations of quasi-Poisson bivectors.")

INPUT_OPTION = typer.Option(None, "--input", help="Bivector file.")
EXAMPLE_OPTION = typer.Option(None, "--example", help="Name of a built-in example.")
ORDER_OPTION = typer.Option(..., "--order", help="Number of Bopp shift orders, at least 1.")
FORMAT_OPTION = typer.Option("json", "--format", help="json or text.")
OUTPUT_OPTION = typer.Option(None, "--output", help="Write the report here instead of standard output.")
LAM_OPTION = typer.Option("1", "--lam", help="mtheory: lambda, a rational.")
R_OPTION = typer.Option("4", "--r", help="mtheory: r, a rational.")
Q_OPTION = typer.Option("2", "--q", help="mtheory: q, a rational with q^2 = lambda r.")
VERBOSE_OPTION = typer.Option(False, "--verbose", help="Log progress to standard error.")


class InputError(Exception):
    """ Anything wrong with what the user passed, reported with exit code 2. """


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True)


def _rational(name: str, text: str) -> Rational:
    try:
        return Rational(text)
    except (SympifyError, TypeError, ValueError) as error:
        raise InputError(f"--{name} must be a rational number, got {text!r}") from error


def _load(input: Optional[Path], example: Optional[str], lam: str, r: str, q: str) -> tuple[Bivector, dict, dict]:
    """ Returns the bivector, the input echo for the report and the example parameters. """
    if (input is None) == (example is None):
        raise InputError("give exactly one of --input and --example")
    if input is not None:
        try:
            text = input.read_text(encoding="utf-8")
        except OSError as error:
            raise InputError(f"cannot read {input}: {error}") from error
        return parse_bivector_file(text), {"file": str(input)}, {}
    if example not in EXAMPLES:
        raise InputError(f"unknown example {example!r}, choose from {', '.join(EXAMPLES)}")
    source = {"example": example}
    params = {}
    if example == "mtheory":
        params = {"lam": _rational("lam", lam), "r": _rational("r", r), "q": _rational("q", q)}
        source.update({key: str(value) for key, value in params.items()})
    return build_example(example, **params), source, params


def _emit(report: dict, format: str, output: Optional[Path]) -> None:
    text = dump_text(report) if format == "text" else dump_json(report)
    if output is None:
        typer.echo(text, nl=False)
    else:
        output.write_text(text, encoding="utf-8")


def _run(input, example, order, format, lam, r, q) -> tuple[Realization, dict, dict]:
    if format not in ("json", "text"):
        raise InputError(f"--format must be json or text, got {format!r}")
    if order < 1:
        raise InputError(f"--order must be at least 1, got {order}")
    theta, source, params = _load(input, example, lam, r, q)
    logger.info("realizing %s to order %d", source, order)
    return realize(theta, order), source, params


def _fail(message: str, code: int) -> typer.Exit:
    typer.echo(f"error: {message}", err=True)
    return typer.Exit(code=code)


INPUT_ERRORS = (InputError, BivectorFileError, PreconditionError, SingularityError, StructuralError)


@app.command("realize")
def cmd_realize(input: Optional[Path] = INPUT_OPTION, example: Optional[str] = EXAMPLE_OPTION,
                order: int = ORDER_OPTION, format: str = FORMAT_OPTION, output: Optional[Path] = OUTPUT_OPTION,
                lam: str = LAM_OPTION, r: str = R_OPTION, q: str = Q_OPTION,
                verbose: bool = VERBOSE_OPTION) -> None:
    """ Computes the realization and prints its report. """
    _configure_logging(verbose)
    try:
        real, source, _ = _run(input, example, order, format, lam, r, q)
        brackets = extended_brackets(real)
    except INPUT_ERRORS as error:
        raise _fail(str(error), EXIT_INPUT)
    except ConsistencyError as error:
        raise _fail(f"{error} (order {error.order})", EXIT_DEFECT)
    _emit(build_report(real, source, brackets), format, output)


def run_checks(real: Realization, example: Optional[str], params: dict, oracle_cap: int,
               brackets: Optional[ExtendedBrackets] = None) -> dict:
    """ The verification suite on a finished realization.

    Args:
        real (Realization): The realization.
        example (str, optional): Built-in example it came from; enables the
            closed-form and octonion table checks.
        params (dict): Example parameters (lam, r, q for mtheory).
        oracle_cap (int): Largest series order compared against closed forms.
        brackets (ExtendedBrackets, optional): The extended brackets, None if
            computing them failed.

    Returns:
        dict: Check name to pass/fail.
    """
    diagnostics = real.diagnostics
    checks = {
        "cyclicity": all(entry.cyclicity_ok for entry in diagnostics),
        "four-term": all(entry.four_term_ok is not False for entry in diagnostics),
        "young": all(entry.young_gamma_ok and entry.young_theta_ok is not False for entry in diagnostics),
        "fundamental-identity": fundamental_identity_defect(real.source, real.jacobiator).is_zero(),
        "contract": real.contract_ok,
        "extended-brackets": brackets is not None,
    }
    if example in ("octonion", "mtheory"):
        checks["octonion-identities"] = verify_contractions().passed
    if example is not None:
        for check in check_oracles(example, real, oracle_cap, brackets=brackets, **params):
            checks[f"oracle-{check.name}"] = check.passed
    return checks


def _extended(real: Realization) -> Optional[ExtendedBrackets]:
    try:
        return extended_brackets(real)
    except ConsistencyError as error:
        logger.warning("extended brackets: %s", error)
        return None


@app.command("verify")
def cmd_verify(input: Optional[Path] = INPUT_OPTION, example: Optional[str] = EXAMPLE_OPTION,
               order: int = ORDER_OPTION, format: str = FORMAT_OPTION, output: Optional[Path] = OUTPUT_OPTION,
               lam: str = LAM_OPTION, r: str = R_OPTION, q: str = Q_OPTION,
               golden: Optional[Path] = typer.Option(None, "--golden", help="Stored JSON report to compare with."),
               oracle_cap: int = typer.Option(DEFAULT_ORACLE_CAP, "--oracle-cap",
                                              help="Largest order compared with closed forms."),
               verbose: bool = VERBOSE_OPTION) -> None:
    """ Computes the realization and runs every consistency check on it. """
    _configure_logging(verbose)
    try:
        stored = None
        if golden is not None:
            try:
                stored = json.loads(golden.read_text(encoding="utf-8"))
            except (OSError, ValueError) as error:
                raise InputError(f"cannot read golden report {golden}: {error}") from error
        real, source, params = _run(input, example, order, format, lam, r, q)
    except INPUT_ERRORS as error:
        raise _fail(str(error), EXIT_INPUT)
    except ConsistencyError as error:
        raise _fail(f"{error} (order {error.order})", EXIT_DEFECT)

    brackets = _extended(real)
    checks = run_checks(real, example, params, oracle_cap, brackets)
    report = build_report(real, source, brackets, checks)
    _emit(report, format, output)

    failed = sorted(name for name, passed in checks.items() if not passed)
    if failed:
        raise _fail(f"checks failed: {', '.join(failed)}", EXIT_DEFECT)
    if stored is not None:
        differing = compare_golden(report, stored)
        if differing:
            raise _fail(f"report differs from {golden} in: {', '.join(differing)}", EXIT_DEFECT)


@app.command("examples")
def cmd_examples() -> None:
    """ Lists the built-in examples. """
    for name, spec in EXAMPLES.items():
        params = f" [{', '.join(spec.params)}]" if spec.params else ""
        typer.echo(f"{name:<10} dim {spec.dim}{params}  {spec.description}")
