import argparse
import dataclasses
import sys
import time
from typing import Any, Callable, Dict, List, Optional

from fieldmaps._command._instance import InstanceFile, load_instance
from fieldmaps._command._printer import ThrottledProgressPrinter
from fieldmaps._data import dumps_report, HOLDS, HYPOTHESIS_NOT_MET, SolveOptions, Verdict, VIOLATED


@dataclasses.dataclass
class CommandResult:
    """What a command computed.

    Attributes:
        report: The command specific part of the report.
        verdicts: Verdicts listed in the report.
        tallied: Verdicts that only enter the summary counts (property
            suites produce too many to list).
    """
    report: Dict[str, Any]
    verdicts: List[Verdict] = dataclasses.field(default_factory=list)
    tallied: List[Verdict] = dataclasses.field(default_factory=list)


def summarize(verdicts: List[Verdict]) -> Dict[str, Any]:
    counts = {HOLDS: 0, VIOLATED: 0, HYPOTHESIS_NOT_MET: 0}
    for v in verdicts:
        counts[v.status] += 1
    counts['passed'] = counts[VIOLATED] == 0
    return counts


def add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--out',
                        type=str,
                        default=None,
                        help='Write the report to this file instead of stdout.')
    parser.add_argument('--quiet',
                        action='store_true',
                        help='Do not print progress messages to stderr.')
    parser.add_argument('--timing',
                        action='store_true',
                        help='Add the elapsed seconds to the report. Reports with timing are not reproducible.')


def add_solve_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--degree-cap',
                        type=int,
                        default=None,
                        help='Drop terms of total degree above this value. Overrides the instance file.')
    parser.add_argument('--tol',
                        type=float,
                        default=None,
                        help='Stop iterating once the change is at most this value. Overrides the instance file.')
    parser.add_argument('--max-iter',
                        type=int,
                        default=None,
                        help='Hard limit on the number of iterations. Overrides the instance file.')


def add_instance_arg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('instance',
                        type=str,
                        help='Path to a JSON instance file.')


def options_from_args(instance: InstanceFile, args: Any) -> SolveOptions:
    return instance.options(degree_cap=getattr(args, 'degree_cap', None),
                            tol=getattr(args, 'tol', None),
                            max_iter=getattr(args, 'max_iter', None))


def parse_terminals(text: Optional[str]) -> Optional[List[int]]:
    """Parses '0,2,5' into [0, 2, 5]."""
    if text is None:
        return None
    text = text.strip()
    if not text:
        return []
    try:
        return [int(t) for t in text.split(',')]
    except ValueError:
        raise ValueError(f'--terminals must be a comma separated list of point indices but got {text!r}')


def write_report(data: Dict[str, Any], out_path: Optional[str]) -> None:
    text = dumps_report(data)
    if out_path is None:
        print(text, end='')
    else:
        with open(out_path, 'w', encoding='utf-8') as f:
            f.write(text)


def run_command(command: str,
                args: Any,
                body: Callable[[InstanceFile, ThrottledProgressPrinter], CommandResult],
                *,
                instance: Optional[InstanceFile] = None) -> int:
    """Loads the instance, runs the command body and writes the report.

    Returns:
        The exit code: 1 if any verdict was violated, else 0.
    """
    printer = ThrottledProgressPrinter(enabled=not args.quiet)
    t0 = time.monotonic()
    if instance is None:
        instance = load_instance(args.instance)
    result = body(instance, printer)
    printer.flush()
    everything = result.verdicts + result.tallied
    data = {
        'command': command,
        'instance': instance.name,
        'report': result.report,
        'verdicts': result.verdicts,
        'summary': summarize(everything),
    }
    if args.timing:
        data['timing'] = {'seconds': time.monotonic() - t0}
    write_report(data, args.out)
    if any(v.status == VIOLATED for v in everything):
        print(f'\033[31m{command}: a bound was violated\033[0m', file=sys.stderr)
        return 1
    return 0
