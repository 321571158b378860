import argparse
import sys
import time
from typing import Any, Callable, Dict, List, Tuple

from fieldmaps._command._common import add_output_flags, add_solve_flags, CommandResult, summarize, write_report
from fieldmaps._command._instance import InstanceFile, load_instance, shipped_fixtures
from fieldmaps._command._main_calculus import compose_report, diff_report, product_report, young_report
from fieldmaps._command._main_norm import mapnorm_report, norm_report, steiner_report
from fieldmaps._command._main_solve import background_report, compare_report, solve_report, uniq_report
from fieldmaps._command._printer import ThrottledProgressPrinter
from fieldmaps._command._suites import run_suites
from fieldmaps._data import VIOLATED, Verdict
from fieldmaps._errors import HypothesesFailed

Section = Callable[[InstanceFile, ThrottledProgressPrinter, Any], CommandResult]


def _sections(instance: InstanceFile) -> List[Tuple[str, Section]]:
    """The commands that apply to an instance, in report order."""
    out: List[Tuple[str, Section]] = []
    if instance.functions:
        out.append(('norm', lambda inst, printer, options: norm_report(inst, printer)))
    if instance.maps:
        out.append(('mapnorm', lambda inst, printer, options: mapnorm_report(inst, printer)))
    if instance.compose is not None:
        out.append(('compose', compose_report))
    if instance.functions:
        out.append(('diff', lambda inst, printer, options: diff_report(inst, printer, targets=list(inst.functions))))
    if instance.product is not None:
        out.append(('product', product_report))
    if instance.young is not None:
        out.append(('young', lambda inst, printer, options: young_report(inst, printer)))
    if instance.space.num_points <= instance.space.terminal_cap:
        out.append(('steiner', lambda inst, printer, options: steiner_report(inst, printer)))
    if instance.system is not None:
        out.append(('solve', solve_report))
        out.append(('linear', lambda inst, printer, options: solve_report(inst, printer, options, linear_only=True)))
        out.append(('compare', compare_report))
    if instance.background is not None:
        out.append(('background', background_report))
        out.append(('uniq', lambda inst, printer, options: uniq_report(inst, printer, options, trials=2)))
    return out


def verify_instance(instance: InstanceFile,
                    printer: ThrottledProgressPrinter,
                    args: Any) -> Tuple[Dict[str, Any], List[Verdict]]:
    """Runs every applicable command on one instance.

    A command whose hypotheses fail is recorded as skipped, with the failing
    hypotheses, instead of aborting the run.
    """
    options = instance.options(degree_cap=args.degree_cap, tol=args.tol, max_iter=args.max_iter)
    report: Dict[str, Any] = {}
    verdicts: List[Verdict] = []
    for name, section in _sections(instance):
        printer.show(f'{instance.name}: {name}')
        try:
            result = section(instance, printer, options)
        except HypothesesFailed as ex:
            report[name] = {'skipped': ex.to_json()}
            continue
        report[name] = {'report': result.report, 'summary': summarize(result.verdicts + result.tallied)}
        verdicts.extend(result.verdicts + result.tallied)
    return report, verdicts


def main_verify_all(*, command_line_args: List[str]) -> int:
    parser = argparse.ArgumentParser(
        description='Runs every applicable command on the given instances (the shipped fixtures by default) '
                    'followed by the seeded property suites.',
        prog='fieldmaps verify-all')
    parser.add_argument('instances',
                        type=str,
                        nargs='*',
                        help='Instance files. Defaults to the fixtures shipped with the package.')
    parser.add_argument('--draws',
                        type=int,
                        default=20,
                        help='Random draws per property suite. Use 0 to only check the instances.')
    parser.add_argument('--seed',
                        type=int,
                        default=0,
                        help='Seed of the property suites.')
    add_output_flags(parser)
    add_solve_flags(parser)
    args = parser.parse_args(command_line_args)
    if args.draws < 0:
        raise ValueError(f'--draws={args.draws} < 0')

    printer = ThrottledProgressPrinter(enabled=not args.quiet)
    t0 = time.monotonic()
    paths = args.instances or [str(p) for p in shipped_fixtures()]

    instances: Dict[str, Any] = {}
    listed: List[Verdict] = []
    tallied: List[Verdict] = []
    for path in paths:
        instance = load_instance(path)
        report, verdicts = verify_instance(instance, printer, args)
        instances[instance.name] = report
        listed.extend(v for v in verdicts if v.status != 'holds')
        tallied.extend(verdicts)

    suites = {}
    for result in run_suites(args.draws, args.seed, printer):
        suites[result.name] = result.to_json()
        tallied.extend(result.verdicts)
        if result.verdicts:
            listed.append(min(result.verdicts, key=lambda v: v.margin))
    printer.flush()

    data = {
        'command': 'verify-all',
        'instance': None,
        'report': {
            'draws': args.draws,
            'seed': args.seed,
            'instances': instances,
            'suites': suites,
        },
        'verdicts': listed,
        'summary': summarize(tallied),
    }
    if args.timing:
        data['timing'] = {'seconds': time.monotonic() - t0}
    write_report(data, args.out)
    if any(v.status == VIOLATED for v in tallied):
        print('\033[31mverify-all: a bound was violated\033[0m', file=sys.stderr)
        return 1
    return 0
