import argparse
from typing import List

from fieldmaps._command._common import (
    add_instance_arg,
    add_output_flags,
    add_solve_flags,
    CommandResult,
    options_from_args,
    run_command,
)
from fieldmaps._command._instance import InstanceFile
from fieldmaps._command._printer import ThrottledProgressPrinter
from fieldmaps._data import SolveOptions
from fieldmaps._solving import (
    compare_to_linear,
    solve_background,
    solve_fixed_point,
    solve_linear,
    uniqueness_probe,
)


def solve_report(instance: InstanceFile,
                 printer: ThrottledProgressPrinter,
                 options: SolveOptions,
                 *,
                 linear_only: bool = False) -> CommandResult:
    system = instance.require('system')
    label = 'linear' if linear_only else 'solve'
    if linear_only:
        gammas, certificate = solve_linear(system, options, progress_callback=printer.iteration_callback(label))
    else:
        gammas, certificate = solve_fixed_point(system, options, progress_callback=printer.iteration_callback(label))
    return CommandResult(
        report={'solution': gammas, 'certificate': certificate},
        verdicts=list(certificate.hypotheses.verdicts) + list(certificate.verdicts),
    )


def compare_report(instance: InstanceFile,
                   printer: ThrottledProgressPrinter,
                   options: SolveOptions) -> CommandResult:
    system = instance.require('system')
    printer.show('compare: solving the full and the linear system')
    report = compare_to_linear(system, options)
    return CommandResult(report=report.to_json(), verdicts=list(report.verdicts))


def background_report(instance: InstanceFile,
                      printer: ThrottledProgressPrinter,
                      options: SolveOptions) -> CommandResult:
    background = instance.require('background')
    corrections, certificate = solve_background(background, options,
                                                progress_callback=printer.iteration_callback('background'))
    return CommandResult(
        report={'corrections': list(corrections), 'certificate': certificate},
        verdicts=list(certificate.verdicts),
    )


def uniq_report(instance: InstanceFile,
                printer: ThrottledProgressPrinter,
                options: SolveOptions,
                *,
                trials: int = 10,
                seed: int = 0) -> CommandResult:
    background = instance.require('background')
    report = uniqueness_probe(background, trials, seed=seed, options=options,
                              progress_callback=lambda done, total: printer.step('uniq', done, total))
    return CommandResult(report=report.to_json(), verdicts=list(report.verdicts))


def _parse(command_line_args: List[str], prog: str, description: str, *, random: bool = False) -> argparse.Namespace:
    parser = argparse.ArgumentParser(description=description, prog=prog)
    add_instance_arg(parser)
    add_output_flags(parser)
    add_solve_flags(parser)
    if random:
        parser.add_argument('--draws',
                            type=int,
                            default=10,
                            help='Number of random restarts.')
        parser.add_argument('--seed',
                            type=int,
                            default=0,
                            help='Seed of the random restarts.')
    return parser.parse_args(command_line_args)


def main_solve(*, command_line_args: List[str]) -> int:
    args = _parse(command_line_args, 'fieldmaps solve', 'Solves the implicit system of an instance.')
    return run_command('solve', args,
                       lambda instance, printer: solve_report(instance, printer, options_from_args(instance, args)))


def main_linear(*, command_line_args: List[str]) -> int:
    args = _parse(command_line_args, 'fieldmaps linear', 'Solves the linear part of the implicit system.')
    return run_command('linear', args,
                       lambda instance, printer: solve_report(instance, printer, options_from_args(instance, args),
                                                              linear_only=True))


def main_compare(*, command_line_args: List[str]) -> int:
    args = _parse(command_line_args, 'fieldmaps compare', 'Compares the solution with the solution of the linear part.')
    return run_command('compare', args,
                       lambda instance, printer: compare_report(instance, printer, options_from_args(instance, args)))


def main_background(*, command_line_args: List[str]) -> int:
    args = _parse(command_line_args, 'fieldmaps background', 'Solves the background field equations.')
    return run_command('background', args,
                       lambda instance, printer: background_report(instance, printer,
                                                                   options_from_args(instance, args)))


def main_uniq(*, command_line_args: List[str]) -> int:
    args = _parse(command_line_args, 'fieldmaps uniq', 'Restarts the background solve from random starting points.',
                  random=True)
    return run_command('uniq', args,
                       lambda instance, printer: uniq_report(instance, printer, options_from_args(instance, args),
                                                             trials=args.draws, seed=args.seed))
