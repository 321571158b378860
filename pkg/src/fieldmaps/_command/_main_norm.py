import argparse
from typing import Any, List, Optional, Sequence

from fieldmaps._command._common import (
    add_instance_arg,
    add_output_flags,
    CommandResult,
    parse_terminals,
    run_command,
)
from fieldmaps._command._instance import InstanceFile
from fieldmaps._command._printer import ThrottledProgressPrinter
from fieldmaps._data import Verdict
from fieldmaps._errors import SchemaError


def _targets(available: Sequence[str], requested: Optional[List[str]], section: str) -> List[str]:
    if not requested:
        return list(available)
    for name in requested:
        if name not in available:
            raise SchemaError(f'{name!r} is not defined', path=f'$.{section}.{name}')
    return list(requested)


def norm_report(instance: InstanceFile,
                printer: ThrottledProgressPrinter,
                *,
                targets: Optional[List[str]] = None) -> CommandResult:
    """||f||_w of every (or every named) function, with the per-profile breakdown."""
    report = {}
    names = _targets(list(instance.functions), targets, 'functions')
    for k, name in enumerate(names):
        printer.step('norm', k, len(names))
        f = instance.functions[name]
        report[name] = f.norm_details(instance.weights_for_function(f))
    return CommandResult(report=report)


def mapnorm_report(instance: InstanceFile,
                   printer: ThrottledProgressPrinter,
                   *,
                   targets: Optional[List[str]] = None) -> CommandResult:
    """|||A|||_w of every (or every named) map, plus |||A|||' for maps with gamma slots."""
    report = {}
    names = _targets(list(instance.maps), targets, 'maps')
    for k, name in enumerate(names):
        printer.step('mapnorm', k, len(names))
        a = instance.maps[name]
        w = instance.weights_for_map(a)
        entry = {
            'arity': a.arity,
            'gamma_slots': a.gamma_slots,
            'norm': a.kernel_norm_details(w),
        }
        if a.gamma_slots:
            entry['primed_norm'] = a.primed_norm(w)
        report[name] = entry
    return CommandResult(report=report)


def steiner_report(instance: InstanceFile,
                   printer: ThrottledProgressPrinter,
                   *,
                   terminals: Optional[List[int]] = None) -> CommandResult:
    """tau_d of the terminals (all points by default), next to the spanning tree upper bound."""
    space = instance.metric_space
    if terminals is None:
        terminals = list(space.points)
    tau = space.tree_length(terminals)
    spanning = space.spanning_tree_length(terminals)
    return CommandResult(
        report={'terminals': sorted(set(terminals)), 'tau': tau, 'spanning_tree': spanning},
        verdicts=[Verdict.check('steiner_le_spanning', tau, spanning)],
    )


def _parse(command_line_args: List[str], prog: str, description: str) -> Any:
    parser = argparse.ArgumentParser(description=description, prog=prog)
    add_instance_arg(parser)
    add_output_flags(parser)
    parser.add_argument('--target',
                        action='append',
                        default=None,
                        help='Name of a function or map to report on. Can be repeated. Defaults to all of them.')
    if prog.endswith('steiner'):
        parser.add_argument('--terminals',
                            type=str,
                            default=None,
                            help='Comma separated point indices, e.g. 0,2. Defaults to every point.')
    return parser.parse_args(command_line_args)


def main_norm(*, command_line_args: List[str]) -> int:
    args = _parse(command_line_args, 'fieldmaps norm', 'Computes the norms of the functions in an instance.')
    return run_command('norm', args, lambda instance, printer: norm_report(instance, printer, targets=args.target))


def main_mapnorm(*, command_line_args: List[str]) -> int:
    args = _parse(command_line_args, 'fieldmaps mapnorm', 'Computes the kernel norms of the maps in an instance.')
    return run_command('mapnorm', args,
                       lambda instance, printer: mapnorm_report(instance, printer, targets=args.target))


def main_steiner(*, command_line_args: List[str]) -> int:
    args = _parse(command_line_args, 'fieldmaps steiner', 'Computes the tree length of a set of points.')
    terminals = parse_terminals(args.terminals)
    return run_command('steiner', args,
                       lambda instance, printer: steiner_report(instance, printer, terminals=terminals))
