import argparse
from typing import List, Optional

import numpy as np

from fieldmaps._calculus import (
    difference,
    difference_map,
    generalized_young,
    pointwise_product,
    random_young_instance,
    substitute_function,
    substitute_map,
)
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
from fieldmaps._errors import SchemaError


def compose_report(instance: InstanceFile,
                   printer: ThrottledProgressPrinter,
                   options: SolveOptions) -> CommandResult:
    """Substitutes the `compose` maps into the outer function or map and checks the norm bound."""
    outer_name, map_names = instance.require('compose')
    maps = [instance.maps[name] for name in map_names]
    w = instance.weights_for_map(maps[0])
    printer.show(f'compose: substituting {len(maps)} maps into {outer_name}')
    if outer_name in instance.functions:
        result = substitute_function(instance.functions[outer_name], maps, w, instance.w_lambda,
                                     truncation=options.truncation)
    else:
        result = substitute_map(instance.maps[outer_name], maps, w, instance.w_lambda,
                                truncation=options.truncation)
    report = result.to_json()
    report['output'] = result.output.to_json()
    return CommandResult(report=report, verdicts=[result.verdict])


def diff_report(instance: InstanceFile,
                printer: ThrottledProgressPrinter,
                *,
                p: int = 1,
                sigma: Optional[float] = None,
                targets: Optional[List[str]] = None) -> CommandResult:
    """The degree >= p part of the difference of every function (and gamma free map)."""
    if sigma is None:
        sigma = instance.sigma
    if targets is None:
        targets = list(instance.functions) + [name for name, a in instance.maps.items()
                                              if a.gamma_slots == 0 and a.arity == len(instance.kappas)]
    report = {}
    verdicts = []
    for k, name in enumerate(targets):
        printer.step('diff', k, len(targets))
        if name in instance.functions:
            f = instance.functions[name]
            result = difference(f, instance.weights_for_function(f), instance.lambdas, sigma, p=p)
        elif name in instance.maps:
            a = instance.maps[name]
            result = difference_map(a, instance.weights_for_map(a), instance.lambdas, sigma, p=p)
        else:
            raise SchemaError(f'{name!r} does not name a function or a map', path=f'$.functions.{name}')
        report[name] = result
        verdicts.append(result.verdict)
    return CommandResult(report=report, verdicts=verdicts)


def product_report(instance: InstanceFile,
                   printer: ThrottledProgressPrinter,
                   options: SolveOptions,
                   *,
                   names: Optional[List[str]] = None) -> CommandResult:
    """The pointwise product of the two `product` maps with the product rule verdicts."""
    if names is None:
        names = list(instance.require('product'))
    if len(names) != 2:
        raise SchemaError(f'the product needs exactly two maps but got {names!r}', path='$.product')
    for name in names:
        if name not in instance.maps:
            raise SchemaError(f'{name!r} does not name a map', path=f'$.maps.{name}')
    a, b = [instance.maps[name] for name in names]
    printer.show(f'product: {names[0]} * {names[1]}')
    result = pointwise_product(a, b, instance.weights_for_map(a), truncation=options.truncation)
    report = result.to_json()
    report['output'] = result.output.to_json()
    return CommandResult(report=report, verdicts=list(result.verdicts))


def young_report(instance: Optional[InstanceFile],
                 printer: ThrottledProgressPrinter,
                 *,
                 draws: int = 0,
                 seed: int = 0) -> CommandResult:
    """The generalized Young inequality for the instance's kernel and for `draws` random kernels per axis count."""
    report = {}
    verdicts = []
    tallied = []
    if instance is not None and instance.young is not None:
        y = instance.young
        result = generalized_young(y.kernel, y.functions, y.exponents)
        report['instance'] = result
        verdicts.append(result.verdict)
    if draws:
        rng = np.random.default_rng(seed)
        random_counts = {}
        for num_axes in (1, 2, 3):
            violated = 0
            for k in range(draws):
                printer.step(f'young n={num_axes}', k, draws)
                kernel, functions = random_young_instance(rng, num_axes)
                weights = rng.uniform(0.1, 1.0, size=num_axes)
                exponents = [1 / t for t in weights / weights.sum()]
                result = generalized_young(kernel, functions, exponents)
                tallied.append(result.verdict)
                violated += result.verdict.violated
            random_counts[str(num_axes)] = {'draws': draws, 'violated': violated}
        report['random'] = random_counts
    return CommandResult(report=report, verdicts=verdicts, tallied=tallied)


def _parser(prog: str, description: str) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description=description, prog=prog)
    add_instance_arg(parser)
    add_output_flags(parser)
    return parser


def main_compose(*, command_line_args: List[str]) -> int:
    parser = _parser('fieldmaps compose', 'Substitutes field maps into a function or a map.')
    add_solve_flags(parser)
    args = parser.parse_args(command_line_args)
    return run_command('compose', args,
                       lambda instance, printer: compose_report(instance, printer, options_from_args(instance, args)))


def main_diff(*, command_line_args: List[str]) -> int:
    parser = _parser('fieldmaps diff', 'Expands differences f(alpha + delta) - f(alpha) and checks their norms.')
    parser.add_argument('--p',
                        type=int,
                        default=1,
                        help='Keep only the part of degree at least p in the increments.')
    parser.add_argument('--sigma',
                        type=float,
                        default=None,
                        help='The shift parameter (>= 1). Overrides the instance file.')
    parser.add_argument('--target',
                        action='append',
                        default=None,
                        help='Name of a function or map. Can be repeated.')
    args = parser.parse_args(command_line_args)
    return run_command('diff', args,
                       lambda instance, printer: diff_report(instance, printer, p=args.p, sigma=args.sigma,
                                                             targets=args.target))


def main_product(*, command_line_args: List[str]) -> int:
    parser = _parser('fieldmaps product', 'Multiplies two field maps and checks the product rule.')
    add_solve_flags(parser)
    parser.add_argument('--target',
                        action='append',
                        default=None,
                        help='Name of a map. Give it twice to override the instance product section.')
    args = parser.parse_args(command_line_args)
    return run_command('product', args,
                       lambda instance, printer: product_report(instance, printer, options_from_args(instance, args),
                                                                names=args.target))


def main_young(*, command_line_args: List[str]) -> int:
    parser = _parser('fieldmaps young', 'Checks the generalized Young inequality.')
    parser.add_argument('--draws',
                        type=int,
                        default=0,
                        help='Number of random kernels to check for each number of axes (1, 2 and 3).')
    parser.add_argument('--seed',
                        type=int,
                        default=0,
                        help='Seed of the random draws.')
    args = parser.parse_args(command_line_args)
    return run_command('young', args,
                       lambda instance, printer: young_report(instance, printer, draws=args.draws, seed=args.seed))
