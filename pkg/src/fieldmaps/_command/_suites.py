"""Seeded property suites run by `fieldmaps verify-all`.

Each suite draws random instances, checks one family of inequalities or
oracle agreements, and returns every verdict it produced. Agreement checks
are phrased as verdicts `|main - oracle| <= tolerance`.
"""

import dataclasses
import itertools
import math
from typing import Any, Callable, Dict, List

import numpy as np

from fieldmaps._calculus import (
    check_lipschitz,
    difference,
    DiscreteKernel,
    generalized_young,
    pointwise_product,
    random_young_instance,
    substitute_function,
)
from fieldmaps._command._printer import ThrottledProgressPrinter
from fieldmaps._data import SolveOptions, TruncationOptions, Verdict
from fieldmaps._oracle import brute_steiner, eval_compose_oracle, kernel_norm_oracle, norm_oracle
from fieldmaps._series import (
    FieldMapKernel,
    lp_norm_bound_check,
    random_field,
    random_kernel,
    random_system,
    young_function_check,
)
from fieldmaps._solving import (
    compare_to_linear,
    random_admissible_instance,
    random_admissible_system,
    random_ball_tuple,
    solve_background,
    solve_fixed_point,
    uniqueness_probe,
)
from fieldmaps._space import MetricSpace, WeightSystem


@dataclasses.dataclass
class SuiteResult:
    name: str
    draws: int
    verdicts: List[Verdict]

    def to_json(self) -> Dict[str, Any]:
        statuses = [v.status for v in self.verdicts]
        worst = min(self.verdicts, key=lambda v: v.margin, default=None)
        return {
            'draws': self.draws,
            'checks': len(self.verdicts),
            'holds': statuses.count('holds'),
            'violated': statuses.count('violated'),
            'hypothesis not met': statuses.count('hypothesis not met'),
            'tightest': worst,
        }


def agreement(name: str, value: float, reference: float, rel: float) -> Verdict:
    return Verdict.check(name, abs(value - reference), rel * max(1.0, abs(reference)), rel_slack=0, abs_slack=0)


def _random_space(rng: np.random.Generator, num_points: int) -> MetricSpace:
    return MetricSpace.from_coordinates(rng.uniform(0, 2, size=(num_points, 2)))


def truncated_exponential_value(n: int, z: float, terms: int = 60) -> float:
    """E_n(z) = sum_{l >= n} z^l / l!, summed directly."""
    return math.fsum(z**l / math.factorial(l) for l in range(max(n, 0), terms))


def suite_norm_oracle(rng: np.random.Generator, draws: int, printer: ThrottledProgressPrinter) -> List[Verdict]:
    verdicts = []
    for k in range(draws):
        printer.step('norm oracle', k, draws)
        space = _random_space(rng, int(rng.integers(1, 5)))
        arity = int(rng.integers(1, 4))
        w = WeightSystem(space=space, factors=rng.uniform(0.5, 2, size=arity))
        f = random_system(rng, space.num_points, arity, max_degree=int(rng.integers(1, 5)), num_terms=4)
        verdicts.append(agreement('norm_oracle', f.norm(w), norm_oracle(f, w), 1e-12))
        a = random_kernel(rng, space.num_points, arity, max_degree=3, num_terms=4)
        verdicts.append(agreement('kernel_norm_oracle', a.kernel_norm(w), kernel_norm_oracle(a, w), 1e-12))
    return verdicts


def suite_steiner(rng: np.random.Generator, draws: int, printer: ThrottledProgressPrinter) -> List[Verdict]:
    verdicts = []
    for k in range(draws):
        printer.step('steiner', k, draws)
        space = _random_space(rng, int(rng.integers(2, 7)))
        worst = 0.0
        largest = 0.0
        for size in range(1, space.num_points + 1):
            for terminals in itertools.combinations(space.points, size):
                exact = brute_steiner(space, terminals)
                worst = max(worst, abs(space.tree_length(terminals) - exact))
                largest = max(largest, exact)
        verdicts.append(Verdict.check('steiner_oracle', worst, 1e-12 * max(1.0, largest), rel_slack=0, abs_slack=0))
    return verdicts


def suite_young(rng: np.random.Generator, draws: int, printer: ThrottledProgressPrinter) -> List[Verdict]:
    verdicts = []
    for k in range(draws):
        printer.step('young', k, draws)
        space = _random_space(rng, int(rng.integers(1, 4)))
        kappa = float(rng.uniform(0.5, 2))
        w = WeightSystem(space=space, factors=(kappa,))
        for d, p in [(1, 1), (2, 2)]:
            f = random_system(rng, space.num_points, 1, max_degree=d + 2, min_slot_degrees=[d], num_terms=4)
            field = random_field(rng, space.num_points, kappa)
            verdicts.append(young_function_check(f, w, [d], [p], [field]))
        a = random_kernel(rng, space.num_points, 1, max_degree=3, num_terms=4)
        verdicts.append(lp_norm_bound_check(a, w, [1], math.inf, [math.inf], [random_field(rng, space.num_points, kappa)]))
        for num_axes in (1, 2, 3):
            kernel, functions = random_young_instance(rng, num_axes)
            weights = rng.uniform(0.1, 1.0, size=num_axes)
            verdicts.append(generalized_young(kernel, functions, [1 / t for t in weights / weights.sum()]).verdict)
    f = np.array([1.0, 2.0, 2.0])
    equality = generalized_young(DiscreteKernel(measures=(np.ones(3), np.ones(3)), values=np.eye(3)), [f, f], [2, 2])
    verdicts.append(agreement('cauchy_schwarz_equality', equality.lhs, equality.rhs, 1e-12))
    return verdicts


def suite_substitution(rng: np.random.Generator, draws: int, printer: ThrottledProgressPrinter) -> List[Verdict]:
    verdicts = []
    truncation = TruncationOptions(degree_cap=6)
    for k in range(draws):
        printer.step('substitution', k, draws)
        space = _random_space(rng, int(rng.integers(1, 4)))
        s = int(rng.integers(1, 3))
        r = int(rng.integers(1, 3))
        w = WeightSystem(space=space, factors=rng.uniform(0.5, 1.5, size=s))
        w_lambda = WeightSystem(space=space, factors=rng.uniform(0.5, 1.5, size=r))
        h = random_system(rng, space.num_points, r, max_degree=3, num_terms=4)
        maps = []
        for lam in w_lambda.factors:
            a = random_kernel(rng, space.num_points, s, max_degree=2, num_terms=3)
            norm = a.kernel_norm(w)
            maps.append(a.scaled(rng.uniform(0, 1) * lam / norm) if norm > 0 else a)
        result = substitute_function(h, maps, w, w_lambda, truncation=truncation)
        verdicts.append(result.verdict)
        for _ in range(3):
            fields = [random_field(rng, space.num_points, 1.0) for _ in range(s)]
            direct, composed = eval_compose_oracle(h, maps, result.output, fields)
            verdicts.append(Verdict.check('substitution_evaluation', abs(direct - composed),
                                          1e-10 * max(1.0, abs(direct)), rel_slack=0, abs_slack=0))
    return verdicts


def suite_difference(rng: np.random.Generator, draws: int, printer: ThrottledProgressPrinter) -> List[Verdict]:
    verdicts = []
    for p in (1, 2, 3):
        for sigma in (1.0, 2.0, 4.0):
            for k in range(draws):
                printer.step(f'difference p={p} sigma={sigma:g}', k, draws)
                space = _random_space(rng, int(rng.integers(1, 4)))
                arity = int(rng.integers(1, 3))
                w = WeightSystem(space=space, factors=rng.uniform(0.5, 1.5, size=arity))
                f = random_system(rng, space.num_points, arity, max_degree=4, num_terms=4)
                lambdas = rng.uniform(0.1, 1, size=arity)
                verdicts.append(difference(f, w, lambdas, sigma, p=p).verdict)
    return verdicts


def suite_product(rng: np.random.Generator, draws: int, printer: ThrottledProgressPrinter) -> List[Verdict]:
    verdicts = []
    for k in range(draws):
        printer.step('product', k, draws)
        space = _random_space(rng, int(rng.integers(1, 4)))
        s = int(rng.integers(0, 2))
        r = int(rng.integers(1, 3))
        w_kl = WeightSystem(space=space, factors=rng.uniform(0.3, 1.5, size=s + r))
        a = random_kernel(rng, space.num_points, s + r, max_degree=3, num_terms=4, gamma_slots=r)
        b = random_kernel(rng, space.num_points, s + r, max_degree=3, num_terms=4, gamma_slots=r)
        verdicts.extend(pointwise_product(a, b, w_kl, truncation=TruncationOptions(degree_cap=6)).verdicts)
    for lam in (0.5, 1.0, 2.0):
        g = FieldMapKernel.projection(1, 1, 0, gamma_slots=1)
        result = pointwise_product(g, g, WeightSystem(space=MetricSpace.line(1), factors=(lam,)))
        verdicts.append(agreement('product_equality', result.primed_norms[2], 2 * lam**2, 1e-12))
    return verdicts


def suite_exponential(rng: np.random.Generator, draws: int, printer: ThrottledProgressPrinter) -> List[Verdict]:
    verdicts = []
    space = MetricSpace.line(2)
    for n, a, lam in itertools.product((1, 2, 3), (0.5, 1.0), (0.5, 1.0)):
        printer.show(f'exponential n={n} a={a} lambda={lam}')
        kernel = FieldMapKernel.truncated_exponential(space.num_points, n, a, max_degree=25)
        w = WeightSystem(space=space, factors=(lam,))
        z = a * lam
        verdicts.append(agreement('exponential_norm', kernel.kernel_norm(w), truncated_exponential_value(n, z), 1e-12))
        verdicts.append(agreement('exponential_primed_norm', kernel.primed_norm(w),
                                  z * truncated_exponential_value(n - 1, z), 1e-12))
    return verdicts


def suite_lipschitz(rng: np.random.Generator, draws: int, printer: ThrottledProgressPrinter) -> List[Verdict]:
    verdicts = []
    truncation = TruncationOptions(degree_cap=6)
    for k in range(draws):
        printer.step('lipschitz', k, draws)
        space = _random_space(rng, int(rng.integers(1, 3)))
        system = random_admissible_system(rng, space, num_unknowns=int(rng.integers(1, 3)))
        b = system.nonlinear[0]
        left = random_ball_tuple(rng, system, truncation=truncation)
        right = random_ball_tuple(rng, system, truncation=truncation)
        verdicts.append(check_lipschitz(b, left.entries, right.entries, system.w, system.w_kl, truncation=truncation))
    return verdicts


def suite_fixed_point(rng: np.random.Generator, draws: int, printer: ThrottledProgressPrinter) -> List[Verdict]:
    verdicts = []
    options = SolveOptions(truncation=TruncationOptions(degree_cap=4))
    for k in range(draws):
        printer.step('fixed point', k, draws)
        space = _random_space(rng, int(rng.integers(1, 3)))
        system = random_admissible_system(rng, space, num_unknowns=int(rng.integers(1, 3)))
        gammas, certificate = solve_fixed_point(system, options)
        verdicts.extend(certificate.hypotheses.verdicts)
        verdicts.extend(certificate.verdicts)
        for _ in range(2):
            start = random_ball_tuple(rng, system, truncation=options.truncation)
            restarted, _ = solve_fixed_point(system, options, initial=start)
            verdicts.append(Verdict.check('fixed_point_restart', restarted.max_abs_difference(gammas), 1e-9,
                                          rel_slack=0, abs_slack=0))
    return verdicts


def suite_comparison(rng: np.random.Generator, draws: int, printer: ThrottledProgressPrinter) -> List[Verdict]:
    verdicts = []
    options = SolveOptions(truncation=TruncationOptions(degree_cap=4))
    for k in range(draws):
        printer.step('linear comparison', k, draws)
        space = _random_space(rng, int(rng.integers(1, 3)))
        system = random_admissible_system(rng, space, num_unknowns=int(rng.integers(1, 3)), small_source=True)
        verdicts.extend(compare_to_linear(system, options).verdicts)
    return verdicts


def suite_background(rng: np.random.Generator, draws: int, printer: ThrottledProgressPrinter) -> List[Verdict]:
    verdicts = []
    options = SolveOptions(truncation=TruncationOptions(degree_cap=3))
    for k in range(draws):
        printer.step('background', k, draws)
        instance = random_admissible_instance(rng, int(rng.integers(1, 3)), k=float(rng.uniform(0.5, 3)))
        _, certificate = solve_background(instance, options)
        verdicts.extend(certificate.verdicts)
        probe = uniqueness_probe(instance, 2, seed=int(rng.integers(0, 2**31)), options=options)
        verdicts.extend(probe.verdicts)
    return verdicts


SUITES: Dict[str, Callable[[np.random.Generator, int, ThrottledProgressPrinter], List[Verdict]]] = {
    'norm_oracle': suite_norm_oracle,
    'steiner': suite_steiner,
    'young': suite_young,
    'substitution': suite_substitution,
    'difference': suite_difference,
    'product': suite_product,
    'exponential': suite_exponential,
    'lipschitz': suite_lipschitz,
    'fixed_point': suite_fixed_point,
    'comparison': suite_comparison,
    'background': suite_background,
}

# Share of the draws each suite runs. Suites not listed run all of them.
SUITE_SHARES = {
    'background': 0.1,
    'comparison': 0.2,
    'fixed_point': 0.2,
    'steiner': 0.2,
}


def run_suites(draws: int, seed: int, printer: ThrottledProgressPrinter) -> List[SuiteResult]:
    results = []
    for k, (name, suite) in enumerate(SUITES.items()):
        rng = np.random.default_rng([seed, k])
        n = max(1, int(round(draws * SUITE_SHARES.get(name, 1.0)))) if draws else 0
        verdicts = suite(rng, n, printer) if n else []
        results.append(SuiteResult(name=name, draws=n, verdicts=verdicts))
    return results
