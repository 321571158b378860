import dataclasses
import math
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from fieldmaps._data import SolveOptions, TruncationOptions, Verdict
from fieldmaps._errors import HypothesesFailed, MaxIterExceeded
from fieldmaps._series import FieldMapKernel, random_kernel
from fieldmaps._solving._implicit_system import (
    check_hypotheses,
    FieldMapTuple,
    HypothesisReport,
    ImplicitSystem,
)
from fieldmaps._space import MetricSpace

_EPS = float(np.finfo(np.float64).eps)


@dataclasses.dataclass(frozen=True)
class SolveCertificate:
    """What a fixed point solve established about its result.

    A certificate is produced even when the solve fails; `failure` then
    says why and the verdicts describe the best iterate.

    Attributes:
        hypotheses: The hypothesis report of the system.
        truncation: The truncation the arithmetic was done in.
        converged: Whether the change dropped to the tolerance.
        iterations: Number of Picard steps taken.
        iteration_cap: The largest number of steps that was allowed.
        final_change: The ball norm of the last change.
        trace: The ball norm of every change, in order.
        contraction_violations: Steps whose change exceeded c times the
            previous change (beyond rounding).
        left_ball: Iterates whose ball norm exceeded 1.
        truncated: Whether any product above the truncation was dropped.
        contraction: contraction_violations == 0.
        ball: left_ball == 0.
        solution_bound: ||Gamma|| <= ||f|| / (1 - c).
        deviation_bound: ||Gamma - f|| <= c ||f|| / (1 - c).
        residual: ||F(Gamma) - Gamma|| <= tol (1 + c) / (1 - c).
        failure: None on success, else a short reason.
    """
    hypotheses: HypothesisReport
    truncation: TruncationOptions
    converged: bool
    iterations: int
    iteration_cap: int
    final_change: float
    trace: Tuple[float, ...]
    contraction_violations: int
    left_ball: int
    truncated: bool
    contraction: Verdict
    ball: Verdict
    solution_bound: Verdict
    deviation_bound: Verdict
    residual: Verdict
    failure: Optional[str] = None

    @property
    def verdicts(self) -> Tuple[Verdict, ...]:
        return self.contraction, self.ball, self.solution_bound, self.deviation_bound, self.residual

    def to_json(self) -> Dict[str, Any]:
        return {
            'hypotheses': self.hypotheses,
            'degree_cap': self.truncation.degree_cap,
            'converged': self.converged,
            'iterations': self.iterations,
            'iteration_cap': self.iteration_cap,
            'final_change': self.final_change,
            'trace': list(self.trace),
            'contraction_violations': self.contraction_violations,
            'left_ball': self.left_ball,
            'truncated': self.truncated,
            'verdicts': list(self.verdicts),
            'failure': self.failure,
        }


def iteration_cap(contraction: float, scale: float, options: SolveOptions) -> int:
    """Steps needed for geometric convergence from an initial change of size `scale`, plus a margin.

    Examples:
        >>> import fieldmaps
        >>> iteration_cap(0.5, 1.0, fieldmaps.SolveOptions(tol=1e-3, iteration_margin=3))
        14
    """
    if scale <= options.tol * (1 - contraction):
        steps = 0
    else:
        steps = math.ceil(math.log(options.tol * (1 - contraction) / scale) / math.log(contraction))
    return min(options.max_iter, steps + options.iteration_margin)


def solve_fixed_point(system: ImplicitSystem,
                      options: SolveOptions = SolveOptions(),
                      *,
                      initial: Optional[FieldMapTuple] = None,
                      require_hypotheses: bool = True,
                      progress_callback: Optional[Callable[[int, float], None]] = None,
                      ) -> Tuple[FieldMapTuple, SolveCertificate]:
    """Solves gamma_j = f_j + L_j(alpha, gamma) + B_j(alpha, gamma) by Picard iteration.

    Starting from `initial` (default zero), the iteration
    Gamma^(k+1) = F(Gamma^(k)) runs in truncated arithmetic until the ball
    norm of the change is at most `options.tol`.

    Args:
        system: The implicit system.
        options: Tolerance, iteration limits and truncation.
        initial: The starting tuple. Defaults to zero.
        require_hypotheses: When set, a system failing the contraction
            hypotheses is rejected up front.
        progress_callback: Called with (iteration, change) after each step.

    Returns:
        The final iterate and its certificate.

    Raises:
        HypothesesFailed: The hypotheses fail and `require_hypotheses` is set.
        MaxIterExceeded: The iteration cap was reached. The exception carries
            the last iterate and a certificate marked non-converged.

    Examples:
        >>> import fieldmaps
        >>> space = fieldmaps.MetricSpace.line(1)
        >>> system = fieldmaps.ImplicitSystem(
        ...     space=space,
        ...     f=[fieldmaps.FieldMapKernel.projection(1, 1, 0, scale=0.1)],
        ...     linear=[fieldmaps.FieldMapKernel.from_entries(1, 2, [(0, [[], [0]], 0.2)], gamma_slots=1)],
        ...     nonlinear=[fieldmaps.FieldMapKernel.zero(1, 2, gamma_slots=1)],
        ...     kappas=[1],
        ...     lambdas=[1],
        ...     contraction=0.2,
        ... )
        >>> gamma, certificate = fieldmaps.solve_fixed_point(system)
        >>> round(gamma[0].table[(0, ((0,),))].real, 12)
        0.125
    """
    hypotheses = check_hypotheses(system)
    if require_hypotheses and not hypotheses.passed:
        raise HypothesesFailed('The system does not satisfy the contraction hypotheses.',
                               report=hypotheses,
                               detail=hypotheses.to_json())
    c = system.contraction
    w = system.w
    truncation = options.truncation
    f_norm = system.f_tuple().ball_norm(w)

    current = system.zero_tuple() if initial is None else initial
    trace: List[float] = []
    contraction_violations = 0
    left_ball = 0
    truncated = False
    cap = options.max_iter
    converged = False
    while len(trace) < cap:
        nxt, dropped = system.apply(current, truncation)
        truncated |= dropped
        change = (nxt - current).ball_norm(w)
        if trace and change > c * trace[-1] + 1e3 * _EPS * max(1.0, nxt.ball_norm(w)):
            contraction_violations += 1
        if not trace:
            cap = iteration_cap(c, max(f_norm, change), options)
        trace.append(change)
        if nxt.ball_norm(w) > 1 + 1e-12:
            left_ball += 1
        current = nxt
        if progress_callback is not None:
            progress_callback(len(trace), change)
        if change <= options.tol:
            converged = True
            break

    after, dropped = system.apply(current, truncation)
    truncated |= dropped
    residual = (after - current).ball_norm(w)
    solution_norm = current.ball_norm(w)
    deviation = (current - system.f_tuple()).ball_norm(w)
    from_zero = hypotheses.passed and initial is None
    certificate = SolveCertificate(
        hypotheses=hypotheses,
        truncation=truncation,
        converged=converged,
        iterations=len(trace),
        iteration_cap=cap,
        final_change=trace[-1] if trace else 0.0,
        trace=tuple(trace),
        contraction_violations=contraction_violations,
        left_ball=left_ball,
        truncated=truncated,
        contraction=Verdict.check('contraction', contraction_violations, 0,
                                  hypothesis=from_zero, rel_slack=0, abs_slack=0),
        ball=Verdict.check('ball', left_ball, 0, hypothesis=from_zero, rel_slack=0, abs_slack=0),
        solution_bound=Verdict.check('posterior_solution', solution_norm, f_norm / (1 - c), hypothesis=from_zero),
        deviation_bound=Verdict.check('posterior_deviation', deviation, c * f_norm / (1 - c), hypothesis=from_zero),
        residual=Verdict.check('residual', residual, options.tol * (1 + c) / (1 - c),
                               hypothesis=converged),
        failure=None if converged else f'no convergence after {len(trace)} iterations',
    )
    if not converged:
        raise MaxIterExceeded(f'Picard iteration did not reach tol={options.tol} in {len(trace)} steps '
                              f'(last change {certificate.final_change}).',
                              iterate=current,
                              certificate=certificate)
    return current, certificate


def solve_linear(system: ImplicitSystem,
                 options: SolveOptions = SolveOptions(),
                 *,
                 progress_callback: Optional[Callable[[int, float], None]] = None,
                 ) -> Tuple[FieldMapTuple, SolveCertificate]:
    """Solves gamma_j = f_j + L_j(alpha, gamma), i.e. the system with every B_j dropped."""
    return solve_fixed_point(system.without_nonlinear(), options, progress_callback=progress_callback)


@dataclasses.dataclass(frozen=True)
class ComparisonReport:
    """How far the full solution is from the solution of the linear part.

    Attributes:
        full: Certificate of the full solve.
        linear: Certificate of the linear solve.
        difference: ||Gamma - Gamma^(1)||.
        f_ball_norm: ||f||.
        nonlinear_ball_norm: max_j |||B_j|||_{w_kl} / lambda_j.
        sharp: difference <= ||f||^2 / (1 - c)^3 * max_j |||B_j||| / lambda_j.
        coarse: difference <= max_j |||B_j||| / lambda_j.
    """
    full: SolveCertificate
    linear: SolveCertificate
    difference: float
    f_ball_norm: float
    nonlinear_ball_norm: float
    sharp: Verdict
    coarse: Verdict

    @property
    def verdicts(self) -> Tuple[Verdict, ...]:
        return self.full.verdicts + self.linear.verdicts + (self.sharp, self.coarse)

    def to_json(self) -> Dict[str, Any]:
        return {
            'full': self.full,
            'linear': self.linear,
            'difference': self.difference,
            'f_ball_norm': self.f_ball_norm,
            'nonlinear_ball_norm': self.nonlinear_ball_norm,
            'sharp': self.sharp,
            'coarse': self.coarse,
        }


def compare_to_linear(system: ImplicitSystem, options: SolveOptions = SolveOptions()) -> ComparisonReport:
    """Solves the system and its linear part, and bounds the distance between the solutions.

    Raises:
        HypothesesFailed: The contraction hypotheses fail, or
            |||f_j|||_w > (1 - c)^2 lambda_j for some j.
    """
    hypotheses = check_hypotheses(system)
    if not hypotheses.passed or not hypotheses.small_source.holds:
        raise HypothesesFailed('The comparison needs the contraction hypotheses and |||f_j||| <= (1-c)^2 lambda_j.',
                               report=hypotheses,
                               detail=hypotheses.to_json())
    full, full_certificate = solve_fixed_point(system, options)
    lin, lin_certificate = solve_linear(system, options)
    w = system.w
    w_kl = system.w_kl
    c = system.contraction
    difference = (full - lin).ball_norm(w)
    b_ball = max(b.kernel_norm(w_kl) / lam for b, lam in zip(system.nonlinear, system.lambdas))
    f_ball = hypotheses.f_ball_norm
    return ComparisonReport(
        full=full_certificate,
        linear=lin_certificate,
        difference=difference,
        f_ball_norm=f_ball,
        nonlinear_ball_norm=b_ball,
        sharp=Verdict.check('linear_comparison', difference, f_ball**2 / (1 - c)**3 * b_ball),
        coarse=Verdict.check('linear_comparison_coarse', difference, b_ball),
    )


def random_ball_tuple(rng: np.random.Generator,
                      system: ImplicitSystem,
                      *,
                      radius: float = 1.0,
                      num_terms: int = 4,
                      truncation: TruncationOptions = TruncationOptions()) -> FieldMapTuple:
    """A random tuple of s-field maps with ball norm at most `radius`."""
    w = system.w
    entries = []
    for lam in system.lambdas:
        a = random_kernel(rng,
                          system.space.num_points,
                          system.num_fields,
                          max_degree=max(1, min(truncation.degree_cap, 3)),
                          num_terms=num_terms)
        norm = a.kernel_norm(w)
        if norm > 0:
            a = a.scaled(rng.uniform(0, radius) * lam / norm)
        entries.append(a)
    return FieldMapTuple(entries=tuple(entries), lambdas=system.lambdas)


def random_admissible_system(rng: np.random.Generator,
                             space: MetricSpace,
                             *,
                             num_fields: int = 1,
                             num_unknowns: int = 1,
                             kappa: float = 1.0,
                             lam: float = 0.5,
                             contraction: float = 0.5,
                             max_degree: int = 2,
                             num_terms: int = 3,
                             small_source: bool = False) -> ImplicitSystem:
    """A seeded random system that satisfies the contraction hypotheses.

    Random sparse kernels are rescaled so that |||L_j||| and |||B_j|||' use
    random shares of c lambda_j, and |||f_j||| a random share of
    (1 - c) lambda_j, or of (1 - c)^2 lambda_j when `small_source` is set.
    """
    s = num_fields
    r = num_unknowns
    n = space.num_points
    kappas = (kappa,) * s
    lambdas = (lam,) * r
    system_w = ImplicitSystem(
        space=space,
        f=[FieldMapKernel.zero(n, s)] * r,
        linear=[FieldMapKernel.zero(n, s + r, gamma_slots=r)] * r,
        nonlinear=[FieldMapKernel.zero(n, s + r, gamma_slots=r)] * r,
        kappas=kappas,
        lambdas=lambdas,
        contraction=contraction,
    )
    w = system_w.w
    w_kl = system_w.w_kl

    def rescaled(a: FieldMapKernel, norm: float, target: float) -> FieldMapKernel:
        return a.scaled(target / norm) if norm > 0 else a

    fs = []
    linears = []
    nonlinears = []
    source_room = (1 - contraction)**2 if small_source else 1 - contraction
    for _ in range(r):
        f = random_kernel(rng, n, s, max_degree=max_degree, num_terms=num_terms)
        fs.append(rescaled(f, f.kernel_norm(w), rng.uniform(0, source_room) * lam))
        lin = random_kernel(rng, n, s + r, max_degree=max_degree, num_terms=num_terms,
                            gamma_slots=r, min_gamma_degree=1, max_gamma_degree=1)
        share = rng.uniform(0, 1)
        linears.append(rescaled(lin, lin.kernel_norm(w_kl), share * contraction * lam))
        nonlin = random_kernel(rng, n, s + r, max_degree=max_degree + 1, min_degree=2, num_terms=num_terms,
                               gamma_slots=r, min_gamma_degree=2)
        nonlinears.append(rescaled(nonlin, nonlin.primed_norm(w_kl), (1 - share) * contraction * lam))
    return dataclasses.replace(system_w, f=tuple(fs), linear=tuple(linears), nonlinear=tuple(nonlinears))
