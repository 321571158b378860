"""The background field equations on a finite lattice.

The equations are

    S_1^{-1} phi_1 + W_1(phi_1, phi_2) = alpha_1
    S_2^{-1} phi_2 + W_2(phi_1, phi_2) = alpha_2

with W_j(phi_1, phi_2)(x) = sum_{y,z} W_j(x, y, z) phi_1(y) phi_2(z). Writing
phi_j = S_j (alpha_j + gamma_j) turns them into an implicit system for
gamma_1, gamma_2 that the fixed point solver handles.
"""

import dataclasses
import functools
import math
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from fieldmaps._calculus import compose_kernel, compose_linear
from fieldmaps._data import SolveOptions, Verdict
from fieldmaps._errors import DimensionMismatch, HypothesesFailed, SingularOperator
from fieldmaps._series import FieldMapKernel, random_kernel
from fieldmaps._solving._fixed_point import SolveCertificate, solve_fixed_point
from fieldmaps._solving._implicit_system import FieldMapTuple, ImplicitSystem
from fieldmaps._space import MetricSpace, WeightSystem

BACKGROUND_CONTRACTION = 0.5


def weighted_op_norm(matrix: Any, space: MetricSpace, mass: float) -> float:
    """max{ sup_y sum_x |S(x,y)| e^{m d(x,y)}, sup_x sum_y |S(x,y)| e^{m d(x,y)} }.

    Examples:
        >>> import fieldmaps
        >>> space = fieldmaps.MetricSpace.line(2)
        >>> round(fieldmaps.weighted_op_norm([[0, 1], [1, 0]], space, 1.0), 9)
        2.718281828
    """
    m = np.asarray(matrix, dtype=np.complex128)
    n = space.num_points
    if m.shape != (n, n):
        raise DimensionMismatch(f'Operator shape {m.shape} does not match the {n} point space.',
                                detail={'expected': n, 'shape': list(m.shape)})
    weighted = np.abs(m) * np.exp(mass * space.distances)
    return float(max(np.max(weighted.sum(axis=0)), np.max(weighted.sum(axis=1))))


def trilinear_norm(w: FieldMapKernel, space: MetricSpace) -> float:
    """||W||_m: the kernel norm of the bilinear map W with unit weight factors on the mass-scaled metric."""
    return w.kernel_norm(WeightSystem(space=space, factors=(1.0, 1.0)))


def _as_operator(matrix: Any, n: int, name: str) -> np.ndarray:
    m = np.asarray(matrix, dtype=np.complex128)
    if m.shape != (n, n):
        raise DimensionMismatch(f'{name} has shape {m.shape} but the space has {n} points.',
                                detail={'operator': name, 'expected': n, 'shape': list(m.shape)})
    if not np.all(np.isfinite(m)) or np.linalg.matrix_rank(m) < n or np.linalg.cond(m) > 1e12:
        raise SingularOperator(f'{name} is not invertible.',
                               detail={'operator': name, 'condition': str(np.linalg.cond(m))})
    return m


@dataclasses.dataclass(frozen=True)
class BackgroundInstance:
    """An instance of the background field equations.

    Attributes:
        space: The lattice with its unscaled metric.
        w1: The bilinear map W_1 (a 2-field kernel).
        w2: The bilinear map W_2.
        s1: The invertible operator S_1.
        s2: The invertible operator S_2.
        mass: The mass m scaling the metric in every norm.
        w_f: The common weight factor of alpha_1 and alpha_2.
        k: Radius multiplier of the ball the solution is unique in.
    """
    space: MetricSpace
    w1: FieldMapKernel
    w2: FieldMapKernel
    s1: np.ndarray
    s2: np.ndarray
    mass: float = 1.0
    w_f: float = 1.0
    k: float = 1.0

    def __post_init__(self):
        n = self.space.num_points
        object.__setattr__(self, 's1', _as_operator(self.s1, n, 'S1'))
        object.__setattr__(self, 's2', _as_operator(self.s2, n, 'S2'))
        for name, w in [('W1', self.w1), ('W2', self.w2)]:
            if w.arity != 2 or w.gamma_slots != 0 or w.num_points != n:
                raise DimensionMismatch(f'{name} must be a bilinear kernel on {n} points.',
                                        detail={'operator': name, 'arity': w.arity, 'num_points': w.num_points})
        for name in ['mass', 'w_f', 'k']:
            v = getattr(self, name)
            if not v > 0 or not math.isfinite(v):
                raise ValueError(f'{name}={v} is not positive and finite')

    @functools.cached_property
    def metric_space(self) -> MetricSpace:
        """The mass-scaled space all norms are taken in."""
        return self.space.scaled(self.mass)

    @property
    def operators(self) -> Tuple[np.ndarray, np.ndarray]:
        return self.s1, self.s2

    @property
    def interactions(self) -> Tuple[FieldMapKernel, FieldMapKernel]:
        return self.w1, self.w2

    @functools.cached_property
    def s_bar(self) -> float:
        return max(weighted_op_norm(s, self.space, self.mass) for s in self.operators)

    @functools.cached_property
    def w_bar(self) -> float:
        return max(trilinear_norm(w, self.metric_space) for w in self.interactions)

    @property
    def smallness(self) -> float:
        """S_bar^2 W_bar w_f."""
        return self.s_bar**2 * self.w_bar * self.w_f

    @property
    def smallness_limit(self) -> float:
        """min{1/12, 1/(2K)}."""
        return min(1 / 12, 1 / (2 * self.k))

    @property
    def hypothesis(self) -> Verdict:
        """S_bar^2 W_bar w_f < min{1/12, 1/(2K)}, strictly."""
        return Verdict.check('background_hypothesis', self.smallness, np.nextafter(self.smallness_limit, 0),
                             rel_slack=0, abs_slack=0)

    @property
    def contraction_constant(self) -> float:
        """2 S_bar^2 W_bar w_f max{7/6, K}, the Lipschitz constant on the uniqueness ball."""
        return 2 * self.smallness * max(7 / 6, self.k)

    @property
    def w(self) -> WeightSystem:
        return WeightSystem(space=self.metric_space, factors=(self.w_f, self.w_f))

    def to_json(self) -> Dict[str, Any]:
        return {
            'mass': self.mass,
            'w_f': self.w_f,
            'K': self.k,
            'S_bar': self.s_bar,
            'W_bar': self.w_bar,
            'smallness': self.smallness,
            'smallness_limit': self.smallness_limit,
        }


def _operator_on(matrix: np.ndarray, arity: int, slot: int, gamma_slots: int) -> FieldMapKernel:
    return FieldMapKernel.from_linear_operator(matrix, arity=arity, slot=slot, gamma_slots=gamma_slots)


def build_system(instance: BackgroundInstance, options: SolveOptions = SolveOptions()) -> ImplicitSystem:
    """The implicit system for gamma_j = S_j^{-1} phi_j - alpha_j.

        f_j = -W_j(S_1 alpha_1, S_2 alpha_2)
        L_j = -W_j(S_1 gamma_1, S_2 alpha_2) - W_j(S_1 alpha_1, S_2 gamma_2)
        B_j = -W_j(S_1 gamma_1, S_2 gamma_2)

    with kappa_1 = kappa_2 = lambda_1 = lambda_2 = w_f and c = 1/2.
    """
    s1, s2 = instance.operators
    truncation = options.truncation
    f = []
    linear = []
    nonlinear = []
    for w in instance.interactions:
        fj, _ = compose_kernel(w, [_operator_on(s1, 2, 0, 0), _operator_on(s2, 2, 1, 0)], truncation)
        cross1, _ = compose_kernel(w, [_operator_on(s1, 4, 2, 2), _operator_on(s2, 4, 1, 2)], truncation)
        cross2, _ = compose_kernel(w, [_operator_on(s1, 4, 0, 2), _operator_on(s2, 4, 3, 2)], truncation)
        bj, _ = compose_kernel(w, [_operator_on(s1, 4, 2, 2), _operator_on(s2, 4, 3, 2)], truncation)
        f.append(-fj)
        linear.append(-(cross1 + cross2))
        nonlinear.append(-bj)
    return ImplicitSystem(
        space=instance.metric_space,
        f=f,
        linear=linear,
        nonlinear=nonlinear,
        kappas=(instance.w_f, instance.w_f),
        lambdas=(instance.w_f, instance.w_f),
        contraction=BACKGROUND_CONTRACTION,
    )


def kernel_bound_verdicts(instance: BackgroundInstance, system: ImplicitSystem) -> Tuple[Verdict, ...]:
    """The kernel norm bounds of f_j, L_j and B_j in terms of ||S_1||, ||S_2|| and ||W_j||."""
    s_norms = [weighted_op_norm(s, instance.space, instance.mass) for s in instance.operators]
    k1 = k2 = l1 = l2 = instance.w_f
    w = system.w
    w_kl = system.w_kl
    verdicts = []
    for j, wj in enumerate(instance.interactions):
        scale = s_norms[0] * s_norms[1] * trilinear_norm(wj, instance.metric_space)
        verdicts.append(Verdict.check(f'background_f[{j}]', system.f[j].kernel_norm(w), scale * k1 * k2))
        verdicts.append(Verdict.check(f'background_L[{j}]', system.linear[j].kernel_norm(w_kl),
                                      scale * (l1 * k2 + k1 * l2)))
        verdicts.append(Verdict.check(f'background_B[{j}]', system.nonlinear[j].kernel_norm(w_kl),
                                      scale * l1 * l2))
    return tuple(verdicts)


def background_fields(instance: BackgroundInstance,
                      gammas: FieldMapTuple,
                      options: SolveOptions = SolveOptions()) -> Tuple[FieldMapKernel, FieldMapKernel]:
    """The full fields phi_j = S_j (alpha_j + Gamma_j) as 2-field maps."""
    n = instance.space.num_points
    return tuple(
        compose_linear(s, FieldMapKernel.projection(n, 2, j) + gammas[j], truncation=options.truncation)
        for j, s in enumerate(instance.operators))


def equation_residual(instance: BackgroundInstance,
                      phis: Sequence[FieldMapKernel],
                      options: SolveOptions = SolveOptions()) -> float:
    """The largest coefficient of S_j^{-1} phi_j + W_j(phi_1, phi_2) - alpha_j, over j."""
    n = instance.space.num_points
    worst = 0.0
    for j, (s, w) in enumerate(zip(instance.operators, instance.interactions)):
        inverse = compose_linear(np.linalg.inv(s), phis[j], truncation=options.truncation)
        interaction, _ = compose_kernel(w, list(phis), options.truncation)
        residual = inverse + interaction - FieldMapKernel.projection(n, 2, j)
        worst = max(worst, max((abs(v) for v in residual.table.values()), default=0.0))
    return worst


@dataclasses.dataclass(frozen=True)
class BackgroundCertificate:
    """What solving the background field equations established.

    Attributes:
        instance: Summary of the instance (S_bar, W_bar, smallness).
        hypothesis: S_bar^2 W_bar w_f < min{1/12, 1/(2K)}.
        solve: The certificate of the underlying fixed point solve.
        kernel_bounds: Bounds on |||f_j|||, |||L_j|||, |||B_j|||.
        corrections: |||phi_j^(>=2)||| <= 2 S_bar^3 W_bar w_f^2, per j.
        min_degrees: The smallest total degree of each phi_j^(>=2), None if zero.
        degree: Verdicts that each phi_j^(>=2) has no part of degree below two.
        residual: The largest coefficient of the residual of the original equations.
        inner_balls: |||S_j^{-1} phi_j||| <= 7/6 w_f, per j.
    """
    instance: Dict[str, Any]
    hypothesis: Verdict
    solve: SolveCertificate
    kernel_bounds: Tuple[Verdict, ...]
    corrections: Tuple[Verdict, ...]
    min_degrees: Tuple[Optional[int], ...]
    degree: Tuple[Verdict, ...]
    residual: Verdict
    inner_balls: Tuple[Verdict, ...]

    @property
    def verdicts(self) -> Tuple[Verdict, ...]:
        return ((self.hypothesis,) + self.solve.verdicts + self.kernel_bounds + self.corrections + self.degree +
                (self.residual,) + self.inner_balls)

    def to_json(self) -> Dict[str, Any]:
        return {
            'instance': self.instance,
            'hypothesis': self.hypothesis,
            'solve': self.solve,
            'kernel_bounds': list(self.kernel_bounds),
            'corrections': list(self.corrections),
            'min_degrees': list(self.min_degrees),
            'degree': list(self.degree),
            'residual': self.residual,
            'inner_balls': list(self.inner_balls),
        }


def _require_hypothesis(instance: BackgroundInstance) -> None:
    if not instance.hypothesis.holds:
        raise HypothesesFailed(
            f'S_bar^2 W_bar w_f = {instance.smallness} is not below min(1/12, 1/(2K)) = {instance.smallness_limit}.',
            report=instance.hypothesis,
            detail=instance.to_json())


def solve_background(instance: BackgroundInstance,
                     options: SolveOptions = SolveOptions(),
                     *,
                     progress_callback: Optional[Callable[[int, float], None]] = None,
                     ) -> Tuple[Tuple[FieldMapKernel, FieldMapKernel], BackgroundCertificate]:
    """Solves the background field equations for phi_j = S_j alpha_j + phi_j^(>=2).

    Returns:
        The corrections phi_j^(>=2) = S_j Gamma_j and the certificate.

    Raises:
        HypothesesFailed: The smallness hypothesis fails.
    """
    _require_hypothesis(instance)
    system = build_system(instance, options)
    gammas, solve_certificate = solve_fixed_point(system, options, progress_callback=progress_callback)
    corrections = tuple(compose_linear(s, g, truncation=options.truncation)
                        for s, g in zip(instance.operators, gammas.entries))
    w = instance.w
    w_f = instance.w_f
    bound = 2 * instance.s_bar**3 * instance.w_bar * w_f**2
    min_degrees = []
    degree = []
    for j, c in enumerate(corrections):
        band = c.degree_range()
        min_degrees.append(None if band is None else band[0])
        degree.append(Verdict.check(f'correction_degree[{j}]', 2, 2 if band is None else band[0],
                                    rel_slack=0, abs_slack=0))
    phis = background_fields(instance, gammas, options)
    residual = equation_residual(instance, phis, options)
    n = instance.space.num_points
    inner = [FieldMapKernel.projection(n, 2, j) + g for j, g in enumerate(gammas.entries)]
    certificate = BackgroundCertificate(
        instance=instance.to_json(),
        hypothesis=instance.hypothesis,
        solve=solve_certificate,
        kernel_bounds=kernel_bound_verdicts(instance, system),
        corrections=tuple(Verdict.check(f'correction[{j}]', c.kernel_norm(w), bound)
                          for j, c in enumerate(corrections)),
        min_degrees=tuple(min_degrees),
        degree=tuple(degree),
        residual=Verdict.check('equation_residual', residual, 1e-10),
        inner_balls=tuple(Verdict.check(f'inner_ball[{j}]', phi.kernel_norm(w), 7 / 6 * w_f)
                          for j, phi in enumerate(inner)),
    )
    return corrections, certificate


@dataclasses.dataclass(frozen=True)
class UniquenessReport:
    """Restarts of the background solve from random points of the uniqueness ball.

    Attributes:
        trials: Number of restarts.
        differences: Largest coefficient difference to the constructed solution, per restart.
        contraction_constant: 2 S_bar^2 W_bar w_f max{7/6, K}.
        contraction: contraction_constant <= 1.
        agreement: max(differences) <= 1e-9.
    """
    trials: int
    differences: Tuple[float, ...]
    contraction_constant: float
    contraction: Verdict
    agreement: Verdict

    @property
    def verdicts(self) -> Tuple[Verdict, ...]:
        return self.contraction, self.agreement

    def to_json(self) -> Dict[str, Any]:
        return {
            'trials': self.trials,
            'differences': list(self.differences),
            'contraction_constant': self.contraction_constant,
            'contraction': self.contraction,
            'agreement': self.agreement,
        }


def uniqueness_probe(instance: BackgroundInstance,
                     trials: int,
                     *,
                     seed: int = 0,
                     options: SolveOptions = SolveOptions(),
                     progress_callback: Optional[Callable[[int, int], None]] = None) -> UniquenessReport:
    """Restarts the solve from random S^{-1} phi in the ball of radius K w_f and compares the results.

    Each restart begins at Gamma_j = R_j - alpha_j where R_j is a random
    2-field map with |||R_j||| <= K w_f. The iteration then runs with the
    contraction constant of that ball.

    Raises:
        HypothesesFailed: The smallness hypothesis fails.
    """
    _require_hypothesis(instance)
    system = build_system(instance, options)
    reference, _ = solve_fixed_point(system, options)
    q = instance.contraction_constant
    restart_system = dataclasses.replace(system, contraction=min(max(q, system.contraction), 1 - 1e-9))
    rng = np.random.default_rng(seed)
    n = instance.space.num_points
    w = instance.w
    radius = instance.k * instance.w_f
    differences: List[float] = []
    for trial in range(trials):
        starts = []
        for j in range(2):
            r = random_kernel(rng, n, 2, max_degree=max(1, min(options.truncation.degree_cap, 3)), num_terms=4)
            norm = r.kernel_norm(w)
            if norm > 0:
                r = r.scaled(rng.uniform(0, radius) / norm)
            starts.append(r - FieldMapKernel.projection(n, 2, j))
        initial = FieldMapTuple(entries=tuple(starts), lambdas=system.lambdas)
        restarted, _ = solve_fixed_point(restart_system, options, initial=initial, require_hypotheses=False)
        differences.append(restarted.max_abs_difference(reference))
        if progress_callback is not None:
            progress_callback(trial + 1, trials)
    return UniquenessReport(
        trials=trials,
        differences=tuple(differences),
        contraction_constant=q,
        contraction=Verdict.check('uniqueness_contraction', q, 1, rel_slack=0, abs_slack=0),
        agreement=Verdict.check('uniqueness', max(differences, default=0.0), 1e-9, rel_slack=0, abs_slack=0),
    )


def random_admissible_instance(rng: np.random.Generator,
                               num_points: int,
                               *,
                               mass: float = 1.0,
                               w_f: float = 1.0,
                               k: float = 1.0,
                               num_terms: int = 4,
                               perturbation: float = 0.2) -> BackgroundInstance:
    """A seeded random instance on a periodic lattice satisfying the smallness hypothesis.

    S_j is the identity plus a small random perturbation, and the W_j are
    sparse random kernels rescaled so that S_bar^2 W_bar w_f is a random
    fraction of min{1/12, 1/(2K)}.
    """
    space = MetricSpace.from_torus(np.arange(num_points).reshape(-1, 1), [num_points])
    ops = [np.eye(num_points) + perturbation * rng.uniform(-1, 1, size=(num_points, num_points)) / num_points
           for _ in range(2)]
    interactions = []
    for _ in range(2):
        points = rng.integers(0, num_points, size=(num_terms, 3))
        values = rng.uniform(0, 1, size=num_terms) * np.exp(2j * np.pi * rng.uniform(size=num_terms))
        interactions.append(FieldMapKernel.bilinear(
            num_points, [(int(x), int(y), int(z), complex(v)) for (x, y, z), v in zip(points, values)]))
    probe = BackgroundInstance(space=space, w1=interactions[0], w2=interactions[1], s1=ops[0], s2=ops[1],
                               mass=mass, w_f=w_f, k=k)
    if probe.w_bar == 0:
        return probe
    target = rng.uniform(0.1, 0.9) * probe.smallness_limit
    factor = target / probe.smallness
    return dataclasses.replace(probe, w1=interactions[0].scaled(factor), w2=interactions[1].scaled(factor))
