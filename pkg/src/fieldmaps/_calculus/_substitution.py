import dataclasses
from typing import Any, Dict, Sequence, Tuple, Union

import numpy as np

from fieldmaps._calculus._difference import difference_system
from fieldmaps._calculus._polynomial import drop_zeros, Substituter
from fieldmaps._data import TruncationOptions, Verdict
from fieldmaps._errors import ArityMismatch, DimensionMismatch, NoGammaSlots
from fieldmaps._series import CoefficientSystem, FieldMapKernel
from fieldmaps._space import WeightSystem


@dataclasses.dataclass(frozen=True)
class SubstitutionResult:
    """The outcome of substituting field maps into a function or a field map.

    Attributes:
        output: The composed `CoefficientSystem` or `FieldMapKernel`.
        truncated: Whether terms above the truncation were dropped.
        map_norms: The kernel norms |||A_j|||_w of the substituted maps.
        input_norm: The norm of the outer function or map in w_lambda.
        output_norm: The norm of the composition in w.
        verdict: output_norm <= input_norm, conditional on
            |||A_j|||_w <= lambda_j (or the difference hypothesis).
    """
    output: Union[CoefficientSystem, FieldMapKernel]
    truncated: bool
    map_norms: Tuple[float, ...]
    input_norm: float
    output_norm: float
    verdict: Verdict

    def to_json(self) -> Dict[str, Any]:
        return {
            'truncated': self.truncated,
            'map_norms': list(self.map_norms),
            'input_norm': self.input_norm,
            'output_norm': self.output_norm,
            'verdict': self.verdict,
        }


def _check_maps(maps: Sequence[FieldMapKernel], expected: int) -> Tuple[int, int]:
    if len(maps) != expected:
        raise ArityMismatch(f'Need {expected} maps to substitute but got {len(maps)}.',
                            detail={'expected': expected, 'actual': len(maps)})
    if not maps:
        raise ArityMismatch('Need at least one map to substitute.')
    arity = maps[0].arity
    num_points = maps[0].num_points
    for a in maps:
        if a.arity != arity:
            raise ArityMismatch(f'Substituted maps must share their arity but got {a.arity} and {arity}.',
                                detail={'expected': arity, 'actual': a.arity})
        if a.num_points != num_points:
            raise DimensionMismatch(f'Substituted maps live on {a.num_points} and {num_points} points.',
                                    detail={'expected': num_points, 'actual': a.num_points})
    return arity, num_points


def compose_function(h: CoefficientSystem,
                     maps: Sequence[FieldMapKernel],
                     truncation: TruncationOptions) -> Tuple[CoefficientSystem, bool]:
    """Returns h(A_1(alpha), ..., A_r(alpha)) truncated, and whether terms were dropped."""
    arity, _ = _check_maps(maps, h.arity)
    sub = Substituter([a.monomials_at() for a in maps], arity, truncation)
    poly = sub.substitute(h.monomials())
    return CoefficientSystem.from_monomials(arity, drop_zeros(poly).items()), sub.dropped


def compose_kernel(b: FieldMapKernel,
                   maps: Sequence[FieldMapKernel],
                   truncation: TruncationOptions) -> Tuple[FieldMapKernel, bool]:
    """Returns B(A_1(alpha), ..., A_r(alpha)) truncated, and whether terms were dropped."""
    arity, num_points = _check_maps(maps, b.arity)
    if num_points != b.num_points:
        raise DimensionMismatch(f'Outer map lives on {b.num_points} points but the maps on {num_points}.',
                                detail={'expected': b.num_points, 'actual': num_points})
    sub = Substituter([a.monomials_at() for a in maps], arity, truncation)
    result = {x: drop_zeros(sub.substitute(poly)) for x, poly in b.monomials_at().items()}
    return (FieldMapKernel.from_monomials(num_points, arity, result, gamma_slots=maps[0].gamma_slots),
            sub.dropped)


def substitute_function(h: CoefficientSystem,
                        maps: Sequence[FieldMapKernel],
                        w: WeightSystem,
                        w_lambda: WeightSystem,
                        *,
                        truncation: TruncationOptions = TruncationOptions()) -> SubstitutionResult:
    """Composes h(gamma_1, ..., gamma_r) with gamma_j = A_j(alpha_1, ..., alpha_s).

    The composed coefficient system is built constructively: every factor
    gamma_j(y) of every monomial of h is replaced by the polynomial
    A_j(alpha)(y), and the products are expanded and truncated.

    The result carries the bound ||h~||_w <= ||h||_{w_lambda}, which holds
    whenever |||A_j|||_w <= lambda_j for all j.

    Examples:
        >>> import fieldmaps
        >>> space = fieldmaps.MetricSpace.line(1)
        >>> h = fieldmaps.CoefficientSystem.from_entries(1, [([[0, 0]], 1)])
        >>> a = fieldmaps.FieldMapKernel.projection(1, 1, 0, scale=0.5)
        >>> w = fieldmaps.WeightSystem(space, factors=(1,))
        >>> result = fieldmaps.substitute_function(h, [a], w, w)
        >>> result.output.table
        {((0, 0),): (0.25+0j)}
        >>> result.verdict.status
        'holds'
    """
    if w_lambda.arity != h.arity:
        raise ArityMismatch(f'w_lambda has {w_lambda.arity} factors but h has {h.arity} fields.',
                            detail={'expected': h.arity, 'actual': w_lambda.arity})
    output, truncated = compose_function(h, maps, truncation)
    map_norms = tuple(a.kernel_norm(w) for a in maps)
    hypothesis = all(n <= lam * (1 + 1e-12) for n, lam in zip(map_norms, w_lambda.factors))
    input_norm = h.norm(w_lambda)
    output_norm = output.norm(w)
    return SubstitutionResult(
        output=output,
        truncated=truncated,
        map_norms=map_norms,
        input_norm=input_norm,
        output_norm=output_norm,
        verdict=Verdict.check('substitution', output_norm, input_norm, hypothesis=hypothesis),
    )


def substitute_map(b: FieldMapKernel,
                   maps: Sequence[FieldMapKernel],
                   w: WeightSystem,
                   w_lambda: WeightSystem,
                   *,
                   truncation: TruncationOptions = TruncationOptions()) -> SubstitutionResult:
    """Composes the field map B with gamma_j = A_j(alpha), output point by output point.

    The result carries the bound |||B~|||_w <= |||B|||_{w_lambda}, which holds
    whenever |||A_j|||_w <= lambda_j for all j.
    """
    if w_lambda.arity != b.arity:
        raise ArityMismatch(f'w_lambda has {w_lambda.arity} factors but B has {b.arity} slots.',
                            detail={'expected': b.arity, 'actual': w_lambda.arity})
    output, truncated = compose_kernel(b, maps, truncation)
    map_norms = tuple(a.kernel_norm(w) for a in maps)
    hypothesis = all(n <= lam * (1 + 1e-12) for n, lam in zip(map_norms, w_lambda.factors))
    input_norm = b.kernel_norm(w_lambda)
    output_norm = output.kernel_norm(w)
    return SubstitutionResult(
        output=output,
        truncated=truncated,
        map_norms=map_norms,
        input_norm=input_norm,
        output_norm=output_norm,
        verdict=Verdict.check('substitution_map', output_norm, input_norm, hypothesis=hypothesis),
    )


def insert_gamma(b: FieldMapKernel,
                 gammas: Sequence[FieldMapKernel],
                 *,
                 truncation: TruncationOptions = TruncationOptions()) -> Tuple[FieldMapKernel, bool]:
    """Returns the s-field map alpha -> B(alpha, Gamma_1(alpha), ..., Gamma_r(alpha)).

    The alpha slots of B pass through unchanged and its r gamma slots are
    replaced by the given s-field maps.
    """
    if b.gamma_slots == 0:
        raise NoGammaSlots('insert_gamma needs a kernel with gamma slots.')
    if len(gammas) != b.gamma_slots:
        raise ArityMismatch(f'B has {b.gamma_slots} gamma slots but {len(gammas)} maps were given.',
                            detail={'expected': b.gamma_slots, 'actual': len(gammas)})
    s = b.field_slots
    for g in gammas:
        if g.arity != s:
            raise ArityMismatch(f'Gamma maps must take the {s} alpha fields but one takes {g.arity}.',
                                detail={'expected': s, 'actual': g.arity})
    projections = [FieldMapKernel.projection(b.num_points, s, i) for i in range(s)]
    return compose_kernel(b, projections + list(gammas), truncation)


def compose_linear(matrix: Any,
                   a: FieldMapKernel,
                   *,
                   truncation: TruncationOptions = TruncationOptions()) -> FieldMapKernel:
    """Returns the field map alpha -> S A(alpha), i.e. (S A)(x) = sum_y S(x, y) A(alpha)(y)."""
    m = np.asarray(matrix, dtype=np.complex128)
    if m.shape != (a.num_points, a.num_points):
        raise DimensionMismatch(f'Operator shape {m.shape} does not match the {a.num_points} point space.',
                                detail={'expected': a.num_points, 'shape': list(m.shape)})
    op = FieldMapKernel.from_linear_operator(m)
    result, _ = compose_kernel(op, [a], truncation)
    return result


def substituted_difference(h: CoefficientSystem,
                           maps: Sequence[FieldMapKernel],
                           deltas: Sequence[FieldMapKernel],
                           w: WeightSystem,
                           lambdas: Sequence[float],
                           *,
                           p: int = 1,
                           sigma: float = 1.0,
                           truncation: TruncationOptions = TruncationOptions()) -> SubstitutionResult:
    """Substitutes A_j and dA_j into the degree >= p part of the difference of h.

    Builds dh^(>=p)(gamma; delta), the part of h(gamma + delta) - h(gamma)
    of degree at least p in delta, then substitutes gamma_j = A_j(alpha) and
    delta_j = dA_j(alpha). The result carries the bound
    ||dh~^(>=p)||_w <= ||h||_{w_lambda} / sigma^p, which holds whenever
    |||A_j|||_w + sigma |||dA_j|||_w <= lambda_j for all j.
    """
    if len(lambdas) != h.arity or len(maps) != h.arity or len(deltas) != h.arity:
        raise ArityMismatch(f'Need {h.arity} maps, increments and lambdas.',
                            detail={'expected': h.arity, 'maps': len(maps), 'deltas': len(deltas),
                                    'lambdas': len(lambdas)})
    if not sigma >= 1:
        raise ValueError(f'sigma={sigma} < 1')
    dh = difference_system(h, p)
    output, truncated = compose_function(dh, list(maps) + list(deltas), truncation)
    map_norms = tuple(a.kernel_norm(w) for a in maps)
    delta_norms = tuple(d.kernel_norm(w) for d in deltas)
    hypothesis = all(a + sigma * d <= lam * (1 + 1e-12) for a, d, lam in zip(map_norms, delta_norms, lambdas))
    input_norm = h.norm(WeightSystem(space=w.space, factors=tuple(lambdas)))
    output_norm = output.norm(w)
    return SubstitutionResult(
        output=output,
        truncated=truncated,
        map_norms=map_norms + delta_norms,
        input_norm=input_norm,
        output_norm=output_norm,
        verdict=Verdict.check('substituted_difference', output_norm, input_norm / sigma**p, hypothesis=hypothesis),
    )
