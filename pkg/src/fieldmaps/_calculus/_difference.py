import collections
import dataclasses
import itertools
import math
from typing import Any, Dict, Sequence, Union

from fieldmaps._data import Verdict
from fieldmaps._errors import ArityMismatch
from fieldmaps._series import CoefficientSystem, FieldMapKernel
from fieldmaps._series._coefficient_system import Monomials
from fieldmaps._space import WeightSystem


@dataclasses.dataclass(frozen=True)
class DifferenceResult:
    """The degree >= p part of a difference, with its norm bound.

    Attributes:
        output: The 2s-field system or map in (alpha_1..alpha_s, delta_1..delta_s).
        p: The minimum degree in the delta fields that was kept.
        sigma: The shift parameter (>= 1).
        delta_norm: The norm of the output in w_delta.
        sigma_norm: The norm of the input in w_sigma.
        verdict: delta_norm <= sigma_norm / sigma^p.
    """
    output: Union[CoefficientSystem, FieldMapKernel]
    p: int
    sigma: float
    delta_norm: float
    sigma_norm: float
    verdict: Verdict

    def to_json(self) -> Dict[str, Any]:
        return {
            'p': self.p,
            'sigma': self.sigma,
            'delta_norm': self.delta_norm,
            'sigma_norm': self.sigma_norm,
            'verdict': self.verdict,
        }


def expand_difference(poly: Monomials, arity: int, p: int) -> Monomials:
    """Expands f(alpha + delta) - f(alpha) and keeps the part of delta degree >= p.

    A factor alpha_j(x)^m becomes sum_k binom(m, k) alpha_j(x)^(m-k) delta_j(x)^k.
    The binomials are exact integers.
    """
    out: Dict = collections.defaultdict(complex)
    for key, c in poly.items():
        per_slot = []
        for slot in key:
            counts = sorted(collections.Counter(slot).items())
            options = []
            for choice in itertools.product(*[range(m + 1) for _, m in counts]):
                weight = 1
                kept = []
                moved = []
                for (x, m), k in zip(counts, choice):
                    weight *= math.comb(m, k)
                    kept.extend([x] * (m - k))
                    moved.extend([x] * k)
                options.append((weight, tuple(kept), tuple(moved)))
            per_slot.append(options)
        for combo in itertools.product(*per_slot):
            degree = sum(len(moved) for _, _, moved in combo)
            if degree < max(p, 1):
                continue
            weight = 1
            for w, _, _ in combo:
                weight *= w
            new_key = tuple(kept for _, kept, _ in combo) + tuple(moved for _, _, moved in combo)
            out[new_key] += c * weight
    assert all(len(k) == 2 * arity for k in out)
    return dict(out)


def difference_system(f: CoefficientSystem, p: int = 1) -> CoefficientSystem:
    """The 2s-field function df^(>=p)(alpha, delta) without norms.

    Examples:
        >>> import fieldmaps
        >>> f = fieldmaps.CoefficientSystem.from_entries(1, [([[0, 0]], 1)])
        >>> fieldmaps.difference_system(f, 1).table
        {((), (0, 0)): (1+0j), ((0,), (0,)): (2+0j)}
    """
    if p < 1:
        raise ValueError(f'p={p} < 1')
    return CoefficientSystem.from_monomials(2 * f.arity, expand_difference(f.monomials(), f.arity, p).items())


def difference(f: CoefficientSystem,
               w: WeightSystem,
               lambdas: Sequence[float],
               sigma: float = 1.0,
               *,
               p: int = 1) -> DifferenceResult:
    """The part of f(alpha + delta) - f(alpha) of degree at least p in delta.

    The result carries the bound ||df^(>=p)||_{w_delta} <= ||f||_{w_sigma} / sigma^p
    where w_delta gives the deltas the weight factors lambda_j and w_sigma
    gives alpha_j the factor kappa_j + sigma lambda_j.

    Examples:
        >>> import fieldmaps
        >>> w = fieldmaps.WeightSystem(fieldmaps.MetricSpace.line(1), factors=(1,))
        >>> f = fieldmaps.CoefficientSystem.from_entries(1, [([[0, 0]], 1)])
        >>> result = fieldmaps.difference(f, w, [1], sigma=1)
        >>> result.delta_norm, result.sigma_norm
        (3.0, 4.0)
    """
    if f.arity != w.arity:
        raise ArityMismatch(f'Weight system has {w.arity} factors but the function has {f.arity} fields.',
                            detail={'expected': f.arity, 'actual': w.arity})
    w_delta = w.split_system(lambdas)
    w_sigma = w.shifted_system(lambdas, sigma)
    output = difference_system(f, p)
    delta_norm = output.norm(w_delta)
    sigma_norm = f.norm(w_sigma)
    return DifferenceResult(
        output=output,
        p=p,
        sigma=sigma,
        delta_norm=delta_norm,
        sigma_norm=sigma_norm,
        verdict=Verdict.check('difference', delta_norm, sigma_norm / sigma**p),
    )


def difference_kernel(a: FieldMapKernel, p: int = 1) -> FieldMapKernel:
    """The 2s-field map dA^(>=p)(alpha, delta). The delta slots are its gamma slots."""
    if p < 1:
        raise ValueError(f'p={p} < 1')
    per_point = {x: expand_difference(poly, a.arity, p) for x, poly in a.monomials_at().items()}
    return FieldMapKernel.from_monomials(a.num_points, 2 * a.arity, per_point, gamma_slots=a.arity)


def difference_map(a: FieldMapKernel,
                   w: WeightSystem,
                   lambdas: Sequence[float],
                   sigma: float = 1.0,
                   *,
                   p: int = 1) -> DifferenceResult:
    """dA(alpha, delta) = A(alpha + delta) - A(alpha), with |||dA|||_{w_delta} <= |||A|||_{w_sigma} / sigma.

    With p > 1 only the part of degree at least p in delta is kept and the
    bound has sigma^p in place of sigma.
    """
    if a.arity != w.arity:
        raise ArityMismatch(f'Weight system has {w.arity} factors but the map has {a.arity} fields.',
                            detail={'expected': a.arity, 'actual': w.arity})
    w_delta = w.split_system(lambdas)
    w_sigma = w.shifted_system(lambdas, sigma)
    output = difference_kernel(a, p)
    delta_norm = output.kernel_norm(w_delta)
    sigma_norm = a.kernel_norm(w_sigma)
    return DifferenceResult(
        output=output,
        p=p,
        sigma=sigma,
        delta_norm=delta_norm,
        sigma_norm=sigma_norm,
        verdict=Verdict.check('difference_map', delta_norm, sigma_norm / sigma**p),
    )
