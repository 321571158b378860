import dataclasses
from typing import Any, Dict, Tuple

from fieldmaps._calculus._polynomial import drop_zeros, multiply
from fieldmaps._data import TruncationOptions, Verdict
from fieldmaps._errors import ArityMismatch, DimensionMismatch, NoGammaSlots
from fieldmaps._series import FieldMapKernel
from fieldmaps._space import WeightSystem


@dataclasses.dataclass(frozen=True)
class ProductResult:
    """The pointwise product C(x) = A(x) B(x) of two field maps.

    Attributes:
        output: The product map C.
        truncated: Whether terms above the truncation were dropped.
        norms: The unprimed norms of A, B and C in w_{kappa,lambda}.
        primed_norms: The primed norms of A, B and C.
        leibniz: |||C|||' <= |||A|||' |||B||| + |||A||| |||B|||'.
        submultiplicative: |||C||| <= |||A||| |||B|||.
    """
    output: FieldMapKernel
    truncated: bool
    norms: Tuple[float, float, float]
    primed_norms: Tuple[float, float, float]
    leibniz: Verdict
    submultiplicative: Verdict

    @property
    def verdicts(self) -> Tuple[Verdict, ...]:
        return self.leibniz, self.submultiplicative

    def to_json(self) -> Dict[str, Any]:
        return {
            'truncated': self.truncated,
            'norms': dict(zip(['A', 'B', 'C'], self.norms)),
            'primed_norms': dict(zip(['A', 'B', 'C'], self.primed_norms)),
            'verdicts': list(self.verdicts),
        }


def multiply_kernels(a: FieldMapKernel,
                     b: FieldMapKernel,
                     truncation: TruncationOptions = TruncationOptions()) -> Tuple[FieldMapKernel, bool]:
    """Multiplies two field maps output point by output point."""
    if a.arity != b.arity or a.gamma_slots != b.gamma_slots:
        raise ArityMismatch(
            f'Cannot multiply maps with {a.arity} slots ({a.gamma_slots} gamma) '
            f'and {b.arity} slots ({b.gamma_slots} gamma).',
            detail={'expected': [a.arity, a.gamma_slots], 'actual': [b.arity, b.gamma_slots]})
    if a.num_points != b.num_points:
        raise DimensionMismatch(f'Maps live on {a.num_points} and {b.num_points} points.',
                                detail={'expected': a.num_points, 'actual': b.num_points})
    left = a.monomials_at()
    right = b.monomials_at()
    result = {}
    dropped = False
    for x in sorted(left.keys() & right.keys()):
        poly, d = multiply(left[x], right[x], truncation)
        dropped |= d
        result[x] = drop_zeros(poly)
    return (FieldMapKernel.from_monomials(a.num_points, a.arity, result, gamma_slots=a.gamma_slots),
            dropped)


def pointwise_product(a: FieldMapKernel,
                      b: FieldMapKernel,
                      w_kl: WeightSystem,
                      *,
                      truncation: TruncationOptions = TruncationOptions()) -> ProductResult:
    """Builds C(alpha, gamma)(x) = A(alpha, gamma)(x) B(alpha, gamma)(x) and checks the product rule.

    Examples:
        >>> import fieldmaps
        >>> space = fieldmaps.MetricSpace.line(1)
        >>> g = fieldmaps.FieldMapKernel.projection(1, 1, 0, gamma_slots=1)
        >>> result = fieldmaps.pointwise_product(g, g, fieldmaps.WeightSystem(space, factors=(0.5,)))
        >>> result.primed_norms
        (0.5, 0.5, 0.5)
        >>> result.leibniz.status
        'holds'
    """
    if a.gamma_slots == 0:
        raise NoGammaSlots('The product rule is stated for maps with gamma slots.')
    output, truncated = multiply_kernels(a, b, truncation)
    norms = (a.kernel_norm(w_kl), b.kernel_norm(w_kl), output.kernel_norm(w_kl))
    primed = (a.primed_norm(w_kl), b.primed_norm(w_kl), output.primed_norm(w_kl))
    return ProductResult(
        output=output,
        truncated=truncated,
        norms=norms,
        primed_norms=primed,
        leibniz=Verdict.check('leibniz', primed[2], primed[0] * norms[1] + norms[0] * primed[1]),
        submultiplicative=Verdict.check('submultiplicative', norms[2], norms[0] * norms[1]),
    )
