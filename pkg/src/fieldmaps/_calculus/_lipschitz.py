import math
from typing import Sequence

from fieldmaps._calculus._substitution import insert_gamma
from fieldmaps._data import TruncationOptions, Verdict
from fieldmaps._errors import ArityMismatch, NoGammaSlots
from fieldmaps._series import FieldMapKernel
from fieldmaps._space import WeightSystem


def ball_norm(gammas: Sequence[FieldMapKernel], w: WeightSystem, lambdas: Sequence[float]) -> float:
    """max_j |||Gamma_j|||_w / lambda_j."""
    return max((g.kernel_norm(w) / lam for g, lam in zip(gammas, lambdas)), default=0.0)


def min_gamma_degree(b: FieldMapKernel) -> int:
    """The smallest gamma degree among the pieces of B that depend on gamma (1 if there are none)."""
    degrees = [b.gamma_degree(key) for _, key in b.table]
    return min((d for d in degrees if d >= 1), default=1)


def check_lipschitz(b: FieldMapKernel,
                    gammas: Sequence[FieldMapKernel],
                    gammas_prime: Sequence[FieldMapKernel],
                    w: WeightSystem,
                    w_kl: WeightSystem,
                    *,
                    truncation: TruncationOptions = TruncationOptions()) -> Verdict:
    """Checks the Lipschitz bound of Gamma -> B(alpha, Gamma(alpha)) on the unit ball.

    For Gamma, Gamma' in the unit ball (with respect to the lambdas, the last r
    factors of `w_kl`),

        |||B(Gamma) - B(Gamma')|||_w
            <= ||Gamma - Gamma'|| max(||Gamma||, ||Gamma'||)^(d_min - 1) |||B|||'_{w_kl}

    where d_min is the minimum gamma degree of B. The verdict's hypothesis
    is ball membership of both tuples.
    """
    if b.gamma_slots == 0:
        raise NoGammaSlots('check_lipschitz needs a kernel with gamma slots.')
    if w_kl.arity != b.arity:
        raise ArityMismatch(f'w_kl has {w_kl.arity} factors but B has {b.arity} slots.',
                            detail={'expected': b.arity, 'actual': w_kl.arity})
    if len(gammas_prime) != len(gammas):
        raise ArityMismatch(f'Got {len(gammas)} and {len(gammas_prime)} gamma maps.',
                            detail={'expected': len(gammas), 'actual': len(gammas_prime)})
    lambdas = w_kl.factors[b.field_slots:]
    left, _ = insert_gamma(b, gammas, truncation=truncation)
    right, _ = insert_gamma(b, gammas_prime, truncation=truncation)
    lhs = (left - right).kernel_norm(w)

    size = ball_norm(gammas, w, lambdas)
    size_prime = ball_norm(gammas_prime, w, lambdas)
    distance = ball_norm([g - h for g, h in zip(gammas, gammas_prime)], w, lambdas)
    d_min = min_gamma_degree(b)
    rhs = distance * math.pow(max(size, size_prime), d_min - 1) * b.primed_norm(w_kl)
    in_ball = size <= 1 + 1e-12 and size_prime <= 1 + 1e-12
    return Verdict.check('lipschitz', lhs, rhs, hypothesis=in_ball)
