import dataclasses
import math
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np

from fieldmaps._data import Verdict
from fieldmaps._errors import AxisMismatch, ExponentMismatch
from fieldmaps._series import lp_norm


@dataclasses.dataclass(frozen=True)
class DiscreteKernel:
    """A kernel K(x_1, ..., x_n) on a product of finite measure spaces.

    Attributes:
        measures: One array of strictly positive point weights mu_l per axis.
        values: The n-axis complex array of kernel entries.
    """
    measures: Tuple[np.ndarray, ...]
    values: np.ndarray

    def __post_init__(self):
        measures = tuple(np.asarray(m, dtype=np.float64) for m in self.measures)
        values = np.asarray(self.values, dtype=np.complex128)
        if values.ndim != len(measures) or values.ndim == 0:
            raise AxisMismatch(f'Kernel has {values.ndim} axes but {len(measures)} measures were given.',
                               detail={'axes': values.ndim, 'measures': len(measures)})
        for k, m in enumerate(measures):
            if m.shape != (values.shape[k],):
                raise AxisMismatch(f'Measure {k} has shape {m.shape} but axis {k} has {values.shape[k]} points.',
                                   detail={'axis': k, 'expected': values.shape[k], 'shape': list(m.shape)})
            if not np.all(m > 0) or not np.all(np.isfinite(m)):
                raise ValueError(f'Measure {k} is not strictly positive and finite.')
        object.__setattr__(self, 'measures', measures)
        object.__setattr__(self, 'values', values)

    @property
    def num_axes(self) -> int:
        return self.values.ndim

    def pinned_masses(self, axis: int) -> np.ndarray:
        """sum over the other axes of |K| prod_{m != axis} mu_m, for each point of `axis`."""
        weighted = np.abs(self.values)
        for m, mu in enumerate(self.measures):
            if m != axis:
                shape = [1] * self.num_axes
                shape[m] = mu.shape[0]
                weighted = weighted * mu.reshape(shape)
        others = tuple(m for m in range(self.num_axes) if m != axis)
        return weighted.sum(axis=others) if others else weighted

    def l1_linf_norm(self) -> float:
        """The L^1-L^infinity norm: the largest pinned mass over all axes and points.

        Examples:
            >>> import numpy as np
            >>> import fieldmaps
            >>> k = fieldmaps.DiscreteKernel(measures=(np.ones(3), np.ones(3)), values=np.eye(3))
            >>> k.l1_linf_norm()
            1.0
        """
        return max(float(np.max(self.pinned_masses(axis))) for axis in range(self.num_axes))


@dataclasses.dataclass(frozen=True)
class YoungReport:
    """A generalized Young inequality check.

    Attributes:
        exponents: The exponents p_l.
        kernel_norm: The L^1-L^infinity norm of K.
        function_norms: The norms ||f_l||_{L^p_l(mu_l)}.
        verdict: |integral K prod f_l dmu| <= ||K|| prod ||f_l||.
    """
    exponents: Tuple[float, ...]
    kernel_norm: float
    function_norms: Tuple[float, ...]
    verdict: Verdict

    @property
    def lhs(self) -> float:
        return self.verdict.lhs

    @property
    def rhs(self) -> float:
        return self.verdict.rhs

    @property
    def passed(self) -> bool:
        return not self.verdict.violated

    def to_json(self) -> Dict[str, Any]:
        return {
            'exponents': list(self.exponents),
            'kernel_norm': self.kernel_norm,
            'function_norms': list(self.function_norms),
            'verdict': self.verdict,
        }


def generalized_young(kernel: DiscreteKernel,
                      functions: Sequence[Any],
                      exponents: Sequence[float]) -> YoungReport:
    """Checks |sum K(x_1..x_n) prod f_l(x_l) mu_l(x_l)| <= ||K||_{L1-Linf} prod ||f_l||_{p_l}.

    Requires sum_l 1/p_l = 1 with p_l in (0, inf].

    Examples:
        >>> import numpy as np
        >>> import fieldmaps
        >>> k = fieldmaps.DiscreteKernel(measures=(np.ones(3), np.ones(3)), values=np.eye(3))
        >>> f = np.array([1.0, 2.0, 2.0])
        >>> report = fieldmaps.generalized_young(k, [f, f], [2, 2])
        >>> report.lhs, report.rhs
        (9.0, 9.0)
    """
    n = kernel.num_axes
    if len(functions) != n or len(exponents) != n:
        raise AxisMismatch(f'Kernel has {n} axes but got {len(functions)} functions and {len(exponents)} exponents.',
                           detail={'axes': n, 'functions': len(functions), 'exponents': len(exponents)})
    for p in exponents:
        if not p > 0:
            raise ExponentMismatch(f'p={p} <= 0', detail={'p': p})
    total = math.fsum(0.0 if math.isinf(p) else 1 / p for p in exponents)
    if abs(total - 1) > 1e-12:
        raise ExponentMismatch(f'sum_l 1/p_l = {total} != 1', detail={'sum': total})
    fs = []
    for k, (f, mu) in enumerate(zip(functions, kernel.measures)):
        f = np.asarray(f, dtype=np.complex128)
        if f.shape != mu.shape:
            raise AxisMismatch(f'Function {k} has shape {f.shape} but axis {k} has {mu.shape[0]} points.',
                               detail={'axis': k, 'expected': mu.shape[0], 'shape': list(f.shape)})
        fs.append(f)

    acc = kernel.values
    for f, mu in zip(fs, kernel.measures):
        acc = np.tensordot(f * mu, acc, axes=(0, 0))
    lhs = abs(complex(acc))
    norms = tuple(lp_norm(f, p, mu) for f, p, mu in zip(fs, exponents, kernel.measures))
    k_norm = kernel.l1_linf_norm()
    rhs = k_norm * math.prod(norms)
    return YoungReport(
        exponents=tuple(float(p) for p in exponents),
        kernel_norm=k_norm,
        function_norms=norms,
        verdict=Verdict.check('generalized_young', lhs, rhs),
    )


def random_young_instance(rng: np.random.Generator,
                          num_axes: int,
                          *,
                          size: int = 3,
                          sparsity: Optional[float] = None) -> Tuple[DiscreteKernel, list]:
    """A seeded random kernel with random measures and random functions on each axis.

    Args:
        rng: The random number generator.
        num_axes: The number n of axes.
        size: Points per axis.
        sparsity: When given, the fraction of kernel entries set to zero.
    """
    shape = (size,) * num_axes
    values = rng.normal(size=shape) + 1j * rng.normal(size=shape)
    if sparsity is not None:
        values[rng.uniform(size=shape) < sparsity] = 0
    measures = tuple(rng.uniform(0.1, 2.0, size=size) for _ in range(num_axes))
    functions = [rng.normal(size=size) + 1j * rng.normal(size=size) for _ in range(num_axes)]
    return DiscreteKernel(measures=measures, values=values), functions
