import dataclasses
from typing import Any, Dict, Optional, Tuple

from fieldmaps._space import DegreeProfile


@dataclasses.dataclass(frozen=True)
class ProfileNorm:
    """The contribution of one degree profile to a norm.

    Attributes:
        profile: The degree profile (n_1, ..., n_s).
        value: The contribution. For field map kernels this is max(left, right).
        left: For kernels, the output-pinned sum (max over the output point).
        right: For kernels, the input-pinned sum (max over the pinned input
            point, slot and position).
    """
    profile: DegreeProfile
    value: float
    left: Optional[float] = None
    right: Optional[float] = None

    def to_json(self) -> Dict[str, Any]:
        result = {'profile': list(self.profile.degrees), 'value': self.value}
        if self.left is not None:
            result['left'] = self.left
            result['right'] = self.right
        return result


@dataclasses.dataclass(frozen=True)
class NormReport:
    """A norm together with its breakdown over degree profiles.

    Attributes:
        total: The norm.
        constant: The absolute value of the constant term (always 0 for kernels).
        profiles: Per profile contributions, sorted by profile.
    """
    total: float
    constant: float
    profiles: Tuple[ProfileNorm, ...]

    def to_json(self) -> Dict[str, Any]:
        return {
            'total': self.total,
            'constant': self.constant,
            'profiles': [p.to_json() for p in self.profiles],
        }
