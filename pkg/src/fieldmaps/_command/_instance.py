import dataclasses
import functools
import json
import math
import pathlib
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from fieldmaps._calculus import DiscreteKernel
from fieldmaps._data import json_complex, SolveOptions, TruncationOptions
from fieldmaps._errors import ArityMismatch, DimensionMismatch, FieldMapError, SchemaError
from fieldmaps._series import CoefficientSystem, FieldMapKernel
from fieldmaps._solving import BackgroundInstance, ImplicitSystem
from fieldmaps._space import MetricSpace, WeightSystem

SCHEMA_DIR = pathlib.Path(__file__).parent / 'schemas'
FIXTURE_DIR = pathlib.Path(__file__).parent / 'fixtures'


@functools.lru_cache(maxsize=None)
def load_schema(name: str) -> Dict[str, Any]:
    with open(SCHEMA_DIR / name, encoding='utf-8') as f:
        return json.load(f)


def json_path(parts: Sequence[Any]) -> str:
    """Formats a path into a JSON document, e.g. `$.system.f[0]`."""
    out = '$'
    for p in parts:
        out += f'[{p}]' if isinstance(p, int) else f'.{p}'
    return out


def validate_against_schema(data: Any, schema_name: str) -> None:
    """Raises `fieldmaps.SchemaError` for the most relevant schema violation, if any."""
    import jsonschema
    from jsonschema.exceptions import best_match

    schema = load_schema(schema_name)
    validator = jsonschema.Draft7Validator(schema)
    error = best_match(validator.iter_errors(data))
    if error is not None:
        raise SchemaError(error.message, path=json_path(list(error.absolute_path)))


@dataclasses.dataclass(frozen=True)
class YoungInput:
    kernel: DiscreteKernel
    functions: Tuple[np.ndarray, ...]
    exponents: Tuple[float, ...]


@dataclasses.dataclass(frozen=True)
class InstanceFile:
    """A validated instance file.

    Attributes:
        source: Where the instance was read from (None for in-memory data).
        space: The metric space with its unscaled distances.
        mass: Multiplies every distance in every norm.
        kappas: Weight factors of the fields alpha.
        lambdas: Weight factors of the unknowns (or of substituted maps).
        sigma: Shift parameter used by the difference command.
        functions: Named coefficient systems.
        maps: Named field map kernels.
        compose: Names of the outer function or map and the maps substituted into it.
        product: Names of the two maps multiplied by the product command.
        young: Kernel, functions and exponents for the generalized Young check.
        system: The implicit system, if the file describes one.
        background: The background field instance, if the file describes one.
        solve_options: Solve settings from the file (flags may override them).
    """
    source: Optional[str]
    space: MetricSpace
    mass: float
    kappas: Tuple[float, ...]
    lambdas: Tuple[float, ...]
    sigma: float
    functions: Dict[str, CoefficientSystem]
    maps: Dict[str, FieldMapKernel]
    compose: Optional[Tuple[str, Tuple[str, ...]]]
    product: Optional[Tuple[str, str]]
    young: Optional[YoungInput]
    system: Optional[ImplicitSystem]
    background: Optional[BackgroundInstance]
    solve_options: SolveOptions

    @functools.cached_property
    def metric_space(self) -> MetricSpace:
        """The mass-scaled space the norms are taken in."""
        return self.space if self.mass == 1 else self.space.scaled(self.mass)

    @property
    def name(self) -> Optional[str]:
        return None if self.source is None else pathlib.Path(self.source).name

    @property
    def w(self) -> WeightSystem:
        return WeightSystem(space=self.metric_space, factors=self.kappas)

    @property
    def w_lambda(self) -> WeightSystem:
        return WeightSystem(space=self.metric_space, factors=self.lambdas)

    def weights_for_map(self, a: FieldMapKernel) -> WeightSystem:
        """Kappas for the field slots of a map, then lambdas for its gamma slots."""
        if a.field_slots != len(self.kappas) or (a.gamma_slots and a.gamma_slots != len(self.lambdas)):
            raise ArityMismatch(
                f'A map with {a.field_slots} field slots and {a.gamma_slots} gamma slots does not fit '
                f'{len(self.kappas)} kappas and {len(self.lambdas)} lambdas.',
                detail={'field_slots': a.field_slots, 'gamma_slots': a.gamma_slots,
                        'kappas': len(self.kappas), 'lambdas': len(self.lambdas)})
        factors = self.kappas + (self.lambdas if a.gamma_slots else ())
        return WeightSystem(space=self.metric_space, factors=factors)

    def weights_for_function(self, f: CoefficientSystem) -> WeightSystem:
        if f.arity != len(self.kappas):
            raise ArityMismatch(f'A function of {f.arity} fields does not fit {len(self.kappas)} kappas.',
                                detail={'expected': len(self.kappas), 'actual': f.arity})
        return self.w

    def require(self, section: str) -> Any:
        value = getattr(self, section)
        if value is None:
            raise SchemaError(f'the instance has no {section!r} section', path=f'$.{section}')
        return value

    def options(self,
                *,
                degree_cap: Optional[int] = None,
                tol: Optional[float] = None,
                max_iter: Optional[int] = None) -> SolveOptions:
        """The instance's solve options with command line overrides applied."""
        options = self.solve_options
        if degree_cap is not None:
            options = dataclasses.replace(
                options, truncation=dataclasses.replace(options.truncation, degree_cap=degree_cap))
        if tol is not None:
            options = dataclasses.replace(options, tol=tol)
        if max_iter is not None:
            options = dataclasses.replace(options, max_iter=max_iter)
        return options


def _matrix(rows: Any, path: str) -> np.ndarray:
    if len({len(row) for row in rows}) > 1:
        raise SchemaError('matrix rows have different lengths', path=path)
    return np.array([[json_complex(v) for v in row] for row in rows], dtype=np.complex128)


def _build_space(data: Dict[str, Any], terminal_cap: int) -> MetricSpace:
    kind = data['kind']
    if kind == 'line':
        return MetricSpace.line(data['num_points'], spacing=data.get('spacing', 1.0), terminal_cap=terminal_cap)
    if kind == 'matrix':
        if len({len(row) for row in data['distances']}) > 1:
            raise SchemaError('distance rows have different lengths', path='$.space.distances')
        return MetricSpace.from_matrix(data['distances'], terminal_cap=terminal_cap)
    if kind == 'coordinates':
        return MetricSpace.from_coordinates(data['coords'], terminal_cap=terminal_cap)
    if kind == 'torus':
        return MetricSpace.from_torus(data['coords'], data['periods'], terminal_cap=terminal_cap)
    raise NotImplementedError(f'kind={kind!r}')


def _build_map(data: Dict[str, Any], num_points: int, path: str) -> FieldMapKernel:
    kind = data.get('kind', 'entries')
    try:
        if kind == 'entries':
            return FieldMapKernel.from_json(data, num_points)
        if kind == 'projection':
            return FieldMapKernel.projection(num_points,
                                             data['arity'],
                                             data['slot'],
                                             gamma_slots=data.get('gamma_slots', 0),
                                             scale=json_complex(data.get('scale', 1)))
        if kind == 'truncated_exponential':
            return FieldMapKernel.truncated_exponential(num_points, data['n'], data['a'], data['max_degree'])
        if kind == 'linear_operator':
            m = _matrix(data['matrix'], f'{path}.matrix')
            if m.shape != (num_points, num_points):
                raise DimensionMismatch(f'Operator shape {m.shape} does not match the {num_points} point space.',
                                        detail={'expected': num_points, 'shape': list(m.shape)})
            return FieldMapKernel.from_linear_operator(m,
                                                       arity=data.get('arity', 1),
                                                       slot=data.get('slot', 0),
                                                       gamma_slots=data.get('gamma_slots', 0))
        if kind == 'bilinear':
            return FieldMapKernel.bilinear(num_points,
                                           [(x, y, z, json_complex(v)) for x, y, z, v in data['entries']],
                                           gamma_slots=data.get('gamma_slots', 0))
    except FieldMapError as ex:
        ex.detail.setdefault('path', path)
        raise
    raise NotImplementedError(f'kind={kind!r}')


def _lookup(table: Dict[str, Any], name: str, path: str) -> Any:
    if name not in table:
        raise SchemaError(f'{name!r} does not name a map', path=path)
    return table[name]


def _build_young(data: Dict[str, Any]) -> YoungInput:
    try:
        values = np.array(data['values'], dtype=np.float64)
        if 'values_imag' in data:
            values = values + 1j * np.array(data['values_imag'], dtype=np.float64)
    except ValueError as ex:
        raise SchemaError(f'kernel values are not a rectangular array of numbers ({ex})', path='$.young.values')
    kernel = DiscreteKernel(measures=tuple(np.array(m, dtype=np.float64) for m in data['measures']),
                            values=values)
    functions = tuple(np.array([json_complex(v) for v in f], dtype=np.complex128) for f in data['functions'])
    exponents = tuple(math.inf if p == 'inf' else float(p) for p in data['exponents'])
    return YoungInput(kernel=kernel, functions=functions, exponents=exponents)


def parse_instance(data: Any, *, source: Optional[str] = None) -> InstanceFile:
    """Validates instance data against the schema and builds every object it describes.

    Raises:
        SchemaError: The data does not match the schema or refers to an
            undefined map.
        MetricViolation: The distances are not a metric.
        SingularOperator: A background operator is not invertible.
    """
    validate_against_schema(data, 'instance.json')

    solve = data.get('solve', {})
    solve_options = SolveOptions(
        tol=solve.get('tol', 1e-12),
        max_iter=solve.get('max_iter', 200),
        iteration_margin=solve.get('iteration_margin', 10),
        truncation=TruncationOptions(
            degree_cap=solve.get('degree_cap', 6),
            slot_degree_cap=solve.get('slot_degree_cap'),
            terminal_cap=solve.get('terminal_cap', 12),
        ),
    )
    space = _build_space(data['space'], solve_options.truncation.terminal_cap)
    mass = float(data['space'].get('mass', 1.0))
    n = space.num_points
    weights = data.get('weights', {})

    functions = {}
    for name, f in data.get('functions', {}).items():
        try:
            functions[name] = CoefficientSystem.from_json(f, num_points=n)
        except FieldMapError as ex:
            ex.detail.setdefault('path', f'$.functions.{name}')
            raise
    maps = {name: _build_map(m, n, f'$.maps.{name}') for name, m in data.get('maps', {}).items()}

    compose = None
    if 'compose' in data:
        outer = data['compose']['outer']
        if outer not in functions and outer not in maps:
            raise SchemaError(f'{outer!r} does not name a function or a map', path='$.compose.outer')
        for k, name in enumerate(data['compose']['maps']):
            _lookup(maps, name, f'$.compose.maps[{k}]')
        compose = outer, tuple(data['compose']['maps'])

    product = None
    if 'product' in data:
        for side in ['a', 'b']:
            _lookup(maps, data['product'][side], f'$.product.{side}')
        product = data['product']['a'], data['product']['b']

    young = _build_young(data['young']) if 'young' in data else None

    kappas = tuple(float(k) for k in weights.get('kappas', []))
    lambdas = tuple(float(k) for k in weights.get('lambdas', []))
    result = InstanceFile(
        source=source,
        space=space,
        mass=mass,
        kappas=kappas,
        lambdas=lambdas,
        sigma=float(weights.get('sigma', 1.0)),
        functions=functions,
        maps=maps,
        compose=compose,
        product=product,
        young=young,
        system=None,
        background=None,
        solve_options=solve_options,
    )

    if 'system' in data:
        families: List[List[FieldMapKernel]] = []
        for family in ['f', 'L', 'B']:
            families.append([_lookup(maps, name, f'$.system.{family}[{k}]')
                             for k, name in enumerate(data['system'][family])])
        system = ImplicitSystem(
            space=result.metric_space,
            f=families[0],
            linear=families[1],
            nonlinear=families[2],
            kappas=kappas,
            lambdas=lambdas,
            contraction=data['system'].get('contraction', 0.5),
        )
        result = dataclasses.replace(result, system=system)

    if 'background' in data:
        section = data['background']
        w1, w2 = [_lookup(maps, name, f'$.background.W[{k}]') for k, name in enumerate(section['W'])]
        s1, s2 = [_matrix(m, f'$.background.S[{k}]') for k, m in enumerate(section['S'])]
        background = BackgroundInstance(space=space,
                                        w1=w1,
                                        w2=w2,
                                        s1=s1,
                                        s2=s2,
                                        mass=mass,
                                        w_f=section.get('w_f', 1.0),
                                        k=section.get('K', 1.0))
        result = dataclasses.replace(result, background=background)

    return result


def load_instance(path: str) -> InstanceFile:
    """Reads and validates an instance file."""
    try:
        with open(path, encoding='utf-8') as f:
            data = json.load(f)
    except json.JSONDecodeError as ex:
        raise SchemaError(f'not valid JSON ({ex.msg} at line {ex.lineno})', path='$')
    return parse_instance(data, source=str(path))


def fixture_path(name: str) -> pathlib.Path:
    """The path of a shipped fixture, e.g. `fixture_path('catalan.json')`."""
    return FIXTURE_DIR / name


def shipped_fixtures() -> List[pathlib.Path]:
    return sorted(FIXTURE_DIR.glob('*.json'))
