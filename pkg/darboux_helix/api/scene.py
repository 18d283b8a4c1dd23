"""DARBOUX HELIX
Darboux frames, special surface curves and their associated helices

This Python module contains the scene class for handling the user defined surface curve to analyse.

A scene is a yaml document (or one of the built-ins shipped in darboux_helix/data/scenes):

    name: cylinder-geodesic
    description: one line shown by list-builtins
    curve:
      mode: surface            # or analytic
      surface: [x(u, v), y(u, v), z(u, v)]
      u: u(s)
      v: v(s)
      alpha: [x(s), y(s), z(s)]  # optional in surface mode, required in analytic mode
      normal: [x(s), y(s), z(s)] # analytic mode only
    grid: {s0: '0', s1: '8*pi', n: 2001}
    families: [hcc1, rns2, icc1]  # or 'all'
    constants: {c8_icc1: -1}
    tolerances: {rel_tol: 1.0e-6}
    exports: [csv, obj, json]
    sweep: true
"""
import os

import yaml

from darboux_helix.core import expr
from darboux_helix.core import geometry as geo
from darboux_helix.core.associated import HelixFamily
from darboux_helix.core.errors import ConfigError, GridError, ExprLexError, ExprSyntaxError, ExprDomainError
from darboux_helix.config.helpers import get_config, get_scenes_path


# load configuration
config = get_config()

EXPORT_FORMATS = ('csv', 'obj', 'json')
TOLERANCE_KEYS = ('zero_tol', 'rel_tol', 'unit_tol', 'degenerate_tol', 'angle_tol', 'alignment_tol', 'binormal_tol')


def _parse_expr(text, variables, where):
    """Parse an expression from a scene, turning syntax problems into configuration errors."""
    try:
        return expr.from_text(str(text), variables=variables)
    except (ExprLexError, ExprSyntaxError) as e:
        raise ConfigError(f"{where}: {e}") from e


def _parse_number(text, where):
    """A grid bound: a number or a constant expression like '8*pi'."""
    if isinstance(text, (int, float)):
        return float(text)

    try:
        return float(expr.evaluate(_parse_expr(text, (), where)))
    except ExprDomainError as e:
        raise ConfigError(f"{where}: {e}") from e


def _parse_triple(texts, variables, where):
    if not isinstance(texts, (list, tuple)) or len(texts) != 3:
        raise ConfigError(f"{where}: expected a list of three expressions")

    return [_parse_expr(t, variables, where) for t in texts]


def parse_curve(curve_spec):
    """Build the oriented surface curve of a scene's `curve` mapping.

    Parameters
    ----------
    curve_spec: dict
        The curve mapping of the scene.

    Returns
    -------
    OrientedSurfaceCurve
        The curve with its normal field.
    """
    if not isinstance(curve_spec, dict):
        raise ConfigError("scene: 'curve' must be a mapping")

    mode = curve_spec.get('mode', 'analytic')
    alpha = None
    if 'alpha' in curve_spec:
        alpha = geo.SpaceCurve(*_parse_triple(curve_spec['alpha'], ('s',), 'curve.alpha'))

    if mode == 'surface':
        for key in ('surface', 'u', 'v'):
            if key not in curve_spec:
                raise ConfigError(f"scene: surface mode needs 'curve.{key}'")
        surface = geo.SurfacePatch(*_parse_triple(curve_spec['surface'], ('u', 'v'), 'curve.surface'))
        u = _parse_expr(curve_spec['u'], ('s',), 'curve.u')
        v = _parse_expr(curve_spec['v'], ('s',), 'curve.v')
        normal = geo.SurfaceNormal(surface, u, v)
    elif mode == 'analytic':
        if alpha is None or 'normal' not in curve_spec:
            raise ConfigError("scene: analytic mode needs 'curve.alpha' and 'curve.normal'")
        normal = geo.AnalyticNormal(geo.SpaceCurve(*_parse_triple(curve_spec['normal'], ('s',), 'curve.normal')))
    else:
        raise ConfigError(f"scene: unknown curve mode '{mode}', expected 'surface' or 'analytic'")

    return geo.OrientedSurfaceCurve(alpha, normal)


def parse_grid(text):
    """Grid from a 's0:s1:n' flag value."""
    parts = str(text).split(':')
    if len(parts) != 3:
        raise ConfigError(f"grid '{text}' is not of the form s0:s1:n")
    try:
        n = int(parts[2])
    except ValueError:
        raise ConfigError(f"grid sample count '{parts[2]}' is not an integer")

    try:
        return geo.Grid(_parse_number(parts[0], 'grid'), _parse_number(parts[1], 'grid'), n)
    except GridError as e:
        raise ConfigError(f"grid '{text}': {e}") from e


def parse_constant(text):
    """Name and value from a 'name=value' flag value."""
    name, sep, value = str(text).partition('=')
    if sep == '' or name.strip() == '':
        raise ConfigError(f"constant '{text}' is not of the form name=value")
    try:
        value = float(value)
    except ValueError:
        raise ConfigError(f"constant value '{value}' is not a number")

    return name.strip(), value


def parse_families(spec):
    """Families from a list of tags, a comma separated string or 'all'."""
    if isinstance(spec, str):
        spec = [tag for tag in spec.split(',') if tag.strip() != '']
    if spec == ['all']:
        return list(HelixFamily)

    return [HelixFamily.from_tag(tag) for tag in spec]


class SceneConfig:
    """A class to handle a scene: a surface curve with the work to do on it.

    Attributes
    ----------
    name: str
        Scene identifier, used for the log file.
    description: str
        One line description.
    curve: OrientedSurfaceCurve
        The surface curve.
    grid: Grid
        Sampling grid.
    families: list[HelixFamily]
        Families to construct.
    constants: FamilyConstants
        Integration constants.
    tolerances: dict
        Configuration overrides for tolerance keys.
    exports: list[str]
        Export formats out of 'csv', 'obj', 'json'.
    sweep: bool
        Whether a run writes the equivalence sweep.
    """

    def __init__(self, name, curve, grid, families=None, constants=None, tolerances=None, exports=None,
                 sweep=False, description=''):
        """Initialises the SceneConfig object."""
        self.name = name
        self.description = description
        self.curve = curve
        self.grid = grid
        self.families = list(families or [])
        self.constants = constants if constants is not None else geo.FamilyConstants()
        self.tolerances = dict(tolerances or {})
        self.exports = list(exports if exports is not None else [config.export_format])
        self.sweep = bool(sweep)

        for key in self.tolerances:
            if key not in TOLERANCE_KEYS:
                raise ConfigError(f"scene: unknown tolerance '{key}'")
            value = self.tolerances[key]
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ConfigError(f"scene: tolerance '{key}' must be a number, got {value!r}")
        for fmt in self.exports:
            if fmt not in EXPORT_FORMATS:
                raise ConfigError(f"scene: unknown export format '{fmt}'")

        return

    def __repr__(self):
        return (f"SceneConfig(name={self.name!r}, grid={self.grid!r}, "
                f"families={[f.tag for f in self.families]!r})")

    @classmethod
    def from_dict(cls, scene_dict, name=''):
        """Build a scene from a parsed yaml document.

        Parameters
        ----------
        scene_dict: dict
            The document.
        name: str, optional
            Fallback name if the document has none.

        Returns
        -------
        SceneConfig
            The scene.

        Raises
        ------
        ConfigError
            If the document does not follow the scene schema.
        """
        if not isinstance(scene_dict, dict):
            raise ConfigError("scene: document must be a mapping")

        allowed = {'name', 'description', 'curve', 'grid', 'families', 'constants', 'tolerances', 'exports', 'sweep'}
        excess = set(scene_dict) - allowed
        if excess:
            raise ConfigError(f"scene: unknown keys {sorted(excess)}")
        if 'curve' not in scene_dict:
            raise ConfigError("scene: 'curve' is required")

        grid_spec = scene_dict.get('grid', {})
        if not isinstance(grid_spec, dict) or 's1' not in grid_spec:
            raise ConfigError("scene: 'grid' needs at least 's1'")
        n = grid_spec.get('n', config.grid_n)
        if isinstance(n, bool) or not isinstance(n, int):
            raise ConfigError(f"scene: grid.n '{n}' is not an integer")
        try:
            grid = geo.Grid(_parse_number(grid_spec.get('s0', '0'), 'grid.s0'),
                            _parse_number(grid_spec['s1'], 'grid.s1'), n)
        except GridError as e:
            raise ConfigError(f"scene: {e}") from e

        curve = parse_curve(scene_dict['curve'])
        families = parse_families(scene_dict.get('families', []))
        constants = geo.FamilyConstants(scene_dict.get('constants') or {})

        return cls(scene_dict.get('name', name), curve, grid, families=families, constants=constants,
                   tolerances=scene_dict.get('tolerances'), exports=scene_dict.get('exports'),
                   sweep=scene_dict.get('sweep', False), description=scene_dict.get('description', ''))

    @classmethod
    def load(cls, name_or_path):
        """Load a built-in scene by name or a scene file by path.

        Parameters
        ----------
        name_or_path: str
            Built-in name, or path to a yaml scene file.

        Returns
        -------
        SceneConfig
            The scene.
        """
        file_name = name_or_path
        if not os.path.isfile(file_name):
            if name_or_path not in builtin_names():
                raise ConfigError(f"no scene file or built-in scene named '{name_or_path}', "
                                  f"built-ins are {builtin_names()}")
            file_name = os.path.join(get_scenes_path(), f'{name_or_path}.yaml')

        try:
            with open(file_name, 'r') as file:
                scene_dict = yaml.safe_load(file)
        except yaml.YAMLError as e:
            raise ConfigError(f"scene file {file_name} could not be parsed: {e}")

        default_name = os.path.splitext(os.path.basename(file_name))[0]

        return cls.from_dict(scene_dict, name=default_name)

    def with_overrides(self, families=None, constants=None, grid=None):
        """Copy with command line overrides applied."""
        scene = SceneConfig(self.name, self.curve, grid if grid is not None else self.grid,
                            families=families if families is not None else self.families,
                            constants=self.constants.updated(constants) if constants else self.constants,
                            tolerances=self.tolerances, exports=self.exports, sweep=self.sweep,
                            description=self.description)

        return scene

    def get_dict(self):
        """Make a dictionary of the scene settings, for the report."""
        scene_dict = {'name': self.name,
                      'grid': {'s0': self.grid.s0, 's1': self.grid.s1, 'n': self.grid.n},
                      'families': [f.tag for f in self.families],
                      'constants': dict(sorted(self.constants.values.items())),
                      'tolerances': dict(sorted(self.tolerances.items()))}

        return scene_dict


def builtin_names():
    """Names of the built-in scenes, lexicographically sorted."""
    scenes_path = get_scenes_path()
    names = [os.path.splitext(f)[0] for f in os.listdir(scenes_path) if f.endswith('.yaml')]

    return sorted(names)


def list_builtins():
    """Names and one line descriptions of the built-in scenes.

    Returns
    -------
    list[tuple[str, str]]
        (name, description) in lexicographic order.
    """
    return [(name, SceneConfig.load(name).description) for name in builtin_names()]
