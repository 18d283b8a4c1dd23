"""DARBOUX HELIX
Darboux frames, special surface curves and their associated helices

This module contains the geometric input types: sampling grids, space curves given by component
expressions, parametrised surface patches and oriented surface curves, as well as the family constants.

Vectors are plain numpy arrays with the three components on the last axis, shape (3,) or (n, 3).
"""
from dataclasses import dataclass

import numpy as np

from darboux_helix.core import expr
from darboux_helix.core.expr import Jet
from darboux_helix.core.errors import (GridError, DegenerateParametrizationError, ConfigError,
                                       MissingConstantError)
from darboux_helix.config.helpers import get_config


# load configuration
config = get_config()

CONSTANT_NAMES = ('c1', 'c2', 'c3', 'c4', 'c5', 'c6', 'c7', 'c8_rns3', 'c8_icc1', 'c9', 'c10', 'c11', 'c12', 'c13')


class Grid:
    """Uniform sampling grid of the arclength parameter.

    Parameters
    ----------
    s0: float
        First sample.
    s1: float
        Last sample, larger than s0.
    n: int, optional
        Number of samples, odd and at least 5. Taken from config if not given.
    """

    def __init__(self, s0, s1, n=None):
        if n is None:
            n = config.grid_n

        if not (np.isfinite(s0) and np.isfinite(s1)):
            raise GridError(f"grid bounds must be finite, got [{s0}, {s1}]")
        if not s1 > s0:
            raise GridError(f"grid needs s1 > s0, got [{s0}, {s1}]")
        if int(n) != n or n < 5 or n % 2 == 0:
            raise GridError(f"grid needs an odd number of at least 5 samples, got {n}")

        self.s0 = float(s0)
        self.s1 = float(s1)
        self.n = int(n)

        return

    def __repr__(self):
        return f"Grid({self.s0!r}, {self.s1!r}, {self.n!r})"

    def __eq__(self, other):
        return isinstance(other, Grid) and (self.s0, self.s1, self.n) == (other.s0, other.s1, other.n)

    @property
    def spacing(self):
        return (self.s1 - self.s0) / (self.n - 1)

    @property
    def samples(self):
        return np.linspace(self.s0, self.s1, self.n)

    def refined(self, factor):
        """Same range with `factor` times as many intervals."""
        return Grid(self.s0, self.s1, (self.n - 1) * factor + 1)


def _as_jet(x, order, shape):
    """Promote a number or jet to a jet with array coefficients of the given shape."""
    x = Jet.lift(x, order)

    return Jet([np.asarray(ck, dtype=float) + np.zeros(shape) for ck in x.c[:order + 1]])


class JetVector:
    """Three-component vector whose components are jets (or plain numbers).

    Parameters
    ----------
    components: tuple
        The x, y and z components.
    """
    __array_ufunc__ = None

    def __init__(self, components):
        self.components = tuple(components)

        return

    @classmethod
    def from_exprs(cls, exprs, s, order, variable='s'):
        return cls([expr.eval_jet(e, s, order=order, variable=variable) for e in exprs])

    @property
    def order(self):
        return min(c.order for c in self.components if isinstance(c, Jet))

    def __add__(self, other):
        return JetVector([a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other):
        return JetVector([a - b for a, b in zip(self.components, other.components)])

    def __neg__(self):
        return JetVector([-a for a in self.components])

    def __mul__(self, scalar):
        return JetVector([a * scalar for a in self.components])

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return JetVector([expr.divide(a, scalar) for a in self.components])

    def dot(self, other):
        a, b = self.components, other.components

        return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]

    def cross(self, other):
        a, b = self.components, other.components

        return JetVector([a[1] * b[2] - a[2] * b[1],
                          a[2] * b[0] - a[0] * b[2],
                          a[0] * b[1] - a[1] * b[0]])

    def norm(self):
        return expr.apply_function('sqrt', self.dot(self))

    def normalized(self):
        return self / self.norm()

    def differentiate(self):
        return JetVector([a.differentiate() for a in self.components])

    def value(self, k=0):
        """k-th derivative as an array with the components on the last axis."""
        out = []
        for a in self.components:
            if isinstance(a, Jet):
                out.append(np.asarray(a.derivative(k), dtype=float))
            else:
                out.append(np.asarray(a if k == 0 else 0. * a, dtype=float))

        return np.stack(np.broadcast_arrays(*out), axis=-1)

    def base_value(self):
        """Innermost numeric value of each component, for nested jets."""
        return np.stack(np.broadcast_arrays(*[expr._base_value(a) for a in self.components]), axis=-1)


@dataclass(frozen=True)
class SpaceCurve:
    """Space curve given by three component expressions in s."""
    x: object
    y: object
    z: object

    @classmethod
    def from_text(cls, texts, variable='s'):
        if len(texts) != 3:
            raise ConfigError(f"a space curve needs three components, got {len(texts)}")

        return cls(*[expr.from_text(t, variables=(variable,)) for t in texts])

    @property
    def exprs(self):
        return self.x, self.y, self.z

    def to_text(self):
        return [expr.to_text(e) for e in self.exprs]

    def jet_vector(self, s, order):
        return JetVector.from_exprs(self.exprs, s, order)


@dataclass(frozen=True)
class SurfacePatch:
    """Surface patch phi(u, v) given by three component expressions."""
    x: object
    y: object
    z: object

    @classmethod
    def from_text(cls, texts):
        if len(texts) != 3:
            raise ConfigError(f"a surface patch needs three components, got {len(texts)}")

        return cls(*[expr.from_text(t, variables=('u', 'v')) for t in texts])

    @property
    def exprs(self):
        return self.x, self.y, self.z

    def to_text(self):
        return [expr.to_text(e) for e in self.exprs]

    def point(self, u, v):
        """phi(u, v); jets in u and v give the point as a jet."""
        return JetVector([expr.evaluate(e, u=u, v=v) for e in self.exprs])

    def partials(self, u, v):
        """phi_u and phi_v at (u, v), with the other variable frozen.

        The arguments may be numbers or jets of a curve parameter; each partial is read off
        the first coefficient of an outer jet seeded in the differentiated variable.
        """
        out = []
        for seed_u, seed_v in ((1., 0.), (0., 1.)):
            env = {'u': Jet([u, seed_u]), 'v': Jet([v, seed_v])}
            partial = []
            for e in self.exprs:
                value = expr.evaluate(e, **env)
                partial.append(value.c[1] if isinstance(value, Jet) else 0.)
            out.append(JetVector(partial))

        return out[0], out[1]

    def normal(self, u, v):
        """Unit normal phi_u x phi_v / |phi_u x phi_v|, orientation as written.

        Raises
        ------
        DegenerateParametrizationError
            When |phi_u x phi_v| falls below the degeneracy threshold.
        """
        phi_u, phi_v = self.partials(u, v)
        n = phi_u.cross(phi_v)

        length = np.linalg.norm(n.base_value(), axis=-1)
        if np.any(length < config.degenerate_tol):
            raise DegenerateParametrizationError(f"surface partials are parallel (|phi_u x phi_v| = "
                                                 f"{np.min(length):.3g})")

        return n.normalized()


@dataclass(frozen=True)
class SurfacePathCurve:
    """Curve phi(u(s), v(s)) on a surface patch."""
    surface: SurfacePatch
    u: object
    v: object

    def jet_vector(self, s, order):
        u = expr.eval_jet(self.u, s, order=order)
        v = expr.eval_jet(self.v, s, order=order)
        point = self.surface.point(u, v)

        return JetVector([_as_jet(c, order, np.shape(s)) for c in point.components])


@dataclass(frozen=True)
class AnalyticNormal:
    """Normal field given directly by three component expressions in s."""
    field: SpaceCurve

    def jet_vector(self, s, order):
        return self.field.jet_vector(s, order)


@dataclass(frozen=True)
class SurfaceNormal:
    """Normal field of a surface patch carried along the parameter curve (u(s), v(s))."""
    surface: SurfacePatch
    u: object
    v: object

    def jet_vector(self, s, order):
        u = expr.eval_jet(self.u, s, order=order)
        v = expr.eval_jet(self.v, s, order=order)
        normal = self.surface.normal(u, v)

        return JetVector([_as_jet(c, order, np.shape(s)) for c in normal.components])


class OrientedSurfaceCurve:
    """Unit speed surface curve together with its unit surface normal.

    Parameters
    ----------
    alpha: SpaceCurve, SurfacePathCurve, None
        The curve. May be omitted when the normal is surface derived; it is then phi(u(s), v(s)).
    normal: AnalyticNormal, SurfaceNormal
        The normal field U along the curve.
    """

    def __init__(self, alpha, normal):
        if alpha is None:
            if not isinstance(normal, SurfaceNormal):
                raise ConfigError("the curve may only be omitted for a surface derived normal")
            alpha = SurfacePathCurve(normal.surface, normal.u, normal.v)

        self.alpha = alpha
        self.normal = normal

        return

    def alpha_jets(self, s, order):
        return self.alpha.jet_vector(s, order)

    def normal_jets(self, s, order):
        return self.normal.jet_vector(s, order)


class FamilyConstants:
    """Integration constants c1 ... c13 of the associated-helix families.

    Parameters
    ----------
    values: dict, optional
        Explicitly set constants by name.
    default: float, None, optional
        Value of unset constants; None means unset constants are an error.
        Taken from config if not given.
    """
    _unset = object()

    def __init__(self, values=None, default=_unset):
        values = dict(values or {})
        for name in values:
            if name == 'c8':
                raise ConfigError("constant 'c8' is ambiguous, use 'c8_rns3' or 'c8_icc1'")
            if name not in CONSTANT_NAMES:
                raise ConfigError(f"unknown family constant '{name}'")

        self.values = {}
        for name, value in values.items():
            if isinstance(value, bool):
                raise ConfigError(f"family constant '{name}' must be a number, got {value!r}")
            try:
                self.values[name] = float(value)
            except (TypeError, ValueError):
                raise ConfigError(f"family constant '{name}' must be a number, got {value!r}") from None
        self.default = config.default_constant if default is FamilyConstants._unset else default

        return

    def __repr__(self):
        return f"FamilyConstants({self.values!r}, default={self.default!r})"

    def __getitem__(self, name):
        if name in self.values:
            return self.values[name]
        if name not in CONSTANT_NAMES:
            raise ConfigError(f"unknown family constant '{name}'")
        if self.default is None:
            raise MissingConstantError(f"family constant '{name}' is required but not set")

        return float(self.default)

    def updated(self, values):
        """Copy with some constants overridden."""
        merged = dict(self.values)
        merged.update(values)

        return FamilyConstants(merged, default=self.default)

    def resolve(self, names):
        return {name: self[name] for name in names}


@dataclass(frozen=True)
class ValidationReport:
    unit_speed_dev: float
    normality_dev: float
    normal_length_dev: float
    tol: float

    @property
    def passed(self):
        return max(self.unit_speed_dev, self.normality_dev, self.normal_length_dev) <= self.tol

    def as_dict(self):
        return {'unit_speed_dev': self.unit_speed_dev, 'normality_dev': self.normality_dev,
                'normal_length_dev': self.normal_length_dev, 'tol': self.tol, 'passed': self.passed}


def curve_point(curve, s, order):
    """Position and derivatives of a curve.

    Parameters
    ----------
    curve: SpaceCurve, SurfacePathCurve
        The curve.
    s: float | numpy.ndarray[Any, dtype[float]]
        Parameter value(s).
    order: int
        Highest derivative, 0 to 3.

    Returns
    -------
    tuple[numpy.ndarray]
        The k-th entry is the k-th derivative vector.
    """
    jets = curve.jet_vector(s, max(order, 1))

    return tuple(jets.value(k) for k in range(order + 1))


def surface_normal(surface, u, v):
    """Unit surface normal at one parameter point.

    Parameters
    ----------
    surface: SurfacePatch
        The surface.
    u: float
        First parameter.
    v: float
        Second parameter.

    Returns
    -------
    numpy.ndarray[Any, dtype[float]]
        Unit normal, shape (3,).
    """
    return surface.normal(float(u), float(v)).value(0)


def validate_surface_curve(curve, grid):
    """Check unit speed, normality and unit length of the normal on a grid.

    Parameters
    ----------
    curve: OrientedSurfaceCurve
        The surface curve.
    grid: Grid
        Sampling grid.

    Returns
    -------
    ValidationReport
        Maximum deviations and the verdict; failures are reported, not raised.
    """
    s = grid.samples
    d_alpha = curve.alpha_jets(s, 1).value(1)
    normal = curve.normal_jets(s, 0).value(0)

    unit_speed = np.max(np.abs(np.linalg.norm(d_alpha, axis=-1) - 1))
    normality = np.max(np.abs(np.sum(d_alpha * normal, axis=-1)))
    normal_length = np.max(np.abs(np.linalg.norm(normal, axis=-1) - 1))

    return ValidationReport(float(unit_speed), float(normality), float(normal_length), config.unit_tol)
