"""DARBOUX HELIX
Darboux frames, special surface curves and their associated helices

This module contains the constructions of associated curves gamma = alpha + y1 T + y2 V + y3 U
whose tangent is aligned with T (HCC families), V (RNS families) or U (ICC families).

The derivative of gamma in the Darboux frame is
    gamma' = R1 T + R2 V + R3 U,
    R1 = y1' - k_g y2 - k_n y3 + 1,  R2 = y2' + k_g y1 - tau_g y3,  R3 = y3' + k_n y1 + tau_g y2,
and each family makes the two R components outside its designated field vanish. Within a family
one coefficient is zero, which selects the type (1, 2 or 3); degenerate curvature patterns
(a curvature identically zero on the grid) have their own closed forms.

All indefinite integrals are running integrals anchored at the first grid point, so a bare `s`
in a closed form stands for s - s0.
"""
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from darboux_helix.core import expr
from darboux_helix.core import frames as frm
from darboux_helix.core import quadrature as quad
from darboux_helix.core.expr import Jet
from darboux_helix.core.frames import CurvatureTrack, DarbouxFrame
from darboux_helix.core.geometry import Grid, FamilyConstants
from darboux_helix.core.errors import (ConfigError, GridError, CaseAmbiguityError, DivisorTooSmallError,
                                       RegularityViolationError, HypothesisViolationError)
from darboux_helix.config.helpers import get_config


# load configuration
config = get_config()


class HelixFamily(Enum):
    """The nine associated-helix families.

    Value: (tag, group, designated frame field, Darboux field kind of the binormal, constants).
    """
    HCC1 = ('hcc1', 'HCC', 'T', 'normal', ())
    HCC2 = ('hcc2', 'HCC', 'T', 'normal', ('c1',))
    HCC3 = ('hcc3', 'HCC', 'T', 'normal', ('c2',))
    RNS1 = ('rns1', 'RNS', 'V', 'rectifying', ('c3',))
    RNS2 = ('rns2', 'RNS', 'V', 'rectifying', ('c4', 'c5', 'c6', 'c7'))
    RNS3 = ('rns3', 'RNS', 'V', 'rectifying', ('c8_rns3',))
    ICC1 = ('icc1', 'ICC', 'U', 'osculating', ('c8_icc1',))
    ICC2 = ('icc2', 'ICC', 'U', 'osculating', ('c9',))
    ICC3 = ('icc3', 'ICC', 'U', 'osculating', ('c10', 'c11', 'c12', 'c13'))

    @property
    def tag(self):
        return self.value[0]

    @property
    def group(self):
        return self.value[1]

    @property
    def field(self):
        return self.value[2]

    @property
    def darboux_kind(self):
        return self.value[3]

    @property
    def required_constants(self):
        return self.value[4]

    @property
    def designated(self):
        """Index of the frame component of gamma' that must not vanish."""
        return 'TVU'.index(self.field)

    @classmethod
    def from_tag(cls, tag):
        if isinstance(tag, HelixFamily):
            return tag
        for family in cls:
            if family.tag == str(tag).strip().lower():
                return family

        raise ConfigError(f"unknown helix family '{tag}', expected one of {[f.tag for f in cls]}")

    @classmethod
    def in_group(cls, group):
        return [family for family in cls if family.group == group]


@dataclass(frozen=True)
class CoefficientTrack:
    """Coefficient functions y1, y2, y3 on a grid.

    Attributes
    ----------
    family: HelixFamily
        The family.
    grid: Grid
        Sampling grid.
    case_tag: str
        Which closed form was used, e.g. 'RNS1-general' or 'ICC1-asymptotic'.
    constants: dict
        The constants the closed form used.
    y: numpy.ndarray[Any, dtype[float]]
        Coefficient values, shape (n, 3).
    jets: tuple[Jet], None
        Jets of the coefficients, absent for integrated tracks.
    """
    family: HelixFamily
    grid: Grid
    case_tag: str
    constants: dict
    y: np.ndarray = field(repr=False)
    jets: tuple | None = field(default=None, repr=False)

    @property
    def y1(self):
        return self.y[:, 0]

    @property
    def y2(self):
        return self.y[:, 1]

    @property
    def y3(self):
        return self.y[:, 2]


@dataclass(frozen=True)
class AssociatedCurve:
    """Associated curve of a surface curve.

    Attributes
    ----------
    family: HelixFamily
        The family.
    frame: DarbouxFrame
        Darboux frame of the base curve.
    track: CoefficientTrack
        The coefficients.
    gamma: JetVector
        gamma = alpha + y1 T + y2 V + y3 U as jets.
    """
    family: HelixFamily
    frame: DarbouxFrame = field(repr=False)
    track: CoefficientTrack = field(repr=False)
    gamma: object = field(repr=False)

    @property
    def s(self):
        return self.frame.s

    @property
    def points(self):
        return self.gamma.value(0)

    @property
    def gamma_prime(self):
        return self.gamma.value(1)

    @property
    def r(self):
        """Components R1, R2, R3 of gamma' in the Darboux frame, shape (n, 3)."""
        d_gamma = self.gamma_prime

        return np.stack([np.sum(d_gamma * self.frame.field(name).value(0), axis=-1) for name in 'TVU'], axis=-1)

    def table(self):
        points = self.points
        return {'s': self.s, 'gamma_x': points[:, 0], 'gamma_y': points[:, 1], 'gamma_z': points[:, 2],
                'y1': self.track.y1, 'y2': self.track.y2, 'y3': self.track.y3}


@dataclass(frozen=True)
class OdeResidual:
    """Residuals of a track against its family's system.

    `equalities` holds max |R_i| of the two components that must vanish, `inequality_min`
    the minimum of |R| for the designated component.
    """
    family: HelixFamily
    equalities: tuple
    inequality_min: float

    def as_dict(self):
        return {'family': self.family.tag, 'equalities': list(self.equalities),
                'inequality_min': self.inequality_min}


@dataclass(frozen=True)
class SyntheticCurvatures:
    """Curvature streams k_g, k_n, tau_g given directly as expressions in s."""
    k_g: object
    k_n: object
    tau_g: object

    @classmethod
    def from_text(cls, k_g, k_n, tau_g):
        return cls(expr.from_text(k_g), expr.from_text(k_n), expr.from_text(tau_g))

    def curvature_track(self, s, order=None):
        if order is None:
            order = config.jet_order - 2

        s = np.atleast_1d(np.asarray(s, dtype=float))
        jets = [expr.eval_jet(e, s, order=order) for e in (self.k_g, self.k_n, self.tau_g)]

        return CurvatureTrack(s, *jets)


class _Context:
    """Curvature jets and helpers shared by the closed forms of one track."""

    def __init__(self, track, grid):
        self.grid = grid
        self.values = {'k_g': track.k_g, 'k_n': track.k_n, 'tau_g': track.tau_g}
        self.k_g = track.k_g_jet
        self.k_n = track.k_n_jet
        self.tau_g = track.tau_g_jet

        order = min(self.k_g.order, self.k_n.order, self.tau_g.order)
        self.s = Jet.variable(grid.samples - grid.s0, order)
        self.zero = Jet.constant(np.zeros(grid.n), order)

        return

    def integral(self, integrand):
        values = quad.cumulative_integral(integrand.v0, self.grid)

        return Jet.antiderivative(values, integrand)

    def case(self, name):
        """'zero' if the curvature is identically zero on the grid, 'nonvanishing' if bounded away from it."""
        magnitude = np.abs(self.values[name])
        if np.max(magnitude) <= config.zero_tol:
            return 'zero'
        if np.min(magnitude) >= config.zero_tol:
            return 'nonvanishing'

        raise CaseAmbiguityError(f"{name} is neither identically zero nor nonvanishing on the grid "
                                 f"(|{name}| ranges over [{np.min(magnitude):.3g}, {np.max(magnitude):.3g}])",
                                 name=name)

    def require(self, name):
        magnitude = np.min(np.abs(self.values[name]))
        if magnitude < config.zero_tol:
            raise DivisorTooSmallError(f"{name} is needed as divisor but min |{name}| = {magnitude:.3g}", name=name)

        return None


def _hcc1(ctx, constants):
    f = ctx.integral(ctx.tau_g)

    return 'HCC1', (ctx.zero, f.sin(), f.cos()), {}


def _hcc2(ctx, constants):
    ctx.require('k_g')
    c1 = constants['c1']
    y3 = c1 * ctx.integral(-ctx.k_n * ctx.tau_g / ctx.k_g).exp()
    y1 = ctx.tau_g / ctx.k_g * y3

    return 'HCC2', (y1, ctx.zero, y3), {'c1': c1}


def _hcc3(ctx, constants):
    ctx.require('k_n')
    c2 = constants['c2']
    y2 = c2 * ctx.integral(ctx.k_g * ctx.tau_g / ctx.k_n).exp()
    y1 = -ctx.tau_g / ctx.k_n * y2

    return 'HCC3', (y1, y2, ctx.zero), {'c2': c2}


def _rns1(ctx, constants):
    if ctx.case('k_g') == 'zero':
        ctx.require('k_n')
        ctx.require('tau_g')
        y3 = 1. / ctx.k_n
        y2 = ctx.k_n.differentiate() / (ctx.tau_g * ctx.k_n * ctx.k_n)
        return 'RNS1-geodesic', (ctx.zero, y2, y3), {}

    c3 = constants['c3']
    g = ctx.integral(ctx.k_n * ctx.tau_g / ctx.k_g)
    inner = ctx.integral((-g).exp() * ctx.tau_g / ctx.k_g)
    y3 = g.exp() * (c3 - inner)
    y2 = (1. - ctx.k_n * y3) / ctx.k_g

    return 'RNS1-general', (ctx.zero, y2, y3), {'c3': c3}


def _rotation_pair(ctx, rate, c_a, c_b):
    """Solution of y' = rate * x - 1, x' = -rate * y with x(s0) = c_a, y(s0) = -c_b."""
    angle = ctx.integral(rate)
    sin_a, cos_a = angle.sin(), angle.cos()
    int_sin = ctx.integral(sin_a)
    int_cos = ctx.integral(cos_a)

    x = c_a * cos_a + c_b * sin_a - cos_a * int_sin + sin_a * int_cos
    y = -sin_a * (int_sin - c_a) - cos_a * (int_cos + c_b)

    return y, x


def _rns2(ctx, constants):
    if ctx.case('k_n') == 'zero':
        c4, c5 = constants['c4'], constants['c5']
        return 'RNS2-asymptotic', (c4 - ctx.s, ctx.zero, c5 + ctx.zero), {'c4': c4, 'c5': c5}

    c6, c7 = constants['c6'], constants['c7']
    y1, y3 = _rotation_pair(ctx, ctx.k_n, c6, c7)

    return 'RNS2-general', (y1, ctx.zero, y3), {'c6': c6, 'c7': c7}


def _rns3(ctx, constants):
    if ctx.case('tau_g') == 'zero':
        ctx.require('k_n')
        ctx.require('k_g')
        return 'RNS3-principal', (ctx.zero, 1. / ctx.k_g, ctx.zero), {}

    c8 = constants['c8_rns3']
    h = ctx.integral(ctx.k_n * ctx.k_g / ctx.tau_g)
    y1 = (-h).exp() * (c8 - ctx.integral(h.exp()))
    y2 = -ctx.k_n / ctx.tau_g * y1

    return 'RNS3-general', (y1, y2, ctx.zero), {'c8_rns3': c8}


def _icc1(ctx, constants):
    if ctx.case('k_n') == 'zero':
        ctx.require('k_g')
        ctx.require('tau_g')
        y2 = 1. / ctx.k_g
        y3 = -ctx.k_g.differentiate() / (ctx.k_g * ctx.k_g * ctx.tau_g)
        return 'ICC1-asymptotic', (ctx.zero, y2, y3), {}

    c8 = constants['c8_icc1']
    p = ctx.integral(ctx.k_g * ctx.tau_g / ctx.k_n)
    y2 = (-p).exp() * (ctx.integral(p.exp() * ctx.tau_g / ctx.k_n) + c8)
    y3 = (1. - ctx.k_g * y2) / ctx.k_n

    return 'ICC1-general', (ctx.zero, y2, y3), {'c8_icc1': c8}


def _icc2(ctx, constants):
    if ctx.case('tau_g') == 'zero':
        ctx.require('k_g')
        ctx.require('k_n')
        return 'ICC2-principal', (ctx.zero, ctx.zero, 1. / ctx.k_n), {}

    c9 = constants['c9']
    q = ctx.integral(ctx.k_g * ctx.k_n / ctx.tau_g)
    y1 = q.exp() * (c9 - ctx.integral((-q).exp()))
    y3 = ctx.k_g / ctx.tau_g * y1

    return 'ICC2-general', (y1, ctx.zero, y3), {'c9': c9}


def _icc3(ctx, constants):
    if ctx.case('k_g') == 'zero':
        c10, c11 = constants['c10'], constants['c11']
        return 'ICC3-geodesic', (c10 - ctx.s, c11 + ctx.zero, ctx.zero), {'c10': c10, 'c11': c11}

    c12, c13 = constants['c12'], constants['c13']
    y1, y2 = _rotation_pair(ctx, ctx.k_g, c12, c13)

    return 'ICC3-general', (y1, y2, ctx.zero), {'c12': c12, 'c13': c13}


_CLOSED_FORMS = {HelixFamily.HCC1: _hcc1, HelixFamily.HCC2: _hcc2, HelixFamily.HCC3: _hcc3,
                 HelixFamily.RNS1: _rns1, HelixFamily.RNS2: _rns2, HelixFamily.RNS3: _rns3,
                 HelixFamily.ICC1: _icc1, HelixFamily.ICC2: _icc2, HelixFamily.ICC3: _icc3}


def coefficient_track(family, track, constants, grid):
    """Evaluate a family's closed-form coefficients on a grid.

    Parameters
    ----------
    family: HelixFamily, str
        Family or its tag.
    track: CurvatureTrack
        Curvature jets sampled on the grid (a Darboux frame or synthetic curvatures).
    constants: FamilyConstants, None
        Integration constants. Defaults from config if None.
    grid: Grid
        Sampling grid of the track.

    Returns
    -------
    CoefficientTrack
        Values and jets of y1, y2, y3.

    Raises
    ------
    CaseAmbiguityError
        A curvature that selects the case is neither identically zero nor nonvanishing.
    DivisorTooSmallError
        A curvature used as divisor comes too close to zero.
    MissingConstantError
        A required constant is unset and no default is configured.
    """
    family = HelixFamily.from_tag(family)
    if constants is None:
        constants = FamilyConstants()
    if len(track) != grid.n:
        raise GridError(f"curvature track has {len(track)} samples, grid has {grid.n}")

    ctx = _Context(track, grid)
    case_tag, jets, used = _CLOSED_FORMS[family](ctx, constants)
    jets = tuple(Jet.lift(y, ctx.zero.order) for y in jets)
    values = np.stack([np.asarray(y.v0, dtype=float) + np.zeros(grid.n) for y in jets], axis=-1)

    return CoefficientTrack(family, grid, case_tag, used, values, jets)


def assemble(frame, track):
    """Build gamma = alpha + y1 T + y2 V + y3 U without checking regularity.

    Parameters
    ----------
    frame: DarbouxFrame
        Darboux frame of the base curve on the track's grid.
    track: CoefficientTrack
        Coefficients with jets.

    Returns
    -------
    AssociatedCurve
        The associated curve.
    """
    if track.jets is None:
        raise ValueError("assembling gamma needs the coefficient jets")

    y1, y2, y3 = track.jets
    gamma = frame.alpha + frame.t * y1 + frame.v * y2 + frame.u * y3

    return AssociatedCurve(track.family, frame, track, gamma)


def check_regularity(assoc):
    """Raise RegularityViolationError unless the designated R keeps one sign away from zero."""
    r = assoc.r[:, assoc.family.designated]
    name = f"R{assoc.family.designated + 1}"

    if np.min(np.abs(r)) < config.zero_tol:
        raise RegularityViolationError(f"{assoc.family.tag}: {name} vanishes (min |{name}| = "
                                       f"{np.min(np.abs(r)):.3g}), gamma is not regular")
    if not (np.all(r > 0) or np.all(r < 0)):
        raise RegularityViolationError(f"{assoc.family.tag}: {name} changes sign, gamma has a cusp")

    return None


def _frame_on(source, grid):
    if isinstance(source, DarbouxFrame):
        if len(source) != grid.n:
            raise GridError(f"frame has {len(source)} samples, grid has {grid.n}")
        return source

    return frm.darboux_frame(source, grid.samples)


def construct(family, source, constants, grid):
    """Construct an associated curve and check that it is regular.

    Parameters
    ----------
    family: HelixFamily, str
        Family or its tag.
    source: OrientedSurfaceCurve, DarbouxFrame
        Base curve, or its frame already sampled on the grid.
    constants: FamilyConstants, None
        Integration constants.
    grid: Grid
        Sampling grid.

    Returns
    -------
    AssociatedCurve
        The regular associated curve.

    Raises
    ------
    RegularityViolationError
        If the designated component of gamma' vanishes or changes sign.
    """
    frame = _frame_on(source, grid)
    track = coefficient_track(family, frame, constants, grid)
    assoc = assemble(frame, track)
    check_regularity(assoc)

    return assoc


def track_residual(track, curvatures):
    """Residuals of a coefficient track against its family's system, derivatives by finite differences.

    Parameters
    ----------
    track: CoefficientTrack
        Coefficients on the grid.
    curvatures: CurvatureTrack
        Curvatures on the same grid.

    Returns
    -------
    OdeResidual
        Maximum residual of the two equations and minimum of the designated component.
    """
    h = track.grid.spacing
    y1, y2, y3 = (np.ascontiguousarray(track.y[:, i]) for i in range(3))
    dy1, dy2, dy3 = (quad.five_point_derivative(y, h) for y in (y1, y2, y3))
    k_g, k_n, tau_g = curvatures.k_g, curvatures.k_n, curvatures.tau_g

    r = [dy1 - k_g * y2 - k_n * y3 + 1,
         dy2 + k_g * y1 - tau_g * y3,
         dy3 + k_n * y1 + tau_g * y2]

    designated = track.family.designated
    equalities = tuple(float(np.max(np.abs(r[i]))) for i in range(3) if i != designated)

    return OdeResidual(track.family, equalities, float(np.min(np.abs(r[designated]))))


def ode_residual(assoc):
    """Residuals of an associated curve against its family's system."""
    return track_residual(assoc.track, assoc.frame)


def _linear_system(case_tag, k_g, k_n, tau_g):
    """State indices, matrices A and sources b of the linear system behind a closed form, or None."""
    z = np.zeros_like(k_g)
    one = np.ones_like(k_g)

    if case_tag == 'HCC1':
        return (1, 2), [[z, tau_g], [-tau_g, z]], [z, z]
    if case_tag == 'HCC2':
        return (2,), [[-k_n * tau_g / k_g]], [z]
    if case_tag == 'HCC3':
        return (1,), [[k_g * tau_g / k_n]], [z]
    if case_tag == 'RNS1-general':
        return (2,), [[k_n * tau_g / k_g]], [-tau_g / k_g]
    if case_tag.startswith('RNS2'):
        return (0, 2), [[z, k_n], [-k_n, z]], [-one, z]
    if case_tag == 'RNS3-general':
        return (0,), [[-k_n * k_g / tau_g]], [-one]
    if case_tag == 'ICC1-general':
        return (1,), [[-k_g * tau_g / k_n]], [tau_g / k_n]
    if case_tag == 'ICC2-general':
        return (0,), [[k_g * k_n / tau_g]], [-one]
    if case_tag.startswith('ICC3'):
        return (0, 1), [[z, k_g], [-k_g, z]], [-one, z]

    return None


def _complete(case_tag, y, curvatures, h):
    """Fill in the coefficients that follow algebraically from the integrated ones."""
    k_g, k_n, tau_g = curvatures.k_g, curvatures.k_n, curvatures.tau_g
    y1, y2, y3 = y[:, 0], y[:, 1], y[:, 2]

    if case_tag == 'HCC2':
        y1[:] = tau_g / k_g * y3
    elif case_tag == 'HCC3':
        y1[:] = -tau_g / k_n * y2
    elif case_tag == 'RNS1-general':
        y2[:] = (1 - k_n * y3) / k_g
    elif case_tag == 'RNS1-geodesic':
        y3[:] = 1 / k_n
        y2[:] = -quad.five_point_derivative(np.ascontiguousarray(y3), h) / tau_g
    elif case_tag == 'RNS3-general':
        y2[:] = -k_n / tau_g * y1
    elif case_tag == 'RNS3-principal':
        y2[:] = 1 / k_g
    elif case_tag == 'ICC1-general':
        y3[:] = (1 - k_g * y2) / k_n
    elif case_tag == 'ICC1-asymptotic':
        y2[:] = 1 / k_g
        y3[:] = quad.five_point_derivative(np.ascontiguousarray(y2), h) / tau_g
    elif case_tag == 'ICC2-general':
        y3[:] = k_g / tau_g * y1
    elif case_tag == 'ICC2-principal':
        y3[:] = 1 / k_n

    return y


def curvatures_on(source, s):
    """Curvature track of a surface curve or synthetic curvatures at arbitrary samples."""
    if isinstance(source, SyntheticCurvatures):
        return source.curvature_track(s)
    if isinstance(source, CurvatureTrack):
        raise TypeError("a sampled curvature track cannot be re-evaluated, pass the curve instead")

    return frm.darboux_frame(source, s)


def rk4_oracle(family, source, constants, grid, substeps=None):
    """Independent coefficient track by Runge-Kutta integration of the family's linear system.

    Starts from the closed form's values at the first grid point; the algebraic cases are
    evaluated from their constraint relations with finite-difference derivatives.

    Parameters
    ----------
    family: HelixFamily, str
        Family or its tag.
    source: OrientedSurfaceCurve, SyntheticCurvatures
        Something whose curvatures can be evaluated anywhere.
    constants: FamilyConstants, None
        Integration constants.
    grid: Grid
        Output grid.
    substeps: int, optional
        Steps per grid interval. Taken from config if not given.

    Returns
    -------
    CoefficientTrack
        Integrated coefficients (no jets).
    """
    if substeps is None:
        substeps = config.rk4_substeps

    coarse = curvatures_on(source, grid.samples)
    closed = coefficient_track(family, coarse, constants, grid)

    y = np.zeros((grid.n, 3))
    fine_s = np.linspace(grid.s0, grid.s1, 2 * substeps * (grid.n - 1) + 1)

    system = _linear_system(closed.case_tag, coarse.k_g, coarse.k_n, coarse.tau_g)
    if system is not None:
        fine = curvatures_on(source, fine_s)
        state, a_rows, b_rows = _linear_system(closed.case_tag, fine.k_g, fine.k_n, fine.tau_g)
        a_fine = np.ascontiguousarray(np.moveaxis(np.array(a_rows, dtype=float), -1, 0))
        b_fine = np.ascontiguousarray(np.array(b_rows, dtype=float).T)
        y0 = np.ascontiguousarray(closed.y[0, list(state)])

        solution = quad.rk4_linear(a_fine, b_fine, y0, grid.spacing, substeps)
        y[:, list(state)] = solution

    y = _complete(closed.case_tag, y, coarse, grid.spacing)

    return CoefficientTrack(closed.family, grid, closed.case_tag + ':rk4', closed.constants, y)


_LINE_CONDITIONS = {'geodesic': 'k_g', 'asymptotic': 'k_n', 'principal': 'tau_g'}


def corollary_gamma(family, line_type, frame, constants, grid):
    """Printed parametrisation of an associated helix of a geodesic, asymptotic or principal line.

    Parameters
    ----------
    family: HelixFamily, str
        Family or its tag.
    line_type: str
        'geodesic', 'asymptotic' or 'principal'.
    frame: DarbouxFrame
        Frame of the base curve on the grid.
    constants: FamilyConstants, None
        Integration constants.
    grid: Grid
        Sampling grid.

    Returns
    -------
    numpy.ndarray[Any, dtype[float]]
        gamma sampled on the grid, shape (n, 3).

    Raises
    ------
    HypothesisViolationError
        If the base curve is not a line of the given type.
    """
    family = HelixFamily.from_tag(family)
    if constants is None:
        constants = FamilyConstants()
    if line_type not in _LINE_CONDITIONS:
        raise ConfigError(f"unknown line type '{line_type}'")

    name = _LINE_CONDITIONS[line_type]
    values = {'k_g': frame.k_g, 'k_n': frame.k_n, 'tau_g': frame.tau_g}
    if np.max(np.abs(values[name])) > config.zero_tol:
        raise HypothesisViolationError(f"base curve is not a {line_type} line ({name} does not vanish)")

    k_g, k_n, tau_g = values['k_g'], values['k_n'], values['tau_g']
    s = grid.samples - grid.s0
    zero = np.zeros(grid.n)
    key = (family.tag, line_type)

    if key == ('hcc1', 'principal'):
        y = (zero, zero, zero + 1)
    elif key == ('hcc2', 'asymptotic'):
        c1 = constants['c1']
        y = (c1 * tau_g / k_g, zero, zero + c1)
    elif key == ('hcc2', 'principal'):
        y = (zero, zero, zero + constants['c1'])
    elif key == ('hcc3', 'geodesic'):
        c2 = constants['c2']
        y = (-c2 * tau_g / k_n, zero + c2, zero)
    elif key == ('hcc3', 'principal'):
        y = (zero, zero + constants['c2'], zero)
    elif key == ('rns1', 'asymptotic'):
        y = (zero, 1 / k_g, constants['c3'] - quad.cumulative_integral(tau_g / k_g, grid))
    elif key == ('rns1', 'principal'):
        c3 = constants['c3']
        y = (zero, (1 - c3 * k_n) / k_g, zero + c3)
    elif key == ('rns3', 'geodesic'):
        c8 = constants['c8_rns3']
        y = (c8 - s, -(c8 - s) * k_n / tau_g, zero)
    elif key == ('rns3', 'asymptotic'):
        y = (constants['c8_rns3'] - s, zero, zero)
    elif key == ('icc1', 'geodesic'):
        y = (zero, quad.cumulative_integral(tau_g / k_n, grid) + constants['c8_icc1'], 1 / k_n)
    elif key == ('icc1', 'principal'):
        c8 = constants['c8_icc1']
        y = (zero, zero + c8, (1 - c8 * k_g) / k_n)
    elif key == ('icc2', 'geodesic'):
        y = (constants['c9'] - s, zero, zero)
    elif key == ('icc2', 'asymptotic'):
        c9 = constants['c9']
        y = (c9 - s, zero, (c9 - s) * k_g / tau_g)
    else:
        raise ConfigError(f"no closed parametrisation for {family.tag} on a {line_type} line")

    alpha, t, v, u = (vec.value(0) for vec in (frame.alpha, frame.t, frame.v, frame.u))

    return alpha + y[0][:, None] * t + y[1][:, None] * v + y[2][:, None] * u
