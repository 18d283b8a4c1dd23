"""DARBOUX HELIX
Darboux frames, special surface curves and their associated helices

This module contains the special-curve predicates: geodesic, asymptotic and principal lines,
general helices (Lancret ratio), relatively normal-slant helices, isophotes and D_i-Darboux slant helices.

Sampled functions are judged constant with a relative tolerance, fixed directions are fitted
from the sampled unit vectors.
"""
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sp_lin

from darboux_helix.core import frames as frm
from darboux_helix.core.errors import (NonFiniteError, GridError, CurvatureVanishesError, HypothesisViolationError,
                                       VanishingFieldError)
from darboux_helix.config.helpers import get_config


# load configuration
config = get_config()

FIELD_KINDS = {'o': 'osculating', 'n': 'normal', 'r': 'rectifying',
               'osculating': 'osculating', 'normal': 'normal', 'rectifying': 'rectifying'}


@dataclass(frozen=True)
class ConstancyReport:
    """Verdict on whether sampled values are constant."""
    values: np.ndarray = field(repr=False)
    mean: float
    stddev: float
    max_abs_dev: float
    rel_tol: float
    verdict: bool

    def as_dict(self):
        return {'mean': self.mean, 'stddev': self.stddev, 'max_abs_dev': self.max_abs_dev,
                'rel_tol': self.rel_tol, 'verdict': self.verdict}


@dataclass(frozen=True)
class LineFlags:
    is_geodesic: bool
    is_asymptotic: bool
    is_principal_line: bool

    def as_dict(self):
        return {'is_geodesic': self.is_geodesic, 'is_asymptotic': self.is_asymptotic,
                'is_principal_line': self.is_principal_line}


@dataclass(frozen=True)
class DarbouxField:
    """Darboux vector field samples, unnormalised and unit."""
    kind: str
    vectors: np.ndarray = field(repr=False)
    unit: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class AxisFit:
    """Fixed direction fitted to a set of unit vectors.

    Attributes
    ----------
    zeta: numpy.ndarray[Any, dtype[float]]
        Unit axis.
    cos_angle_mean: float
        Mean cosine of the angle between the vectors and the axis.
    angle_std: float
        Standard deviation of that angle in radians.
    low_confidence: bool
        The covariance was isotropic and the mean direction was used instead.
    """
    zeta: np.ndarray
    cos_angle_mean: float
    angle_std: float
    low_confidence: bool = False

    @property
    def angle(self):
        return float(np.arccos(np.clip(self.cos_angle_mean, -1, 1)))

    def as_dict(self):
        return {'zeta': [float(x) for x in self.zeta], 'cos_angle_mean': self.cos_angle_mean,
                'angle': self.angle, 'angle_std': self.angle_std, 'low_confidence': self.low_confidence}


@dataclass(frozen=True)
class SlantHelixResult:
    kind: str
    fit: AxisFit
    verdict: bool

    def as_dict(self):
        return {'kind': self.kind, 'verdict': self.verdict, 'axis': self.fit.as_dict()}


@dataclass
class PredicateResult:
    """Verdict of one characterisation with the evidence it rests on.

    `report` holds the theorem's constancy report when its hypothesis holds, `fit` the
    direct fit of the frame field, and `basis` names which of the two decided.
    """
    verdict: bool
    basis: str
    report: ConstancyReport | None = None
    fit: AxisFit | None = None
    note: str = ''

    def as_dict(self):
        out = {'verdict': self.verdict, 'basis': self.basis}
        if self.report is not None:
            out['report'] = self.report.as_dict()
        if self.fit is not None:
            out['axis'] = self.fit.as_dict()
        if self.note != '':
            out['note'] = self.note

        return out


@dataclass
class Classification:
    lines: LineFlags
    helical: PredicateResult
    relatively_normal_slant: PredicateResult
    isophote: PredicateResult
    slant_helix: dict

    def as_dict(self):
        return {'lines': self.lines.as_dict(),
                'helical': self.helical.as_dict(),
                'relatively_normal_slant_helix': self.relatively_normal_slant.as_dict(),
                'isophote': self.isophote.as_dict(),
                'darboux_slant_helix': {k: (None if v is None else v.as_dict()) for k, v in self.slant_helix.items()}}


def constancy(f, rel_tol=None):
    """Decide whether sampled values are constant.

    Parameters
    ----------
    f: numpy.ndarray[Any, dtype[float]]
        At least five finite samples.
    rel_tol: float, optional
        Relative tolerance. Taken from config if not given.

    Returns
    -------
    ConstancyReport
        Statistics and verdict: stddev <= rel_tol * max(1, |mean|) and
        max |f - mean| <= 10 * rel_tol * max(1, |mean|).

    Raises
    ------
    NonFiniteError
        If a sample is NaN or infinite.
    """
    if rel_tol is None:
        rel_tol = config.rel_tol

    f = np.asarray(f, dtype=float)
    if len(f) < 5:
        raise GridError(f"constancy needs at least 5 samples, got {len(f)}")
    if not np.all(np.isfinite(f)):
        raise NonFiniteError("constancy test got non-finite samples")

    mean = float(np.mean(f))
    stddev = float(np.std(f))
    max_abs_dev = float(np.max(np.abs(f - mean)))
    scale = max(1., abs(mean))
    verdict = stddev <= rel_tol * scale and max_abs_dev <= 10 * rel_tol * scale

    return ConstancyReport(f, mean, stddev, max_abs_dev, rel_tol, bool(verdict))


def is_identically_zero(values):
    return bool(np.max(np.abs(values)) <= config.zero_tol)


def pointwise_predicates(track):
    """Geodesic (k_g = 0), asymptotic (k_n = 0) and principal line (tau_g = 0) flags.

    Parameters
    ----------
    track: CurvatureTrack
        Curvatures on the grid.

    Returns
    -------
    LineFlags
        Each flag is set iff the maximum absolute curvature stays below the zero threshold.
    """
    return LineFlags(is_identically_zero(track.k_g), is_identically_zero(track.k_n),
                     is_identically_zero(track.tau_g))


def lancret_report(frenet, rel_tol=None):
    """Constancy of tau / kappa on a Frenet track.

    Raises
    ------
    CurvatureVanishesError
        If the curvature drops below the zero threshold.
    """
    if np.min(frenet.kappa) < config.zero_tol:
        raise CurvatureVanishesError(f"curvature vanishes (min kappa {np.min(frenet.kappa):.3g}), "
                                     f"tau/kappa undefined")

    return constancy(frenet.tau / frenet.kappa, rel_tol=rel_tol)


def lancret_test(curve, grid, rel_tol=None):
    """Lancret test of a space curve: is tau / kappa constant on the grid.

    Parameters
    ----------
    curve: SpaceCurve
        Any regular curve with expression components.
    grid: Grid
        Sampling grid.
    rel_tol: float, optional
        Relative tolerance of the constancy test.

    Returns
    -------
    ConstancyReport
        Report on tau / kappa.
    """
    frenet = frm.frenet_at(curve, grid.samples, allow_undefined=True)

    return lancret_report(frenet, rel_tol=rel_tol)


def rns_function(track):
    """The relatively normal-slant helix invariant f(s).

    f = (tau_g' k_g - k_g' tau_g - k_n (k_g^2 + tau_g^2)) / (k_g^2 + tau_g^2)^(3/2)

    Raises
    ------
    HypothesisViolationError
        Where k_g and tau_g vanish together.
    """
    k_g, k_n, tau_g = track.k_g, track.k_n, track.tau_g
    q = k_g**2 + tau_g**2
    if np.min(q) <= config.degenerate_tol:
        raise HypothesisViolationError("k_g and tau_g vanish together, f(s) undefined")

    f = (track.dtau_g * k_g - track.dk_g * tau_g - k_n * q) / q**1.5

    return f


def relatively_normal_slant_helix_test(track, rel_tol=None):
    """Constancy report on f(s)."""
    return constancy(rns_function(track), rel_tol=rel_tol)


def isophote_function(track):
    """The isophote invariant cot(sigma), positive branch.

    cot(sigma) = (k_n^2 / (k_n^2 + tau_g^2)^(3/2)) (tau_g / k_n)' + k_g / (k_n^2 + tau_g^2)^(1/2)

    Raises
    ------
    HypothesisViolationError
        Where k_n comes within the zero threshold.
    """
    k_g, k_n, tau_g = track.k_g, track.k_n, track.tau_g
    if np.min(np.abs(k_n)) <= config.zero_tol:
        raise HypothesisViolationError("k_n vanishes somewhere, cot(sigma) undefined")

    q = k_n**2 + tau_g**2
    d_ratio = (track.dtau_g * k_n - tau_g * track.dk_n) / k_n**2
    cot_sigma = k_n**2 / q**1.5 * d_ratio + k_g / np.sqrt(q)

    return cot_sigma


def isophote_test(track, rel_tol=None):
    """Constancy report on cot(sigma)."""
    return constancy(isophote_function(track), rel_tol=rel_tol)


def darboux_field(frame, kind):
    """Osculating, normal or rectifying Darboux vector field.

    D_o = tau_g T - k_n V, D_n = -k_n V + k_g U, D_r = tau_g T + k_g U.

    Parameters
    ----------
    frame: DarbouxFrame
        Frame on the grid.
    kind: str
        'osculating', 'normal', 'rectifying' or the first letter.

    Returns
    -------
    DarbouxField
        Unnormalised and unit samples.

    Raises
    ------
    VanishingFieldError
        If the field vanishes at some sample.
    """
    return darboux_field_samples(frame.t.value(0), frame.v.value(0), frame.u.value(0), frame.k_g, frame.k_n,
                                 frame.tau_g, kind)


def darboux_field_samples(t, v, u, k_g, k_n, tau_g, kind):
    """Darboux vector field from sampled frame vectors and curvatures, e.g. a re-imported frame table."""
    kind = FIELD_KINDS[kind]
    k_g, k_n, tau_g = (np.asarray(k, dtype=float)[:, None] for k in (k_g, k_n, tau_g))

    if kind == 'osculating':
        vectors = tau_g * t - k_n * v
    elif kind == 'normal':
        vectors = -k_n * v + k_g * u
    else:
        vectors = tau_g * t + k_g * u

    length = np.linalg.norm(vectors, axis=-1)
    if np.min(length) <= config.degenerate_tol:
        raise VanishingFieldError(f"{kind} Darboux field vanishes (min length {np.min(length):.3g})")

    return DarbouxField(kind, vectors, vectors / length[:, None])


def fit_axis(dirs, reference=None):
    """Fit the fixed direction that a set of unit vectors makes a constant angle with.

    The axis is the eigenvector of the covariance of the vectors with the smallest eigenvalue,
    the direction along which the projections vary least.

    Parameters
    ----------
    dirs: numpy.ndarray[Any, dtype[float]]
        Unit vectors, shape (n, 3), n >= 3.
    reference: numpy.ndarray[Any, dtype[float]], optional
        If given, the axis sign makes a non-negative inner product with it,
        otherwise the mean cosine is made non-negative.

    Returns
    -------
    AxisFit
        Axis, mean cosine and angle spread.
    """
    dirs = np.asarray(dirs, dtype=float)
    if len(dirs) < 3:
        raise GridError(f"axis fit needs at least 3 directions, got {len(dirs)}")

    cov = np.cov(dirs, rowvar=False, bias=True)
    eig_val, eig_vec = sp_lin.eigh(cov)

    # isotropic spread: no preferred axis, fall back to the mean direction
    low_confidence = bool(eig_val[2] - eig_val[0] <= config.degenerate_tol)
    if low_confidence:
        mean_dir = np.mean(dirs, axis=0)
        mean_norm = np.linalg.norm(mean_dir)
        zeta = mean_dir / mean_norm if mean_norm > config.degenerate_tol else np.array([0., 0., 1.])
    else:
        zeta = eig_vec[:, 0]

    zeta = zeta / np.linalg.norm(zeta)
    cos_angle = dirs @ zeta
    if reference is not None:
        if np.dot(reference, zeta) < 0:
            zeta, cos_angle = -zeta, -cos_angle
    elif np.mean(cos_angle) < 0:
        zeta, cos_angle = -zeta, -cos_angle

    # well conditioned angle also near 0 and pi
    angles = np.arctan2(np.linalg.norm(np.cross(dirs, zeta), axis=-1), cos_angle)

    return AxisFit(zeta, float(np.mean(cos_angle)), float(np.std(angles)), low_confidence)


def darboux_slant_helix_test(frame, kind, angle_tol=None):
    """D_i-Darboux slant helix test: does the unit Darboux field keep a constant angle with a fixed axis.

    Parameters
    ----------
    frame: DarbouxFrame
        Frame on the grid.
    kind: str
        Field kind, see `darboux_field`.
    angle_tol: float, optional
        Allowed angle spread in radians. Taken from config if not given.

    Returns
    -------
    SlantHelixResult
        Axis fit and verdict.
    """
    if angle_tol is None:
        angle_tol = config.angle_tol

    unit = darboux_field(frame, kind).unit
    fit = fit_axis(unit)

    return SlantHelixResult(FIELD_KINDS[kind], fit, bool(fit.angle_std <= angle_tol))


def _field_fit(frame, name, angle_tol):
    fit = fit_axis(frame.field(name).value(0))

    return fit, bool(fit.angle_std <= angle_tol)


def classify_curve(frame, frenet=None, rel_tol=None, angle_tol=None):
    """Run every predicate on a surface curve.

    The characterising theorems decide where their hypotheses hold; elsewhere the verdict
    falls back to a direct axis fit of T, V or U.

    Parameters
    ----------
    frame: DarbouxFrame
        Frame on the grid.
    frenet: FrenetTrack, optional
        Frenet track of the base curve; computed from the frame if not given.
    rel_tol: float, optional
        Relative tolerance of the constancy tests.
    angle_tol: float, optional
        Angle tolerance of the axis fits.

    Returns
    -------
    Classification
        All verdicts with their evidence.
    """
    if angle_tol is None:
        angle_tol = config.angle_tol
    if frenet is None:
        frenet = frm.frenet_of_frame(frame, allow_undefined=True)

    lines = pointwise_predicates(frame)

    # helical curve: tangent at constant angle with a fixed direction
    fit_t, verdict_t = _field_fit(frame, 'T', angle_tol)
    try:
        report = lancret_report(frenet, rel_tol=rel_tol)
        helical = PredicateResult(report.verdict, 'lancret', report=report, fit=fit_t)
    except CurvatureVanishesError as e:
        helical = PredicateResult(verdict_t, 'axis_fit', fit=fit_t, note=str(e))

    fit_v, verdict_v = _field_fit(frame, 'V', angle_tol)
    try:
        report = relatively_normal_slant_helix_test(frame, rel_tol=rel_tol)
        rns = PredicateResult(report.verdict, 'invariant', report=report, fit=fit_v)
    except HypothesisViolationError as e:
        rns = PredicateResult(verdict_v, 'axis_fit', fit=fit_v, note=str(e))

    fit_u, verdict_u = _field_fit(frame, 'U', angle_tol)
    try:
        report = isophote_test(frame, rel_tol=rel_tol)
        isophote = PredicateResult(report.verdict, 'invariant', report=report, fit=fit_u)
    except HypothesisViolationError as e:
        isophote = PredicateResult(verdict_u, 'axis_fit', fit=fit_u, note=str(e))

    slant_helix = {}
    for kind in ('osculating', 'normal', 'rectifying'):
        try:
            slant_helix[kind] = darboux_slant_helix_test(frame, kind, angle_tol=angle_tol)
        except VanishingFieldError:
            slant_helix[kind] = None

    return Classification(lines, helical, rns, isophote, slant_helix)
