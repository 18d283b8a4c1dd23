"""DARBOUX HELIX
Darboux frames, special surface curves and their associated helices

This module contains the Darboux and Frenet frame computations.

The Darboux frame {T, V, U} of a unit speed surface curve has V = U x T and obeys
T' = k_g V + k_n U, V' = -k_g T + tau_g U, U' = -k_n T - tau_g V.
All derivatives, including those of the curvatures, come from jets, never from differencing samples.
"""
from dataclasses import dataclass

import numpy as np

from darboux_helix.core.errors import ValidationError, ZeroSpeedError, UndefinedFrameError
from darboux_helix.core.geometry import ValidationReport
from darboux_helix.config.helpers import get_config


# load configuration
config = get_config()


@dataclass(frozen=True)
class DarbouxSample:
    s: float
    t: np.ndarray
    v: np.ndarray
    u: np.ndarray
    k_g: float
    k_n: float
    tau_g: float
    dk_g: float
    dk_n: float
    dtau_g: float


@dataclass(frozen=True)
class FrenetSample:
    s: float
    t: np.ndarray
    n: np.ndarray
    b: np.ndarray
    kappa: float
    tau: float
    phi: float | None = None


class CurvatureTrack:
    """Geodesic curvature, normal curvature and geodesic torsion as jets on a set of samples.

    Parameters
    ----------
    s: numpy.ndarray[Any, dtype[float]]
        Parameter samples.
    k_g: Jet
        Geodesic curvature.
    k_n: Jet
        Normal curvature.
    tau_g: Jet
        Geodesic torsion.
    """

    def __init__(self, s, k_g, k_n, tau_g):
        self.s = np.asarray(s, dtype=float)
        self.k_g_jet = k_g
        self.k_n_jet = k_n
        self.tau_g_jet = tau_g

        return

    def __len__(self):
        return len(self.s)

    @property
    def k_g(self):
        return self.k_g_jet.v0

    @property
    def k_n(self):
        return self.k_n_jet.v0

    @property
    def tau_g(self):
        return self.tau_g_jet.v0

    @property
    def dk_g(self):
        return self.k_g_jet.v1

    @property
    def dk_n(self):
        return self.k_n_jet.v1

    @property
    def dtau_g(self):
        return self.tau_g_jet.v1

    def jets(self):
        return {'k_g': self.k_g_jet, 'k_n': self.k_n_jet, 'tau_g': self.tau_g_jet}

    def curvature_track(self):
        return self


class DarbouxFrame(CurvatureTrack):
    """Darboux frame of a surface curve sampled on a grid.

    Attributes
    ----------
    alpha: JetVector
        The curve.
    t: JetVector
        Unit tangent T = alpha'.
    v: JetVector
        Tangent-plane normal V = U x T.
    u: JetVector
        Unit surface normal U.
    """

    def __init__(self, s, alpha, t, v, u, k_g, k_n, tau_g):
        super().__init__(s, k_g, k_n, tau_g)
        self.alpha = alpha
        self.t = t
        self.v = v
        self.u = u

        return

    def field(self, name):
        """Frame field 'T', 'V' or 'U' as jets."""
        return {'T': self.t, 'V': self.v, 'U': self.u}[name]

    def sample(self, i):
        """Single-sample view at index i."""
        return DarbouxSample(float(self.s[i]), self.t.value(0)[i], self.v.value(0)[i], self.u.value(0)[i],
                             float(self.k_g[i]), float(self.k_n[i]), float(self.tau_g[i]),
                             float(self.dk_g[i]), float(self.dk_n[i]), float(self.dtau_g[i]))

    def table(self):
        """Sampled frame as a dictionary of columns."""
        columns = {'s': self.s}
        for name, vec in (('alpha', self.alpha), ('T', self.t), ('V', self.v), ('U', self.u)):
            values = vec.value(0)
            for j, axis in enumerate('xyz'):
                columns[f'{name}{axis}'] = values[:, j]
        columns['k_g'] = self.k_g
        columns['k_n'] = self.k_n
        columns['tau_g'] = self.tau_g

        return columns


class FrenetTrack:
    """Frenet frame and curvatures sampled on a set of points; NaN where the frame is undefined."""

    def __init__(self, s, t, n, b, kappa, tau, phi=None):
        self.s = np.asarray(s, dtype=float)
        self.t = t
        self.n = n
        self.b = b
        self.kappa = kappa
        self.tau = tau
        self.phi = phi

        return

    def __len__(self):
        return len(self.s)

    @property
    def defined(self):
        return np.isfinite(self.tau)

    def sample(self, i):
        phi = None if self.phi is None else float(self.phi[i])

        return FrenetSample(float(self.s[i]), self.t[i], self.n[i], self.b[i], float(self.kappa[i]),
                            float(self.tau[i]), phi)


def _check_surface_curve(d_alpha, normal):
    """Raise ValidationError unless the samples are unit speed with a unit normal field."""
    report = ValidationReport(float(np.max(np.abs(np.linalg.norm(d_alpha, axis=-1) - 1))),
                              float(np.max(np.abs(np.sum(d_alpha * normal, axis=-1)))),
                              float(np.max(np.abs(np.linalg.norm(normal, axis=-1) - 1))),
                              config.unit_tol)
    if not report.passed:
        raise ValidationError(f"surface curve failed validation: unit speed {report.unit_speed_dev:.3g}, "
                              f"normality {report.normality_dev:.3g}, "
                              f"normal length {report.normal_length_dev:.3g}", report=report)

    return None


def darboux_frame(curve, s, order=None):
    """Darboux frame and curvatures of a surface curve.

    Parameters
    ----------
    curve: OrientedSurfaceCurve
        Unit speed curve with its normal field.
    s: numpy.ndarray[Any, dtype[float]]
        Parameter samples.
    order: int, optional
        Jet order of the curve and normal. Taken from config if not given.

    Returns
    -------
    DarbouxFrame
        Frame fields and curvature jets (three orders below `order`).

    Raises
    ------
    ValidationError
        If the samples are not unit speed, not normal or the normal is not unit.
    """
    if order is None:
        order = config.jet_order

    s = np.atleast_1d(np.asarray(s, dtype=float))
    alpha = curve.alpha_jets(s, order)
    u = curve.normal_jets(s, order)

    t = alpha.differentiate()
    _check_surface_curve(t.value(0), u.value(0))

    v = u.cross(t)
    dt = t.differentiate()
    dv = v.differentiate()

    k_g = dt.dot(v)
    k_n = dt.dot(u)
    tau_g = dv.dot(u)

    return DarbouxFrame(s, alpha, t, v, u, k_g, k_n, tau_g)


def darboux_at(curve, s, order=None):
    """Darboux sample at a single parameter value."""
    return darboux_frame(curve, np.array([float(s)]), order=order).sample(0)


def darboux_residuals(frame):
    """Maximum residuals of the three Darboux equations.

    Parameters
    ----------
    frame: DarbouxFrame
        Computed frame.

    Returns
    -------
    tuple[float]
        max |T' - (k_g V + k_n U)|, max |V' + k_g T - tau_g U|, max |U' + k_n T + tau_g V|.
    """
    t, v, u = frame.t.value(0), frame.v.value(0), frame.u.value(0)
    k_g, k_n, tau_g = frame.k_g[:, None], frame.k_n[:, None], frame.tau_g[:, None]

    res_t = frame.t.value(1) - (k_g * v + k_n * u)
    res_v = frame.v.value(1) - (-k_g * t + tau_g * u)
    res_u = frame.u.value(1) - (-k_n * t - tau_g * v)

    return tuple(float(np.max(np.linalg.norm(r, axis=-1))) for r in (res_t, res_v, res_u))


def frenet_from_derivatives(d1, d2, d3, s=None, allow_undefined=False):
    """Frenet frame, curvature and torsion from the first three derivatives of any regular curve.

    Parameters
    ----------
    d1: numpy.ndarray[Any, dtype[float]]
        First derivatives, shape (n, 3).
    d2: numpy.ndarray[Any, dtype[float]]
        Second derivatives.
    d3: numpy.ndarray[Any, dtype[float]]
        Third derivatives.
    s: numpy.ndarray[Any, dtype[float]], optional
        Parameter samples, stored on the track.
    allow_undefined: bool, optional
        Put NaN in N, B and tau where the curvature vanishes instead of raising.

    Returns
    -------
    FrenetTrack
        Frame and curvatures.

    Raises
    ------
    ZeroSpeedError
        Where |d1| vanishes.
    UndefinedFrameError
        Where the curvature vanishes, unless `allow_undefined`.
    """
    d1, d2, d3 = (np.atleast_2d(np.asarray(d, dtype=float)) for d in (d1, d2, d3))
    if s is None:
        s = np.arange(len(d1), dtype=float)

    speed = np.linalg.norm(d1, axis=-1)
    if np.any(speed < config.degenerate_tol):
        raise ZeroSpeedError(f"curve derivative vanishes (min speed {np.min(speed):.3g})")

    cross = np.cross(d1, d2)
    cross_norm = np.linalg.norm(cross, axis=-1)
    kappa = cross_norm / speed**3

    undefined = kappa < config.degenerate_tol
    if np.any(undefined) and not allow_undefined:
        raise UndefinedFrameError(f"Frenet frame undefined, curvature {np.min(kappa):.3g}",
                                  kappa=float(np.min(kappa)))

    t = d1 / speed[:, None]
    with np.errstate(divide='ignore', invalid='ignore'):
        b = cross / cross_norm[:, None]
        tau = np.sum(cross * d3, axis=-1) / cross_norm**2
    n = np.cross(b, t)

    b[undefined] = np.nan
    n[undefined] = np.nan
    tau[undefined] = np.nan

    return FrenetTrack(s, t, n, b, kappa, tau)


def frenet_at(curve, s, allow_undefined=False):
    """Frenet frame of a curve with expression components (or any object with `jet_vector`).

    Parameters
    ----------
    curve: SpaceCurve, SurfacePathCurve
        The curve, not necessarily unit speed.
    s: float | numpy.ndarray[Any, dtype[float]]
        Parameter value(s).
    allow_undefined: bool, optional
        Mark straight stretches with NaN instead of raising.

    Returns
    -------
    FrenetTrack
        Frame and curvatures.
    """
    s = np.atleast_1d(np.asarray(s, dtype=float))
    jets = curve.jet_vector(s, 3)

    return frenet_from_derivatives(jets.value(1), jets.value(2), jets.value(3), s=s, allow_undefined=allow_undefined)


def phi_angle(frame, frenet):
    """Angle between V and N, continued along the samples.

    With N = cos(phi) V + sin(phi) U this gives k_g = kappa cos(phi) and k_n = kappa sin(phi),
    and the torsions are related by tau_g = tau - phi'.

    Parameters
    ----------
    frame: DarbouxFrame
        Darboux frame on the samples.
    frenet: FrenetTrack
        Frenet frame on the same samples; N must be defined everywhere.

    Returns
    -------
    numpy.ndarray[Any, dtype[float]]
        Unwrapped angle, with the first value in (-pi, pi].

    Raises
    ------
    UndefinedFrameError
        If N is undefined somewhere.
    """
    if not np.all(frenet.defined):
        raise UndefinedFrameError("phi is undefined where the curvature vanishes",
                                  kappa=float(np.min(frenet.kappa)))

    n = frenet.n
    cos_phi = np.sum(frame.v.value(0) * n, axis=-1)
    sin_phi = np.sum(frame.u.value(0) * n, axis=-1)

    phi = np.unwrap(np.arctan2(sin_phi, cos_phi))
    # put the start of the branch in (-pi, pi]
    phi = phi + ((np.pi - np.mod(np.pi - phi[0], 2 * np.pi)) - phi[0])

    return phi


def frenet_of_frame(frame, allow_undefined=False):
    """Frenet track of the base curve of a Darboux frame, with phi when it is defined everywhere."""
    alpha = frame.alpha
    frenet = frenet_from_derivatives(alpha.value(1), alpha.value(2), alpha.value(3), s=frame.s,
                                     allow_undefined=allow_undefined)
    if np.all(frenet.defined):
        frenet.phi = phi_angle(frame, frenet)

    return frenet
