"""DARBOUX HELIX
Darboux frames, special surface curves and their associated helices

This module contains the numerical certification of associated helices: Lancret test on the
Frenet data of gamma, the fitted helix axis, alignment of gamma's tangent with the base frame
and of its binormal with the unit Darboux field, plus the sweep that compares base-curve
classifications against helix verdicts.
"""
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from darboux_helix.core import frames as frm
from darboux_helix.core import classify as cls
from darboux_helix.core import associated as asc
from darboux_helix.core import quadrature as quad
from darboux_helix.core.errors import KernelError, GridError
from darboux_helix.config.helpers import get_config


# load configuration
config = get_config()

# base-curve predicate that each family group is equivalent to
GROUP_PREDICATES = {'HCC': 'helical', 'RNS': 'relatively_normal_slant', 'ICC': 'isophote'}


@dataclass(frozen=True)
class HelixReport:
    """Evidence that an associated curve is a general helix.

    Attributes
    ----------
    family: HelixFamily
        Family of the curve.
    lancret: ConstancyReport
        Constancy of tau / kappa of gamma.
    axis: AxisFit
        Fit of the Frenet-Darboux direction (tau T + kappa B) / sqrt(kappa^2 + tau^2).
    tangent_cosine: ConstancyReport
        Constancy of <T_gamma, xi> along the curve.
    alignment: float
        max (1 - |<T_gamma, X>|) with X the designated base-frame field.
    binormal: float
        max (1 - |<B_gamma, D>|) with D the unit Darboux field of the family.
    sign_consistent: bool
        Whether <T_gamma, X> keeps one sign.
    kappa: numpy.ndarray[Any, dtype[float]]
        Curvature of gamma.
    tau: numpy.ndarray[Any, dtype[float]]
        Torsion of gamma.
    verdict: bool
        Lancret passes, <T_gamma, xi> is constant and both alignments are within tolerance.
    """
    family: asc.HelixFamily
    lancret: cls.ConstancyReport
    axis: cls.AxisFit
    tangent_cosine: cls.ConstancyReport
    alignment: float
    binormal: float
    sign_consistent: bool
    kappa: np.ndarray = field(repr=False)
    tau: np.ndarray = field(repr=False)
    verdict: bool = False

    @property
    def xi(self):
        """Helix axis."""
        return self.axis.zeta

    @property
    def theta(self):
        """Angle between the tangent of gamma and the axis, cos(theta) = <T_gamma, xi>."""
        return float(np.arccos(np.clip(self.tangent_cosine.mean, -1, 1)))

    def as_dict(self):
        return {'family': self.family.tag, 'verdict': self.verdict, 'lancret': self.lancret.as_dict(),
                'axis': self.axis.as_dict(), 'theta': self.theta, 'tangent_cosine': self.tangent_cosine.as_dict(),
                'alignment': self.alignment, 'binormal': self.binormal, 'sign_consistent': self.sign_consistent}


def _certify(family, frenet, field_vectors, unit_field, rel_tol, alignment_tol, binormal_tol):
    """Helix checks of a Frenet track against the designated base field and the unit Darboux field."""
    if alignment_tol is None:
        alignment_tol = config.alignment_tol
    if binormal_tol is None:
        binormal_tol = config.binormal_tol

    lancret = cls.lancret_report(frenet, rel_tol=rel_tol)

    kappa, tau = frenet.kappa, frenet.tau
    direction = (tau[:, None] * frenet.t + kappa[:, None] * frenet.b) / np.sqrt(kappa**2 + tau**2)[:, None]
    axis = cls.fit_axis(direction, reference=frenet.t[0])
    tangent_cosine = cls.constancy(frenet.t @ axis.zeta, rel_tol=rel_tol)

    cos_x = np.sum(frenet.t * field_vectors, axis=-1)
    alignment = float(np.max(1 - np.abs(cos_x)))
    sign_consistent = bool(np.all(cos_x > 0) or np.all(cos_x < 0))

    binormal = float(np.max(1 - np.abs(np.sum(frenet.b * unit_field, axis=-1))))

    verdict = (lancret.verdict and tangent_cosine.verdict and alignment <= alignment_tol
               and binormal <= binormal_tol)

    return HelixReport(family, lancret, axis, tangent_cosine, alignment, binormal, sign_consistent, kappa, tau,
                       bool(verdict))


def helix_report(assoc, rel_tol=None, alignment_tol=None, binormal_tol=None):
    """Certify that an associated curve is a general helix aligned with the base frame.

    Parameters
    ----------
    assoc: AssociatedCurve
        Regular associated curve with jets of order three or more.
    rel_tol: float, optional
        Relative tolerance of the Lancret constancy test.
    alignment_tol: float, optional
        Tolerance on the tangent alignment.
    binormal_tol: float, optional
        Tolerance on the binormal alignment.

    Returns
    -------
    HelixReport
        All checks and the verdict.

    Raises
    ------
    CurvatureVanishesError
        If the curvature of gamma drops below the zero threshold.
    VanishingFieldError
        If the family's Darboux field vanishes somewhere.
    """
    family = assoc.family
    gamma = assoc.gamma
    frenet = frm.frenet_from_derivatives(gamma.value(1), gamma.value(2), gamma.value(3), s=assoc.s,
                                         allow_undefined=True)
    field_vectors = assoc.frame.field(family.field).value(0)
    unit_field = cls.darboux_field(assoc.frame, family.darboux_kind).unit

    return _certify(family, frenet, field_vectors, unit_field, rel_tol, alignment_tol, binormal_tol)


def _table_vectors(table, name):
    return np.stack([np.asarray(table[name + c], dtype=float) for c in 'xyz'], axis=-1)


def sampled_helix_report(family, points, frame_table, trim=6, rel_tol=None, alignment_tol=None,
                         binormal_tol=None):
    """Certify a sampled associated curve, such as a polyline read back from an export.

    Derivatives of gamma come from nested five-point stencils. The one-sided stencils at the
    ends lose accuracy with every nesting, so `trim` samples are dropped on both sides.

    Parameters
    ----------
    family: HelixFamily, str
        Family of the curve.
    points: numpy.ndarray[Any, dtype[float]]
        Points of gamma, shape (n, 3).
    frame_table: dict
        Base frame columns on the same samples, as written to frames.csv.
    trim: int, optional
        Samples dropped at each end.
    rel_tol: float, optional
        Relative tolerance of the constancy tests.
    alignment_tol: float, optional
        Tolerance on the tangent alignment.
    binormal_tol: float, optional
        Tolerance on the binormal alignment.

    Returns
    -------
    HelixReport
        All checks and the verdict on the trimmed samples.

    Raises
    ------
    GridError
        If the samples are not uniform, do not match the table, or too few remain after trimming.
    """
    family = asc.HelixFamily.from_tag(family)
    points = np.asarray(points, dtype=float)
    s = np.asarray(frame_table['s'], dtype=float)
    if len(points) != len(s):
        raise GridError(f"curve has {len(points)} points, frame table has {len(s)} rows")
    if len(s) < 2 * trim + 5:
        raise GridError(f"{len(s)} samples leave fewer than 5 after trimming {trim} at each end")

    h = (s[-1] - s[0]) / (len(s) - 1)
    if not np.allclose(np.diff(s), h, rtol=1e-9, atol=0):
        raise GridError("sampled curve needs uniformly spaced samples")

    derivatives = []
    current = points
    for _ in range(3):
        current = np.stack([quad.five_point_derivative(np.ascontiguousarray(current[:, i]), h)
                            for i in range(3)], axis=-1)
        derivatives.append(current)

    keep = slice(trim, len(s) - trim)
    d1, d2, d3 = (d[keep] for d in derivatives)
    frenet = frm.frenet_from_derivatives(d1, d2, d3, s=s[keep], allow_undefined=True)

    t, v, u = (_table_vectors(frame_table, name)[keep] for name in 'TVU')
    field_vectors = {'T': t, 'V': v, 'U': u}[family.field]
    unit_field = cls.darboux_field_samples(t, v, u, frame_table['k_g'][keep], frame_table['k_n'][keep],
                                           frame_table['tau_g'][keep], family.darboux_kind).unit

    return _certify(family, frenet, field_vectors, unit_field, rel_tol, alignment_tol, binormal_tol)


def _base_verdict(classification, group):
    return getattr(classification, GROUP_PREDICATES[group]).verdict


def equivalence_sweep(fixtures, families=None, logger=None):
    """Compare base-curve classifications with the helix verdicts of their associated curves.

    Parameters
    ----------
    fixtures: iterable[tuple]
        Tuples (name, curve, grid, constants) of validated surface curves.
    families: list[HelixFamily], optional
        Families to try, all nine if not given.
    logger: logging.Logger, optional
        Instance of the logging library.

    Returns
    -------
    pandas.DataFrame
        One row per (fixture, group) with columns fixture, group, base_verdict, families,
        helix_verdicts, skipped and agree. `agree` is None when no family of the group
        could be constructed.
    """
    if families is None:
        families = list(asc.HelixFamily)
    families = [asc.HelixFamily.from_tag(f) for f in families]

    rows = []
    for name, curve, grid, constants in fixtures:
        frame = frm.darboux_frame(curve, grid.samples)
        classification = cls.classify_curve(frame)

        for group in GROUP_PREDICATES:
            base = bool(_base_verdict(classification, group))
            built, verdicts, skipped = [], [], []

            for family in [f for f in families if f.group == group]:
                try:
                    assoc = asc.construct(family, frame, constants, grid)
                    report = helix_report(assoc)
                except KernelError as e:
                    skipped.append(f"{family.tag}({type(e).__name__})")
                    if logger is not None:
                        logger.extra(f"{name}: {family.tag} skipped, {e}")
                    continue

                built.append(family.tag)
                verdicts.append(report.verdict)

            agree = None if len(verdicts) == 0 else all(v == base for v in verdicts)
            rows.append({'fixture': name, 'group': group, 'base_verdict': base, 'families': ';'.join(built),
                         'helix_verdicts': ';'.join(str(v).lower() for v in verdicts),
                         'skipped': ';'.join(skipped), 'agree': agree})

    return pd.DataFrame(rows, columns=['fixture', 'group', 'base_verdict', 'families', 'helix_verdicts',
                                       'skipped', 'agree'])
