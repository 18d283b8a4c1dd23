import unittest
import numpy as np
from scipy.spatial.transform import Rotation

from darboux_helix.api.scene import SceneConfig, builtin_names
from darboux_helix.core import classify as cls
from darboux_helix.core import associated as asc
from darboux_helix.core import frames as frm
from darboux_helix.core import geometry as geo
from darboux_helix.core.errors import (NonFiniteError, GridError, CurvatureVanishesError,
                                       HypothesisViolationError, VanishingFieldError)


def scene_frame(name):
    scene = SceneConfig.load(name)

    return frm.darboux_frame(scene.curve, scene.grid.samples)


def verdicts(classification):
    """Every verdict of a classification, for comparing two runs."""
    out = {'lines': classification.lines,
           'helical': classification.helical.verdict,
           'relatively_normal_slant': classification.relatively_normal_slant.verdict,
           'isophote': classification.isophote.verdict}
    out.update({kind: (None if result is None else result.verdict)
                for kind, result in classification.slant_helix.items()})

    return out


class TestConstancy(unittest.TestCase):

    def test_constant(self):
        report = cls.constancy(np.full(11, -3.))

        self.assertTrue(report.verdict)
        self.assertEqual(report.mean, -3.)
        self.assertEqual(report.stddev, 0.)
        self.assertNotIn('values', report.as_dict())

    def test_ramp(self):
        self.assertFalse(cls.constancy(np.linspace(0, 1e-3, 11)).verdict)

    def test_relative_scale(self):
        """Deviations are measured against max(1, |mean|)."""
        f = 1e6 + np.linspace(-0.1, 0.1, 11)

        self.assertTrue(cls.constancy(f, rel_tol=1e-6).verdict)
        self.assertFalse(cls.constancy(f - 1e6, rel_tol=1e-6).verdict)

    def test_outlier(self):
        """One spike fails the max deviation bound even with a small stddev."""
        f = np.zeros(10001)
        f[5000] = 5e-5

        report = cls.constancy(f, rel_tol=1e-6)
        self.assertLess(report.stddev, 1e-6)
        self.assertFalse(report.verdict)

    def test_invalid_input(self):
        with self.assertRaises(NonFiniteError):
            cls.constancy(np.array([1., 1., np.inf, 1., 1.]))
        with self.assertRaises(GridError):
            cls.constancy(np.ones(4))


class TestLinesAndInvariants(unittest.TestCase):
    def setUp(self):
        self.cylinder = scene_frame('cylinder-geodesic')
        self.helicoid = scene_frame('helicoid-asymptotic')

    def test_line_flags(self):
        cylinder = cls.pointwise_predicates(self.cylinder)
        helicoid = cls.pointwise_predicates(self.helicoid)

        self.assertEqual((cylinder.is_geodesic, cylinder.is_asymptotic, cylinder.is_principal_line),
                         (True, False, False))
        self.assertEqual((helicoid.is_geodesic, helicoid.is_asymptotic, helicoid.is_principal_line),
                         (False, True, False))

    def test_rns_function_cylinder(self):
        """f = -1 on the geodesic cylinder helix."""
        f = cls.rns_function(self.cylinder)

        np.testing.assert_allclose(f, -1., atol=1e-8)
        self.assertTrue(cls.relatively_normal_slant_helix_test(self.cylinder).verdict)

    def test_rns_function_helicoid(self):
        np.testing.assert_allclose(cls.rns_function(self.helicoid), 0., atol=1e-8)

    def test_isophote_function_cylinder(self):
        """cot(sigma) = 0 on the geodesic cylinder helix."""
        cot_sigma = cls.isophote_function(self.cylinder)

        np.testing.assert_allclose(cot_sigma, 0., atol=1e-8)
        self.assertTrue(cls.isophote_test(self.cylinder).verdict)

    def test_isophote_needs_normal_curvature(self):
        with self.assertRaises(HypothesisViolationError):
            cls.isophote_function(self.helicoid)

    def test_rns_needs_geodesic_curvature_or_torsion(self):
        """A straight line in the plane has k_g = tau_g = 0."""
        alpha = geo.SpaceCurve.from_text(['s', '0', '0'])
        normal = geo.AnalyticNormal(geo.SpaceCurve.from_text(['0', '0', '1']))
        frame = frm.darboux_frame(geo.OrientedSurfaceCurve(alpha, normal), np.linspace(0, 1, 5))

        with self.assertRaises(HypothesisViolationError):
            cls.rns_function(frame)


class TestLancret(unittest.TestCase):
    def setUp(self):
        self.grid = geo.Grid(0, 6, 301)

    def test_helix(self):
        report = cls.lancret_test(geo.SpaceCurve.from_text(['cos(s)', 'sin(s)', '2*s']), self.grid)

        self.assertTrue(report.verdict)
        self.assertAlmostEqual(report.mean, 2., delta=1e-12)

    def test_not_a_helix(self):
        report = cls.lancret_test(geo.SpaceCurve.from_text(['cos(s)', 'sin(s)', 's^2']), self.grid)

        self.assertFalse(report.verdict)

    def test_line(self):
        with self.assertRaises(CurvatureVanishesError):
            cls.lancret_test(geo.SpaceCurve.from_text(['s', 's', 's']), self.grid)


class TestDarbouxFields(unittest.TestCase):

    def test_cylinder_fields(self):
        """D_n = -k_n V and D_r = tau_g T on the geodesic cylinder helix."""
        frame = scene_frame('cylinder-geodesic')

        normal = cls.darboux_field(frame, 'n')
        rectifying = cls.darboux_field(frame, 'rectifying')
        np.testing.assert_allclose(normal.vectors, -0.5 * frame.v.value(0), atol=1e-9)
        np.testing.assert_allclose(normal.unit, -frame.v.value(0), atol=1e-9)
        np.testing.assert_allclose(rectifying.unit, -frame.t.value(0), atol=1e-9)

    def test_vanishing(self):
        """The osculating field tau_g T - k_n V vanishes on a plane circle."""
        frame = scene_frame('plane-circle')

        with self.assertRaises(VanishingFieldError):
            cls.darboux_field(frame, 'o')

    def test_slant_helix(self):
        frame = scene_frame('cylinder-geodesic')
        result = cls.darboux_slant_helix_test(frame, 'normal')

        self.assertTrue(result.verdict)
        np.testing.assert_allclose(np.abs(result.fit.zeta), [0., 0., 1.], atol=1e-8)
        self.assertAlmostEqual(abs(result.fit.cos_angle_mean), 1 / np.sqrt(2), delta=1e-8)

    def test_not_slant_helix(self):
        frame = scene_frame('twisted-cubic-control')

        self.assertFalse(cls.darboux_slant_helix_test(frame, 'rectifying').verdict)


class TestFitAxis(unittest.TestCase):

    @staticmethod
    def cone(axis, angle, n=60):
        """Unit vectors at a fixed angle around an axis."""
        e1 = np.cross(axis, [1., 0., 0.] if abs(axis[0]) < 0.9 else [0., 1., 0.])
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(axis, e1)
        t = np.linspace(0, 2 * np.pi, n, endpoint=False)[:, None]

        return np.cos(angle) * axis + np.sin(angle) * (np.cos(t) * e1 + np.sin(t) * e2)

    def test_recovers_cone_axis(self):
        axis = np.array([1., 2., 2.]) / 3
        fit = cls.fit_axis(self.cone(axis, 0.7), reference=axis)

        np.testing.assert_allclose(fit.zeta, axis, atol=1e-12)
        self.assertAlmostEqual(fit.angle, 0.7, delta=1e-12)
        self.assertLess(fit.angle_std, 1e-12)
        self.assertFalse(fit.low_confidence)

    def test_rotation_equivariance(self):
        """Rotating the vectors rotates the fitted axis."""
        rng = np.random.default_rng(99)
        rotations = Rotation.from_rotvec(rng.normal(size=(200, 3))).as_matrix()
        for rot in rotations:
            axis = rng.normal(size=3)
            axis /= np.linalg.norm(axis)
            dirs = self.cone(axis, rng.uniform(0.3, 1.3), n=int(rng.integers(20, 80)))

            fit = cls.fit_axis(dirs, reference=axis)
            fit_rot = cls.fit_axis(dirs @ rot.T, reference=rot @ axis)

            np.testing.assert_allclose(fit_rot.zeta, rot @ fit.zeta, atol=1e-9)
            self.assertAlmostEqual(fit_rot.cos_angle_mean, fit.cos_angle_mean, delta=1e-9)

    def test_sign_without_reference(self):
        """Without a reference the mean cosine is made non-negative."""
        axis = np.array([0., 0., 1.])
        fit = cls.fit_axis(-self.cone(axis, 0.5))

        self.assertGreaterEqual(fit.cos_angle_mean, 0.)
        np.testing.assert_allclose(fit.zeta, -axis, atol=1e-12)

    def test_isotropic(self):
        dirs = np.vstack([np.eye(3), -np.eye(3)])
        fit = cls.fit_axis(dirs)

        self.assertTrue(fit.low_confidence)

    def test_too_few(self):
        with self.assertRaises(GridError):
            cls.fit_axis(np.eye(3)[:2])


class TestClassifyCurve(unittest.TestCase):

    def test_cylinder(self):
        classification = cls.classify_curve(scene_frame('cylinder-geodesic'))

        self.assertTrue(classification.helical.verdict)
        self.assertEqual(classification.helical.basis, 'lancret')
        self.assertTrue(classification.relatively_normal_slant.verdict)
        self.assertTrue(classification.isophote.verdict)
        self.assertTrue(classification.slant_helix['normal'].verdict)

    def test_helicoid_falls_back_to_fit(self):
        """k_n = 0 rules out the isophote invariant; the direct fit of U decides."""
        classification = cls.classify_curve(scene_frame('helicoid-asymptotic'))

        self.assertEqual(classification.isophote.basis, 'axis_fit')
        self.assertTrue(classification.helical.verdict)
        self.assertTrue(classification.relatively_normal_slant.verdict)

    def test_control(self):
        classification = cls.classify_curve(scene_frame('twisted-cubic-control'))

        self.assertFalse(classification.helical.verdict)

    def test_as_dict(self):
        out = cls.classify_curve(scene_frame('plane-circle')).as_dict()

        self.assertEqual(set(out), {'lines', 'helical', 'relatively_normal_slant_helix', 'isophote',
                                    'darboux_slant_helix'})
        self.assertIsNone(out['darboux_slant_helix']['osculating'])
        self.assertTrue(out['lines']['is_principal_line'])


class TestSyntheticStreams(unittest.TestCase):
    """Invariants evaluated on curvature streams given directly as expressions."""

    def setUp(self):
        self.s = np.linspace(0, 1, 101)

    def track(self, k_g, k_n, tau_g):
        return asc.SyntheticCurvatures.from_text(k_g, k_n, tau_g).curvature_track(self.s)

    def test_rns_varying_torsion(self):
        """k_g = k_n = 1 with tau_g = s gives f = -s^2 / (1 + s^2)^(3/2)."""
        track = self.track('1', '1', 's')

        np.testing.assert_allclose(cls.rns_function(track), -self.s**2 / (1 + self.s**2)**1.5, atol=1e-12)
        self.assertFalse(cls.relatively_normal_slant_helix_test(track).verdict)

    def test_isophote_constant_stream(self):
        report = cls.isophote_test(self.track('1', '1', '0'))

        self.assertTrue(report.verdict)
        self.assertAlmostEqual(report.mean, 1., delta=1e-12)

    def test_isophote_varying_torsion(self):
        """k_g = 0, k_n = 1, tau_g = s gives cot(sigma) = (1 + s^2)^(-3/2)."""
        track = self.track('0', '1', 's')

        np.testing.assert_allclose(cls.isophote_function(track), (1 + self.s**2)**-1.5, atol=1e-12)
        self.assertFalse(cls.isophote_test(track).verdict)

    def test_twisted_cubic(self):
        report = cls.lancret_test(geo.SpaceCurve.from_text(['s', 's^2', 's^3']), geo.Grid(0.5, 2, 301))

        self.assertFalse(report.verdict)


class TestFixtureSuite(unittest.TestCase):
    """Properties that hold on every built-in scene."""

    @classmethod
    def setUpClass(cls):
        cls.frames = {}
        for name in builtin_names():
            scene = SceneConfig.load(name)
            cls.frames[name] = (scene.grid, frm.darboux_frame(scene.curve, scene.grid.samples))

    def test_characterisations_match_slant_helices(self):
        """Helical, relatively normal-slant and isophote verdicts match the D_n, D_r and D_o slant helix tests."""
        pairs = (('helical', 'normal'), ('relatively_normal_slant', 'rectifying'), ('isophote', 'osculating'))
        compared = 0

        for name, (_, frame) in self.frames.items():
            classification = cls.classify_curve(frame)
            for predicate, kind in pairs:
                slant = classification.slant_helix[kind]
                if slant is None:
                    continue
                self.assertEqual(getattr(classification, predicate).verdict, slant.verdict, msg=f"{name} {kind}")
                compared += 1

        # only the osculating field of the plane circle vanishes
        self.assertEqual(compared, 3 * len(self.frames) - 1)

    def test_verdicts_survive_refinement(self):
        """Twice the samples on the same range change no verdict."""
        for name, (grid, frame) in self.frames.items():
            scene = SceneConfig.load(name)
            fine = frm.darboux_frame(scene.curve, grid.refined(2).samples)

            self.assertEqual(verdicts(cls.classify_curve(frame)), verdicts(cls.classify_curve(fine)), msg=name)

    def test_stated_verdicts(self):
        circle = cls.classify_curve(self.frames['plane-circle'][1])
        helicoid = cls.classify_curve(self.frames['helicoid-asymptotic'][1])
        control = cls.classify_curve(self.frames['twisted-cubic-control'][1])

        self.assertIsNone(circle.slant_helix['osculating'])
        self.assertTrue(helicoid.slant_helix['rectifying'].verdict)
        # every curve on a cylinder is an isophote with respect to the cylinder axis
        self.assertTrue(control.isophote.verdict)
        self.assertFalse(control.relatively_normal_slant.verdict)

    def test_helicoid_rectifying_field(self):
        """D_r = (T - U) / 2 on the asymptotic helix, unit field (T - U) / sqrt(2)."""
        frame = self.frames['helicoid-asymptotic'][1]
        unit = cls.darboux_field(frame, 'r').unit

        np.testing.assert_allclose(unit, (frame.t.value(0) - frame.u.value(0)) / np.sqrt(2), atol=1e-9)


if __name__ == '__main__':
    unittest.main()
