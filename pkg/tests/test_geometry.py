import unittest
import numpy as np

from darboux_helix.core import geometry as geo
from darboux_helix.core.errors import (GridError, ConfigError, MissingConstantError,
                                       DegenerateParametrizationError)


def cylinder_curve():
    """Geodesic helix on the unit cylinder, normal from the patch."""
    surface = geo.SurfacePatch.from_text(['sin(u)', 'cos(u)', 'v'])
    u = geo.expr.from_text('s/sqrt(2)')

    return geo.OrientedSurfaceCurve(None, geo.SurfaceNormal(surface, u, u))


class TestGrid(unittest.TestCase):

    def test_samples(self):
        grid = geo.Grid(0, 8 * np.pi, 2001)

        self.assertEqual(len(grid.samples), 2001)
        self.assertAlmostEqual(grid.spacing, 8 * np.pi / 2000)
        self.assertEqual(grid.samples[-1], 8 * np.pi)

    def test_invalid(self):
        """Reversed bounds, even counts and too few samples are rejected."""
        for args in ((1, 0, 5), (0, 1, 6), (0, 1, 3), (0, np.inf, 5)):
            with self.assertRaises(GridError, msg=str(args)):
                geo.Grid(*args)

    def test_refined(self):
        grid = geo.Grid(0, 1, 5).refined(4)

        self.assertEqual(grid, geo.Grid(0, 1, 17))

    def test_default_count(self):
        self.assertEqual(geo.Grid(0, 1).n, geo.config.grid_n)


class TestSurfaces(unittest.TestCase):

    def test_cylinder_normal(self):
        """The written orientation of the cylinder gives the inward normal."""
        surface = geo.SurfacePatch.from_text(['sin(u)', 'cos(u)', 'v'])

        np.testing.assert_allclose(geo.surface_normal(surface, 0., 0.), [0., -1., 0.], atol=1e-15)
        np.testing.assert_allclose(geo.surface_normal(surface, np.pi / 2, 3.), [-1., 0., 0.], atol=1e-15)

    def test_partials(self):
        surface = geo.SurfacePatch.from_text(['v*cos(u)', 'v*sin(u)', 'u'])
        phi_u, phi_v = surface.partials(0., 2.)

        np.testing.assert_allclose(phi_u.value(0), [0., 2., 1.], atol=1e-15)
        np.testing.assert_allclose(phi_v.value(0), [1., 0., 0.], atol=1e-15)

    def test_degenerate(self):
        """Parallel partials and the pole of a sphere have no normal."""
        flat = geo.SurfacePatch.from_text(['u+v', 'u+v', 'u+v'])
        sphere = geo.SurfacePatch.from_text(['cos(u)*cos(v)', 'sin(u)*cos(v)', 'sin(v)'])

        with self.assertRaises(DegenerateParametrizationError):
            geo.surface_normal(flat, 0.3, 0.2)
        with self.assertRaises(DegenerateParametrizationError):
            geo.surface_normal(sphere, 0.3, np.pi / 2)

    def test_component_count(self):
        with self.assertRaises(ConfigError):
            geo.SurfacePatch.from_text(['u', 'v'])
        with self.assertRaises(ConfigError):
            geo.SpaceCurve.from_text(['s'])

    def test_curve_point(self):
        """Position and three derivatives of a circular helix."""
        helix = geo.SpaceCurve.from_text(['cos(s)', 'sin(s)', 's'])
        d0, d1, d2, d3 = geo.curve_point(helix, 0., 3)

        np.testing.assert_allclose(d0, [1., 0., 0.], atol=1e-15)
        np.testing.assert_allclose(d1, [0., 1., 1.], atol=1e-15)
        np.testing.assert_allclose(d2, [-1., 0., 0.], atol=1e-15)
        np.testing.assert_allclose(d3, [0., -1., 0.], atol=1e-15)

    def test_path_curve_matches_closed_form(self):
        """phi(u(s), v(s)) on the cylinder is the helix written out."""
        s = np.linspace(0, 1, 5)
        jets = cylinder_curve().alpha_jets(s, 2)
        r = 1 / np.sqrt(2)

        expected = np.stack([np.sin(r * s), np.cos(r * s), r * s], axis=-1)
        np.testing.assert_allclose(jets.value(0), expected, atol=1e-15)
        np.testing.assert_allclose(np.linalg.norm(jets.value(1), axis=-1), 1., atol=1e-15)

    def test_curve_required_for_analytic_normal(self):
        normal = geo.AnalyticNormal(geo.SpaceCurve.from_text(['0', '0', '1']))

        with self.assertRaises(ConfigError):
            geo.OrientedSurfaceCurve(None, normal)


class TestValidation(unittest.TestCase):

    def test_cylinder_passes(self):
        report = geo.validate_surface_curve(cylinder_curve(), geo.Grid(0, 8 * np.pi, 201))

        self.assertTrue(report.passed)
        self.assertLess(report.unit_speed_dev, 1e-12)
        self.assertLess(report.normality_dev, 1e-12)
        self.assertTrue(report.as_dict()['passed'])

    def test_not_unit_speed(self):
        alpha = geo.SpaceCurve.from_text(['2*s', '0', '0'])
        normal = geo.AnalyticNormal(geo.SpaceCurve.from_text(['0', '0', '1']))
        report = geo.validate_surface_curve(geo.OrientedSurfaceCurve(alpha, normal), geo.Grid(0, 1, 5))

        self.assertFalse(report.passed)
        self.assertAlmostEqual(report.unit_speed_dev, 1.)

    def test_not_normal(self):
        """A normal with a tangential component fails normality and unit length is reported apart."""
        alpha = geo.SpaceCurve.from_text(['s', '0', '0'])
        normal = geo.AnalyticNormal(geo.SpaceCurve.from_text(['0.6', '0', '0.8']))
        report = geo.validate_surface_curve(geo.OrientedSurfaceCurve(alpha, normal), geo.Grid(0, 1, 5))

        self.assertFalse(report.passed)
        self.assertAlmostEqual(report.normality_dev, 0.6)
        self.assertAlmostEqual(report.normal_length_dev, 0., delta=1e-15)


class TestFamilyConstants(unittest.TestCase):

    def test_lookup_and_default(self):
        constants = geo.FamilyConstants({'c4': -1}, default=2.)

        self.assertEqual(constants['c4'], -1.)
        self.assertEqual(constants['c5'], 2.)
        self.assertEqual(constants.resolve(['c4', 'c13']), {'c4': -1., 'c13': 2.})

    def test_bare_c8_is_ambiguous(self):
        with self.assertRaises(ConfigError) as context:
            geo.FamilyConstants({'c8': 1})

        self.assertIn('c8_rns3', str(context.exception))

    def test_unknown_name(self):
        with self.assertRaises(ConfigError):
            geo.FamilyConstants({'c14': 1})
        with self.assertRaises(ConfigError):
            geo.FamilyConstants()['k']

    def test_missing_without_default(self):
        constants = geo.FamilyConstants({'c1': 1}, default=None)

        with self.assertRaises(MissingConstantError):
            constants['c2']

    def test_updated_keeps_original(self):
        constants = geo.FamilyConstants({'c1': 1}, default=None)
        updated = constants.updated({'c2': 3})

        self.assertEqual(updated.values, {'c1': 1., 'c2': 3.})
        self.assertEqual(constants.values, {'c1': 1.})
        self.assertIsNone(updated.default)


if __name__ == '__main__':
    unittest.main()
