import os
import tempfile
import unittest

import numpy as np

from darboux_helix.api.scene import SceneConfig
from darboux_helix.core import io as dio
from darboux_helix.core import frames as frm
from darboux_helix.core import verify as ver
from darboux_helix.core import associated as asc
from darboux_helix.core.errors import GridError


def every_other(table):
    return {name: values[::2] for name, values in table.items()}


class TestWriters(unittest.TestCase):

    def test_obj_records(self):
        curves = {'alpha': np.array([[0., 0., 0.], [1., 0.5, 0.]]), 'hcc1': np.array([[0., 1., 2.]] * 3)}

        with tempfile.TemporaryDirectory() as tmp_dir:
            file_name = dio.export_file_name(tmp_dir, 'curves', 'obj')
            dio.save_polylines_obj(file_name, curves)
            with open(file_name) as file:
                lines = file.read().splitlines()
            loaded = dio.load_polylines_obj(file_name)

        self.assertEqual(os.path.basename(file_name), 'curves.obj')
        self.assertEqual(lines[1:5], ['o alpha', 'v 0 0 0', 'v 1 0.5 0', 'l 1 2'])
        self.assertEqual(lines[-1], 'l 3 4 5')
        self.assertEqual(list(loaded), ['alpha', 'hcc1'])
        np.testing.assert_array_equal(loaded['hcc1'], curves['hcc1'])

    def test_csv_keeps_every_digit(self):
        table = {'s': np.linspace(0, 1, 7), 'k_g': np.sqrt(np.arange(7.)) / 3}

        with tempfile.TemporaryDirectory() as tmp_dir:
            file_name = dio.export_file_name(tmp_dir, 'table', 'csv')
            dio.save_table_csv(file_name, table, columns=['s', 'k_g'])
            loaded = dio.load_table_csv(file_name)

        self.assertEqual(list(loaded), ['s', 'k_g'])
        np.testing.assert_array_equal(loaded['k_g'], table['k_g'])

    def test_json_sorted(self):
        with tempfile.TemporaryDirectory() as tmp_dir:
            file_name = dio.export_file_name(tmp_dir, 'report', 'json')
            dio.save_report_json(file_name, {'b': np.float64(0.25), 'a': np.arange(3)})
            with open(file_name) as file:
                text = file.read()
            loaded = dio.load_report_json(file_name)

        self.assertLess(text.index('"a"'), text.index('"b"'))
        self.assertEqual(loaded, {'a': [0, 1, 2], 'b': 0.25})


class TestReimportedCurves(unittest.TestCase):
    """Exported curves, read back and resampled, get the verdict of the curve they came from."""

    def export_and_reload(self, name, tag):
        scene = SceneConfig.load(name)
        frame = frm.darboux_frame(scene.curve, scene.grid.samples)
        assoc = asc.construct(tag, frame, scene.constants, scene.grid)

        with tempfile.TemporaryDirectory() as tmp_dir:
            frames_file = dio.export_file_name(tmp_dir, 'frames', 'csv')
            curve_file = dio.export_file_name(tmp_dir, tag, 'csv')
            obj_file = dio.export_file_name(tmp_dir, 'curves', 'obj')

            dio.save_table_csv(frames_file, frame.table(), dio.FRAME_COLUMNS)
            dio.save_table_csv(curve_file, assoc.table(), dio.CURVE_COLUMNS)
            dio.save_polylines_obj(obj_file, {'alpha': frame.alpha.value(0), tag: assoc.points})

            frame_table = dio.load_table_csv(frames_file)
            curve_table = dio.load_table_csv(curve_file)
            polylines = dio.load_polylines_obj(obj_file)

        csv_points = np.stack([curve_table['gamma_x'], curve_table['gamma_y'], curve_table['gamma_z']], axis=-1)
        np.testing.assert_array_equal(polylines[tag], assoc.points)
        np.testing.assert_array_equal(csv_points, assoc.points)

        return assoc, frame_table, polylines[tag], csv_points

    def test_helix_stays_certified(self):
        assoc, frame_table, obj_points, csv_points = self.export_and_reload('cylinder-geodesic', 'hcc1')
        report = ver.helix_report(assoc)

        for points, table in ((obj_points, frame_table), (csv_points, frame_table),
                              (obj_points[::2], every_other(frame_table))):
            sampled = ver.sampled_helix_report('hcc1', points, table)

            self.assertTrue(sampled.verdict)
            self.assertEqual(sampled.verdict, report.verdict)
            self.assertAlmostEqual(sampled.theta, report.theta, delta=1e-6)
            self.assertLessEqual(sampled.alignment, 1e-8)

    def test_control_stays_rejected(self):
        assoc, frame_table, obj_points, _ = self.export_and_reload('twisted-cubic-control', 'hcc3')
        report = ver.helix_report(assoc)

        for points, table in ((obj_points, frame_table), (obj_points[::2], every_other(frame_table))):
            sampled = ver.sampled_helix_report('hcc3', points, table)

            self.assertFalse(sampled.lancret.verdict)
            self.assertEqual(sampled.verdict, report.verdict)

    def test_sample_checks(self):
        _, frame_table, obj_points, _ = self.export_and_reload('plane-circle', 'hcc1')

        with self.assertRaises(GridError):
            ver.sampled_helix_report('hcc1', obj_points[:-1], frame_table)
        with self.assertRaises(GridError):
            ver.sampled_helix_report('hcc1', obj_points[:16], {k: v[:16] for k, v in frame_table.items()})


if __name__ == '__main__':
    unittest.main()
