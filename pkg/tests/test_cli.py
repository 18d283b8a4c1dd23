import io
import os
import json
import tempfile
import unittest
from contextlib import redirect_stdout, redirect_stderr

import yaml

from darboux_helix.api.main import main
from darboux_helix.api.scene import builtin_names
from darboux_helix.config.helpers import get_config, get_scenes_path
from darboux_helix.core import io as dio


EXPORTS = ['frames.csv', 'hcc1.csv', 'rns2.csv', 'icc1.csv', 'curves.obj', 'report.json', 'sweep.csv']


def run_cli(*argv):
    """Run the entry point, returning exit status, stdout and stderr."""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        status = main(list(argv))

    return status, out.getvalue(), err.getvalue()


class TestListBuiltins(unittest.TestCase):

    def test_sorted_names(self):
        status, out, _ = run_cli('list-builtins')
        names = [line.split(':')[0] for line in out.splitlines()]

        self.assertEqual(status, 0)
        self.assertEqual(names, sorted(names))
        self.assertEqual(names, builtin_names())
        self.assertIn('cylinder-geodesic: geodesic helix on the cylinder (sin u, cos u, v)', out.splitlines())


class TestExitCodes(unittest.TestCase):

    def test_success(self):
        status, out, err = run_cli('verify', '--scene', 'helicoid-asymptotic')
        summary = json.loads(out)

        self.assertEqual(status, 0, msg=err)
        self.assertEqual(summary['families'], {'hcc1': 'HCC1', 'rns1': 'RNS1-general', 'icc3': 'ICC3-general'})
        self.assertTrue(summary['verdict'])

    def test_partial_stage(self):
        """classify stops before any family is built."""
        status, out, _ = run_cli('classify', '--scene', 'cylinder-geodesic')
        summary = json.loads(out)

        self.assertEqual(status, 0)
        self.assertTrue(summary['classification']['lines']['is_geodesic'])
        self.assertNotIn('families', summary)

    def test_config_errors(self):
        for argv in (['validate', '--scene', 'no-such-scene'],
                     ['associate', '--scene', 'cylinder-geodesic', '--const', 'c8=1'],
                     ['associate', '--scene', 'cylinder-geodesic', '--const', 'c3'],
                     ['frames', '--scene', 'cylinder-geodesic', '--grid', '0:1'],
                     ['frames', '--scene', 'cylinder-geodesic', '--grid', '1:0:11'],
                     ['associate', '--scene', 'cylinder-geodesic', '--family', 'hcc9']):
            status, _, err = run_cli(*argv)
            self.assertEqual(status, 1, msg=argv)
            self.assertIn('darboux-helix:', err)

    def test_invalid_scene_values(self):
        """Bad values inside a scene file are configuration errors, not kernel errors."""
        with open(os.path.join(get_scenes_path(), 'plane-circle.yaml')) as file:
            base = yaml.safe_load(file)

        broken = {'log_bound': {'grid': {'s0': 'log(0)', 's1': '2*pi', 'n': 2001}},
                  'zero_division': {'grid': {'s0': '0', 's1': '1/0', 'n': 2001}},
                  'text_count': {'grid': {'s0': '0', 's1': '2*pi', 'n': 'abc'}},
                  'text_constant': {'constants': {'c4': 'abc'}},
                  'text_tolerance': {'tolerances': {'rel_tol': 'tight'}}}

        with tempfile.TemporaryDirectory() as tmp_dir:
            for label, change in broken.items():
                file_name = os.path.join(tmp_dir, f'{label}.yaml')
                with open(file_name, 'w') as file:
                    yaml.safe_dump({**base, **change}, file)

                status, _, err = run_cli('validate', '--scene', file_name)
                self.assertEqual(status, 1, msg=f"{label}: {err}")
                self.assertIn('ConfigError', err, msg=label)

    def test_kernel_error(self):
        """hcc2 divides by k_g, which vanishes on a geodesic."""
        status, _, err = run_cli('associate', '--scene', 'cylinder-geodesic', '--family', 'hcc2')

        self.assertEqual(status, 2)
        self.assertIn('DivisorTooSmallError', err)
        self.assertIn('k_g', err)

    def test_regularity_error(self):
        status, _, err = run_cli('associate', '--scene', 'cylinder-geodesic', '--family', 'icc1',
                                 '--const', 'c8_icc1=1')

        self.assertEqual(status, 2)
        self.assertIn('RegularityViolationError', err)

    def test_failed_verification(self):
        """The control curve is no helix, so neither is its hcc3 curve."""
        with tempfile.TemporaryDirectory() as save_dir:
            status, _, _ = run_cli('run', '--scene', 'twisted-cubic-control', '--out', save_dir)
            self.assertEqual(status, 3)

            status, out, _ = run_cli('run', '--scene', 'twisted-cubic-control', '--out', save_dir,
                                     '--report-only', '--format', 'json')
            self.assertEqual(status, 0)
            self.assertFalse(json.loads(out)['verdict'])

    def test_settings_restored(self):
        config = get_config()
        rel_tol = config.rel_tol

        run_cli('classify', '--scene', 'plane-circle', '--tol', '1e-3')
        self.assertEqual(config.rel_tol, rel_tol)


class TestExports(unittest.TestCase):

    def test_run_writes_all(self):
        with tempfile.TemporaryDirectory() as save_dir:
            status, _, err = run_cli('run', '--scene', 'cylinder-geodesic', '--out', save_dir)

            self.assertEqual(status, 0, msg=err)
            for file_base in EXPORTS:
                self.assertTrue(os.path.isfile(os.path.join(save_dir, file_base)), msg=file_base)

            table = dio.load_table_csv(os.path.join(save_dir, 'icc1.csv'))
            self.assertEqual(list(table), list(dio.CURVE_COLUMNS))
            self.assertEqual(len(table['s']), 2001)

            curves = dio.load_polylines_obj(os.path.join(save_dir, 'curves.obj'))
            self.assertEqual(list(curves), ['alpha', 'hcc1', 'rns2', 'icc1'])

            report = dio.load_report_json(os.path.join(save_dir, 'report.json'))
            self.assertEqual(report['families']['icc1']['case'], 'ICC1-general')

    def test_reproducible(self):
        """Two runs of a scene write byte-identical files."""
        with tempfile.TemporaryDirectory() as dir_a, tempfile.TemporaryDirectory() as dir_b:
            run_cli('run', '--scene', 'cylinder-geodesic', '--out', dir_a)
            run_cli('run', '--scene', 'cylinder-geodesic', '--out', dir_b)

            for file_base in EXPORTS:
                with open(os.path.join(dir_a, file_base), 'rb') as file_a:
                    with open(os.path.join(dir_b, file_base), 'rb') as file_b:
                        self.assertEqual(file_a.read(), file_b.read(), msg=file_base)

    def test_single_format(self):
        with tempfile.TemporaryDirectory() as save_dir:
            status, _, _ = run_cli('export', '--scene', 'plane-circle', '--out', save_dir, '--format', 'obj')

            self.assertEqual(status, 0)
            self.assertTrue(os.path.isfile(os.path.join(save_dir, 'curves.obj')))
            self.assertFalse(os.path.isfile(os.path.join(save_dir, 'frames.csv')))
            self.assertFalse(os.path.isfile(os.path.join(save_dir, 'report.json')))

    def test_no_overwrite(self):
        """Existing files are left alone unless overwrite is set."""
        with tempfile.TemporaryDirectory() as save_dir:
            file_name = os.path.join(save_dir, 'report.json')
            with open(file_name, 'w') as file:
                file.write('{}')

            run_cli('export', '--scene', 'plane-circle', '--out', save_dir, '--format', 'json')

            with open(file_name) as file:
                self.assertEqual(file.read(), '{}')

    def test_partial_run_with_out(self):
        """A stage subcommand with --out saves what it has computed."""
        with tempfile.TemporaryDirectory() as save_dir:
            status, _, _ = run_cli('frames', '--scene', 'plane-circle', '--out', save_dir, '--format', 'csv')

            self.assertEqual(status, 0)
            self.assertTrue(os.path.isfile(os.path.join(save_dir, 'frames.csv')))
            self.assertFalse(os.path.isfile(os.path.join(save_dir, 'hcc1.csv')))


if __name__ == '__main__':
    unittest.main()
