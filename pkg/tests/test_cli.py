import unittest
import contextlib
import io
import os
import shutil
import tempfile
import numpy as np
import stereodepth
from stereodepth import cli
from stereodepth.main import EXIT_OK, EXIT_ERROR, execute
from tests import random_image

SCENE = ('width: 32\n'
         'height: 8\n'
         'layers:\n'
         '  - {disparity: 2, rect: [0, 0, 32, 8], seed: 1}\n'
         '  - {disparity: 5, rect: [10, 2, 12, 4], seed: 2}\n')


class CliTestCase(unittest.TestCase):
    def setUp(self):
        super(CliTestCase, self).setUp()
        self.dest = tempfile.mkdtemp()
        rng = np.random.default_rng(5)
        self.img = random_image(rng, 16, 4)
        self.left = self.write('left.ppm', stereodepth.write_ppm(self.img))
        self.right = self.write('right.ppm', stereodepth.write_ppm(self.img))
        self.scene = self.write('scene.yaml', SCENE.encode('ascii'))

    def tearDown(self):
        shutil.rmtree(self.dest)

    def path(self, filename):
        return os.path.join(self.dest, filename)

    def write(self, filename, data):
        with open(self.path(filename), 'wb') as f:
            f.write(data)
        return self.path(filename)

    def read(self, filename):
        with open(self.path(filename), 'rb') as f:
            return f.read()

    def run_cli(self, *argv):
        stdout, stderr = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            exit_code = cli.run(list(argv))
        return exit_code, stdout.getvalue(), stderr.getvalue()

    def depth(self, *extra):
        return self.run_cli('--left', self.left, '--right', self.right, '--out', self.path('depth.pgm'), *extra)


class DepthCommandTestCase(CliTestCase):
    def test_identical_images(self):
        exit_code, _, _ = self.depth()
        self.assertEqual(exit_code, EXIT_OK)
        gray = stereodepth.read_pgm(self.read('depth.pgm'))
        self.assertEqual((gray.width, gray.height), (16, 4))
        self.assertTrue(np.all(gray.pixels == 0))

    def test_emit_disparity(self):
        exit_code, _, _ = self.depth('--emit-disparity')
        self.assertEqual(exit_code, EXIT_OK)
        gray = stereodepth.read_pgm(self.read('depth_disparity.pgm'))
        self.assertTrue(np.all(gray.pixels == 0))

    def test_dimension_mismatch(self):
        self.right = self.write('right.ppm', stereodepth.write_ppm(random_image(np.random.default_rng(1), 15, 4)))
        exit_code, _, stderr = self.depth()
        self.assertEqual(exit_code, EXIT_ERROR)
        self.assertIn('16x4', stderr)
        self.assertFalse(os.path.exists(self.path('depth.pgm')))

    def test_small_dimension_mismatch(self):
        rng = np.random.default_rng(2)
        self.left = self.write('left.ppm', stereodepth.write_ppm(random_image(rng, 4, 3)))
        self.right = self.write('right.ppm', stereodepth.write_ppm(random_image(rng, 5, 3)))
        exit_code, _, stderr = self.depth()
        self.assertEqual(exit_code, EXIT_ERROR)
        self.assertIn('4x3', stderr)
        self.assertIn('5x3', stderr)

    def test_tolerance_out_of_range(self):
        exit_code, _, stderr = self.depth('--tolerance', '1.5')
        self.assertEqual(exit_code, EXIT_ERROR)
        self.assertIn('--tolerance', stderr)
        self.assertFalse(os.path.exists(self.path('depth.pgm')))

    def test_max_disparity_not_less_than_width(self):
        exit_code, _, stderr = self.depth('--max-disparity', '16')
        self.assertEqual(exit_code, EXIT_ERROR)
        self.assertIn('max-disparity', stderr)

    def test_invalid_workers(self):
        exit_code, _, stderr = self.depth('--workers', '0')
        self.assertEqual(exit_code, EXIT_ERROR)
        self.assertIn('--workers', stderr)

    def test_malformed_input(self):
        self.right = self.write('right.ppm', b'P6\n16 4\n255\n\x00\x01')
        exit_code, _, stderr = self.depth('--emit-disparity')
        self.assertEqual(exit_code, EXIT_ERROR)
        self.assertIn(self.right, stderr)
        self.assertEqual(sorted(os.listdir(self.dest)), ['left.ppm', 'right.ppm', 'scene.yaml'])
        self.assertFalse(os.path.exists(self.path('depth.pgm')))
        self.assertFalse(os.path.exists(self.path('depth_disparity.pgm')))

    def test_missing_input(self):
        self.left = self.path('missing.ppm')
        exit_code, _, stderr = self.depth()
        self.assertEqual(exit_code, EXIT_ERROR)
        self.assertIn('missing.ppm', stderr)

    def test_missing_out(self):
        with contextlib.redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit) as cm:
                cli.run(['--left', self.left, '--right', self.right])
        self.assertEqual(cm.exception.code, EXIT_ERROR)

    def test_unknown_flag(self):
        with contextlib.redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit) as cm:
                cli.run(['--left', self.left, '--right', self.right, '--out', self.path('o.pgm'), '--bogus'])
        self.assertEqual(cm.exception.code, EXIT_ERROR)

    def test_bad_log_config(self):
        exit_code, _, stderr = self.depth('--log-config', self.path('missing.yaml'))
        self.assertEqual(exit_code, EXIT_ERROR)
        self.assertIn('--log-config', stderr)

    def test_byte_determinism(self):
        pair = stereodepth.generate_pair(stereodepth.load_scene(SCENE))[0]
        self.left = self.write('left.ppm', stereodepth.write_ppm(pair.left))
        self.right = self.write('right.ppm', stereodepth.write_ppm(stereodepth.jitter(pair.right, 6, seed=2)))
        outputs = set()
        for extra in ([], ['--workers', '1'], ['--workers', '4'], ['--workers', '4'],
                      ['--workers', '3', '--concurrency', 'processes']):
            exit_code, _, _ = self.depth('--emit-disparity', *extra)
            self.assertEqual(exit_code, EXIT_OK)
            outputs.add((self.read('depth.pgm'), self.read('depth_disparity.pgm')))
        self.assertEqual(len(outputs), 1)


class EvalCommandTestCase(CliTestCase):
    def test_noise_free_scene(self):
        exit_code, stdout, _ = self.run_cli('eval', '--scene', self.scene)
        self.assertEqual(exit_code, EXIT_OK)
        lines = stdout.splitlines()
        self.assertEqual([line.split('=')[0] for line in lines],
                         ['density', 'bad_pixel_rate', 'mean_abs_disparity_error', 'pixels', 'matched', 'evaluated'])
        self.assertIn('bad_pixel_rate=0.000000', lines)
        self.assertIn('pixels=256', lines)

    def test_single_layer_scene(self):
        self.scene = self.write('scene.yaml', b'width: 48\nheight: 6\n'
                                              b'layers: [{disparity: 3, rect: [0, 0, 48, 6], seed: 9}]\n')
        exit_code, stdout, _ = self.run_cli('eval', '--scene', self.scene)
        self.assertEqual(exit_code, EXIT_OK)
        self.assertIn('bad_pixel_rate=0.000000', stdout.splitlines())
        self.assertIn('density=0.937500', stdout.splitlines())

    def test_truth_and_html(self):
        exit_code, _, _ = self.run_cli('eval', '--scene', self.scene, '--truth-out', self.path('truth.pgm'),
                                       '--html', self.path('results'))
        self.assertEqual(exit_code, EXIT_OK)
        truth = stereodepth.read_pgm(self.read('truth.pgm'))
        self.assertEqual(truth.pixel(12, 3), 5)
        self.assertEqual(truth.pixel(8, 3), 255)
        self.assertEqual(os.listdir(self.path('results')), ['scene_report.html'])

    def test_jitter(self):
        exit_code, stdout, _ = self.run_cli('eval', '--scene', self.scene, '--jitter', '6', '--tolerance', '0')
        self.assertEqual(exit_code, EXIT_OK)
        density = float(stdout.splitlines()[0].split('=')[1])
        self.assertLess(density, 0.05)

    def test_flags_before_subcommand(self):
        exit_code, _, stderr = self.run_cli('--tolerance', '1.5', 'eval', '--scene', self.scene)
        self.assertEqual(exit_code, EXIT_ERROR)
        self.assertIn('--tolerance', stderr)
        exit_code, stdout, _ = self.run_cli('--tolerance', '0', 'eval', '--scene', self.scene, '--jitter', '6')
        self.assertEqual(exit_code, EXIT_OK)
        self.assertLess(float(stdout.splitlines()[0].split('=')[1]), 0.05)

    def test_flags_after_subcommand_win(self):
        exit_code, stdout, _ = self.run_cli('--tolerance', '0', '--workers', '0', 'eval', '--scene', self.scene,
                                            '--jitter', '6', '--tolerance', '0.025', '--workers', '2')
        self.assertEqual(exit_code, EXIT_OK)
        self.assertGreater(float(stdout.splitlines()[0].split('=')[1]), 0.5)

    def test_binary_scene(self):
        self.scene = self.write('scene.yaml', b'\xff\xfe\x00garbage')
        exit_code, stdout, stderr = self.run_cli('eval', '--scene', self.scene)
        self.assertEqual(exit_code, EXIT_ERROR)
        self.assertEqual(stdout, '')
        self.assertIn('scene.yaml', stderr)
        self.write('scene.yaml', b'width: \xff\x80\n')
        exit_code, _, stderr = self.run_cli('generate', '--scene', self.scene, '--out-dir', self.path('pair'))
        self.assertEqual(exit_code, EXIT_ERROR)
        self.assertFalse(os.path.exists(self.path('pair')))

    def test_malformed_scene(self):
        self.scene = self.write('scene.yaml', b'width: [32\n')
        exit_code, stdout, stderr = self.run_cli('eval', '--scene', self.scene)
        self.assertEqual(exit_code, EXIT_ERROR)
        self.assertEqual(stdout, '')
        self.assertIn('scene.yaml', stderr)

    def test_disparity_not_less_than_width(self):
        self.scene = self.write('scene.yaml', b'width: 8\nheight: 2\nlayers: [{disparity: 8, rect: [0, 0, 8, 2]}]\n')
        exit_code, _, stderr = self.run_cli('eval', '--scene', self.scene)
        self.assertEqual(exit_code, EXIT_ERROR)
        self.assertIn('disparity 8', stderr)


class GenerateCommandTestCase(CliTestCase):
    def test_generate(self):
        exit_code, _, _ = self.run_cli('generate', '--scene', self.scene, '--out-dir', self.path('pair'))
        self.assertEqual(exit_code, EXIT_OK)
        self.assertEqual(sorted(os.listdir(self.path('pair'))), ['left.ppm', 'right.ppm', 'truth.pgm'])
        pair, truth = stereodepth.generate_pair(stereodepth.load_scene(SCENE))
        self.assertEqual(stereodepth.read_ppm(self.read(os.path.join('pair', 'left.ppm'))), pair.left)
        self.assertEqual(stereodepth.read_ppm(self.read(os.path.join('pair', 'right.ppm'))), pair.right)
        self.assertEqual(stereodepth.render_disparity(truth),
                         stereodepth.read_pgm(self.read(os.path.join('pair', 'truth.pgm'))))

    def test_round_trip_through_depth(self):
        self.run_cli('generate', '--scene', self.scene, '--out-dir', self.path('pair'))
        exit_code, _, _ = self.run_cli('--left', self.path(os.path.join('pair', 'left.ppm')),
                                       '--right', self.path(os.path.join('pair', 'right.ppm')),
                                       '--out', self.path('depth.pgm'), '--emit-disparity')
        self.assertEqual(exit_code, EXIT_OK)
        self.assertEqual(self.read('depth_disparity.pgm'), self.read(os.path.join('pair', 'truth.pgm')))


class ProgramTestCase(CliTestCase):
    def test_run_depth(self):
        config = stereodepth.RunConfig(left_path=self.left, right_path=self.right, out_path=self.path('d.pgm'))
        self.assertEqual(stereodepth.run_depth(config), EXIT_OK)
        self.assertTrue(os.path.exists(self.path('d.pgm')))

    def test_run_eval_with_reporter(self):
        stream = io.StringIO()
        program = stereodepth.EvalProgram(stereodepth.RunConfig(scene_path=self.scene),
                                          reporters=[stereodepth.TextReporter(stream=stream)])
        self.assertEqual(execute(program), EXIT_OK)
        self.assertIn('bad_pixel_rate=0.000000\n', stream.getvalue())

    def test_main_exits(self):
        config = stereodepth.RunConfig(left_path=self.path('missing.ppm'), right_path=self.right,
                                       out_path=self.path('d.pgm'))
        with contextlib.redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit) as cm:
                stereodepth.main(stereodepth.DepthProgram(config))
        self.assertEqual(cm.exception.code, EXIT_ERROR)

    def test_not_a_program(self):
        with self.assertRaises(TypeError):
            execute(object())


if __name__ == '__main__':
    unittest.main(verbosity=2)
