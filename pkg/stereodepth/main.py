# Copyright 2015 Twitter, Inc and other contributors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import abc
import os
import sys
import time
import logging
import stereodepth
from stereodepth.imageio import read_ppm_file, make_pair, write_pgm, write_ppm
from stereodepth.matcher import MatchConfig, DEFAULT_TOLERANCE, match_pair
from stereodepth.depthmap import disparity_to_depth, render, render_disparity
from stereodepth.harness import load_scene, generate_pair, evaluate, jitter
from stereodepth.reporter import TextReporter, HtmlReporter
from stereodepth.exception import StereoError, DecodeError, ConfigInvalid
from stereodepth.util import parse_concurrency, atomic_write

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1


class RunConfig(object):
    """
    Parameters of one command line run. tolerance_fraction=None means 0.025, or the
    scene tolerance when evaluating; max_disparity=None means 64 capped at width - 1;
    jitter=None defers to the scene file.
    """
    def __init__(self, left_path=None, right_path=None, out_path=None,
                 tolerance_fraction=None, max_disparity=None, emit_disparity=False,
                 scene_path=None, jitter=None, html_dest=None, truth_path=None, out_dir=None,
                 concurrency=None):
        if tolerance_fraction is not None and not 0.0 <= tolerance_fraction <= 1.0:
            raise ConfigInvalid('--tolerance (%r) must be in [0, 1].' % tolerance_fraction)
        if max_disparity is not None and max_disparity < 1:
            raise ConfigInvalid('--max-disparity (%r) must be >= 1.' % max_disparity)
        if jitter is not None and jitter < 0:
            raise ConfigInvalid('--jitter (%r) must be >= 0.' % jitter)
        try:
            self.concurrency = parse_concurrency(concurrency)
        except ConfigInvalid as e:
            raise ConfigInvalid('--workers/--concurrency: %s' % e)
        self.left_path = left_path
        self.right_path = right_path
        self.out_path = out_path
        self.tolerance_fraction = tolerance_fraction
        self.max_disparity = max_disparity
        self.emit_disparity = emit_disparity
        self.scene_path = scene_path
        self.jitter = jitter
        self.html_dest = html_dest
        self.truth_path = truth_path
        self.out_dir = out_dir

    @property
    def disparity_path(self):
        root, ext = os.path.splitext(self.out_path)
        return root + '_disparity' + (ext or '.pgm')


class Program(abc.ABC):
    def __init__(self, run_config):
        self.config = run_config

    @abc.abstractmethod
    def run(self):
        pass


def _read_image(path):
    try:
        return read_ppm_file(path)
    except DecodeError as e:
        raise type(e)('%s: %s' % (path, e))


def _read_scene(path):
    with open(path, 'rb') as f:
        text = f.read()
    try:
        return load_scene(text)
    except StereoError as e:
        raise type(e)('%s: %s' % (path, e))


class DepthProgram(Program):
    """Stereo pair in, depth-map out."""
    def run(self):
        cfg = self.config
        start_time = time.time()
        pair = make_pair(_read_image(cfg.left_path), _read_image(cfg.right_path))
        tolerance = DEFAULT_TOLERANCE if cfg.tolerance_fraction is None else cfg.tolerance_fraction
        dmap = match_pair(pair, MatchConfig(tolerance, cfg.max_disparity), cfg.concurrency)
        outputs = [(cfg.out_path, write_pgm(render(disparity_to_depth(dmap))))]
        if cfg.emit_disparity:
            outputs.append((cfg.disparity_path, write_pgm(render_disparity(dmap))))
        # Every output is encoded before the first one is written.
        for path, data in outputs:
            atomic_write(path, data)
            log.info('Wrote %r.' % path)
        log.info('Took %.3fs to create the depth-map.' % (time.time() - start_time))
        return EXIT_OK


class EvalProgram(Program):
    """Synthetic scene in, EvalReport key=value lines out."""
    def __init__(self, run_config, reporters=None):
        super(EvalProgram, self).__init__(run_config)
        if reporters is None:
            reporters = [TextReporter()]
            if run_config.html_dest:
                reporters.append(HtmlReporter(dest=run_config.html_dest))
        self.reporters = reporters

    def run(self):
        cfg = self.config
        scene = _read_scene(cfg.scene_path)
        pair, truth = generate_pair(scene)
        amplitude = scene.jitter if cfg.jitter is None else cfg.jitter
        if amplitude:
            pair = make_pair(pair.left, jitter(pair.right, amplitude, seed=scene.seed))
            log.info('Applied jitter of amplitude %d to the right image.' % amplitude)
        tolerance = scene.tolerance_fraction if cfg.tolerance_fraction is None else cfg.tolerance_fraction
        max_disparity = cfg.max_disparity or scene.max_disparity or None
        dmap = match_pair(pair, MatchConfig(tolerance, max_disparity), cfg.concurrency)
        report = evaluate(dmap, truth)
        if cfg.truth_path:
            atomic_write(cfg.truth_path, write_pgm(render_disparity(truth)))
        name = os.path.splitext(os.path.basename(cfg.scene_path))[0]
        for reporter in self.reporters:
            reporter.report(report, name=name, description='Scene: %s' % cfg.scene_path)
        return EXIT_OK


class GenerateProgram(Program):
    """Writes left.ppm, right.ppm and truth.pgm of a synthetic scene."""
    def run(self):
        cfg = self.config
        scene = _read_scene(cfg.scene_path)
        pair, truth = generate_pair(scene)
        outputs = [('left.ppm', write_ppm(pair.left)),
                   ('right.ppm', write_ppm(pair.right)),
                   ('truth.pgm', write_pgm(render_disparity(truth)))]
        for filename, data in outputs:
            atomic_write(os.path.join(cfg.out_dir, filename), data)
        log.info('Wrote scene %r to %r.' % (cfg.scene_path, cfg.out_dir))
        return EXIT_OK


def execute(program):
    """Runs the program; errors become a one-line diagnostic on stderr and exit code 1."""
    if not isinstance(program, Program):
        raise TypeError('%r is not a Program.' % program)
    try:
        exit_code = program.run()
    except StereoError as e:
        log.debug('Run failed.', exc_info=True)
        sys.stderr.write('%s: error: %s\n' % (stereodepth.PACKAGE, e))
        exit_code = EXIT_ERROR
    except (IOError, OSError) as e:
        sys.stderr.write('%s: error: %s: %s\n' % (stereodepth.PACKAGE, e.filename or '', e.strerror or e))
        exit_code = EXIT_ERROR
    log.info('Exit Code: %d' % exit_code)
    return exit_code


def run_depth(run_config):
    return execute(DepthProgram(run_config))


def run_eval(run_config):
    return execute(EvalProgram(run_config))


def main(program):
    sys.exit(execute(program))
