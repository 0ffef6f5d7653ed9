import sys
from os.path import abspath, dirname, join

rootdir = dirname(dirname(abspath(__file__)))
sys.path.append(rootdir)

import stereodepth
from stereodepth.main import execute
from stereodepth.util import set_logging
import argparse
import glob
import logging

log = logging.getLogger('example')


if __name__ == '__main__':
    cur_dir = dirname(abspath(__file__))
    parser = argparse.ArgumentParser()
    parser.add_argument('--scene', '-s',
                        default=None,
                        help='scene to evaluate, all of scenes/*.yaml by default',
                        metavar='filename')
    parser.add_argument('--dest', '-d', default='results', help='directory of the HTML reports', metavar='dir')
    args = parser.parse_args()
    set_logging(join(cur_dir, 'config', 'logging.yaml'))
    scenes = [args.scene] if args.scene else sorted(glob.glob(join(cur_dir, 'scenes', '*.yaml')))
    exit_code = 0
    for scene in scenes:
        log.info('Evaluating %s.' % scene)
        program = stereodepth.EvalProgram(stereodepth.RunConfig(scene_path=scene,
                                                                concurrency={'type': 'processes',
                                                                             'max_workers': 2}),
                                          reporters=[stereodepth.TextReporter(),
                                                     stereodepth.HtmlReporter(dest=args.dest)])
        exit_code = max(exit_code, execute(program))
    sys.exit(exit_code)
