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

"""
Usage:
    stereodepth --left L.ppm --right R.ppm --out depth.pgm [--emit-disparity]
    stereodepth eval --scene scene.yaml [--jitter 6] [--html results]
    stereodepth generate --scene scene.yaml --out-dir pair
"""

import sys
import argparse
import logging
import yaml
import stereodepth
from stereodepth.main import RunConfig, DepthProgram, EvalProgram, GenerateProgram, execute, EXIT_ERROR
from stereodepth.exception import ConfigInvalid
from stereodepth.util import set_logging

log = logging.getLogger(__name__)


class _ArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with status 1."""
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, '%s: error: %s\n' % (self.prog, message))


def _default(value, inherit):
    """Subparser copies of a flag leave the value parsed before the subcommand in place."""
    return argparse.SUPPRESS if inherit else value


def _add_match_arguments(parser, inherit=False):
    parser.add_argument('--tolerance', type=float, default=_default(None, inherit), metavar='fraction',
                        help='accepted SAD as a fraction of the maximum cost 765 (default 0.025)')
    parser.add_argument('--max-disparity', type=int, default=_default(None, inherit), metavar='pixels',
                        help='widest disparity searched (default 64, capped at width - 1)')
    parser.add_argument('--workers', type=int, default=_default(1, inherit), metavar='n',
                        help='number of workers matching rows in parallel')
    parser.add_argument('--concurrency', choices=['threads', 'processes'],
                        default=_default('threads', inherit),
                        help='kind of worker pool')


def _add_logging_arguments(parser, inherit=False):
    parser.add_argument('--log-config', default=_default(None, inherit), metavar='filename',
                        help='YAML logging configuration (logging.config.dictConfig schema)')
    parser.add_argument('-v', '--verbose', action='count', default=_default(0, inherit),
                        help='log INFO (-v) or DEBUG (-vv) messages to stderr')


def make_parser():
    parser = _ArgumentParser(prog=stereodepth.PACKAGE,
                             description='Depth-map from a rectified stereo pair by pixel-to-pixel matching.')
    parser.add_argument('--version', action='version', version='%(prog)s ' + stereodepth.VERSION)
    parser.add_argument('--left', metavar='filename', help='left image (binary PPM)')
    parser.add_argument('--right', metavar='filename', help='right image (binary PPM)')
    parser.add_argument('--out', metavar='filename', help='depth-map output (binary PGM)')
    parser.add_argument('--emit-disparity', action='store_true',
                        help='also write <out>_disparity.pgm with disparity as gray, 255 unmatched')
    _add_match_arguments(parser)
    _add_logging_arguments(parser)

    subparsers = parser.add_subparsers(dest='command')
    eval_parser = subparsers.add_parser('eval', help='match a synthetic scene and score it against ground truth')
    eval_parser.add_argument('--scene', required=True, metavar='filename', help='YAML scene description')
    eval_parser.add_argument('--jitter', type=int, default=None, metavar='amplitude',
                             help='uniform per-channel noise added to the right image')
    eval_parser.add_argument('--html', default=None, metavar='dir', help='also write an HTML report here')
    eval_parser.add_argument('--truth-out', default=None, metavar='filename',
                             help='write the ground-truth disparity PGM here')
    _add_match_arguments(eval_parser, inherit=True)
    _add_logging_arguments(eval_parser, inherit=True)

    generate_parser = subparsers.add_parser('generate', help='write the stereo pair and ground truth of a scene')
    generate_parser.add_argument('--scene', required=True, metavar='filename', help='YAML scene description')
    generate_parser.add_argument('--out-dir', required=True, metavar='dir', help='output directory')
    _add_logging_arguments(generate_parser, inherit=True)
    return parser


def _concurrency(args):
    return {'type': getattr(args, 'concurrency', 'threads'), 'max_workers': getattr(args, 'workers', 1)}


def make_program(args):
    if args.command == 'eval':
        return EvalProgram(RunConfig(scene_path=args.scene,
                                     tolerance_fraction=args.tolerance,
                                     max_disparity=args.max_disparity,
                                     jitter=args.jitter,
                                     html_dest=args.html,
                                     truth_path=args.truth_out,
                                     concurrency=_concurrency(args)))
    if args.command == 'generate':
        return GenerateProgram(RunConfig(scene_path=args.scene, out_dir=args.out_dir))
    return DepthProgram(RunConfig(left_path=args.left,
                                  right_path=args.right,
                                  out_path=args.out,
                                  tolerance_fraction=args.tolerance,
                                  max_disparity=args.max_disparity,
                                  emit_disparity=args.emit_disparity,
                                  concurrency=_concurrency(args)))


def run(argv=None):
    """Parses argv, runs the selected program and returns its exit code."""
    parser = make_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        missing = [flag for flag, value in (('--left', args.left), ('--right', args.right), ('--out', args.out))
                   if not value]
        if missing:
            parser.error('the following arguments are required: %s' % ', '.join(missing))
    try:
        set_logging(args.log_config, args.verbose)
    except (IOError, OSError, ValueError, yaml.YAMLError) as e:
        sys.stderr.write('%s: error: --log-config %s: %s\n' % (stereodepth.PACKAGE, args.log_config, e))
        return EXIT_ERROR
    try:
        program = make_program(args)
    except ConfigInvalid as e:
        sys.stderr.write('%s: error: %s\n' % (stereodepth.PACKAGE, e))
        return EXIT_ERROR
    return execute(program)


def console_main():
    sys.exit(run())


if __name__ == '__main__':
    console_main()
