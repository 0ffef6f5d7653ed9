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

__all__ = ['RgbImage', 'GrayImage', 'StereoPair', 'read_ppm', 'write_ppm', 'read_pgm', 'write_pgm', 'make_pair',
           'MatchConfig', 'DisparityMap', 'Matched', 'UNMATCHED', 'sad', 'sad_threshold',
           'match_row_oracle', 'match_row_fast', 'match_pair',
           'DepthMap', 'disparity_to_depth', 'render', 'render_disparity',
           'SyntheticScene', 'Layer', 'Rect', 'EvalReport', 'generate_pair', 'evaluate', 'load_scene', 'jitter',
           'Reporter', 'TextReporter', 'HtmlReporter',
           'RunConfig', 'Program', 'DepthProgram', 'EvalProgram', 'GenerateProgram', 'run_depth', 'run_eval', 'main',
           'randomized', 'multi_threading_randomized']

from stereodepth.imageio import (RgbImage, GrayImage, StereoPair, read_ppm, write_ppm, read_pgm, write_pgm,
                                 make_pair)
from stereodepth.matcher import (MatchConfig, DisparityMap, Matched, UNMATCHED, sad, sad_threshold,
                                 match_row_oracle, match_row_fast, match_pair)
from stereodepth.depthmap import DepthMap, disparity_to_depth, render, render_disparity
from stereodepth.harness import (SyntheticScene, Layer, Rect, EvalReport, generate_pair, evaluate, load_scene,
                                 jitter)
from stereodepth.reporter import Reporter, TextReporter, HtmlReporter
from stereodepth.main import (RunConfig, Program, DepthProgram, EvalProgram, GenerateProgram,
                              run_depth, run_eval, main)
from stereodepth.decorator import randomized, multi_threading_randomized


PACKAGE = __name__
VERSION = '0.1.0'
