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

import time
import logging
from collections import namedtuple
import numpy as np
import yaml
from stereodepth.imageio import RgbImage, make_pair
from stereodepth.matcher import (MatchConfig, DisparityMap, UNMATCHED, DEFAULT_TOLERANCE, DEFAULT_MAX_DISPARITY,
                                 sad_threshold)
from stereodepth.exception import SceneInvalid, SceneParseError, DimensionMismatch, ConfigInvalid

log = logging.getLogger(__name__)

_NO_LAYER = -1
_MAX_ATTEMPTS = 1000


class Rect(namedtuple('Rect', ['x', 'y', 'width', 'height'])):
    """Axis-aligned rectangle in left-image coordinates."""
    __slots__ = ()

    @property
    def right(self):
        return self.x + self.width

    @property
    def bottom(self):
        return self.y + self.height


Layer = namedtuple('Layer', ['disparity', 'region', 'texture_seed'])

EvalReport = namedtuple('EvalReport', ['density', 'bad_pixel_rate', 'mean_abs_disparity_error',
                                       'pixels', 'matched', 'evaluated'])


class SyntheticScene(object):
    """
    Fronto-parallel textured layers listed back to front. max_disparity and
    tolerance_fraction define the matcher the texture is made unambiguous for.
    """
    def __init__(self, width, height, layers, max_disparity=None, tolerance_fraction=DEFAULT_TOLERANCE,
                 seed=0, jitter=0):
        self.width = int(width)
        self.height = int(height)
        if self.width < 1 or self.height < 1:
            raise SceneInvalid('Scene dimensions must be >= 1, got %dx%d.' % (self.width, self.height))
        self.layers = [Layer(int(l.disparity), Rect(*l.region), int(l.texture_seed)) for l in layers]
        for i, layer in enumerate(self.layers):
            self._check_layer(i, layer)
        deepest = max([l.disparity for l in self.layers] or [0])
        if max_disparity is None:
            max_disparity = max(deepest, min(DEFAULT_MAX_DISPARITY, self.width - 1))
        self.max_disparity = int(max_disparity)
        if deepest > self.max_disparity:
            raise SceneInvalid('Layer disparity %d exceeds max_disparity %d.' % (deepest, self.max_disparity))
        if self.max_disparity >= self.width:
            raise SceneInvalid('max_disparity %d must be less than the scene width %d.'
                               % (self.max_disparity, self.width))
        if self.max_disparity < 1 and self.width > 1:
            raise SceneInvalid('max_disparity (%d) must be >= 1.' % self.max_disparity)
        try:
            # Zero only on 1-pixel-wide scenes, where the default window already is 0.
            self.match_config = MatchConfig(tolerance_fraction, self.max_disparity or None)
        except ConfigInvalid as e:
            raise SceneInvalid(str(e))
        self.tolerance_fraction = self.match_config.tolerance_fraction
        self.seed = int(seed)
        self.jitter = int(jitter)
        if self.jitter < 0:
            raise SceneInvalid('Jitter amplitude (%d) must be >= 0.' % self.jitter)

    def _check_layer(self, index, layer):
        if layer.disparity < 0:
            raise SceneInvalid('Layer %d has negative disparity %d.' % (index, layer.disparity))
        if layer.disparity >= self.width:
            raise SceneInvalid('Layer %d disparity %d must be less than the scene width %d.'
                               % (index, layer.disparity, self.width))
        r = layer.region
        if r.width < 1 or r.height < 1 or r.x < 0 or r.y < 0 or r.right > self.width or r.bottom > self.height:
            raise SceneInvalid('Layer %d region %r is empty or outside the %dx%d frame.'
                               % (index, tuple(r), self.width, self.height))

    def __repr__(self):
        return 'SyntheticScene(%dx%d, layers=%d)' % (self.width, self.height, len(self.layers))


def load_scene(text):
    """
    Parses a YAML scene description, given as str or as bytes in a YAML encoding:

        width: 256
        height: 128
        layers:
          - {disparity: 2, rect: [0, 0, 256, 128], seed: 1}
          - {disparity: 5, rect: [96, 32, 64, 64], seed: 2}
    """
    try:
        conf = yaml.safe_load(text)
    except (yaml.YAMLError, ValueError) as e:
        raise SceneParseError('Scene is not valid YAML: %s' % e)
    if not isinstance(conf, dict):
        raise SceneParseError('Scene must be a mapping, got %r.' % type(conf).__name__)
    unknown = set(conf) - {'width', 'height', 'layers', 'max_disparity', 'tolerance', 'seed', 'jitter'}
    if unknown:
        raise SceneParseError('Unknown scene key(s): %s.' % ', '.join(sorted(map(str, unknown))))
    try:
        layers = []
        for item in conf['layers'] or []:
            rect = item['rect']
            if len(rect) != 4:
                raise SceneParseError('Layer rect %r does not comply with: [x, y, width, height].' % (rect,))
            layers.append(Layer(_as_int(item['disparity']), Rect(*[_as_int(v) for v in rect]),
                                _as_int(item.get('seed', 0))))
        max_disparity = conf.get('max_disparity')
        return SyntheticScene(_as_int(conf['width']), _as_int(conf['height']), layers,
                             max_disparity=None if max_disparity is None else _as_int(max_disparity),
                             tolerance_fraction=conf.get('tolerance', DEFAULT_TOLERANCE),
                             seed=_as_int(conf.get('seed', 0)),
                             jitter=_as_int(conf.get('jitter', 0)))
    except KeyError as e:
        raise SceneParseError('Missing scene key %s.' % e)
    except (TypeError, AttributeError) as e:
        raise SceneParseError('Malformed scene: %s' % e)


def _as_int(value):
    if isinstance(value, bool) or not isinstance(value, int):
        raise SceneParseError('Expected an integer, got %r.' % (value,))
    return value


def _ownership(scene):
    """Index of the frontmost layer seen at each pixel of the left and of the right image."""
    left = np.full((scene.height, scene.width), _NO_LAYER, dtype=np.int64)
    right = np.full((scene.height, scene.width), _NO_LAYER, dtype=np.int64)
    for i, layer in enumerate(scene.layers):
        r, d = layer.region, layer.disparity
        left[r.y:r.bottom, r.x:r.right] = i
        right[r.y:r.bottom, max(0, r.x - d):max(0, r.right - d)] = i
    return left, right


def _correspondence(scene, left_owner, right_owner):
    """Ground-truth disparity, and the mask of left pixels whose correspondent is hidden in the right image."""
    disparities = np.array([l.disparity for l in scene.layers] + [0], dtype=np.int64)
    covered = left_owner != _NO_LAYER
    d = disparities[left_owner]
    columns = np.arange(scene.width)[np.newaxis, :] - d
    in_frame = covered & (columns >= 0)
    seen = np.take_along_axis(right_owner, np.clip(columns, 0, scene.width - 1), axis=1)
    visible = in_frame & (seen == left_owner)
    truth = np.where(visible, d, UNMATCHED)
    return truth, in_frame & ~visible


class _TexelRow(object):
    """
    Texels of one scanline keyed by left-image column. A new texel is redrawn until
    its SAD to every texel within window columns exceeds threshold.
    """
    def __init__(self, capacity, window, threshold):
        self.window = window
        self.threshold = threshold
        self.positions = np.empty(capacity, dtype=np.int64)
        self.colors = np.empty((capacity, 3), dtype=np.int32)
        self.count = 0

    def draw(self, rng, position):
        near = np.abs(self.positions[:self.count] - position) <= self.window
        neighbours = self.colors[:self.count][near]
        for _ in range(_MAX_ATTEMPTS):
            color = rng.integers(0, 256, size=3)
            if not len(neighbours) or np.abs(neighbours - color).sum(axis=1).min() > self.threshold:
                self.positions[self.count] = position
                self.colors[self.count] = color
                self.count += 1
                return color
        raise SceneInvalid('Cannot draw a texel distinct from %d neighbour(s) within SAD %d; '
                           'lower the tolerance or max_disparity.' % (len(neighbours), self.threshold))


def generate_pair(scene):
    """Returns (StereoPair, ground truth DisparityMap) for the scene."""
    start_time = time.time()
    left_owner, right_owner = _ownership(scene)
    window = 2 * scene.max_disparity
    threshold = sad_threshold(scene.match_config)
    layer_rngs = [np.random.default_rng(l.texture_seed) for l in scene.layers]
    void_rng = np.random.default_rng(scene.seed)

    textures = np.zeros((len(scene.layers), scene.height, scene.width, 3), dtype=np.uint8)
    left_void = np.zeros((scene.height, scene.width, 3), dtype=np.uint8)
    right_void = np.zeros((scene.height, scene.width, 3), dtype=np.uint8)
    capacity = scene.width * (len(scene.layers) + 2)
    for y in range(scene.height):
        texels = _TexelRow(capacity, window, threshold)
        for i, layer in enumerate(scene.layers):
            r = layer.region
            if r.y <= y < r.bottom:
                for x in range(r.x, r.right):
                    textures[i, y, x] = texels.draw(layer_rngs[i], x)
        for x in np.flatnonzero(left_owner[y] == _NO_LAYER).tolist():
            left_void[y, x] = texels.draw(void_rng, x)
        for c in np.flatnonzero(right_owner[y] == _NO_LAYER).tolist():
            right_void[y, c] = texels.draw(void_rng, c)

    rows, cols = np.indices((scene.height, scene.width))
    left = left_void.copy()
    covered = left_owner != _NO_LAYER
    left[covered] = textures[left_owner[covered], rows[covered], cols[covered]]
    right = right_void.copy()
    covered = right_owner != _NO_LAYER
    disparities = np.array([l.disparity for l in scene.layers], dtype=np.int64)
    source = cols[covered] + disparities[right_owner[covered]]
    right[covered] = textures[right_owner[covered], rows[covered], source]

    truth, _ = _correspondence(scene, left_owner, right_owner)
    pair = make_pair(RgbImage(scene.width, scene.height, left), RgbImage(scene.width, scene.height, right))
    log.info('Generated %r in %.3fs.' % (scene, time.time() - start_time))
    return pair, DisparityMap(truth)


def occlusion_mask(scene):
    left_owner, right_owner = _ownership(scene)
    return _correspondence(scene, left_owner, right_owner)[1]


def jitter(img, amplitude, seed=0):
    """Adds independent uniform integer noise in [-amplitude, amplitude] to every channel."""
    if amplitude <= 0:
        return img
    rng = np.random.default_rng(seed)
    noise = rng.integers(-amplitude, amplitude + 1, size=img.pixels.shape)
    pixels = np.clip(img.pixels.astype(np.int32) + noise, 0, 255)
    return RgbImage(img.width, img.height, pixels)


def evaluate(result, truth):
    """
    density counts matched result pixels over all pixels; the error rates are taken
    over pixels matched in both maps and are 0 when there are none.
    """
    if (result.width, result.height) != (truth.width, truth.height):
        raise DimensionMismatch('Result is %dx%d but ground truth is %dx%d.'
                                % (result.width, result.height, truth.width, truth.height))
    pixels = result.width * result.height
    matched = result.matched_count()
    support = result.is_matched() & truth.is_matched()
    evaluated = int(np.count_nonzero(support))
    if evaluated:
        errors = np.abs(result.disparity[support].astype(np.int64) - truth.disparity[support])
        bad_pixel_rate = np.count_nonzero(errors > 0) / float(evaluated)
        mean_abs_disparity_error = float(errors.mean())
    else:
        bad_pixel_rate = mean_abs_disparity_error = 0.0
    return EvalReport(density=matched / float(pixels),
                      bad_pixel_rate=float(bad_pixel_rate),
                      mean_abs_disparity_error=mean_abs_disparity_error,
                      pixels=pixels, matched=matched, evaluated=evaluated)
