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

import logging
import numpy as np
from stereodepth.imageio import GrayImage, MAXVAL
from stereodepth.matcher import DisparityMap, UNMATCHED
from stereodepth.exception import DisparityOverflow

log = logging.getLogger(__name__)

WHITE = MAXVAL
BLACK = 0
# Decimal places kept before rounding, so that rescaling every depth cannot flip a half.
_ROUNDING_DIGITS = 6


class DepthMap(object):
    """Relative depth per left pixel with focal length times baseline taken as 1. NaN marks unmatched pixels."""
    def __init__(self, values):
        self.values = np.asarray(values, dtype=np.float64)
        if self.values.ndim != 2:
            raise ValueError('Depth must be a 2-D array, got %d dimension(s).' % self.values.ndim)
        matched = self.is_matched()
        if not np.all(np.isfinite(self.values[matched]) & (self.values[matched] > 0)):
            raise ValueError('Depth values must be positive and finite.')
        self.height, self.width = self.values.shape

    def __eq__(self, other):
        return isinstance(other, DepthMap) and np.array_equal(self.values, other.values, equal_nan=True)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __repr__(self):
        return 'DepthMap(%dx%d)' % (self.width, self.height)

    def is_matched(self):
        return ~np.isnan(self.values)

    def cell(self, x, y):
        value = self.values[y, x]
        return None if np.isnan(value) else float(value)

    def scaled(self, factor):
        return DepthMap(self.values * factor)


def disparity_to_depth(dmap):
    matched = dmap.is_matched()
    measured = matched & (dmap.disparity >= 1)
    values = np.full(dmap.disparity.shape, np.nan)
    values[measured] = 1.0 / dmap.disparity[measured]
    # Zero disparity is beyond every measured depth; it gets twice the farthest one.
    cap = 2.0 * values[measured].max() if measured.any() else 1.0
    at_infinity = matched & (dmap.disparity == 0)
    values[at_infinity] = cap
    log.debug('%d pixel(s) at zero disparity, capped at depth %r.' % (np.count_nonzero(at_infinity), cap))
    return DepthMap(values)


def render(depth):
    """
    Grayscale rendering: 255 - depth * 255 / maxdepth, rounded half up and clamped,
    so the farthest pixels are black. Unmatched pixels are white.
    """
    matched = depth.is_matched()
    gray = np.full(depth.values.shape, WHITE, dtype=np.uint8)
    if matched.any():
        maxdepth = depth.values[matched].max()
        color = WHITE - WHITE * (depth.values[matched] / maxdepth)
        color = np.floor(np.round(color, _ROUNDING_DIGITS) + 0.5)
        gray[matched] = np.clip(color, BLACK, WHITE).astype(np.uint8)
    else:
        log.warning('No matched pixel, the depth-map is blank.')
    return GrayImage(depth.width, depth.height, gray)


def render_disparity(dmap):
    """Disparity as gray level with 255 for unmatched pixels."""
    matched = dmap.is_matched()
    if matched.any() and dmap.disparity[matched].max() >= WHITE:
        raise DisparityOverflow('Disparity %d cannot be written as gray, the limit is %d.'
                                % (dmap.disparity[matched].max(), WHITE - 1))
    gray = np.where(matched, dmap.disparity, WHITE)
    return GrayImage(dmap.width, dmap.height, gray)


def gray_to_disparity(img):
    gray = img.pixels.astype(np.int32)
    return DisparityMap(np.where(gray == WHITE, UNMATCHED, gray))
