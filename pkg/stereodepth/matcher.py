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

import math
import time
import logging
from collections import namedtuple
import numpy as np
from stereodepth.exception import ConfigInvalid, DimensionMismatch
from stereodepth.util import parse_concurrency, make_executor

log = logging.getLogger(__name__)

UNMATCHED = -1
MAX_COST = 765
DEFAULT_TOLERANCE = 0.025
DEFAULT_MAX_DISPARITY = 64

_REJECTED = MAX_COST + 1

Matched = namedtuple('Matched', ['disparity', 'cost'])


class MatchConfig(object):
    """
    tolerance_fraction is the accepted SAD as a fraction of MAX_COST.
    max_disparity=None means min(DEFAULT_MAX_DISPARITY, width - 1) for the image at hand.
    """
    def __init__(self, tolerance_fraction=DEFAULT_TOLERANCE, max_disparity=None):
        try:
            tolerance_fraction = float(tolerance_fraction)
        except (TypeError, ValueError):
            raise ConfigInvalid('tolerance (%r) is not a number.' % (tolerance_fraction,))
        if not 0.0 <= tolerance_fraction <= 1.0:
            raise ConfigInvalid('tolerance (%r) must be in [0, 1].' % tolerance_fraction)
        if max_disparity is not None:
            try:
                is_integer = not isinstance(max_disparity, bool) and int(max_disparity) == max_disparity
            except (TypeError, ValueError):
                is_integer = False
            if not is_integer:
                raise ConfigInvalid('max-disparity (%r) is not an integer.' % (max_disparity,))
            max_disparity = int(max_disparity)
            if max_disparity < 1:
                raise ConfigInvalid('max-disparity (%d) must be >= 1.' % max_disparity)
        self.tolerance_fraction = tolerance_fraction
        self.max_disparity = max_disparity

    def __repr__(self):
        return 'MatchConfig(tolerance_fraction=%r, max_disparity=%r)' % (self.tolerance_fraction,
                                                                          self.max_disparity)

    def __eq__(self, other):
        return isinstance(other, MatchConfig) \
            and self.tolerance_fraction == other.tolerance_fraction \
            and self.max_disparity == other.max_disparity

    def __ne__(self, other):
        return not self.__eq__(other)

    def window(self, width):
        if self.max_disparity is not None:
            return self.max_disparity
        return max(0, min(DEFAULT_MAX_DISPARITY, width - 1))

    def resolve(self, width):
        """Returns a copy whose max_disparity is concrete and checked against the image width."""
        if self.max_disparity is not None and self.max_disparity >= width:
            raise ConfigInvalid('max-disparity (%d) must be less than the image width (%d).'
                                % (self.max_disparity, width))
        resolved = MatchConfig(self.tolerance_fraction)
        resolved.max_disparity = self.window(width)
        return resolved


def sad(p, q):
    return abs(p[0] - q[0]) + abs(p[1] - q[1]) + abs(p[2] - q[2])


def sad_array(p, q):
    """Vectorized sad over the last axis of two broadcastable (..., 3) arrays."""
    return np.abs(np.asarray(p, dtype=np.int32) - np.asarray(q, dtype=np.int32)).sum(axis=-1)


def sad_threshold(cfg):
    # The epsilon absorbs products like 0.2 * 765 landing a hair below an integer.
    return int(math.floor(cfg.tolerance_fraction * MAX_COST + 1e-9))


class RowMatch(object):
    """Disparity and cost of each left pixel of one scanline; UNMATCHED in both for unmatched pixels."""
    def __init__(self, disparity, cost):
        self.disparity = np.asarray(disparity, dtype=np.int32)
        self.cost = np.asarray(cost, dtype=np.int32)

    def __len__(self):
        return len(self.disparity)

    def __eq__(self, other):
        return isinstance(other, RowMatch) \
            and np.array_equal(self.disparity, other.disparity) \
            and np.array_equal(self.cost, other.cost)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __repr__(self):
        return 'RowMatch(disparity=%r, cost=%r)' % (self.disparity.tolist(), self.cost.tolist())

    def cells(self):
        return [None if d == UNMATCHED else Matched(d, c)
                for d, c in zip(self.disparity.tolist(), self.cost.tolist())]


def _check_rows(left_row, right_row):
    if len(left_row) != len(right_row):
        raise DimensionMismatch('Left row has %d pixel(s) but right row has %d.' % (len(left_row), len(right_row)))


def match_row_oracle(left_row, right_row, cfg):
    """
    Brute force scanline matching, left to right. Each left pixel takes its cheapest
    candidate within the tolerance (ties to the smallest disparity). A right column
    already claimed is taken over only at a strictly lower cost, which leaves the
    previous claimant unmatched; otherwise the next candidate is tried.
    """
    _check_rows(left_row, right_row)
    left_row = [tuple(int(c) for c in p) for p in left_row]
    right_row = [tuple(int(c) for c in p) for p in right_row]
    width = len(left_row)
    max_disparity = cfg.window(width)
    threshold = sad_threshold(cfg)
    disparity = [UNMATCHED] * width
    cost = [UNMATCHED] * width
    owner = dict()
    for x_l in range(width):
        candidates = []
        for x_r in range(max(0, x_l - max_disparity), x_l + 1):
            c = sad(left_row[x_l], right_row[x_r])
            if c <= threshold:
                candidates.append((c, x_l - x_r, x_r))
        candidates.sort()
        for c, d, x_r in candidates:
            previous = owner.get(x_r)
            if previous is not None:
                if c >= cost[previous]:
                    continue
                disparity[previous] = cost[previous] = UNMATCHED
            owner[x_r] = x_l
            disparity[x_l] = d
            cost[x_l] = c
            break
    return RowMatch(disparity, cost)


def _cost_volume(left, right, max_disparity):
    width = len(left)
    volume = np.full((width, max_disparity + 1), _REJECTED, dtype=np.int32)
    for d in range(min(max_disparity, width - 1) + 1):
        volume[d:, d] = np.abs(left[d:] - right[:width - d]).sum(axis=1)
    return volume


def match_row_fast(left_row, right_row, cfg):
    """Same result as match_row_oracle, with the cost volume computed one shift at a time."""
    _check_rows(left_row, right_row)
    left = np.asarray(left_row, dtype=np.int32).reshape(-1, 3)
    right = np.asarray(right_row, dtype=np.int32).reshape(-1, 3)
    width = len(left)
    threshold = sad_threshold(cfg)
    volume = _cost_volume(left, right, cfg.window(width))
    volume[volume > threshold] = _REJECTED
    # Stable sort keeps equal costs in ascending disparity order.
    order = np.argsort(volume, axis=1, kind='stable')
    counts = (volume <= threshold).sum(axis=1)

    disparity = [UNMATCHED] * width
    cost = [UNMATCHED] * width
    owner = [UNMATCHED] * width
    volume = volume.tolist()
    for x_l in np.flatnonzero(counts).tolist():
        costs = volume[x_l]
        for d in order[x_l, :counts[x_l]].tolist():
            c = costs[d]
            x_r = x_l - d
            previous = owner[x_r]
            if previous != UNMATCHED:
                if c >= cost[previous]:
                    continue
                disparity[previous] = cost[previous] = UNMATCHED
            owner[x_r] = x_l
            disparity[x_l] = d
            cost[x_l] = c
            break
    return RowMatch(disparity, cost)


class DisparityMap(object):
    def __init__(self, disparity, cost=None):
        self.disparity = np.asarray(disparity, dtype=np.int32)
        if self.disparity.ndim != 2:
            raise ValueError('Disparity must be a 2-D array, got %d dimension(s).' % self.disparity.ndim)
        if cost is None:
            cost = np.where(self.disparity == UNMATCHED, UNMATCHED, 0)
        self.cost = np.asarray(cost, dtype=np.int32)
        if self.cost.shape != self.disparity.shape:
            raise ValueError('Cost shape %r differs from disparity shape %r.' % (self.cost.shape,
                                                                                  self.disparity.shape))
        self.height, self.width = self.disparity.shape

    @classmethod
    def from_rows(cls, rows):
        return cls(np.stack([r.disparity for r in rows]), np.stack([r.cost for r in rows]))

    @classmethod
    def unmatched(cls, width, height):
        return cls(np.full((height, width), UNMATCHED, dtype=np.int32))

    def __eq__(self, other):
        return isinstance(other, DisparityMap) \
            and np.array_equal(self.disparity, other.disparity) \
            and np.array_equal(self.cost, other.cost)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __repr__(self):
        return 'DisparityMap(%dx%d, matched=%d)' % (self.width, self.height, self.matched_count())

    def row(self, y):
        return RowMatch(self.disparity[y], self.cost[y])

    def cell(self, x, y):
        d = int(self.disparity[y, x])
        return None if d == UNMATCHED else Matched(d, int(self.cost[y, x]))

    def is_matched(self):
        return self.disparity != UNMATCHED

    def matched_count(self):
        return int(np.count_nonzero(self.is_matched()))


def _match_rows(left_rows, right_rows, cfg):
    return [match_row_fast(l, r, cfg) for l, r in zip(left_rows, right_rows)]


def _chunks(height, count):
    bounds = np.linspace(0, height, num=min(count, height) + 1).astype(int).tolist()
    return [(lo, hi) for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]


def match_pair(pair, cfg, concurrency=None):
    """
    Matches every scanline of the pair independently. Rows are distributed over the
    pool described by concurrency (see util.parse_concurrency); the map is the same
    for any pool.
    """
    cfg = cfg.resolve(pair.width)
    concurrency = parse_concurrency(concurrency)
    left, right = pair.left.pixels, pair.right.pixels
    start_time = time.time()
    if concurrency['max_workers'] <= 1:
        rows = _match_rows(left, right, cfg)
    else:
        spans = _chunks(pair.height, concurrency['max_workers'] * 4)
        with make_executor(concurrency) as executor:
            futures = [executor.submit(_match_rows, left[lo:hi], right[lo:hi], cfg) for lo, hi in spans]
            rows = [row for future in futures for row in future.result(timeout=concurrency['timeout'])]
    dmap = DisparityMap.from_rows(rows)
    log.info('Matched %d/%d pixel(s) with %r in %.3fs.'
             % (dmap.matched_count(), dmap.width * dmap.height, cfg, time.time() - start_time))
    return dmap
