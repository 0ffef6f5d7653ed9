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
from stereodepth.exception import (MalformedHeader, UnsupportedMaxval, TruncatedPayload, DimensionMismatch)
from stereodepth.util import atomic_write

log = logging.getLogger(__name__)

MAXVAL = 255
_WHITESPACE = b' \t\n\r\x0b\x0c'


class _Raster(object):
    """Base class of the 8-bit rasters. pixels is a row-major numpy uint8 array."""
    channels = 1

    def __init__(self, width, height, pixels):
        self.width = int(width)
        self.height = int(height)
        if self.width < 1 or self.height < 1:
            raise ValueError('Image dimensions must be >= 1, got %dx%d.' % (self.width, self.height))
        pixels = np.asarray(pixels)
        if pixels.size and (pixels.min() < 0 or pixels.max() > MAXVAL):
            raise ValueError('Channel values must be in [0, %d].' % MAXVAL)
        shape = (self.height, self.width) if self.channels == 1 else (self.height, self.width, self.channels)
        if pixels.size != int(np.prod(shape)):
            raise ValueError('Expected %d value(s), got %d.' % (int(np.prod(shape)), pixels.size))
        self.pixels = pixels.astype(np.uint8).reshape(shape)

    def __eq__(self, other):
        return type(self) is type(other) \
            and self.width == other.width \
            and self.height == other.height \
            and np.array_equal(self.pixels, other.pixels)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __repr__(self):
        return '%s(%dx%d)' % (type(self).__name__, self.width, self.height)

    def row(self, y):
        return self.pixels[y]


class RgbImage(_Raster):
    channels = 3

    @classmethod
    def from_triples(cls, width, height, triples):
        return cls(width, height, np.array(list(triples), dtype=np.int64).reshape(-1, 3))

    def pixel(self, x, y):
        return tuple(int(c) for c in self.pixels[y, x])


class GrayImage(_Raster):
    channels = 1

    def pixel(self, x, y):
        return int(self.pixels[y, x])


class StereoPair(object):
    def __init__(self, left, right):
        self.left = left
        self.right = right

    @property
    def width(self):
        return self.left.width

    @property
    def height(self):
        return self.left.height


def make_pair(left, right):
    if left.width != right.width or left.height != right.height:
        raise DimensionMismatch('Left image is %dx%d but right image is %dx%d.'
                                % (left.width, left.height, right.width, right.height))
    return StereoPair(left, right)


def _skip_whitespace_and_comments(data, pos):
    while pos < len(data):
        if data[pos] in _WHITESPACE:
            pos += 1
        elif data[pos:pos + 1] == b'#':
            end = data.find(b'\n', pos)
            pos = len(data) if end < 0 else end + 1
        else:
            break
    return pos


def _read_token(data, pos, what):
    pos = _skip_whitespace_and_comments(data, pos)
    start = pos
    while pos < len(data) and data[pos] not in _WHITESPACE and data[pos:pos + 1] != b'#':
        pos += 1
    token = data[start:pos]
    if not token.isdigit():
        raise MalformedHeader('Expected a decimal %s in header, got %r.' % (what, token))
    return int(token), pos


def _read_header(data, magic):
    data = bytes(data)
    if data[:2] != magic:
        raise MalformedHeader('Bad magic number %r, expected %r.' % (data[:2], magic))
    pos = 2
    if pos < len(data) and data[pos] not in _WHITESPACE and data[pos:pos + 1] != b'#':
        raise MalformedHeader('Magic number %r is not followed by whitespace.' % magic)
    width, pos = _read_token(data, pos, 'width')
    height, pos = _read_token(data, pos, 'height')
    maxval, pos = _read_token(data, pos, 'maxval')
    if width < 1 or height < 1:
        raise MalformedHeader('Image dimensions must be >= 1, got %dx%d.' % (width, height))
    if maxval != MAXVAL:
        raise UnsupportedMaxval('Maxval %d is not supported, only %d.' % (maxval, MAXVAL))
    # Exactly one whitespace byte separates the header from the payload.
    if pos >= len(data) or data[pos] not in _WHITESPACE:
        raise MalformedHeader('Header is not terminated by whitespace.')
    return width, height, data, pos + 1


def _read_payload(data, pos, count):
    payload = data[pos:pos + count]
    if len(payload) < count:
        raise TruncatedPayload('Expected %d payload byte(s), got %d.' % (count, len(payload)))
    if len(data) > pos + count:
        log.debug('Ignored %d trailing byte(s).' % (len(data) - pos - count))
    return np.frombuffer(payload, dtype=np.uint8)


def read_ppm(data):
    width, height, data, pos = _read_header(data, b'P6')
    payload = _read_payload(data, pos, width * height * 3)
    return RgbImage(width, height, payload)


def read_pgm(data):
    width, height, data, pos = _read_header(data, b'P5')
    payload = _read_payload(data, pos, width * height)
    return GrayImage(width, height, payload)


def _encode(magic, img):
    header = ('%s\n%d %d\n%d\n' % (magic, img.width, img.height, MAXVAL)).encode('ascii')
    return header + np.ascontiguousarray(img.pixels, dtype=np.uint8).tobytes()


def write_ppm(img):
    return _encode('P6', img)


def write_pgm(img):
    return _encode('P5', img)


def read_ppm_file(path):
    with open(path, 'rb') as f:
        img = read_ppm(f.read())
    log.info('Read %dx%d image from %r.' % (img.width, img.height, path))
    return img


def read_pgm_file(path):
    with open(path, 'rb') as f:
        return read_pgm(f.read())


def write_file(path, img):
    """Encodes img as PPM or PGM according to its type and writes it atomically."""
    data = write_ppm(img) if isinstance(img, RgbImage) else write_pgm(img)
    atomic_write(path, data)
