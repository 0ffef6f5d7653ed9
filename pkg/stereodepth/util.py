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


import os
import sys
import logging
import logging.config
import tempfile
import concurrent.futures
from traceback import format_exception
import yaml
from stereodepth.exception import ConfigInvalid

log = logging.getLogger(__name__)

_concurrency_types = {
    'threads': concurrent.futures.ThreadPoolExecutor,
    'processes': concurrent.futures.ProcessPoolExecutor
}

_verbosity_to_level = {
    0: logging.WARNING,
    1: logging.INFO,
    2: logging.DEBUG
}


def exc_info_to_string(exc_info):
    exctype, value, tb = exc_info
    return ''.join(format_exception(exctype, value, tb)).rstrip()


def parse_concurrency(concurrency=None):
    """
    Returns a complete concurrency dict like
    {'type': 'threads', 'max_workers': 1, 'timeout': None}.
    Missing keys take these defaults; max_workers must be a positive integer.
    """
    concurrency = dict(concurrency) if concurrency else {
        'type': 'threads',
        'max_workers': 1,
        'timeout': None
    }
    try:
        max_workers = int(concurrency.get('max_workers', 1))
    except (TypeError, ValueError):
        raise ConfigInvalid('max_workers (%r) is not an integer.' % concurrency.get('max_workers'))
    if max_workers < 1:
        raise ConfigInvalid('max_workers (%d) must be >= 1.' % max_workers)
    concurrency['max_workers'] = max_workers
    if 'timeout' not in concurrency:
        concurrency['timeout'] = None
    if 'type' not in concurrency:
        concurrency['type'] = 'threads'
    if concurrency['type'] not in _concurrency_types:
        raise ConfigInvalid('Concurrency type (%r) is not one of %r.'
                            % (concurrency['type'], sorted(_concurrency_types)))
    return concurrency


def make_executor(concurrency):
    pool = _concurrency_types[concurrency['type']]
    return pool(concurrency['max_workers'])


def set_logging(config_path=None, verbosity=0):
    """Configures logging from a YAML dictConfig file, or a plain stderr handler."""
    if config_path:
        with open(config_path, mode='r') as f:
            logging.config.dictConfig(yaml.safe_load(f.read()))
        return
    handler = logging.StreamHandler(stream=sys.stderr)
    handler.setFormatter(logging.Formatter('[%(name)s][%(levelname)s]: %(message)s'))
    logger = logging.getLogger('stereodepth')
    logger.handlers = [handler]
    logger.setLevel(_verbosity_to_level.get(verbosity, logging.DEBUG))
    logger.propagate = False


def _current_umask():
    umask = os.umask(0)
    os.umask(umask)
    return umask


def atomic_write(path, data):
    """Writes bytes to path through a temp file in the same directory, then renames it into place."""
    mode = 0o666 & ~_current_umask()
    dest_dir = os.path.dirname(os.path.abspath(path))
    if not os.path.exists(dest_dir):
        os.makedirs(dest_dir)
    fd, tmp_path = tempfile.mkstemp(dir=dest_dir, prefix='.' + os.path.basename(path) + '.', suffix='.tmp')
    try:
        with os.fdopen(fd, 'wb') as f:
            f.write(data)
        # mkstemp creates 0600; the result gets the permissions open() would give.
        os.chmod(tmp_path, mode)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise
    log.debug('Wrote %d byte(s) to %r.' % (len(data), path))
