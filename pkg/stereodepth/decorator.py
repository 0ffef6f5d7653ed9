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


from functools import wraps
import concurrent.futures
import sys
import numpy as np
from stereodepth.util import exc_info_to_string
from stereodepth.exception import MultipleErrors


def _check_positive_int(name, value):
    if type(value) is not int:
        raise TypeError('%s is not an integer.' % name)
    if value <= 0:
        raise ValueError('%s <= 0.' % name)


def _check_generators(generators):
    for name, gen in generators.items():
        if not callable(gen):
            raise TypeError('Generator %r of %r is not callable.' % (gen, name))


def _draw(seed, trial, generators):
    rng = np.random.default_rng([seed, trial])
    return dict((name, gen(rng)) for name, gen in sorted(generators.items()))


def _run_trial(fn, seed, trial, generators, args, kwargs):
    params = _draw(seed, trial, generators)
    params.update(kwargs)
    try:
        fn(*args, **params)
        return None
    except Exception:
        return 'Trial %d (seed %r):\n%s' % (trial, seed, exc_info_to_string(sys.exc_info()))


def randomized(trials, seed=0, **generators):
    """
    Calls the decorated function once per trial. Each keyword in generators maps to
    a callable taking a numpy Generator; trial i draws from the generator seeded
    with [seed, i], so any failing trial can be replayed on its own.
    Failures of all trials are raised together as MultipleErrors.
    """
    _check_positive_int('trials', trials)
    _check_generators(generators)

    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            errors = [_run_trial(func, seed, trial, generators, args, kwargs) for trial in range(trials)]
            errors = [e for e in errors if e is not None]
            if errors:
                raise MultipleErrors(errors)
        return wrapper
    return decorator


def multi_threading_randomized(max_workers, trials, seed=0, **generators):
    _check_positive_int('max_workers', max_workers)
    _check_positive_int('trials', trials)
    _check_generators(generators)

    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            with concurrent.futures.ThreadPoolExecutor(max_workers) as executor:
                futures = [executor.submit(_run_trial, func, seed, trial, generators, args, kwargs)
                           for trial in range(trials)]
                errors = [f.result() for f in futures]
            errors = [e for e in errors if e is not None]
            if errors:
                raise MultipleErrors(errors)
        return wrapper
    return decorator
