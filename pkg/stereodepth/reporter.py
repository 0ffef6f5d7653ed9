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
import abc
import codecs
import datetime
import logging
import jinja2
import markupsafe
import stereodepth

log = logging.getLogger(__name__)

REPORT_KEYS = ('density', 'bad_pixel_rate', 'mean_abs_disparity_error', 'pixels', 'matched', 'evaluated')


def format_rows(report):
    """(key, text) pairs of an EvalReport; rates and errors with six decimals."""
    rows = []
    for key in REPORT_KEYS:
        value = getattr(report, key)
        rows.append((key, '%.6f' % value if isinstance(value, float) else '%d' % value))
    return rows


def _html_lines(text):
    """Escapes text and keeps its line breaks as <br>."""
    return markupsafe.Markup('<br>').join(text.splitlines())


class Reporter(abc.ABC):
    """Base class of all reporter classes"""

    def __init__(self, templates_path=None):
        self.templates_path = templates_path
        self.jinja_env = self.make_jinja_env()

    def __getstate__(self):
        state = self.__dict__.copy()
        if 'jinja_env' in state:
            del state['jinja_env']
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self.__dict__['jinja_env'] = self.make_jinja_env()

    def make_jinja_env(self):
        if self.templates_path:
            loader = jinja2.FileSystemLoader(self.templates_path, encoding='utf-8')
        else:
            loader = jinja2.PackageLoader(stereodepth.PACKAGE, 'templates', encoding='utf-8')
        return jinja2.Environment(loader=loader, autoescape=jinja2.select_autoescape(['html']))

    @abc.abstractmethod
    def report(self, report, name='eval', description=''):
        pass


class TextReporter(Reporter):
    """Writes key=value lines, one per EvalReport field."""
    def __init__(self, stream=None, templates_path=None, template='report.txt'):
        super(TextReporter, self).__init__(templates_path)
        self.stream = stream
        self.template = template

    def render(self, report):
        return self.jinja_env.get_template(self.template).render(rows=format_rows(report))

    def report(self, report, name='eval', description=''):
        stream = self.stream or sys.stdout
        stream.write(self.render(report))
        stream.flush()


class HtmlReporter(Reporter):
    def __init__(self, dest='results', title='Stereo Evaluation', templates_path=None, template='report.html'):
        super(HtmlReporter, self).__init__(templates_path)
        self.dest = dest
        self.title = title
        self.template = template

    def report(self, report, name='eval', description=''):
        if not os.path.exists(self.dest):
            os.makedirs(self.dest)
        category = 'danger' if report.bad_pixel_rate > 0 else 'success'
        html = self.jinja_env.get_template(self.template).render(app=stereodepth.PACKAGE,
                                                                 version=stereodepth.VERSION,
                                                                 date_time=str(datetime.datetime.now()),
                                                                 title=self.title,
                                                                 name=name,
                                                                 description=_html_lines(description),
                                                                 category=category,
                                                                 rows=format_rows(report))
        filename = os.path.join(self.dest, name + '_report.html')
        with codecs.open(filename, encoding='utf-8', mode='w+') as f:
            f.write(html)
        log.info('Wrote HTML report %r.' % filename)
        return filename
