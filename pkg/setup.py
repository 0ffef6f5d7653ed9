from setuptools import setup, find_packages
from os import path

NAME = 'stereodepth'
VERSION = '0.1.0'

long_description = (
    open(path.join('docs', 'README.rst'), 'r').read() + '\n' +
    open(path.join('docs', 'CHANGELOG.rst'), 'r').read()
)

requires = ['numpy', 'PyYAML', 'Jinja2', 'MarkupSafe']

setup(
    name=NAME,
    version=VERSION,

    description='Depth-maps from rectified stereo pairs by pixel-to-pixel matching with a tolerance gate, '
                'plus a synthetic ground-truth harness.',
    long_description=long_description,

    license='Apache License, Version 2.0',

    # See https://pypi.python.org/pypi?%3Aaction=list_classifiers
    classifiers=[
        'Development Status :: 3 - Alpha',

        'Intended Audience :: Developers',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Image Recognition',

        'License :: OSI Approved :: Apache Software License',

        'Operating System :: POSIX :: Linux',
        'Operating System :: MacOS :: MacOS X',

        'Programming Language :: Python :: 3',
    ],

    keywords='stereo vision, depth map, disparity, sum of absolute differences',

    # See https://packaging.python.org/en/latest/requirements.html
    install_requires=requires,
    python_requires='>=3.6',

    extras_require={
        'test': ['coverage', 'hypothesis'],
    },

    packages=find_packages(include=[NAME]),
    include_package_data=True,
    package_data={
        NAME: ['templates/*.html', 'templates/*.txt'],
    },
    entry_points={
        'console_scripts': ['stereodepth=stereodepth.cli:console_main'],
    },
)
