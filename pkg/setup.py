#!/usr/bin/env python
"""Verification and search toolkit for Deaconescu numbers.

A Deaconescu number is a composite n >= 4 for which Schemmel's totient
S2(n) divides phi(n) - 1. This package evaluates both totients exactly,
checks the proven structural constraints, machine-verifies the inequality
certificates behind the known lower bounds and scans integer ranges.

"""

from setuptools import setup, find_packages

DOCLINES = __doc__.split("\n")

CLASSIFIERS = """\
Development Status :: 3 - Alpha
Intended Audience :: Science/Research
Intended Audience :: Developers
License :: OSI Approved :: BSD License
Programming Language :: Python
Programming Language :: Python :: 3
Topic :: Software Development
Topic :: Scientific/Engineering :: Mathematics
Operating System :: Microsoft :: Windows
Operating System :: POSIX
Operating System :: Unix
Operating System :: MacOS
"""

# pylint: disable=invalid-name

setup(
    name='pydeaconescu',
    description=DOCLINES[0],
    long_description="\n".join(DOCLINES[2:]),
    license='BSD 3-Clause',
    classifiers=[_f for _f in CLASSIFIERS.split('\n') if _f],
    platforms=["Windows", "Linux", "Solaris", "Mac OS-X", "Unix"],
    python_requires='>=3.9',
    install_requires=[
        "numpy >= 1.25",
        "tqdm",
    ],
    tests_require=['pytest', 'ddt', 'sympy'],
    entry_points = {
        'console_scripts': [
            'deaconescu=pydeaconescu.cli:main',
        ],
    },
    packages=find_packages(exclude=['test']),
    version='0.1.0',
    include_package_data=True,
)
