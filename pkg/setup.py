#!/usr/bin/env python3

from setuptools import setup, find_packages

setup(
    name="pysusy",
    version="0.1",
    packages=find_packages(exclude=["tests"]),

    install_requires=['termcolor', 'numpy', 'scipy'],
    extras_require={
        'test': ['pytest', 'pytest-timeout'],
        'docs': ['sphinx'],
    },

    package_data={
        '': ['*.txt', '*.rst'],
    },

    entry_points={
        'console_scripts': ['pysusy=pysusy.cli:main'],
    },

    description="Numerical laboratory for supersymmetric quantum mechanics",
    keywords="supersymmetry quantum-mechanics variational shooting numerov",
    classifiers=[
        'License :: OSI Approved :: MIT License',
        'Topic :: Scientific/Engineering :: Physics',
    ],
    python_requires='>=3.7',
    long_description='''
pysusy builds the partner Hamiltonians of one-dimensional supersymmetric
quantum mechanics from a superpotential and computes their spectra with
several independent methods: closed-form Rayleigh-Ritz pencils, Numerov
shooting, logarithmic perturbation theory, delta-potential scattering,
shape-invariant hierarchies and Frobenius series of the triconfluent Heun
equation. Every computation is reachable from the ``pysusy`` command and
prints CSV, TSV or JSON tables.
'''
)
