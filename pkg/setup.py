# -*- coding: utf-8 -*-
from setuptools import setup, find_packages

try:
    long_description = open("README.md").read()
except IOError:
    long_description = ""

setup(
    name="symplectic-realization",
    version="0.0.1",
    description="Symplectic realizations of quasi-Poisson bivectors, computed order by order in exact rational arithmetic.",
    license="MIT",
    author="Matthew Lee",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    install_requires=[
        "numpy>=1.24",
        "sympy>=1.12",
        "typer>=0.9",
    ],
    entry_points={
        "console_scripts": ["symplectic-realization=cli.main:app"],
    },
    long_description=long_description,
    long_description_content_type="text/markdown",
    classifiers=[
        "Programming Language :: Python",
        "Programming Language :: Python :: 3.11",
    ]
)
