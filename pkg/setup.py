#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from setuptools import setup, find_packages

setup(
    name="orthopoly-gg",
    version="0.1",
    packages=find_packages(exclude=["tests", "examples", "examples.*"]),
    py_modules=["config", "logging_utils"],
    install_requires=[
        "mpmath",
        "numpy",
        "pandas",
        "python-dotenv",
    ],
    extras_require={"test": ["pytest", "hypothesis"]},
    entry_points={"console_scripts": ["opq = scripts.opq:main"]},
    description="Double Geronimus and Sobolev orthogonal polynomials at arbitrary precision",
    long_description=open("README.md").read(),
)
