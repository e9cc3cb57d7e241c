#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from setuptools import setup, find_packages
setup(name="bichro",
      version="0.1.0",
      packages=find_packages(".", include=["bichro", "bichro.*"]),
      install_requires=["numpy", "scipy", "pandas"],
      entry_points={"console_scripts": ["bichro = bichro.cli:main"]})
