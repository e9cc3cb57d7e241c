# Run this from the repository root with 'python -m benchmarks'
import unittest

# Import benchmark unittests
print("Running benchmark unittests")
from .benchmarks import *

# Run everything
unittest.main()
