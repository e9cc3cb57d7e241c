# Run this with 'python -m bichro <experiment>'
import sys

from .cli import main

sys.exit(main())
