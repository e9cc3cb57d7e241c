# Everything in the modelling modules goes into the primary namespace
# The experiment runners and the command line stay in their own modules
__version__ = "0.1.0"

from .errors import *
from .operators import *
from ._core import *
from .schedule import *
from .dynamics import *
from .effective import *
from .analysis import *
from .sequences import *
from .config import *
from .results import *
