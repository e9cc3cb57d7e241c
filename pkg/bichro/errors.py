# -*- coding: utf-8 -*-
"""
Exception hierarchy shared by every module of the package.

Numerical guards (truncation, convergence, positivity) raise the RuntimeError
flavoured classes; validation of inputs raises the ValueError flavoured ones.
The command line front end maps the two families onto exit codes 3 and 2.
"""


class BichroError(Exception):
    """Base class for all package errors."""


class CutoffError(BichroError, RuntimeError):
    """Population or displacement leaked past the Fock-space truncation."""


class NonPSDError(BichroError, ValueError):
    """A matrix expected to be positive semi-definite has a negative eigenvalue."""


class ConvergenceError(BichroError, RuntimeError):
    """Refining the integration step changed the result beyond tolerance."""


class NoConvergence(ConvergenceError):
    """An iterative solver did not reach its tolerance in the allowed iterations."""


class ModeError(BichroError, ValueError):
    """The gate parameters do not describe the requested gate type."""


class ConfigError(BichroError, ValueError):
    """An experiment configuration failed validation."""


# Guards that map to the numerical-failure exit code
NUMERICAL_ERRORS = (CutoffError, ConvergenceError, NonPSDError)
