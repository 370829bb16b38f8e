"""Convex optimization over separation oracles."""

from ._oracleopt import *  # noqa: F401,F403
from ._oracleopt import __doc__  # noqa: F401

__version__ = "0.1.0"
