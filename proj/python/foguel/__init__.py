"""Norms and modulus spectra of Foguel operators on finite sections."""

from ._foguel import *  # noqa: F401,F403
from ._foguel import __doc__  # noqa: F401

__version__ = "0.1.0"
