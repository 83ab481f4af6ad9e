"""Planning and assessment toolkit for multi-gated tidal discharge sluices."""

from sluiceops._core import *  # noqa: F401,F403
from sluiceops._core import __doc__  # noqa: F401

__version__ = "1.0.0"
