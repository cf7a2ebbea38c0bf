"""Kinetic Cucker-Smale flocking laboratory.

Thin wrapper over the compiled extension; everything lives in
``flockhydro._core``.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
