"""Uniform-transport approximations of the Brownian sheet.

Everything is re-exported from the compiled extension; see the project README
for the experiment-level command line interface.
"""

from ._sheetwalk import *  # noqa: F401,F403
from ._sheetwalk import __version__  # noqa: F401
