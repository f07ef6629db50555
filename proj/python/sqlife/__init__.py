"""Semi-quantum Life: phase-carrying cells on a Life grid."""

from ._sqlife import *  # noqa: F401,F403
from ._sqlife import __version__  # noqa: F401
