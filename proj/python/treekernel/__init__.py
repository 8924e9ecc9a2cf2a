"""SubTree kernels over finite tree languages via root-weighted tree automata."""

from ._treekernel import *  # noqa: F401,F403
from ._treekernel import __doc__, __version__  # noqa: F401
