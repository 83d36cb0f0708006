"""Rowmotion and toggle Markov chains on posets and semidistrim lattices."""

from _rowmarkov import *  # noqa: F401,F403
from _rowmarkov import __doc__  # noqa: F401
