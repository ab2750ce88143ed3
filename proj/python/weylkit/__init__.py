"""Finite-dimensional boundary-triplet and Weyl-function calculus."""

from ._weylkit import *  # noqa: F401,F403
from ._weylkit import __doc__  # noqa: F401
