"""Spectral Galerkin simulator and variational toolkit for the filamentation equation."""

from ._core import *  # noqa: F401,F403
from ._core import CONVENTION, __version__

PLANAR = 0
SPHERICAL = 1
