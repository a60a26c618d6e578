"""Steady states, relaxation and rectification of a Bose-Hubbard site between two baths."""

from ._core import *  # noqa: F401,F403
from ._core import SsbhError, Setup, SystemParams, BathParams, SpectralParams, __version__


def make_setup(chi=0.0, T1=1.0, T2=1.0, gamma1=1.0, gamma2=1.0, omega0=1.0, eps=0.1, s=1.0,
               omega_c=1000.0, mu1=0.0, mu2=0.0):
    """Build and validate a Setup from flat keyword arguments."""
    return Setup(SystemParams(omega0, chi, eps), BathParams(gamma1, T1, mu1), BathParams(gamma2, T2, mu2),
                 SpectralParams(s, omega_c))
