"""Domain walls of the two-component Ginzburg-Landau system with Rabi coupling.

Library modules: ``potential`` (W and its derivatives), ``profile1d`` (the 1D
heteroclinic wall), ``energy`` (windowed energies), ``linearized`` (the
linearized operator and its spectrum), ``flow`` (gradient-flow relaxation),
plus ``cli`` for the command-line driver.
"""
from .errors import RabiWallError
from .field import BC, Field
from .potential import Params, StatePoint, validate_params

__all__ = ["BC", "Field", "Params", "RabiWallError", "StatePoint", "validate_params"]
__version__ = "0.1.0"
