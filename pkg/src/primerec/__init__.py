"""Prime recursion over the residue classes 6g - 1 and 6g + 1."""

from .residue_classes import GammaIndex, ResidueClass, classify, value, value_of
from .recursion import RangeBounds, StepState, run

__all__ = ["GammaIndex", "ResidueClass", "classify", "value", "value_of", "RangeBounds", "StepState", "run"]
__version__ = "0.1.0"
