from .nonlinearity import *
from .steppers import *
from .propagator import *
from .rates import *
from .runner import *
