from .params import *
from .accumulator import *
