from .schemes import *
from .nonlinearity import *
