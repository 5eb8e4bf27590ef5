from .convergence import *
from .noise_stats import *
from .reporting import *
