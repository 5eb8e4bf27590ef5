from .covariance import *
from .sampler import *
