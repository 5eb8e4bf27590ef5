from .events import *
from .grid import *
from .fields import *
from .noise import *
from .reports import *
from .state import *
