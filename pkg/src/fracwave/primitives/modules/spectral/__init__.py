from .eigenbasis import *
from .transforms import *
