from .structure import *
from .algebra import *
