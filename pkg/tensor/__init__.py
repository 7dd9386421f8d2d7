from .sym_tensor import *
from .conditions import *
