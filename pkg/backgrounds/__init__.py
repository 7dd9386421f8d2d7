from .builtin import *
from .oracles import *
