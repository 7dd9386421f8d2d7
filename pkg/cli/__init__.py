from .bivector_file import *
from .report import *
from .main import *
