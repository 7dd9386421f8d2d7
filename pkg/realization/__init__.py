from .bivector import *
from .brackets import *
from .recurrence import *
from .extended import *
