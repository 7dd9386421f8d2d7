from .polynomial import *
