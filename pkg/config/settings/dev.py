from .base import *

DEBUG = True

LOGGING["handlers"]["console"]["level"] = "INFO"
