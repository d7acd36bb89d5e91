"""Configuration package initialization."""
from . import settings
from . import features

from .settings import *
