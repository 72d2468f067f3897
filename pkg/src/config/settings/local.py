"""Local development settings."""

from .base import *  # noqa: F401, F403
from .base import env

# GENERAL
# ------------------------------------------------------------------------------
DEBUG = True

# HARVESTING
# ------------------------------------------------------------------------------
UDW_LOG_LEVEL = env("UDW_LOG_LEVEL", default="DEBUG")
LOGGING["loggers"]["harvesting"]["level"] = UDW_LOG_LEVEL  # noqa: F405
