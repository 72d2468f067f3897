"""Test settings."""

from .base import *  # noqa: F401, F403
from .base import LOGGING

# GENERAL
# ------------------------------------------------------------------------------
DEBUG = False

# HARVESTING
# ------------------------------------------------------------------------------
UDW_THREADS = 1
UDW_QUAD_TOL = 1e-6

# LOGGING
# ------------------------------------------------------------------------------
# Keep pytest output readable; caplog still sees every record.
LOGGING["loggers"]["harvesting"]["level"] = "DEBUG"
LOGGING["loggers"]["harvesting"]["handlers"] = []
LOGGING["loggers"]["harvesting"]["propagate"] = True
