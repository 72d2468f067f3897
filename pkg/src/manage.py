#!/usr/bin/env python
"""Entry point for the harvesting commands (point, sweep, lmax, lcrit, figure)."""

import os
import sys


def main():
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "config.settings.local")
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Install the project with `pip install -e .` "
            "and run manage.py from the src/ directory."
        ) from exc
    execute_from_command_line(sys.argv)


if __name__ == "__main__":
    main()
