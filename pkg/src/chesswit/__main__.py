"""Module entry point: ``python -m chesswit``."""

import sys

from .cli import main

sys.exit(main())
