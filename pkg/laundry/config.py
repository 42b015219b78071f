"""
Runtime configuration.

Values are read from the environment once, at import time.
"""

import os

LOG_LEVEL = os.environ.get('LAUNDRY_LOG_LEVEL', 'WARNING').upper()

# Random diagram bounds used by fuzz
MAX_STRANDS = int(os.environ.get('LAUNDRY_MAX_STRANDS', '6'))
MAX_CROSSINGS = int(os.environ.get('LAUNDRY_MAX_CROSSINGS', '12'))

FUZZ_CASES = int(os.environ.get('LAUNDRY_FUZZ_CASES', '200'))
FUZZ_WORKERS = int(os.environ.get('LAUNDRY_FUZZ_WORKERS', '1'))

# Pixel spacing between consecutive endpoints on the laundry line
SVG_SCALE = int(os.environ.get('LAUNDRY_SVG_SCALE', '40'))
