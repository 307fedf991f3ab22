#!/usr/bin/env python3
"""Standalone entry point: python figures/render.py --csv results.csv --figure ports --out ports.png"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent / "src"))

from ppmfigs.render import main

if __name__ == "__main__":
    sys.exit(main())
