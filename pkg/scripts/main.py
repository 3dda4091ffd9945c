#!/usr/bin/env python3
"""
Main entry point for the sigma-distrib command line.

    python scripts/main.py check data/problems/partition_blocks.json
    python scripts/main.py verify --max-x 3 --max-u 4
"""

import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.cli import main


if __name__ == "__main__":
    sys.exit(main())
