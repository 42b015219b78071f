#!/usr/bin/env python3
"""
Laundry CLI Entry Point

Runs the laundry command-line interface, e.g.

    ./app.py encode "4: 3 -2 1 -2 1"
    ./app.py invariants "2: 1 1 1"
"""

from laundry.cli import main

if __name__ == "__main__":
    main()
