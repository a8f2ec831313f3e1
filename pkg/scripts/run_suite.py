#!/usr/bin/env python3
"""Run the default verification matrix; flags are forwarded to `spfk suite`."""
import sys

from spfk.cli import main

if __name__ == "__main__":
    raise SystemExit(main(["suite", *sys.argv[1:]]))
