"""Rewrite the golden files under src/ultraspec/golden from the current code.

Only run this after a deliberate change to report contents; review the diff.
"""

import sys

from ultraspec.cli import run_all_fixtures

if __name__ == "__main__":
    sys.exit(run_all_fixtures(update=True))
