"""
Main Entry Point: theoria command line
"""

import sys
from pathlib import Path

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent))

from theoria.cli import main as cli_main


def main() -> int:
    """Console-script entry point."""
    return cli_main(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
