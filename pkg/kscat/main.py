"""KSCAT command-line entry point."""

import logging
import sys

from kscat.cli.commands import run
from kscat.config import get_settings

# Configure logging
logging.basicConfig(
    level=logging.DEBUG if get_settings().debug else logging.INFO,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
)
logger = logging.getLogger(__name__)


def main() -> None:
    """Console script ``kscat``."""
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
