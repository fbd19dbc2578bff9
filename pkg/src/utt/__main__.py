"""Allow `python -m utt` as an alternative to the `utt` console script."""

import sys

from .cli import main

if __name__ == "__main__":
    sys.exit(main())
