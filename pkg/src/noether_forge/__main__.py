import sys

from noether_forge.cli import main

sys.exit(main())
