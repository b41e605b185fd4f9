import sys

from qkdroute.cli import main

sys.exit(main())
