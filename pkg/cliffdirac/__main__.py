import sys

from cliffdirac.cli import main

sys.exit(main())
