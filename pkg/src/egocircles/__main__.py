import sys

from egocircles.cli import main

sys.exit(main())
