import sys

from artin_bound.cli import main

sys.exit(main())
