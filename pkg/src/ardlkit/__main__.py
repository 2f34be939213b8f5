import sys

from ardlkit.cli import main

sys.exit(main())
