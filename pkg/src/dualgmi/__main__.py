import sys

from dualgmi.cli import main

sys.exit(main())
