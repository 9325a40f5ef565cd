import sys

from hyperratio.cli import main

sys.exit(main())
