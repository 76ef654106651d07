import sys

from cvtlab.cli import main

sys.exit(main())
