import sys

from halflap.cli import main

sys.exit(main())
