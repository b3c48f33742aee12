import sys

from .commander.cli import main


sys.exit(main())
