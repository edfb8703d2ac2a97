import sys

from catdecay.cli import main

sys.exit(main())
