import sys

from tofsign.cli import main

sys.exit(main())
