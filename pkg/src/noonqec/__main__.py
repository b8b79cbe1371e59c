import sys

from noonqec.cli import main

sys.exit(main())
