import sys

from walkrank.main import main

sys.exit(main())
