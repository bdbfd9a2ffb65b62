import sys

from unitfit.main import main

sys.exit(main())
