import sys

from qep.main import main

sys.exit(main())
