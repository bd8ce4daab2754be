from qep.schemas.document import *
