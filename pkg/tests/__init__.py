##########################################################################################
# tests/__init__.py
##########################################################################################

import unittest

from tests.test_cli               import *
from tests.test_clifford          import *
from tests.test_coupling          import *
from tests.test_einstein          import *
from tests.test_expressions       import *
from tests.test_geometry          import *
from tests.test_jets              import *
from tests.test_metric_files      import *
from tests.test_metrics           import *
from tests.test_spin              import *
from tests.test_suites            import *
from tests.test_transforms        import *
from tests.test_utils             import *
from tests.test_variational       import *

############################################
# Execute from command line...
############################################

if __name__ == '__main__':
    unittest.main(verbosity=2)

##########################################################################################
