##########################################################################################
# cliffdirac/__init__.py
##########################################################################################
"""PDS Ring-Moon Systems Node, SETI Institute
Clifford-bundle Dirac/Einstein verification library

This library builds the sixteen-dimensional Clifford algebra of the tangent space over an
arbitrary Lorentzian metric, extends every geometric object of the metric to it, and
checks numerically the identities, transformation laws and variational formulas of the
Dirac and Einstein equations written on the Clifford bundle.

Features:

- Every derivative is exact to roundoff. Metric components are expressions in the
  coordinates x0..x3, evaluated as truncated Taylor jets; the same jet arithmetic flows
  through the Clifford structure, the connection and the curvature, so that no finite
  differences are ever taken.

- Metrics come from a builtin catalog or from plain-text files that may also define a
  basis change field, a spinor field and a force field.

- Identity suites run every check at seeded random points and produce a deterministic
  text or JSON report; a command-line driver is provided.


CLIFFORD ALGEBRA

The canonical basis e_I is indexed by increasing index tuples I, ordered by grade and
then lexicographically: e, e0, e1, e2, e3, e01, ..., e0123. See
    BASIS, basis_index(), basis_vector(), basis_label(), GRADES.

A CliffordContext holds everything that depends on the metric at a point: the gamma
matrices gamma_a and gamma^a, left multiplication by each basis element, the dagger
involution and the extended metric ghat. Operators on multivectors are 16x16 matrices
whose column I holds the image of e_I. Functions:
    clifford_product(), dagger(), extended_inner(), gamma_vector(), extend_map(),
    extend_derivation(), trace_k(), trace_ks().


METRICS

A MetricSpec holds expressions for the components g_ab and a sampling box. metric_jet()
evaluates one at a point as a MetricJet carrying g, its first and second derivatives, its
inverse and the density omega = sqrt(-det g). Expressions are parsed by
parse_expression() and printed by format_expression(). Metric files are read by
read_metric_file(); resolve_metric() accepts either a builtin name or a path, searching
the directories in CLIFFDIRAC_METRIC_PATH or set by set_metric_path().


GEOMETRY

geometry_point() collects the Christoffel symbols, the Riemann tensor and its
contractions, the extended connection Gammahat_a and the extended curvature
Omegahat_ab at a point, and dirac_operator() applies D = gamma^a (d_a + Gammahat_a).


TRANSFORMATIONS AND SPIN

basis_change_jet(), primed_bundle() and rebuilt_bundle() transform the extended objects
under a change of basis B(x) and recompute them independently; invariant_scalars() lists
the quantities that stay unchanged. The spin representation of so(g) and its
exponentiation are in lorentz_generator(), spin_generator() and spin_action_check().


VARIATIONS

lagrangian_densities() evaluates the mass, Dirac, gravity and cosmological densities.
euler_lagrange_field() and metric_variation() differentiate them with respect to the
field and the metric; closed_form_Q(), gravity_variation() and einstein_coupling()
compare the results with their closed forms and with the Einstein equation.


COUPLING

A ThetaField adds a force to the extended connection. theta_admissible() tests the
conditions under which the coupled Dirac equation follows from the same variation,
total_curvature() and gauge_lagrangians() build the candidate gauge densities, and
transform_theta() applies the transformation law of the force.


CHECKS

run_suite() runs a registered suite of checks; see suites.py and cli.py. Tolerances are
global settings managed by set_tolerance(), get_tolerance() and reset_tolerances().
"""

from cliffdirac.clifford      import *
from cliffdirac.coupling      import *
from cliffdirac.einstein      import *
from cliffdirac.expressions   import *
from cliffdirac.geometry      import *
from cliffdirac.metric_files  import *
from cliffdirac.metrics       import *
from cliffdirac.spin          import *
from cliffdirac.suites        import *
from cliffdirac.tolerances    import *
from cliffdirac.transforms    import *
from cliffdirac.variational   import *
from cliffdirac.expression_pyparser import parse_expression

from cliffdirac._warnings     import *
from cliffdirac._exceptions   import *

try:
    from ._version import __version__
except ImportError as err:
    __version__ = 'Version unspecified'

##########################################################################################
