##########################################################################################
# cliffdirac/metrics.py
##########################################################################################
"""Metric specifications, their pointwise jets, and the builtin metric catalog.

A MetricSpec holds the 4x4 metric components as expressions in x0..x3 together with a
sampling box. metric_jet() evaluates a spec at a point as a MetricJet: the metric, its
first and second coordinate derivatives, its inverse and the density omega.

Builtin metrics:
    minkowski                   diag(-1,1,1,1).
    flrw                        diag(-1, x0^2, x0^2, x0^2); x0 in [1,3].
    schwarzschild-diagonal      Schwarzschild with M = 1 in coordinates (t, r, theta,
                                phi); r = x1 in [3,10], theta = x2 in [0.5,2.6]. Alias
                                "schwarzschild".
    diag-poly-random:SEED       diagonal, eta_aa + 0.05 * (seeded random quadratic).
    nondiag-perturb:SEED        eta + 0.05 * (seeded random symmetric quadratic), sampled
                                in [-0.25,0.25]^4.
"""
##########################################################################################

import numpy as np

import cliffdirac._jets as jets
from cliffdirac._exceptions  import AsymmetricMetric, MetricNotFound, SingularMetric
from cliffdirac.clifford     import _validate_metric
from cliffdirac.expression_pyparser import parse_expression
from cliffdirac.expressions  import Expression, eval_jets
from cliffdirac.tolerances   import get_tolerance

DEFAULT_BOX = ((-1.,1.),) * 4

##########################################################################################
# MetricSpec
##########################################################################################

class MetricSpec(object):
    """A metric given by expressions.

    Attributes:
        name        name of the metric.
        components  4x4 object array of Expressions; None for a zero component.
        box         array of shape (4,2), the sampling interval of each coordinate.
    """

    def __init__(self, name, entries, box=None):
        """Constructor.

        Input:
            name        name of the metric.
            entries     dictionary {(i,j): Expression}; each off-diagonal component may
                        be given in either order, or in both orders if the expressions
                        are identical.
            box         optional sequence of four (lo, hi) pairs; default [-1,1]^4.

        Raises AsymmetricMetric if g[i][j] and g[j][i] have different expressions.
        """

        self.name = str(name)
        self.components = np.full((4,4), None, dtype='object')

        for ((i,j), expr) in entries.items():
            if not (0 <= i < 4 and 0 <= j < 4):
                raise ValueError(f'metric component index out of range: g[{i}][{j}]')
            if not isinstance(expr, Expression):
                raise TypeError(f'g[{i}][{j}] is not an Expression: {expr!r}')

            for (a,b) in ((i,j), (j,i)):
                existing = self.components[a,b]
                if existing is not None and existing != expr:
                    raise AsymmetricMetric(f'g[{i}][{j}] = {expr} but '
                                           f'g[{j}][{i}] = {existing}')
                self.components[a,b] = expr

        self.box = np.array(DEFAULT_BOX if box is None else box, dtype='float')
        if self.box.shape != (4,2) or np.any(self.box[:,0] > self.box[:,1]):
            raise ValueError(f'invalid sampling box: {box!r}')

    def __repr__(self):
        return f'MetricSpec({self.name!r})'

    def is_diagonal(self):
        """True if every off-diagonal component is absent."""

        return all(self.components[i,j] is None
                   for i in range(4) for j in range(4) if i != j)

    def sample_point(self, rng):
        """A point drawn uniformly from the sampling box, using a numpy Generator."""

        return rng.uniform(self.box[:,0], self.box[:,1])

##########################################################################################
# MetricJet
##########################################################################################

class MetricJet(object):
    """Metric data at one point.

    Attributes:
        g           metric g_ab, shape (4,4).
        dg          first derivatives, dg[a,b,c] = d_c g_ab.
        ddg         second derivatives, ddg[a,b,c,d] = d_c d_d g_ab.
        g_inv       inverse metric g^ab.
        omega       density sqrt(-det g).
        domega      d_a omega, shape (4,).
        point       the coordinates, or None.
        name        name of the metric.
    """

    def __init__(self, g, dg=None, ddg=None, point=None, name=''):

        self.g = np.asarray(g, dtype='float')
        self.dg = np.zeros((4,4,4)) if dg is None else np.asarray(dg, dtype='float')
        self.ddg = (np.zeros((4,4,4,4)) if ddg is None
                    else np.asarray(ddg, dtype='float'))
        self.point = None if point is None else np.asarray(point, dtype='float')
        self.name = name

        _validate_metric(self.g)
        self.g_inv = np.linalg.inv(self.g)

        residual = np.max(np.abs(self.g_inv @ self.g - np.eye(4)))
        if residual > 1.e-10:
            raise SingularMetric(f'metric inverse residual {residual:.3g} is too large')

        # omega and its gradient from a first-order jet of the metric
        density = jets.sqrt(-jets.det(self.x_jet(order=1)))
        self.omega = float(density.value)
        self.domega = density.grad.copy()

    def __repr__(self):
        return f'MetricJet({self.name!r}, point={self.point!r})'

    def x_jet(self, order=2):
        """The metric as a Jet over the four coordinates."""

        grad = np.moveaxis(self.dg, -1, 0)
        if order == 1:
            return jets.Jet(self.g, grad)

        return jets.Jet(self.g, grad, np.moveaxis(self.ddg, (2,3), (0,1)))

    def is_diagonal(self):
        """True if the metric and its derivatives have negligible off-diagonal entries at
        this point.
        """

        mask = ~np.eye(4, dtype='bool')
        scale = max(1., float(np.max(np.abs(self.g))))
        off = max(np.max(np.abs(self.g[mask])),
                  np.max(np.abs(self.dg[mask])),
                  np.max(np.abs(self.ddg[mask])))
        return off <= get_tolerance('diagonal') * scale


def metric_jet(spec, x):
    """Evaluate a MetricSpec at a point.

    Input:
        spec        MetricSpec.
        x           four coordinates.

    Return          MetricJet.

    Raises SingularMetric or NonLorentzian if the metric is unusable at x; DomainError if
    a component cannot be evaluated at x.
    """

    x = np.asarray(x, dtype='float')
    jet = eval_jets(spec.components, x, order=2)
    return MetricJet(jet.value,
                     np.moveaxis(jet.grad, 0, -1),
                     np.moveaxis(jet.hess, (0,1), (2,3)),
                     point=x, name=spec.name)

##########################################################################################
# Builtin catalog
##########################################################################################

METRIC_NAMES = ('minkowski', 'flrw', 'schwarzschild-diagonal', 'diag-poly-random',
                'nondiag-perturb')

_ALIASES = {'schwarzschild': 'schwarzschild-diagonal'}

_SEEDED = ('diag-poly-random', 'nondiag-perturb')

_ETA = (-1., 1., 1., 1.)

_BOXES = {
    'minkowski'             : DEFAULT_BOX,
    'flrw'                  : ((1.,3.), (-1.,1.), (-1.,1.), (-1.,1.)),
    'schwarzschild-diagonal': ((-1.,1.), (3.,10.), (0.5,2.6), (-1.,1.)),
    'diag-poly-random'      : DEFAULT_BOX,
    'nondiag-perturb'       : ((-0.25,0.25),) * 4,
}

# Metrics used when a suite is run over the whole catalog
CATALOG = (('minkowski', 'flrw', 'schwarzschild-diagonal')
           + tuple(f'diag-poly-random:{k}' for k in range(1,6))
           + tuple(f'nondiag-perturb:{k}' for k in range(1,6)))

PERTURBATION = 0.05


def _split_ref(ref):
    """(canonical name, seed) for a catalog reference such as "diag-poly-random:3"."""

    (name, _, seed) = ref.strip().partition(':')
    name = _ALIASES.get(name.lower(), name.lower())
    if name not in METRIC_NAMES:
        raise MetricNotFound(f'unknown builtin metric: "{ref}"')

    if not seed:
        return (name, 0)

    if name not in _SEEDED:
        raise MetricNotFound(f'builtin metric "{name}" does not take a seed')

    try:
        return (name, int(seed))
    except ValueError:
        raise MetricNotFound(f'invalid seed in metric reference "{ref}"')


def is_builtin(ref):
    """True if the reference names a builtin metric."""

    try:
        _split_ref(ref)
    except MetricNotFound:
        return False
    return True


def _coeff_text(c):
    return f'{c:.6f}'


def _coordinate_text(i, box=None):
    """Text of coordinate x<i>, mapped from its box interval to [-1,1] if a box is
    given.
    """

    if box is None:
        return f'x{i}'

    (lo, hi) = box[i]
    center = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    if center == 0. and half == 1.:
        return f'x{i}'

    shifted = f'x{i}'
    if center > 0.:
        shifted = f'(x{i} - {_format_constant(center)})'
    elif center < 0.:
        shifted = f'(x{i} + {_format_constant(-center)})'

    if half == 1. or half == 0.:
        return shifted
    return f'{shifted}/{_format_constant(half)}'


def _quadratic_text(rng, constant=0., scale=PERTURBATION, box=None):
    """Text of a random quadratic polynomial c + sum_i c_i u_i + sum_{i<=j} c_ij u_i u_j
    with coefficients drawn from [-1,1], multiplied by scale and added to a constant.
    The u_i are the coordinates, normalized to [-1,1] over the box if one is given.
    """

    u = [_coordinate_text(i, box) for i in range(4)]
    monomials = [''] + u + [f'{u[i]}*{u[j]}' for i in range(4) for j in range(i,4)]
    coeffs = rng.uniform(-1., 1., len(monomials))

    terms = [] if constant == 0. else [_format_constant(constant)]
    for (c, m) in zip(coeffs, monomials):
        c = scale * c
        body = _coeff_text(abs(c)) + ('*' + m if m else '')
        if not terms:
            terms.append(body if c >= 0. else '-' + body)
        else:
            terms.append(('+ ' if c >= 0. else '- ') + body)

    return ' '.join(terms)


def random_quadratic(rng, box=None, scale=1., constant=0.):
    """A random quadratic polynomial Expression in coordinates normalized to the box.

    Input:
        rng         numpy random Generator.
        box         optional (4,2) array of coordinate intervals.
        scale       multiplier of the random coefficients, which lie in [-1,1].
        constant    value added to the polynomial.
    """

    return parse_expression(_quadratic_text(rng, constant, scale, box))


def _format_constant(value):
    value = float(value)
    return str(int(value)) if value.is_integer() else repr(value)


def builtin_metric_text(ref):
    """The component texts of a builtin metric.

    Return          (name, {(i,j): text}, box), with i <= j.
    """

    (name, seed) = _split_ref(ref)
    label = f'{name}:{seed}' if name in _SEEDED else name
    box = _BOXES[name]

    if name == 'minkowski':
        entries = {(a,a): _format_constant(_ETA[a]) for a in range(4)}

    elif name == 'flrw':
        entries = {(0,0): '-1', (1,1): 'x0^2', (2,2): 'x0^2', (3,3): 'x0^2'}

    elif name == 'schwarzschild-diagonal':
        entries = {(0,0): '-(1 - 2/x1)',
                   (1,1): '1/(1 - 2/x1)',
                   (2,2): 'x1^2',
                   (3,3): 'x1^2*sin(x2)^2'}

    elif name == 'diag-poly-random':
        rng = np.random.default_rng(seed)
        entries = {(a,a): _quadratic_text(rng, _ETA[a]) for a in range(4)}

    else:
        rng = np.random.default_rng(seed)
        entries = {}
        for a in range(4):
            for b in range(a,4):
                entries[(a,b)] = _quadratic_text(rng, _ETA[a] if a == b else 0.)

    return (label, entries, box)


def builtin_metric(ref):
    """The MetricSpec of a builtin metric.

    Input:
        ref         catalog name, optionally followed by ":SEED" for the random metrics;
                    the default seed is 0.

    Raises MetricNotFound for an unknown name.
    """

    (name, texts, box) = builtin_metric_text(ref)
    entries = {key: parse_expression(text) for (key, text) in texts.items()}
    return MetricSpec(name, entries, box)

##########################################################################################
