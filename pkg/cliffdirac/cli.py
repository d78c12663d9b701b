##########################################################################################
# cliffdirac/cli.py
##########################################################################################
"""Command-line driver.

    cliffdirac check --suite NAME --metric REF --points N --seed S [--tol T] [--json PATH]
    cliffdirac eval --metric REF --quantity NAME --point "a,b,c,d"
    cliffdirac metrics list
    cliffdirac metrics show REF

The check command exits with status 1 if any non-exploratory check fails, 2 on a usage
or input error, and 0 otherwise.
"""
##########################################################################################

import argparse
import logging
import numpy as np
import pathlib
import sys

from cliffdirac._exceptions  import (DomainError, MetricNotFound,
                                     NonInvertibleBasisChange, NonLorentzian,
                                     ParseError, SingularMetric, UnsupportedMetric)
from cliffdirac.einstein     import closed_form_Q
from cliffdirac.geometry     import curvature_trace, geometry_point
from cliffdirac.metric_files import format_metric_file, resolve_metric
from cliffdirac.metrics      import METRIC_NAMES, builtin_metric
from cliffdirac.suites       import SUITES, SuiteConfig, run_suite
from cliffdirac.variational  import (SpinorPolyField, VariationConfig,
                                     lagrangian_densities, metric_variation)

logger = logging.getLogger(__name__)

QUANTITIES = ('scalar-curvature', 'einstein', 'omega', 'extended-christoffel',
              'extended-curvature-trace', 'lagrangian-densities', 'q-tensor')

_INPUT_ERRORS = (DomainError, MetricNotFound, NonInvertibleBasisChange, NonLorentzian,
                 ParseError, SingularMetric, UnsupportedMetric, ValueError)

##########################################################################################
# Quantity evaluation
##########################################################################################

def parse_point(text):
    """Four comma-separated coordinates as an array; raise ValueError otherwise."""

    try:
        values = [float(v) for v in text.split(',')]
    except ValueError:
        raise ValueError(f'invalid point "{text}"') from None

    if len(values) != 4:
        raise ValueError(f'a point needs four coordinates, not {len(values)}')
    return np.array(values)


def eval_quantity(ref, quantity, point, cfg=None):
    """Evaluate a named quantity of a metric at a point.

    Input:
        ref         metric reference, a builtin name or a file path.
        quantity    one of QUANTITIES.
        point       four coordinates.
        cfg         VariationConfig for the Lagrangian densities.

    Return          list of (label, value) tuples, value a float or an array.

    The Lagrangian densities use the file's psi if it has one, otherwise a random field
    with seed 0. The q-tensor includes the closed form only if the metric is diagonal at
    the point.
    """

    if quantity not in QUANTITIES:
        raise ValueError(f'unknown quantity "{quantity}"')

    exfile = resolve_metric(ref)
    geo = geometry_point(exfile.spec, point)

    if quantity == 'scalar-curvature':
        return [('R', float(geo.curvature.scalar))]

    if quantity == 'einstein':
        return [('G_ab', np.asarray(geo.curvature.einstein_lo))]

    if quantity == 'omega':
        return [('omega', geo.mj.omega)]

    if quantity == 'extended-christoffel':
        return [(f'Gammahat_{a}', geo.ecp.ghat_mats[a]) for a in range(4)]

    if quantity == 'extended-curvature-trace':
        return [('tr(gamma^a gamma^b Omegahat_ab)',
                 float(curvature_trace(geo.ctx, geo.ohat)))]

    if quantity == 'lagrangian-densities':
        if exfile.psi is not None:
            field = SpinorPolyField(exfile.psi)
        else:
            field = SpinorPolyField.random(np.random.default_rng(0), exfile.spec.box)
        (psi, dpsi) = field.evaluate(geo.point)
        values = lagrangian_densities(geo, psi, dpsi, cfg or VariationConfig())
        return list(zip(('L_m', 'L_d', 'L_g', 'L_c'), values))

    # q-tensor
    Q = metric_variation(geo).Q
    result = [('Q numeric', Q)]
    if geo.mj.is_diagonal():
        result.append(('Q closed-form', closed_form_Q(geo.ctx, geo.mj)))
    return result


def _format_value(label, value):
    value = np.asarray(value)
    if value.ndim == 0:
        return f'{label} = {float(value)!r}'

    with np.printoptions(precision=12, suppress=True, linewidth=100,
                         threshold=sys.maxsize):
        return f'{label} =\n{value}'

##########################################################################################
# Commands
##########################################################################################

def _check(args):
    cfg = SuiteConfig(suite=args.suite, metric=args.metric, points=args.points,
                      seed=args.seed, tol=args.tol,
                      variation=VariationConfig(mu=args.mu, kappa=args.kappa,
                                                lam=args.lam, tau=args.tau))
    report = run_suite(cfg)

    sys.stdout.write(report.format_text())
    if args.json:
        path = pathlib.Path(args.json)
        path.write_text(report.to_json(), encoding='utf-8')
        logger.info('report written to %s', path)

    return report.exit_status


def _eval(args):
    cfg = VariationConfig(mu=args.mu, kappa=args.kappa, lam=args.lam, tau=args.tau)
    for (label, value) in eval_quantity(args.metric, args.quantity,
                                        parse_point(args.point), cfg):
        print(_format_value(label, value))
    return 0


def _metrics_list(args):
    for name in METRIC_NAMES:
        spec = builtin_metric(name)
        box = ' x '.join(f'[{lo:g},{hi:g}]' for (lo, hi) in spec.box)
        print(f'{name:<24} {box}')
    return 0


def _metrics_show(args):
    sys.stdout.write(format_metric_file(resolve_metric(args.ref)))
    return 0

##########################################################################################
# Parser
##########################################################################################

def _add_constants(parser):
    parser.add_argument('--mu', type=float, default=1., help='mass coupling')
    parser.add_argument('--kappa', type=float, default=1., help='gravity coupling')
    parser.add_argument('--lam', type=float, default=0., help='cosmological constant')
    parser.add_argument('--tau', type=float, default=1.,
                        help='parameter of the determinant gauge Lagrangian')


def build_parser():
    parser = argparse.ArgumentParser(
        prog='cliffdirac',
        description='Numerical checks of the Clifford-bundle Dirac and Einstein '
                    'equations.')
    parser.add_argument('-v', '--verbose', action='store_true',
                        help='log progress to stderr')
    commands = parser.add_subparsers(dest='command', required=True)

    check = commands.add_parser('check', help='run an identity suite')
    check.add_argument('--suite', choices=SUITES, default='all')
    check.add_argument('--metric', default='catalog',
                       help='builtin metric, metric file, or "catalog" (default)')
    check.add_argument('--points', type=int, default=5,
                       help='sample points per metric (default 5)')
    check.add_argument('--seed', type=int, default=0)
    check.add_argument('--tol', type=float, default=None,
                       help='replace every per-check threshold')
    check.add_argument('--json', metavar='PATH', help='write the JSON report here')
    _add_constants(check)
    check.set_defaults(handler=_check)

    evaluate = commands.add_parser('eval', help='evaluate one quantity at a point')
    evaluate.add_argument('--metric', required=True)
    evaluate.add_argument('--quantity', choices=QUANTITIES, required=True)
    evaluate.add_argument('--point', required=True, help='"x0,x1,x2,x3"')
    _add_constants(evaluate)
    evaluate.set_defaults(handler=_eval)

    metrics = commands.add_parser('metrics', help='builtin metric catalog')
    actions = metrics.add_subparsers(dest='action', required=True)
    actions.add_parser('list', help='list builtin metrics and their boxes'
                       ).set_defaults(handler=_metrics_list)
    show = actions.add_parser('show', help='print the text of a metric')
    show.add_argument('ref')
    show.set_defaults(handler=_metrics_show)

    return parser


def main(argv=None):
    """Run the command line; return the exit status."""

    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format='%(levelname)s %(name)s: %(message)s',
                        stream=sys.stderr)

    try:
        return args.handler(args)
    except _INPUT_ERRORS as err:
        logger.debug('%s failed', args.command, exc_info=True)
        print(f'cliffdirac: error: {err}', file=sys.stderr)
        return 2

##########################################################################################
