##########################################################################################
# cliffdirac/suites.py
##########################################################################################
"""Identity suites: registered numeric checks, run over sampled points of one or more
metrics and collected into a deterministic report.

Each check returns an error; a check passes if the error does not exceed the tolerance of
its category (see tolerances.py), or if a user tolerance was given, that tolerance. The
spin-connection incompatibility check is the exception: it passes if its defect is at
least the 'incompatibility' floor.

Checks of claims that are only established for diagonal metrics are "exploratory" on
non-diagonal metrics: they are reported but never affect the exit status.
"""
##########################################################################################

import json
import logging
import numpy as np
from functools import cached_property

from cliffdirac._exceptions  import (DomainError, NonLorentzian, SingularMetric,
                                     UnsupportedMetric)
from cliffdirac._utils       import _max_abs, _scaled_error
from cliffdirac._warnings    import ResampledPointWarning, ToleranceOverrideWarning, _warn
from cliffdirac.clifford     import GRADE1, dagger, extend_map, left_multiplication
from cliffdirac.coupling     import (ThetaField, coupled_dirac_covariance,
                                     gauge_lagrangians, is_dagger_odd,
                                     primed_admissibility, right_multiplication,
                                     theta_admissible, total_connection_transform_defect,
                                     total_curvature)
from cliffdirac.einstein     import (closed_form_Q, einstein_coupling, gravity_variation,
                                     k_table)
from cliffdirac.geometry     import (curvature_trace, density_derivative_defect,
                                     gamma_connection_defects, geometry_point,
                                     metric_compatibility_defect, riemann_extension,
                                     spin_connection, spin_connection_defects, vierbein)
from cliffdirac.metric_files import resolve_metric
from cliffdirac.metrics      import CATALOG, random_quadratic
from cliffdirac.spin         import (algebra_defect, homomorphism_defect, matrix_exp,
                                     so_basis, spin_action_check)
from cliffdirac.tolerances   import get_tolerance
from cliffdirac.transforms   import (BasisChangeField, basis_change_jet,
                                     bundle_differences, field_rule_defect,
                                     general_change_invariance, invariant_scalars,
                                     primed_bundle, primed_invariant_scalars,
                                     rebuilt_bundle, spin_connection_compatibility,
                                     verify_dirac_covariance)
from cliffdirac.variational  import (SpinorPolyField, VariationConfig,
                                     _pair_values, decomposed_variation,
                                     density_variation, euler_lagrange_field,
                                     field_variation, lagrangian_densities,
                                     metric_variation, metric_variation_L_d,
                                     metric_variation_L_m)

logger = logging.getLogger(__name__)

SUITES = ('algebra', 'geometry', 'transforms', 'variational', 'coupling', 'all')

MAX_RESAMPLES = 100

SPIN_PARAMETERS = (0.3, 1., -0.7)

##########################################################################################
# Suite configuration
##########################################################################################

class SuiteConfig(object):
    """The parameters of a suite run.

    Attributes:
        suite       one of SUITES.
        metric      a metric reference, or 'catalog' for every builtin catalog metric.
        points      number of sampled points per metric.
        seed        integer seed of every random choice.
        tol         tolerance replacing every per-check threshold, or None.
        variation   VariationConfig of the coupling constants.
    """

    def __init__(self, suite='all', metric='catalog', points=5, seed=0, tol=None,
                       variation=None):

        if suite not in SUITES:
            raise ValueError(f'unknown suite "{suite}"; choose from {", ".join(SUITES)}')

        self.suite = suite
        self.metric = metric
        self.points = int(points)
        self.seed = int(seed)
        self.tol = None if tol is None else float(tol)
        self.variation = variation or VariationConfig()

        if self.points < 1:
            raise ValueError('points must be at least 1')
        if self.tol is not None and not self.tol > 0.:
            raise ValueError('tol must be positive')

    def as_dict(self):
        v = self.variation
        return {'suite': self.suite, 'metric': self.metric, 'points': self.points,
                'seed': self.seed, 'tol': self.tol, 'mu': v.mu, 'kappa': v.kappa,
                'lam': v.lam, 'tau': v.tau}

    def metric_refs(self):
        if self.metric == 'catalog':
            return list(CATALOG)
        return [self.metric]

##########################################################################################
# Point state
##########################################################################################

_BASIS_CHANGES = ('lorentz', 'diagonal', 'polynomial')


class PointState(object):
    """Everything the checks need at one sampled point, computed on first use.

    Random fields are drawn from generators seeded by (seed, metric index, point index,
    purpose), so each quantity is the same whichever subset of checks runs.
    """

    def __init__(self, exfile, geo, seed, variation):
        self.exfile = exfile
        self.spec = exfile.spec
        self.geo = geo
        self.seed = tuple(seed)
        self.variation = variation

    def rng(self, purpose):
        return np.random.default_rng(self.seed + (purpose,))

    @property
    def x(self):
        return self.geo.point

    @property
    def is_diagonal(self):
        return self.geo.mj.is_diagonal()

    @cached_property
    def field(self):
        if self.exfile.psi is not None:
            return SpinorPolyField(self.exfile.psi)
        return SpinorPolyField.random(self.rng(1), self.spec.box)

    @cached_property
    def psi_dpsi(self):
        return self.field.evaluate(self.x)

    @cached_property
    def euler_lagrange(self):
        return euler_lagrange_field(self.geo.mj, self.field, self.x)

    @cached_property
    def mv(self):
        return metric_variation(self.geo)

    @cached_property
    def gravity(self):
        return gravity_variation(self.geo)

    @cached_property
    def coupling(self):
        return einstein_coupling(self.geo, self.field, self.variation, mv=self.mv,
                                 gravity=self.gravity)

    @cached_property
    def basis_changes(self):
        """Dictionary of BasisChangeJets keyed by 'lorentz', 'diagonal', 'polynomial'."""

        rng = self.rng(2)
        ctx = self.geo.ctx

        generators = so_basis(ctx, normalize=True)
        weights = rng.uniform(-0.5, 0.5, len(generators))
        lorentz = matrix_exp(sum(w * gen.L for (w, gen) in zip(weights, generators)))

        diagonal = np.diag(rng.uniform(0.5, 1.5, 4) * rng.choice((-1.,1.), 4))

        if self.exfile.basis_change is not None:
            polynomial = BasisChangeField(self.exfile.basis_change)
        else:
            polynomial = BasisChangeField.random(rng, self.spec.box)

        fields = {'lorentz': lorentz, 'diagonal': diagonal, 'polynomial': polynomial}
        return {kind: basis_change_jet(self.geo.ecp, fields[kind], self.x)
                for kind in _BASIS_CHANGES}

    @cached_property
    def primed(self):
        geo = self.geo
        return {kind: primed_bundle(geo.ctx, geo.ecp, geo.ohat, bc)
                for (kind, bc) in self.basis_changes.items()}

    @cached_property
    def rebuilt(self):
        geo = self.geo
        return {kind: rebuilt_bundle(geo.ctx, geo.cp, geo.curvature, bc)
                for (kind, bc) in self.basis_changes.items()}

    @cached_property
    def theta_field(self):
        if self.exfile.theta is not None:
            return ThetaField(entries=self.exfile.theta)

        rng = self.rng(3)
        w = rng.uniform(-1., 1., 16)
        u = 0.5 * (w - dagger(self.geo.ctx, w))
        coefficients = [random_quadratic(rng, self.spec.box, 0.5) for _ in range(4)]
        return ThetaField.right_multiplication(u, coefficients)

    @property
    def theta_is_right_multiplication(self):
        return self.exfile.theta is None

    @cached_property
    def theta_jet(self):
        return self.theta_field.jet(self.geo.ecp.context_jet, self.x)

    @property
    def theta(self):
        return self.theta_jet.value

##########################################################################################
# Check registry
##########################################################################################

def _never(state):
    return False


def _nondiagonal(state):
    return not state.is_diagonal


def _not_flrw(state):
    return state.spec.name != 'flrw'


def _file_theta(state):
    return not state.theta_is_right_multiplication


class Check(object):
    """A registered check.

    Attributes:
        name            the name in reports.
        category        tolerance category.
        function        function(PointState) -> error; it may raise UnsupportedMetric
                        to skip the metric.
        exploratory     function(PointState) -> True if the result must not gate.
        lower_bound     True if the check passes when the error is at least the
                        tolerance rather than at most.
    """

    def __init__(self, name, category, function, exploratory=_never, lower_bound=False):
        self.name = name
        self.category = category
        self.function = function
        self.exploratory = exploratory
        self.lower_bound = lower_bound

    def __repr__(self):
        return f'Check({self.name!r})'

##########################################################################################
# Algebra checks
##########################################################################################

def _clifford_relation(s):
    ctx = s.geo.ctx
    eye = np.eye(16)
    err = 0.
    for (gamma, g) in ((ctx.gamma_lo, ctx.g), (ctx.gamma_hi, ctx.g_inv)):
        product = np.einsum('aij,bjk->abik', gamma, gamma)
        anti = product + np.swapaxes(product, 0, 1)
        err = max(err, _scaled_error(anti, 2. * g[:,:,None,None] * eye))
    return err


def _associativity(s):
    ctx = s.geo.ctx
    lhs = np.einsum('Iij,Jjk->IJik', ctx.lmult, ctx.lmult)
    rhs = np.einsum('IJK,Kik->IJik', ctx.structure, ctx.lmult)
    return _scaled_error(lhs, rhs)


def _ghat_symmetry(s):
    return _max_abs(s.geo.ctx.ghat - s.geo.ctx.ghat.T)


def _ghat_restriction(s):
    ctx = s.geo.ctx
    return _scaled_error(ctx.ghat[np.ix_(GRADE1, GRADE1)], ctx.g)


def _gamma_skew(s):
    ctx = s.geo.ctx
    gamma = ctx.gamma_lo
    return _scaled_error(np.swapaxes(gamma, -1, -2) @ ctx.ghat + ctx.ghat @ gamma)


def _vector_skew(s):
    rng = s.rng(4)
    ctx = s.geo.ctx
    u = np.zeros(16)
    u[GRADE1] = rng.uniform(-1., 1., 4)
    (psi, phi) = rng.uniform(-1., 1., (2,16))

    lu = left_multiplication(ctx, u)
    value = (lu @ psi) @ ctx.ghat @ phi + psi @ ctx.ghat @ (lu @ phi)
    return _scaled_error(value)


def _extension_laws(s):
    rng = s.rng(5)
    ctx = s.geo.ctx
    A = np.eye(4) + 0.2 * rng.uniform(-1., 1., (4,4))
    A_hat = extend_map(ctx, A)
    inverse = extend_map(ctx, np.linalg.inv(A))
    return max(_scaled_error(A_hat @ inverse, np.eye(16)),
               _scaled_error(A_hat[np.ix_(GRADE1, GRADE1)], A))

##########################################################################################
# Geometry checks
##########################################################################################

def _metric_compatibility(s):
    return _scaled_error(metric_compatibility_defect(s.geo.ctx, s.geo.ecp))


def _gamma_connection_lower(s):
    (lower, _) = gamma_connection_defects(s.geo.ctx, s.geo.ecp, s.geo.cp)
    return _scaled_error(lower)


def _gamma_connection_upper(s):
    (_, upper) = gamma_connection_defects(s.geo.ctx, s.geo.ecp, s.geo.cp)
    return _scaled_error(upper)


def _curvature_extension(s):
    return _scaled_error(s.geo.ohat.omega_hat,
                         riemann_extension(s.geo.ctx, s.geo.curvature))


def _curvature_grade1(s):
    block = s.geo.ohat.omega_hat[..., GRADE1, :][..., GRADE1]
    return _scaled_error(block, s.geo.curvature.riemann_operator())


def _density_derivative(s):
    return _scaled_error(density_derivative_defect(s.geo.mj, s.geo.cp))


def _curvature_trace(s):
    geo = s.geo
    return _scaled_error(curvature_trace(geo.ctx, geo.ohat),
                         -8. * geo.curvature.scalar)


def _spin_incompatibility(s):
    geo = s.geo
    spin = spin_connection(vierbein(geo.mj), geo.cp)
    (compatibility, _) = spin_connection_defects(geo.ctx, geo.ecp, spin)
    return compatibility

##########################################################################################
# Transform and spin checks
##########################################################################################

def _bundle_law(kind, attribute):
    def check(s):
        return bundle_differences(s.primed[kind], s.rebuilt[kind])[attribute]
    return check


def _field_rule(kind):
    def check(s):
        (psi, _) = s.psi_dpsi
        return field_rule_defect(s.geo.ctx, s.basis_changes[kind], psi)
    return check


def _dirac_covariance(kind):
    def check(s):
        (psi, dpsi) = s.psi_dpsi
        return verify_dirac_covariance(s.geo.ctx, s.geo.ecp, s.basis_changes[kind],
                                       psi, dpsi, s.primed[kind])
    return check


def _invariants(kind):
    def check(s):
        (psi, dpsi) = s.psi_dpsi
        geo = s.geo
        before = invariant_scalars(geo.ctx, geo.ecp, geo.ohat, psi, dpsi)
        after = primed_invariant_scalars(s.primed[kind], s.basis_changes[kind], psi,
                                         dpsi)
        return _scaled_error(before, after)
    return check


def _general_change(s):
    rng = s.rng(6)
    A = np.eye(16) + 0.1 * rng.uniform(-1., 1., (16,16))
    (psi, _) = s.psi_dpsi
    return _scaled_error(general_change_invariance(s.geo.ctx, A, psi))


def _spin_actions(key):
    def check(s):
        ctx = s.geo.ctx
        err = 0.
        for gen in so_basis(ctx, normalize=True):
            for t in SPIN_PARAMETERS:
                err = max(err, spin_action_check(gen, ctx, t)[key])
        return err
    return check


def _spin_algebra(s):
    ctx = s.geo.ctx
    return max(max(algebra_defect(ctx, gen)) for gen in so_basis(ctx))


def _spin_homomorphism(s):
    ctx = s.geo.ctx
    generators = so_basis(ctx)
    return max(homomorphism_defect(ctx, g1, g2) for g1 in generators
                                                for g2 in generators)


def _spin_compatibility(s):
    geo = s.geo
    if _max_abs(geo.mj.dg) > 0.:
        raise UnsupportedMetric('a constant spin action needs a constant metric')

    rng = s.rng(7)
    generators = so_basis(geo.ctx, normalize=True)
    sigma = sum(w * gen.sigma_L for (w, gen) in zip(rng.uniform(-1., 1., 6),
                                                     generators))
    return spin_connection_compatibility(matrix_exp(sigma), np.zeros((4,16,16)),
                                         geo.ecp)

##########################################################################################
# Variational checks
##########################################################################################

def _mass_variation(s):
    (el_m, _) = s.euler_lagrange
    (mass, _) = field_variation(s.geo, *s.psi_dpsi)
    return _scaled_error(el_m, mass)


def _dirac_variation(s):
    (_, el_d) = s.euler_lagrange
    (_, dirac) = field_variation(s.geo, *s.psi_dpsi)
    return _scaled_error(el_d, dirac)


def _density_variation(s):
    mj = s.geo.mj
    return _scaled_error(density_variation(mj), 0.5 * mj.omega * _pair_values(mj.g_inv))


def _mass_metric_variation(s):
    (psi, _) = s.psi_dpsi
    expected = s.geo.mj.omega * np.einsum('i,pij,j->p', psi, s.mv.A, psi)
    return _scaled_error(metric_variation_L_m(s.geo, psi), expected)


def _dirac_metric_variation(s):
    (psi, dpsi) = s.psi_dpsi
    return _scaled_error(metric_variation_L_d(s.geo, s.field, s.x),
                         decomposed_variation(s.geo, s.mv, psi, dpsi))


def _lg_scalar_curvature(s):
    (psi, dpsi) = s.psi_dpsi
    (_, _, l_g, _) = lagrangian_densities(s.geo, psi, dpsi, s.variation)
    mj = s.geo.mj
    return _scaled_error(l_g, -8. * mj.omega * s.geo.curvature.scalar)


def _p_vanishes(s):
    return _scaled_error(s.mv.P)


def _p_reduced(s):
    return _scaled_error(s.mv.P, s.mv.P_reduced)


def _q_closed_form(s):
    return _scaled_error(s.mv.Q, closed_form_Q(s.geo.ctx, s.geo.mj))


def _k_involution(s):
    table = k_table(s.geo.ctx)
    squares = np.einsum('peij,pejk->peik', table, table)
    off = table - np.einsum('peii->pei', table)[..., None] * np.eye(16)
    return max(_max_abs(squares - np.eye(16)), _max_abs(off),
               _max_abs(np.abs(np.einsum('peii->pei', table)) - 1.))


def _classical_gravity(s):
    return s.gravity.classical_error()


def _lg_gravity(s):
    return s.gravity.error(s.gravity.sign)


def _einstein_identity(s):
    return s.coupling.identity_error()

##########################################################################################
# Coupling checks
##########################################################################################

def _right_commutation(s):
    ctx = s.geo.ctx
    err = 0.
    for k in range(16):
        rho = right_multiplication(ctx, np.eye(16)[k])
        commutator = ctx.gamma_lo @ rho - rho @ ctx.gamma_lo
        err = max(err, _scaled_error(commutator))
    return err


def _right_antisymmetry(s):
    ctx = s.geo.ctx
    err = 0.
    for k in range(16):
        u = np.eye(16)[k]
        if not is_dagger_odd(ctx, u):
            continue
        rho = right_multiplication(ctx, u)
        err = max(err, _scaled_error(rho.T @ ctx.ghat + ctx.ghat @ rho))
    return err


def _theta_antisymmetry(s):
    return float(np.max(theta_admissible(s.geo.ctx, s.theta).antisymmetry))


def _theta_pairwise(s):
    return float(np.max(theta_admissible(s.geo.ctx, s.theta).pairwise))


def _theta_summed(s):
    return theta_admissible(s.geo.ctx, s.theta).summed


def _total_curvature_antisymmetry(s):
    return total_curvature(s.geo.ecp, s.theta_jet).antisymmetry_defect()


def _flat_gauge_trace(s):
    geo = s.geo
    if _max_abs(geo.curvature.riemann) > 0.:
        raise UnsupportedMetric('the gauge trace vanishes only in flat spacetime')
    curvature = total_curvature(geo.ecp, s.theta_jet)
    lagrangians = gauge_lagrangians(geo.ctx, curvature, geo.mj.omega, s.variation.tau)
    return _scaled_error(lagrangians.trace)


def _determinant_expansion(s):
    geo = s.geo
    curvature = total_curvature(geo.ecp, s.theta_jet)
    lagrangians = gauge_lagrangians(geo.ctx, curvature, geo.mj.omega, s.variation.tau)
    return max(_scaled_error(np.sum(lagrangians.det_coefficients),
                             lagrangians.determinant),
               _scaled_error(lagrangians.det_coefficients[1],
                             s.variation.tau * lagrangians.trace))


def _theta_transformation(s):
    bc = s.basis_changes['polynomial']
    return total_connection_transform_defect(s.geo.ecp, s.rebuilt['polynomial'], bc,
                                             s.theta)


def _coupled_covariance(s):
    (psi, dpsi) = s.psi_dpsi
    geo = s.geo
    return coupled_dirac_covariance(geo.ctx, geo.ecp, s.primed['polynomial'],
                                    s.basis_changes['polynomial'], s.theta, psi, dpsi)


def _primed_theta(s):
    report = primed_admissibility(s.primed['polynomial'], s.basis_changes['polynomial'],
                                  s.theta)
    return float(max(np.max(report.antisymmetry), np.max(report.pairwise)))

##########################################################################################
# Registry
##########################################################################################

def _transform_checks():
    checks = []
    for kind in _BASIS_CHANGES:
        for (label, attribute) in (('metric law', 'ghat'),
                                   ('connection law', 'ghat_mats'),
                                   ('gamma law (lower)', 'gamma_lo'),
                                   ('gamma law (upper)', 'gamma_hi'),
                                   ('curvature law', 'omega_hat')):
            checks.append(Check(f'{label} [{kind}]', 'transforms',
                                _bundle_law(kind, attribute)))
        checks += [
            Check(f'field rule [{kind}]', 'transforms', _field_rule(kind)),
            Check(f'dirac covariance [{kind}]', 'transforms', _dirac_covariance(kind)),
            Check(f'invariant scalars [{kind}]', 'transforms', _invariants(kind)),
        ]

    checks += [
        Check('general change: mass scalar', 'transforms', _general_change),
        Check('spin: lorentz metric', 'spin', _spin_actions('lorentz_metric')),
        Check('spin: extended metric', 'spin', _spin_actions('spin_metric')),
        Check('spin: gamma conjugation', 'spin', _spin_actions('conjugation')),
        Check('spin: so(g) algebra', 'spin', _spin_algebra),
        Check('spin: homomorphism', 'spin', _spin_homomorphism),
        Check('spin: connection compatibility', 'spin', _spin_compatibility),
    ]
    return checks


REGISTRY = {
    'algebra': [
        Check('clifford relation', 'algebra', _clifford_relation),
        Check('associativity', 'algebra', _associativity),
        Check('ghat symmetry', 'algebra', _ghat_symmetry),
        Check('ghat restricts to g', 'algebra', _ghat_restriction),
        Check('gamma ghat-antisymmetry', 'algebra', _gamma_skew),
        Check('vector ghat-antisymmetry', 'algebra', _vector_skew),
        Check('extension inverse and embedding', 'algebra', _extension_laws),
    ],
    'geometry': [
        Check('metric compatibility', 'geometry', _metric_compatibility),
        Check('gamma-connection commutator (lower)', 'geometry',
              _gamma_connection_lower),
        Check('gamma-connection commutator (upper)', 'geometry',
              _gamma_connection_upper),
        Check('extended curvature = Riemann extension', 'curvature',
              _curvature_extension),
        Check('extended curvature grade-1 block', 'curvature', _curvature_grade1),
        Check('density derivative', 'geometry', _density_derivative),
        Check('curvature trace = -8R', 'curvature', _curvature_trace, _nondiagonal),
        Check('spin connection incompatibility', 'incompatibility',
              _spin_incompatibility, _not_flrw, lower_bound=True),
    ],
    'transforms': _transform_checks(),
    'variational': [
        Check('field variation: mass', 'variational', _mass_variation),
        Check('field variation: dirac', 'variational', _dirac_variation),
        Check('d omega/d g = omega g^ab/2', 'metric_variation', _density_variation),
        Check('metric variation: mass', 'metric_variation', _mass_metric_variation),
        Check('metric variation: dirac = A + P + Q', 'metric_variation',
              _dirac_metric_variation),
        Check('L_g = -8 omega R', 'curvature', _lg_scalar_curvature, _nondiagonal),
        Check('P = 0', 'metric_variation', _p_vanishes, _nondiagonal),
        Check('P reduced form', 'metric_variation', _p_reduced, _nondiagonal),
        Check('Q numeric = Q closed-form', 'metric_variation', _q_closed_form),
        Check('K involution', 'algebra', _k_involution),
        Check('gravity variation: omega R', 'metric_variation', _classical_gravity),
        Check('gravity variation: L_g', 'metric_variation', _lg_gravity, _nondiagonal),
        Check('einstein identity', 'metric_variation', _einstein_identity,
              _nondiagonal),
    ],
    'coupling': [
        Check('right multiplication commutes with gammas', 'coupling',
              _right_commutation),
        Check('right multiplication antisymmetry', 'coupling', _right_antisymmetry),
        Check('theta antisymmetry', 'coupling', _theta_antisymmetry, _file_theta),
        Check('theta commutation (pairwise)', 'coupling', _theta_pairwise, _file_theta),
        Check('theta commutation (summed)', 'coupling', _theta_summed, _file_theta),
        Check('total curvature antisymmetry', 'coupling',
              _total_curvature_antisymmetry),
        Check('flat-space gauge trace', 'coupling', _flat_gauge_trace),
        Check('determinant expansion', 'coupling', _determinant_expansion),
        Check('theta transformation law', 'coupling', _theta_transformation),
        Check('coupled dirac covariance', 'coupling', _coupled_covariance),
        Check('transformed theta admissibility', 'coupling', _primed_theta,
              _file_theta),
    ],
}


def suite_checks(suite):
    """The list of Checks of a suite."""

    if suite == 'all':
        return [check for name in SUITES[:-1] for check in REGISTRY[name]]

    try:
        return list(REGISTRY[suite])
    except KeyError:
        raise ValueError(f'unknown suite "{suite}"')

##########################################################################################
# Running
##########################################################################################

class CheckResult(object):
    """The outcome of one check at one point."""

    def __init__(self, name, err, tol, passed, exploratory):
        self.name = name
        self.err = float(err)
        self.tol = float(tol)
        self.passed = bool(passed)
        self.exploratory = bool(exploratory)

    def as_dict(self):
        return {'name': self.name, 'err': self.err, 'tol': self.tol,
                'pass': self.passed, 'exploratory': self.exploratory}


class PointResult(object):
    """All check results at one point of one metric."""

    def __init__(self, metric, point, checks):
        self.metric = metric
        self.point = [float(v) for v in point]
        self.checks = sorted(checks, key=lambda r: r.name)

    def as_dict(self):
        return {'metric': self.metric, 'point': self.point,
                'checks': [r.as_dict() for r in self.checks]}


class Report(object):
    """The outcome of a suite run."""

    def __init__(self, config, results, version):
        self.config = config
        self.results = results
        self.version = version

    def records(self):
        return [r for point in self.results for r in point.checks]

    @property
    def summary(self):
        records = self.records()
        return {
            'pass': sum(r.passed for r in records if not r.exploratory),
            'fail': sum(not r.passed for r in records if not r.exploratory),
            'exploratory': sum(r.exploratory for r in records),
        }

    @property
    def exit_status(self):
        """1 if any non-exploratory check failed, otherwise 0."""

        return 1 if self.summary['fail'] else 0

    def as_dict(self):
        return {'version': self.version, 'config': self.config.as_dict(),
                'results': [point.as_dict() for point in self.results],
                'summary': self.summary}

    def to_json(self):
        return json.dumps(self.as_dict(), indent=2, sort_keys=True) + '\n'

    def format_text(self):
        """One line per metric and check: worst error, threshold, passes and count."""

        lines = []
        metrics = []
        for point in self.results:
            if point.metric not in metrics:
                metrics.append(point.metric)

        for metric in metrics:
            points = [p for p in self.results if p.metric == metric]
            lines.append(f'{metric} ({len(points)} points)')

            grouped = {}
            for point in points:
                for r in point.checks:
                    grouped.setdefault(r.name, []).append(r)

            width = max([len(name) for name in grouped] + [0])
            for name in sorted(grouped):
                records = grouped[name]
                worst = max(r.err for r in records)
                passes = sum(r.passed for r in records)
                marker = ' (exploratory)' if any(r.exploratory for r in records) else ''
                lines.append(f'  {name:<{width}}  err={worst:.3e}  '
                             f'tol={records[0].tol:.1e}  '
                             f'pass={passes}/{len(records)}{marker}')

        summary = self.summary
        lines.append(f'summary: {summary["pass"]} passed, {summary["fail"]} failed, '
                     f'{summary["exploratory"]} exploratory')
        return '\n'.join(lines) + '\n'


def _threshold(check, cfg):
    if cfg.tol is not None and not check.lower_bound:
        return cfg.tol
    return get_tolerance(check.category)


def _sample_state(exfile, rng, seed, variation):
    """A PointState at a random point of the metric's box, resampling on failure."""

    spec = exfile.spec
    for attempt in range(MAX_RESAMPLES):
        x = spec.sample_point(rng)
        try:
            geo = geometry_point(spec, x)
            state = PointState(exfile, geo, seed, variation)

            # File fields may have their own domain restrictions
            if exfile.psi is not None:
                state.psi_dpsi
            if exfile.theta is not None:
                state.theta_jet
            return state

        except (DomainError, SingularMetric, NonLorentzian) as err:
            if attempt == MAX_RESAMPLES - 1:
                raise
            logger.info('%s: resampling point %s: %s', spec.name, list(x), err)
            _warn(f'points of metric "{spec.name}" had to be resampled',
                  ResampledPointWarning)


def run_point(checks, state, cfg):
    """Run the checks at one PointState; return the list of CheckResults."""

    results = []
    for check in checks:
        try:
            err = check.function(state)
        except UnsupportedMetric as reason:
            logger.debug('%s skipped for %s: %s', check.name, state.spec.name, reason)
            continue

        tol = _threshold(check, cfg)
        passed = (err >= tol) if check.lower_bound else (err <= tol)
        results.append(CheckResult(check.name, err, tol, passed,
                                   check.exploratory(state)))
    return results


def run_suite(cfg):
    """Run a suite and return its Report.

    Input:
        cfg         SuiteConfig.

    Raises MetricNotFound or ParseError if a metric cannot be resolved; the last
    DomainError, SingularMetric or NonLorentzian if no usable point is found after
    MAX_RESAMPLES attempts.
    """

    import cliffdirac

    if cfg.tol is not None:
        _warn(f'tolerance {cfg.tol:g} replaces the per-check thresholds',
              ToleranceOverrideWarning)

    checks = suite_checks(cfg.suite)
    results = []
    for (m, ref) in enumerate(cfg.metric_refs()):
        exfile = resolve_metric(ref)
        logger.info('running %d %s checks on %s', len(checks), cfg.suite,
                    exfile.spec.name)

        rng = np.random.default_rng((cfg.seed, m))
        for p in range(cfg.points):
            state = _sample_state(exfile, rng, (cfg.seed, m, p), cfg.variation)
            logger.debug('%s: point %d at %s', exfile.spec.name, p, list(state.x))
            results.append(PointResult(exfile.spec.name, state.x,
                                       run_point(checks, state, cfg)))

    return Report(cfg, results, cliffdirac.__version__)

##########################################################################################
