##########################################################################################
# cliffdirac/einstein.py
##########################################################################################
"""The closed form of Q on diagonal metrics, the variation of the gravity density, and
the Einstein equation coupled to a spinor field.

On a diagonal metric,
    Q^abe = -1/2 ghat K(abe) gamma^a gamma^b gamma^e        (a <= b),
where K(abe) is a diagonal +-1 matrix given by
    K(aaa) = I
    K(aae) = extension of the reflection S(ae) of the plane of e_a, e_e
    K(aba) = -I
    K(abb) = -K(aab)
    K(abe) = -S(abe)                                        (a, b, e distinct)
with a < b, and S(abe) the reflection of the multivectors e_ae, e_(ae)*, e_b and e_b*,
I* being the complementary index set.

The variation of the Lagrangian L_d + mu L_m + kappa L_g + L_c with respect to g_ab
then gives the Einstein equation
    8 kappa G^ab = sign (psi^T A^ab (D psi + mu psi) + psi^T Q^abe nabla_e psi
                         + 1/2 lam g^ab),
where sign is the sign of dL_g/dg_ab relative to -8 omega G^ab, determined numerically
by gravity_variation().
"""
##########################################################################################

import numpy as np

import cliffdirac._jets as jets
from cliffdirac._exceptions  import IndexOutOfRange, UnsupportedMetric
from cliffdirac._utils       import (PAIRS, _pair_seeds, _scaled_error,
                                     _symmetric_from_pairs)
from cliffdirac.clifford     import (CliffordContext, MetricPoint, basis_index,
                                     complement, extend_map)
from cliffdirac.geometry     import connection_data, curvature_data
from cliffdirac.variational  import (VariationConfig, _ddg_seeds, _dg_seeds,
                                     _pair_values, cosmological_variation,
                                     density_variation, metric_variation,
                                     metric_variation_L_d, metric_variation_L_m,
                                     source_terms)

##########################################################################################
# K table
##########################################################################################

def reflection(axes):
    """The 4x4 map that negates the given basis vectors and fixes the others."""

    diag = np.ones(4)
    for a in axes:
        diag[a] = -1.
    return np.diag(diag)


def four_plane_reflection(a, b, e):
    """S(abe): the 16x16 map negating e_ae, e_(ae)*, e_b and e_b*, indices sorted."""

    plane = tuple(sorted((a, e)))
    diag = np.ones(16)
    for indices in (plane, complement(plane), (b,), complement((b,))):
        diag[basis_index(indices)] = -1.
    return np.diag(diag)


def k_matrix(ctx, a, b, e):
    """K(abe) for a <= b.

    Raises IndexOutOfRange if an index lies outside 0..3 or if a > b.
    """

    if not all(0 <= i < 4 for i in (a, b, e)) or a > b:
        raise IndexOutOfRange(f'K({a}{b}{e}) is defined for 0 <= a <= b <= 3, '
                              'e in 0..3')

    if a == b:
        if e == a:
            return np.eye(16)
        return extend_map(ctx, reflection((a, e)))

    if e == a:
        return -np.eye(16)
    if e == b:
        return -k_matrix(ctx, a, a, b)
    return -four_plane_reflection(a, b, e)


def k_table(ctx):
    """All K(abe), shape (10,4,16,16), indexed [pair,e]."""

    return np.array([[k_matrix(ctx, a, b, e) for e in range(4)] for (a,b) in PAIRS])


def closed_form_Q(ctx, mj):
    """Q^abe = -1/2 ghat K(abe) gamma^a gamma^b gamma^e, shape (10,4,16,16).

    Raises UnsupportedMetric if the metric is not diagonal.
    """

    if not mj.is_diagonal():
        raise UnsupportedMetric('the closed form of Q holds only for diagonal metrics')

    gamma = ctx.gamma_hi
    result = np.empty((10,4,16,16))
    for (k, (a,b)) in enumerate(PAIRS):
        for e in range(4):
            product = gamma[a] @ gamma[b] @ gamma[e]
            result[k,e] = -0.5 * ctx.ghat @ k_matrix(ctx, a, b, e) @ product

    return result

##########################################################################################
# Second-order metric variation
##########################################################################################

def omega_scalar_curvature(g, g_inv, dg, ddg):
    """omega R from metric data. Jet-generic."""

    (_, gamma2, dgamma2) = connection_data(g, dg, ddg, g_inv)
    curvature = curvature_data(g, g_inv, gamma2, dgamma2)
    return jets.sqrt(-jets.det(g)) * curvature.scalar


def _trace_weights(ctx):
    # W[a,b,s,r] = tr(gamma^a gamma^b T[s,r]), so that for the Leibniz extension Xhat of
    # a 4x4 map X, tr(gamma^a gamma^b Xhat) = sum_rs X[r,s] W[a,b,s,r]
    pairs = jets.einsum('...aij,...bjk->...abik', ctx.gamma_hi, ctx.gamma_hi)
    return jets.einsum('...abkl,...srlk->...absr', pairs, ctx.derivation_basis)


def omega_curvature_trace(g, g_inv, dg, ddg):
    """L_g = omega tr(gamma^a gamma^b Omegahat_ab) from metric data. Jet-generic.

    Omegahat_ab is taken as the Leibniz extension of the Riemann operator of the plane
    (a,b).
    """

    ctx = CliffordContext(MetricPoint(g, g_inv, validate=False))
    (_, gamma2, dgamma2) = connection_data(g, dg, ddg, g_inv)
    curvature = curvature_data(g, g_inv, gamma2, dgamma2)
    traced = jets.einsum('...abrs,...absr->...', curvature.riemann_operator(),
                         _trace_weights(ctx))
    return jets.sqrt(-jets.det(g)) * traced


def second_order_variation(mj, density):
    """The Euler-Lagrange expression of a density F(g, dg, ddg) that is linear in ddg,
        dF/dg_ab - d_e (dF/dg_ab,e) + d_e d_f (dF/dg_ab,ef),
    for the ten pairs a <= b.

    Input:
        mj          MetricJet.
        density     function (g, g_inv, dg, ddg) -> scalar, accepting Jets.

    Return          array of shape (10,).

    The momentum dF/dg_ab,e involves only g and dg, so its x-derivative needs no third
    derivatives of the metric; the coefficient of ddg depends on g alone and is obtained
    by evaluating F at dg = 0 with a seed in place of ddg.
    """

    g_t = jets.Jet(mj.g, _pair_seeds()[None])
    partial = density(g_t, jets.inv(g_t), mj.dg, mj.ddg).grad[0]

    g5 = jets.embed(mj.x_jet(order=1), 5)
    dg5 = (jets.embed(jets.Jet(mj.dg, np.moveaxis(mj.ddg, -1, 0)), 5)
           + jets.seeded(0., _dg_seeds(), 5))
    f5 = density(g5, jets.inv(g5), dg5, mj.ddg)
    first = np.einsum('epe->p', f5.hess[:4,4].reshape(4,10,4))

    g4 = mj.x_jet(order=2)
    f4 = density(g4, jets.inv(g4), np.zeros((4,4,4)), _ddg_seeds())
    second = np.einsum('efpef->p', f4.hess.reshape(4,4,10,4,4))

    return partial - first + second


class GravityVariation(object):
    """Metric variations of the gravity densities at one point.

    Attributes:
        omega_r     variation of omega R, shape (10,).
        l_g         variation of L_g, shape (10,); None if not computed.
        einstein    omega G^ab for the ten pairs.
        sign        +1 if dL_g/dg_ab = -8 omega G^ab, -1 if it equals +8 omega G^ab,
                    whichever is closer; +1 on a tie.
    """

    def __init__(self, omega_r, l_g, einstein):
        self.omega_r = omega_r
        self.l_g = l_g
        self.einstein = einstein

        self.sign = 1
        if l_g is not None:
            if self.error(-1) < self.error(1):
                self.sign = -1

    def error(self, sign):
        """Scaled error of dL_g/dg_ab = sign * (-8 omega G^ab)."""

        return _scaled_error(self.l_g, -8. * sign * self.einstein)

    def classical_error(self):
        """Scaled error of d(omega R)/dg_ab = -omega G^ab."""

        return _scaled_error(self.omega_r, -self.einstein)


def gravity_variation(geo, include_lg=True):
    """The GravityVariation at a GeometryPoint."""

    mj = geo.mj
    omega_r = second_order_variation(mj, omega_scalar_curvature)
    l_g = second_order_variation(mj, omega_curvature_trace) if include_lg else None
    einstein = mj.omega * _pair_values(geo.curvature.einstein_hi)
    return GravityVariation(omega_r, l_g, einstein)

##########################################################################################
# Coupled Einstein equation
##########################################################################################

class EinsteinCoupling(object):
    """Both sides of the coupled Einstein equation at one point.

    Attributes:
        einstein_lo     G_ab.
        source_lo       the source term with indices lowered.
        residual        G_ab - source_ab.
        sign            the gravity sign used.
        closed_form     True if Q was taken from its closed form.
        total_numeric   numeric variation of L_d + mu L_m + kappa L_g + L_c, shape (10,).
        total_closed    the same from A, Q and G, shape (10,).
    """

    def __init__(self, einstein_lo, source_lo, sign, closed_form, total_numeric,
                       total_closed):
        self.einstein_lo = einstein_lo
        self.source_lo = source_lo
        self.residual = einstein_lo - source_lo
        self.sign = sign
        self.closed_form = closed_form
        self.total_numeric = total_numeric
        self.total_closed = total_closed

    def identity_error(self):
        return _scaled_error(self.total_numeric, self.total_closed)


def einstein_coupling(geo, field, cfg=None, mv=None, gravity=None):
    """Evaluate the coupled Einstein equation and the variational identity behind it.

    Input:
        geo         GeometryPoint.
        field       SpinorPolyField.
        cfg         VariationConfig; default mu = kappa = 1, lam = 0.
        mv          MetricVariation at geo, if already computed.
        gravity     GravityVariation at geo, if already computed; it must include L_g.

    Return          EinsteinCoupling.

    The source uses the closed form of Q on diagonal metrics and the numeric Q
    otherwise. The identity compares the directly differentiated total variation with
        omega (psi^T A^ab (D psi + mu psi) + psi^T Q^abe nabla_e psi)
        - 8 kappa sign omega G^ab + 1/2 lam omega g^ab,
    using the numeric Q.
    """

    cfg = cfg or VariationConfig()
    mj = geo.mj
    (psi, dpsi) = field.evaluate(geo.point)

    mv = mv or metric_variation(geo)
    if gravity is None or gravity.l_g is None:
        gravity = gravity_variation(geo)

    try:
        Q = closed_form_Q(geo.ctx, mj)
        closed_form = True
    except UnsupportedMetric:
        Q = mv.Q
        closed_form = False

    g_inv_pairs = _pair_values(mj.g_inv)
    terms = source_terms(geo, mv.A, Q, psi, dpsi, cfg.mu)
    source_hi = gravity.sign * (terms + 0.5 * cfg.lam * g_inv_pairs) / (8. * cfg.kappa)
    source_lo = mj.g @ _symmetric_from_pairs(source_hi) @ mj.g

    total_numeric = (metric_variation_L_d(geo, field)
                     + cfg.mu * metric_variation_L_m(geo, psi)
                     + cfg.kappa * gravity.l_g
                     + cfg.lam * density_variation(mj))

    total_closed = (mj.omega * source_terms(geo, mv.A, mv.Q, psi, dpsi, cfg.mu)
                    - 8. * cfg.kappa * gravity.sign * gravity.einstein
                    + cosmological_variation(mj, cfg.lam))

    return EinsteinCoupling(np.asarray(geo.curvature.einstein_lo), source_lo,
                            gravity.sign, closed_form, total_numeric, total_closed)

##########################################################################################
