##########################################################################################
# cliffdirac/variational.py
##########################################################################################
"""Lagrangian densities of a spinor field and their variations.

The densities at a point are
    L_m = omega psi^T ghat psi                      (mass)
    L_d = omega psi^T ghat D psi                    (Dirac)
    L_g = omega tr(gamma^a gamma^b Omegahat_ab)     (gravity)
    L_c = lambda omega                              (cosmological)

Variations with respect to the field have the closed forms
    dL_m/dpsi = 2 omega ghat psi,       dL_d/dpsi = 2 omega ghat D psi,
which euler_lagrange_field() reproduces by differentiating the densities directly.

Variations with respect to the metric are organized by the coefficient matrices
    A^ab    = 1/2 g^ab ghat + d ghat/d g_ab
    Q^abe   = ghat d gamma^e/d g_ab - (M^abe + M^abe^T),  M^abe = ghat gamma^n X_n^abe
    P^ab    = ghat gamma^n d Gammahat_n/d g_ab - Gamma^m_me M^abe - d_e M^abe
              + Gammahat_e^T M^abe + M^abe Gammahat_e
where X_n^abe = d Gammahat_n / d g_ab,e, with g_ab,e = d_e g_ab treated as an independent
variable. Then
    dL_d/dg_ab = omega (psi^T A^ab D psi + psi^T P^ab psi + psi^T Q^abe nabla_e psi).

Metric entries are indexed by the ten pairs (a,b) with a <= b in lexicographic order. A
derivative with respect to g_ab perturbs g_ab and g_ba by 1/2 each when a != b, so that
d omega/d g_ab = 1/2 g^ab omega holds for every pair; the same convention applies to
g_ab,e and to the second derivatives g_ab,ef.
"""
##########################################################################################

import numpy as np

import cliffdirac._jets as jets
from cliffdirac._utils      import PAIRS, _pair_seeds
from cliffdirac.clifford    import CliffordContext, MetricPoint
from cliffdirac.geometry    import (_dirac, connection_data, covariant_derivative,
                                    curvature_trace, extended_connection_matrices)
from cliffdirac.expressions import Number, eval_jets
from cliffdirac.metrics     import random_quadratic

_PAIR_ROWS = np.array([p[0] for p in PAIRS])
_PAIR_COLS = np.array([p[1] for p in PAIRS])

##########################################################################################
# Configuration and fields
##########################################################################################

class VariationConfig(object):
    """Coupling constants of the Lagrangian
        L = L_d + mu L_m + kappa L_g + L_c,     L_c = lam omega.

    tau is the parameter of the determinant gauge Lagrangian.
    """

    def __init__(self, mu=1., kappa=1., lam=0., tau=1.):

        self.mu = float(mu)
        self.kappa = float(kappa)
        self.lam = float(lam)
        self.tau = float(tau)

        for name in ('mu', 'kappa', 'lam', 'tau'):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f'{name} must be finite')

    def __repr__(self):
        return (f'VariationConfig(mu={self.mu!r}, kappa={self.kappa!r}, '
                f'lam={self.lam!r}, tau={self.tau!r})')


class SpinorPolyField(object):
    """A multivector field given by 16 expressions in x0..x3.

    Attributes:
        components  object array of 16 Expressions in canonical basis order; None
                    entries are zero.
    """

    def __init__(self, components):
        self.components = np.asarray(components, dtype='object')
        if self.components.shape != (16,):
            raise ValueError('a spinor field needs 16 components')

    @staticmethod
    def constant(values):
        values = np.asarray(values, dtype='float')
        return SpinorPolyField([Number(v) if v != 0. else None for v in values])

    @staticmethod
    def random(rng, box=None, scale=1.):
        """Random quadratic polynomials with coefficients in [-scale,scale], in
        coordinates normalized to the box.
        """

        return SpinorPolyField([random_quadratic(rng, box, scale) for _ in range(16)])

    def jet(self, x, order=2):
        """The field at x as a Jet of shape (16,) over the coordinates."""

        return eval_jets(self.components, x, order=order)

    def evaluate(self, x):
        """(psi, dpsi) at x, with dpsi[a] = d_a psi."""

        jet = self.jet(x, order=1)
        return (jet.value.copy(), jet.grad.copy())

##########################################################################################
# Densities
##########################################################################################

def lagrangian_densities(geo, psi, dpsi, cfg=None):
    """The four Lagrangian densities at a point.

    Input:
        geo         GeometryPoint.
        psi         multivector, shape (16,).
        dpsi        d_a psi, shape (4,16).
        cfg         VariationConfig; only lam is used.

    Return          tuple (L_m, L_d, L_g, L_c).
    """

    cfg = cfg or VariationConfig()
    psi = np.asarray(psi, dtype='float')
    dpsi = np.asarray(dpsi, dtype='float')
    omega = geo.mj.omega

    d_psi = _dirac(geo.ctx.gamma_hi, geo.ecp.ghat_mats, psi, dpsi)
    return (float(omega * psi @ geo.ctx.ghat @ psi),
            float(omega * psi @ geo.ctx.ghat @ d_psi),
            float(omega * curvature_trace(geo.ctx, geo.ohat)),
            float(cfg.lam * omega))


def dirac_residual(ctx, ecp, psi, dpsi, mu):
    """D psi + mu psi."""

    psi = np.asarray(psi, dtype='float')
    d_psi = _dirac(ctx.gamma_hi, ecp.ghat_mats, psi, np.asarray(dpsi, dtype='float'))
    return d_psi + mu * psi

##########################################################################################
# Field variation
##########################################################################################

def field_variation(geo, psi, dpsi):
    """The closed-form field variations (2 omega ghat psi, 2 omega ghat D psi)."""

    psi = np.asarray(psi, dtype='float')
    dpsi = np.asarray(dpsi, dtype='float')
    d_psi = _dirac(geo.ctx.gamma_hi, geo.ecp.ghat_mats, psi, dpsi)
    omega = geo.mj.omega
    return (2. * omega * geo.ctx.ghat @ psi, 2. * omega * geo.ctx.ghat @ d_psi)


def _mixed_metric(mj):
    """Metric objects as second-order jets over (x0,x1,x2,x3,t), constant in t.

    Only first derivatives in x are carried; the x-x block of every Hessian is zero and
    must not be used.

    Return          (ctx, conn, omega, g, dg).
    """

    g5 = jets.embed(mj.x_jet(order=1), 5)
    dg5 = jets.embed(jets.Jet(mj.dg, np.moveaxis(mj.ddg, -1, 0)), 5)
    ctx5 = CliffordContext(MetricPoint(g5, validate=False))
    (_, gamma2, _) = connection_data(g5, dg5, g_inv=ctx5.g_inv)
    conn5 = extended_connection_matrices(ctx5, gamma2)
    omega5 = jets.sqrt(-jets.det(g5))
    return (ctx5, conn5, omega5, g5, dg5)


def _mixed_field(field, x):
    """psi and d_a psi as second-order jets over (x0,x1,x2,x3,t), constant in t."""

    jet = field.jet(x, order=2)
    psi5 = jets.embed(jet, 5)
    dpsi5 = jets.embed(jets.Jet(jet.grad, jet.hess), 5)
    return (psi5, dpsi5)


def euler_lagrange_field(mj, field, x=None):
    """The field variations of L_m and L_d computed from the densities themselves,
        dL/dpsi^I - d_a (dL/d psi^I_a),
    with psi^I_a = d_a psi^I an independent slot.

    The total derivative d_a is taken along the field by making every quantity a jet
    over the coordinates and one extra variable t that perturbs a single slot; the mixed
    second derivative d_a d_t is then the x-derivative of the slot's momentum.

    Input:
        mj          MetricJet.
        field       SpinorPolyField.
        x           the point; default mj.point.

    Return          tuple (el_m, el_d), each of shape (16,).
    """

    x = mj.point if x is None else x
    (ctx5, conn5, omega5, _, _) = _mixed_metric(mj)
    (psi5, dpsi5) = _mixed_field(field, x)

    # Seeds 0..15 perturb psi^I; seed 16 + 16a + I perturbs psi^I_a
    psi_seeds = np.zeros((80,16))
    dpsi_seeds = np.zeros((80,4,16))
    psi_seeds[:16] = np.eye(16)
    for a in range(4):
        dpsi_seeds[16+16*a:32+16*a, a] = np.eye(16)

    psi5 = psi5 + jets.seeded(0., psi_seeds, 5)
    dpsi5 = dpsi5 + jets.seeded(0., dpsi_seeds, 5)

    ghat_psi = jets.matvec(ctx5.ghat, psi5)
    l_m = omega5 * jets.dot(psi5, ghat_psi)
    d_psi = _dirac(ctx5.gamma_hi, conn5, psi5, dpsi5)
    l_d = omega5 * jets.dot(psi5, jets.matvec(ctx5.ghat, d_psi))

    el_m = l_m.grad[4,:16].copy()
    el_d = l_d.grad[4,:16].copy()
    for a in range(4):
        el_d -= l_d.hess[a,4,16+16*a:32+16*a]

    return (el_m, el_d)

##########################################################################################
# Metric variation: A, P, Q
##########################################################################################

def _pair_values(tensor):
    """The entries [a,b] of an array for the ten pairs a <= b, along a leading axis."""

    return np.asarray(tensor)[_PAIR_ROWS, _PAIR_COLS]


def _dg_seeds():
    """Seeds for the forty variables g_ab,e, shape (40,4,4,4); seed 4k + e perturbs pair
    k along d_e.
    """

    seeds = np.einsum('kab,ec->keabc', _pair_seeds(), np.eye(4))
    return seeds.reshape(40,4,4,4)


def _ddg_seeds():
    """Seeds for the second derivatives g_ab,ef, shape (160,4,4,4,4); seed 16k + 4e + f
    perturbs pair k along d_e d_f, split symmetrically between (e,f) and (f,e).
    """

    eye = np.eye(4)
    sym = 0.5 * (np.einsum('ec,fd->efcd', eye, eye) + np.einsum('ed,fc->efcd', eye, eye))
    seeds = np.einsum('kab,efcd->kefabcd', _pair_seeds(), sym)
    return seeds.reshape(160,4,4,4,4)


def _metric_t_jets(mj):
    """Context, connection and density over a first-order jet of the metric in the ten
    pair directions, with the metric derivatives held fixed.

    Return          (ctx, conn, omega); every jet has a single variable and a leading
                    batch axis of length 10.
    """

    g_t = jets.Jet(mj.g, _pair_seeds()[None])
    ctx_t = CliffordContext(MetricPoint(g_t, validate=False))
    (_, gamma2_t, _) = connection_data(g_t, mj.dg, g_inv=ctx_t.g_inv)
    conn_t = extended_connection_matrices(ctx_t, gamma2_t)
    omega_t = jets.sqrt(-jets.det(g_t))
    return (ctx_t, conn_t, omega_t)


class MetricVariation(object):
    """The metric-variation coefficients at one point.

    Attributes:
        A           A^ab, shape (10,16,16).
        P           P^ab as a sum of seven terms, shape (10,16,16).
        P_reduced   P^ab = ghat Ptilde^ab, rewritten with the connection identities.
        Q           Q^abe, shape (10,4,16,16), indexed [pair,e].
        domega      d omega / d g_ab, shape (10,).
        dghat       d ghat / d g_ab, shape (10,16,16).
        dgamma_hi   d gamma^e / d g_ab, shape (10,4,16,16).
        dconn       d Gammahat_n / d g_ab, shape (10,4,16,16).
        X           d Gammahat_n / d g_ab,e, shape (10,4,4,16,16), indexed [pair,e,n].
        M           ghat gamma^n X_n^abe, shape (10,4,16,16).
        div_M       sum_e d_e M^abe, shape (10,16,16).
    """

    def __init__(self, A, P, P_reduced, Q, domega, dghat, dgamma_hi, dconn, X, M, div_M):
        self.A = A
        self.P = P
        self.P_reduced = P_reduced
        self.Q = Q
        self.domega = domega
        self.dghat = dghat
        self.dgamma_hi = dgamma_hi
        self.dconn = dconn
        self.X = X
        self.M = M
        self.div_M = div_M


def metric_variation(geo):
    """A, P and Q at a GeometryPoint, with every partial derivative taken by seeded jet
    differentiation of the point constructors.

    Return          MetricVariation.
    """

    mj = geo.mj
    ctx = geo.ctx
    ghat = ctx.ghat
    conn = geo.ecp.ghat_mats

    # Partials in g_ab with the first derivatives fixed
    (ctx_t, conn_t, omega_t) = _metric_t_jets(mj)
    dghat = ctx_t.ghat.grad[0]
    dgamma_hi = ctx_t.gamma_hi.grad[0]
    dconn = conn_t.grad[0]
    domega = omega_t.grad[0]

    # Partials in g_ab,e. Gammahat is linear in the first derivatives, so X is the
    # connection built from a seed; building it over the coordinate jet of the metric
    # also yields d_e X.
    ctx_x = geo.ecp.context_jet
    (_, gamma2_x, _) = connection_data(ctx_x.g, _dg_seeds(), g_inv=ctx_x.g_inv)
    X_x = extended_connection_matrices(ctx_x, gamma2_x)
    M_x = jets.matmul(ctx_x.ghat, jets.einsum('...nij,...njk->...ik',
                                              ctx_x.gamma_hi, X_x))

    X = X_x.value.reshape(10,4,4,16,16)
    M = M_x.value.reshape(10,4,16,16)
    div_M = np.einsum('epeij->pij', M_x.grad.reshape(4,10,4,16,16))
    div_X = np.einsum('epenij->pnij', X_x.grad.reshape(4,10,4,4,16,16))

    g_inv_pairs = _pair_values(mj.g_inv)
    A = 0.5 * g_inv_pairs[:,None,None] * ghat + dghat

    Q = ghat @ dgamma_hi - (M + np.swapaxes(M, -1, -2))

    trace_gamma = np.einsum('mme->e', geo.cp.gamma2)                    # Gamma^m_me
    gamma_dconn = np.einsum('nij,pnjk->pik', ctx.gamma_hi, dconn)

    P = (ghat @ gamma_dconn
         - np.einsum('e,peij->pij', trace_gamma, M)
         - div_M
         + np.einsum('eji,pejk->pik', conn, M)
         + np.einsum('peij,ejk->pik', M, conn))

    coeff = (np.einsum('nem,mij->enij', geo.cp.gamma2, ctx.gamma_hi)
             - trace_gamma[:,None,None,None] * ctx.gamma_hi[None])
    bracket = (np.einsum('penij,ejk->penik', X, conn)
               - np.einsum('eij,penjk->penik', conn, X))
    p_tilde = (gamma_dconn
               + np.einsum('enij,penjk->pik', coeff, X)
               - np.einsum('nij,pnjk->pik', ctx.gamma_hi, div_X)
               + np.einsum('nij,penjk->pik', ctx.gamma_hi, bracket))

    return MetricVariation(A, P, ghat @ p_tilde, Q, domega, dghat, dgamma_hi, dconn, X, M,
                           div_M)


def metric_variation_A(geo):
    """A^ab = 1/2 g^ab ghat + d ghat/d g_ab, shape (10,16,16)."""

    (ctx_t, _, _) = _metric_t_jets(geo.mj)
    g_inv_pairs = _pair_values(geo.mj.g_inv)
    return 0.5 * g_inv_pairs[:,None,None] * geo.ctx.ghat + ctx_t.ghat.grad[0]


def metric_variation_PQ(geo):
    """(P, Q) with shapes (10,16,16) and (10,4,16,16)."""

    mv = metric_variation(geo)
    return (mv.P, mv.Q)


def decomposed_variation(geo, mv, psi, dpsi):
    """omega (psi^T A^ab D psi + psi^T P^ab psi + psi^T Q^abe nabla_e psi) for the ten
    pairs.
    """

    psi = np.asarray(psi, dtype='float')
    dpsi = np.asarray(dpsi, dtype='float')
    d_psi = _dirac(geo.ctx.gamma_hi, geo.ecp.ghat_mats, psi, dpsi)
    nabla = covariant_derivative(geo.ecp.ghat_mats, psi, dpsi)

    total = (np.einsum('i,pij,j->p', psi, mv.A, d_psi)
             + np.einsum('i,pij,j->p', psi, mv.P, psi)
             + np.einsum('i,peij,ej->p', psi, mv.Q, nabla))
    return geo.mj.omega * total


def source_terms(geo, A, Q, psi, dpsi, mu):
    """psi^T A^ab (D psi + mu psi) + psi^T Q^abe nabla_e psi for the ten pairs.

    Input:
        geo         GeometryPoint.
        A           shape (10,16,16).
        Q           shape (10,4,16,16), indexed [pair,e]; numeric or closed form.
        psi, dpsi   the field and its derivatives.
        mu          mass parameter.
    """

    psi = np.asarray(psi, dtype='float')
    dpsi = np.asarray(dpsi, dtype='float')
    residual = dirac_residual(geo.ctx, geo.ecp, psi, dpsi, mu)
    nabla = covariant_derivative(geo.ecp.ghat_mats, psi, dpsi)
    return (np.einsum('i,pij,j->p', psi, A, residual)
            + np.einsum('i,peij,ej->p', psi, Q, nabla))

##########################################################################################
# Direct numeric metric variations
##########################################################################################

def density_variation(mj):
    """d omega / d g_ab for the ten pairs, by jet differentiation of sqrt(-det g)."""

    g_t = jets.Jet(mj.g, _pair_seeds()[None])
    return jets.sqrt(-jets.det(g_t)).grad[0].copy()


def cosmological_variation(mj, lam):
    """dL_c/dg_ab = 1/2 lam omega g^ab for the ten pairs."""

    return 0.5 * lam * mj.omega * _pair_values(mj.g_inv)


def metric_variation_L_m(geo, psi):
    """dL_m/dg_ab for the ten pairs, by differentiating L_m = omega psi^T ghat psi."""

    psi = np.asarray(psi, dtype='float')
    (ctx_t, _, omega_t) = _metric_t_jets(geo.mj)
    l_m = omega_t * jets.dot(psi, jets.matvec(ctx_t.ghat, psi))
    return l_m.grad[0].copy()


def metric_variation_L_d(geo, field, x=None):
    """The variation dL_d/dg_ab - d_e (dL_d/dg_ab,e) for the ten pairs, by
    differentiating L_d = omega psi^T ghat gamma^r (d_r psi + Gammahat_r psi) directly.

    The second term is the x-derivative of a momentum that depends only on the metric,
    its first derivatives and the field, so second derivatives of the metric suffice.

    Input:
        geo         GeometryPoint.
        field       SpinorPolyField.
        x           the point; default geo.point.

    Return          array of shape (10,).
    """

    mj = geo.mj
    x = mj.point if x is None else x
    (psi, dpsi) = field.evaluate(x)

    (ctx_t, conn_t, omega_t) = _metric_t_jets(mj)
    l_t = omega_t * jets.dot(psi, jets.matvec(ctx_t.ghat,
                                              _dirac(ctx_t.gamma_hi, conn_t, psi, dpsi)))
    partial = l_t.grad[0]

    (ctx5, _, omega5, g5, dg5) = _mixed_metric(mj)
    dg5 = dg5 + jets.seeded(0., _dg_seeds(), 5)
    (_, gamma2, _) = connection_data(g5, dg5, g_inv=ctx5.g_inv)
    conn5 = extended_connection_matrices(ctx5, gamma2)
    (psi5, dpsi5) = _mixed_field(field, x)
    l_5 = omega5 * jets.dot(psi5, jets.matvec(ctx5.ghat,
                                              _dirac(ctx5.gamma_hi, conn5, psi5, dpsi5)))

    mixed = l_5.hess[:4,4].reshape(4,10,4)                          # [e,pair,e']
    divergence = np.einsum('epe->p', mixed)

    return partial - divergence

##########################################################################################
