##########################################################################################
# cliffdirac/geometry.py
##########################################################################################
"""Connections and curvatures, classical and extended, the Dirac operator, and the
vierbein spin connection, all evaluated pointwise.

Index conventions (arrays, any of which may be Jets):
    dg[a,b,c]           d_c g_ab
    ddg[a,b,c,d]        d_c d_d g_ab
    gamma1[n,a,b]       Gamma_nab = 1/2 (g_na,b - g_ab,n + g_bn,a)
    gamma2[m,a,b]       Gamma^m_ab = g^mn Gamma_nab
    dgamma2[e,m,a,b]    d_e Gamma^m_ab
    riemann[r,s,a,b]    R^r_sab

The 16x16 matrix of an operator holds the image of e_I in column I; a 4x4 map X acts
as X e_i = sum_b X[b,i] e_b. The connection map of direction m is therefore
Gamma_m[b,i] = Gamma^b_mi, and the Riemann operator of the plane (a,b) has matrix
R[r,s] = R^r_sab.
"""
##########################################################################################

import numpy as np

import cliffdirac._jets as jets
from cliffdirac._exceptions import UnsupportedMetric
from cliffdirac.clifford    import CliffordContext, MetricPoint, extend_derivation
from cliffdirac.metrics     import MetricJet, metric_jet

##########################################################################################
# Classical connection and curvature
##########################################################################################

class ConnectionPoint(object):
    """Levi-Civita connection data at one point.

    Attributes:
        gamma1      Gamma_nab, shape (4,4,4).
        gamma2      Gamma^m_ab, shape (4,4,4).
        dgamma2     d_e Gamma^m_ab, shape (4,4,4,4); None if second derivatives of the
                    metric were not supplied.
        g, dg       the metric data the connection was built from.
    """

    def __init__(self, gamma1, gamma2, dgamma2=None, g=None, dg=None):
        self.gamma1 = gamma1
        self.gamma2 = gamma2
        self.dgamma2 = dgamma2
        self.g = g
        self.dg = dg

    def x_jet(self):
        """Gamma^m_ab as a first-order Jet over the coordinates."""

        return jets.Jet(self.gamma2, self.dgamma2)


def connection_data(g, dg, ddg=None, g_inv=None):
    """Christoffel symbols and their derivatives from metric data.

    Input:
        g           metric, shape (...,4,4).
        dg          dg[...,a,b,c] = d_c g_ab.
        ddg         ddg[...,a,b,c,d] = d_c d_d g_ab, or None.
        g_inv       inverse metric, if already known.

    Return          tuple (gamma1, gamma2, dgamma2); dgamma2 is None if ddg is None.

    Any input may be a Jet, in which case the results are Jets over the same variables.
    """

    if g_inv is None:
        g_inv = jets.inv(g)

    gamma1 = 0.5 * (dg - jets.einsum('...abn->...nab', dg)
                       + jets.einsum('...bna->...nab', dg))
    gamma2 = jets.einsum('...mn,...nab->...mab', g_inv, gamma1)

    if ddg is None:
        return (gamma1, gamma2, None)

    # d_e Gamma_nab
    dgamma1 = 0.5 * (jets.einsum('...nabe->...enab', ddg)
                     - jets.einsum('...abne->...enab', ddg)
                     + jets.einsum('...bnae->...enab', ddg))

    # d_e g^mn = -g^mr (d_e g_rs) g^sn
    temp = jets.einsum('...mr,...rse->...mse', g_inv, dg)
    dg_inv = -jets.einsum('...mse,...sn->...emn', temp, g_inv)

    dgamma2 = (jets.einsum('...emn,...nab->...emab', dg_inv, gamma1)
               + jets.einsum('...mn,...enab->...emab', g_inv, dgamma1))

    return (gamma1, gamma2, dgamma2)


def christoffel(mj):
    """The ConnectionPoint of a MetricJet."""

    (gamma1, gamma2, dgamma2) = connection_data(mj.g, mj.dg, mj.ddg, mj.g_inv)
    return ConnectionPoint(gamma1, gamma2, dgamma2, g=mj.g, dg=mj.dg)


class CurvaturePoint(object):
    """Riemann tensor and its contractions at one point.

    Attributes:
        riemann         R^r_sab, shape (4,4,4,4).
        ricci           R_ab.
        scalar          R.
        einstein_lo     G_ab = R_ab - 1/2 g_ab R.
        einstein_hi     G^ab.
    """

    def __init__(self, riemann, ricci, scalar, einstein_lo, einstein_hi):
        self.riemann = riemann
        self.ricci = ricci
        self.scalar = scalar
        self.einstein_lo = einstein_lo
        self.einstein_hi = einstein_hi

    def riemann_operator(self):
        """The Riemann operators as 4x4 maps, shape (4,4,4,4); [a,b] is the map of the
        plane (a,b).
        """

        return jets.einsum('...rsab->...abrs', self.riemann)


def curvature_data(g, g_inv, gamma2, dgamma2):
    """Riemann, Ricci, scalar and Einstein curvature from connection data. Jet-generic.

    Return          CurvaturePoint.
    """

    riemann = (jets.einsum('...arbs->...rsab', dgamma2)
               - jets.einsum('...bras->...rsab', dgamma2)
               + jets.einsum('...ral,...lbs->...rsab', gamma2, gamma2)
               - jets.einsum('...rbl,...las->...rsab', gamma2, gamma2))

    ricci = jets.einsum('...rsrb->...sb', riemann)
    scalar = jets.einsum('...sb,...sb->...', g_inv, ricci)
    if not jets.is_jet(scalar):
        scalar = np.asarray(scalar)
    einstein_lo = ricci - 0.5 * g * scalar[..., None, None]

    temp = jets.einsum('...ac,...cd->...ad', g_inv, einstein_lo)
    einstein_hi = jets.einsum('...ad,...db->...ab', temp, g_inv)

    return CurvaturePoint(riemann, ricci, scalar, einstein_lo, einstein_hi)


def riemann_ricci(mj, cp):
    """The CurvaturePoint of a MetricJet and its ConnectionPoint."""

    return curvature_data(mj.g, mj.g_inv, cp.gamma2, cp.dgamma2)


def density_derivative_defect(mj, cp):
    """d_a omega - Gamma^b_ba omega, shape (4,)."""

    return mj.domega - jets.einsum('...bba->...a', cp.gamma2) * mj.omega

##########################################################################################
# Extended connection and curvature
##########################################################################################

class ExtendedConnectionPoint(object):
    """The extended connection at one point.

    Attributes:
        ghat_mats       Gammahat_a, shape (4,16,16).
        d_ghat_mats     d_b Gammahat_a, shape (4,4,16,16), indexed [b,a].
        dghat           d_a ghat, shape (4,16,16).
        context_jet     the CliffordContext built over a first-order Jet of the metric in
                        the coordinates; its gamma_lo.grad[b,a] is d_b gamma_a.
    """

    def __init__(self, ghat_mats, d_ghat_mats, dghat, context_jet=None):
        self.ghat_mats = ghat_mats
        self.d_ghat_mats = d_ghat_mats
        self.dghat = dghat
        self.context_jet = context_jet

    def x_jet(self):
        """Gammahat_a as a first-order Jet over the coordinates."""

        return jets.Jet(self.ghat_mats, self.d_ghat_mats)


def extended_connection_matrices(ctx, gamma2):
    """The Leibniz extensions Gammahat_m of the connection maps Gamma_m[b,i] = Gamma^b_mi.

    Jet-generic: if ctx was built over a Jet metric and gamma2 is a Jet over the same
    variables, the result carries the derivatives.

    Return          shape (...,4,16,16).
    """

    return jets.einsum('...bmi,...ibkl->...mkl', gamma2, ctx.derivation_basis)


def extended_christoffel(ctx, cp):
    """The ExtendedConnectionPoint.

    Input:
        ctx         CliffordContext at the point.
        cp          ConnectionPoint at the same point, with dgamma2 and its metric data.

    Return          ExtendedConnectionPoint. The derivatives d_b Gammahat_a and d_a ghat
                    are exact, obtained by building the context over a Jet of the metric.
    """

    g_jet = jets.Jet(cp.g, np.moveaxis(cp.dg, -1, 0))
    ctx_jet = CliffordContext(MetricPoint(g_jet, validate=False))
    conn = extended_connection_matrices(ctx_jet, cp.x_jet())

    return ExtendedConnectionPoint(conn.value, conn.grad, ctx_jet.ghat.grad, ctx_jet)


class ExtendedCurvaturePoint(object):
    """Extended curvature at one point.

    Attributes:
        omega_hat   Omegahat_ab, shape (4,4,16,16).
    """

    def __init__(self, omega_hat):
        self.omega_hat = omega_hat


def extended_curvature(ecp):
    """Omegahat_ab = d_a Gammahat_b - d_b Gammahat_a + [Gammahat_a, Gammahat_b]."""

    d = ecp.d_ghat_mats
    conn = ecp.ghat_mats
    product = np.einsum('aij,bjk->abik', conn, conn)
    omega_hat = d - d.transpose(1,0,2,3) + product - product.transpose(1,0,2,3)
    return ExtendedCurvaturePoint(omega_hat)


def riemann_extension(ctx, curvature):
    """The Leibniz extensions of the Riemann operators, shape (4,4,16,16); equal to the
    extended curvature.
    """

    return extend_derivation(ctx, curvature.riemann_operator())


def metric_compatibility_defect(ctx, ecp):
    """Gammahat_a^T ghat + ghat Gammahat_a - d_a ghat, shape (4,16,16)."""

    conn = ecp.ghat_mats
    return (np.swapaxes(conn, -1, -2) @ ctx.ghat + ctx.ghat @ conn) - ecp.dghat


def gamma_connection_defects(ctx, ecp, cp):
    """Residuals of the commutation relations of the gammas with the extended connection:
        [gamma_a, Gammahat_b] - (d_b gamma_a - Gamma^e_ab gamma_e)
        [gamma^a, Gammahat_b] - (d_b gamma^a + Gamma^a_be gamma^e)

    Return          tuple of two arrays of shape (4,4,16,16), indexed [a,b].
    """

    conn = ecp.ghat_mats
    d_gamma_lo = np.swapaxes(ecp.context_jet.gamma_lo.grad, 0, 1)     # [a,b] = d_b g_a
    d_gamma_hi = np.swapaxes(ecp.context_jet.gamma_hi.grad, 0, 1)

    def commutator(x):
        return (np.einsum('aij,bjk->abik', x, conn)
                - np.einsum('bij,ajk->abik', conn, x))

    lower = (commutator(ctx.gamma_lo) - d_gamma_lo
             + np.einsum('eab,eij->abij', cp.gamma2, ctx.gamma_lo))
    upper = (commutator(ctx.gamma_hi) - d_gamma_hi
             - np.einsum('abe,eij->abij', cp.gamma2, ctx.gamma_hi))
    return (lower, upper)


def _gamma_gamma(gamma_hi, F):
    pairs = jets.einsum('...aij,...bjk->...abik', gamma_hi, gamma_hi)
    return jets.einsum('...abik,...abkl->...il', pairs, F)


def gamma_gamma_contraction(ctx, F):
    """sum_ab gamma^a gamma^b F_ab for a 4x4 array F of 16x16 matrices. Jet-generic."""

    return _gamma_gamma(ctx.gamma_hi, F)


def curvature_trace(ctx, ohat):
    """tr(gamma^a gamma^b Omegahat_ab)."""

    return jets.trace(gamma_gamma_contraction(ctx, ohat.omega_hat))

##########################################################################################
# Dirac operator
##########################################################################################

def covariant_derivative(conn, psi, dpsi):
    """nabla_a psi = d_a psi + Gammahat_a psi, shape (...,4,16). Jet-generic."""

    return dpsi + jets.einsum('...aij,...j->...ai', conn, psi)


def _dirac(gamma_hi, conn, psi, dpsi):
    """gamma^a (d_a psi + conn_a psi) for any connection matrices conn. Jet-generic."""

    return jets.einsum('...aij,...aj->...i', gamma_hi,
                       covariant_derivative(conn, psi, dpsi))


def dirac_operator(ctx, ecp, psi_value, psi_grad):
    """D psi = gamma^a (d_a psi + Gammahat_a psi).

    Input:
        ctx         CliffordContext.
        ecp         ExtendedConnectionPoint.
        psi_value   multivector psi, shape (16,).
        psi_grad    d_a psi, shape (4,16).

    Return          multivector, shape (16,).
    """

    return _dirac(ctx.gamma_hi, ecp.ghat_mats, np.asarray(psi_value, dtype='float'),
                  np.asarray(psi_grad, dtype='float'))

##########################################################################################
# Vierbein and spin connection
##########################################################################################

ETA = np.diag([-1., 1., 1., 1.])

_FLAT_CONTEXT = None

def _flat_context():
    global _FLAT_CONTEXT
    if _FLAT_CONTEXT is None:
        _FLAT_CONTEXT = CliffordContext(MetricPoint(ETA))
    return _FLAT_CONTEXT


class VierbeinPoint(object):
    """A diagonal vierbein at one point.

    Attributes:
        e           e_m^a, shape (4,4).
        de          d_n e_m^a, shape (4,4,4), indexed [n,m,a].
        eta         Minkowski metric eta_ab.
        gamma_flat  flat-space gamma matrices gamma_a, shape (4,16,16).
        g_inv       inverse of the metric g_mn = e_m^a e_n^b eta_ab.
    """

    def __init__(self, e, de, g_inv):
        self.e = e
        self.de = de
        self.eta = ETA
        self.gamma_flat = _flat_context().gamma_lo
        self.g_inv = g_inv


def vierbein(mj):
    """The canonical diagonal vierbein e_m^m = sqrt(|g_mm|) of a diagonal metric.

    Raises UnsupportedMetric if the metric is not diagonal.
    """

    if not mj.is_diagonal():
        raise UnsupportedMetric('the vierbein is only defined for diagonal metrics')

    diag = np.diag(mj.g)
    sign = np.sign(diag)
    root = np.sqrt(sign * diag)

    ddiag = np.array([mj.dg[m,m,:] for m in range(4)])         # [m,n] = d_n g_mm
    de = np.zeros((4,4,4))
    for m in range(4):
        de[:,m,m] = 0.5 * sign[m] * ddiag[m] / root[m]

    return VierbeinPoint(np.diag(root), de, mj.g_inv)


def spin_connection(vb, cp):
    """Gamma^(s)_m = 1/8 ([gamma^n, d_m gamma_n] - Gamma^r_nm [gamma^n, gamma_r]), with
    gamma_m = e_m^a gamma_a.

    Return          shape (4,16,16).
    """

    gamma_lo = np.einsum('ma,aij->mij', vb.e, vb.gamma_flat)
    gamma_hi = np.einsum('nm,mij->nij', vb.g_inv, gamma_lo)
    d_gamma_lo = np.einsum('mna,aij->mnij', vb.de, vb.gamma_flat)     # [m,n] = d_m g_n

    def commutator(x, y):
        return x @ y - y @ x

    result = np.zeros((4,16,16))
    for m in range(4):
        for n in range(4):
            result[m] += commutator(gamma_hi[n], d_gamma_lo[m,n])
            for r in range(4):
                if cp.gamma2[r,n,m] != 0.:
                    result[m] -= cp.gamma2[r,n,m] * commutator(gamma_hi[n], gamma_lo[r])

    return result / 8.


def spin_connection_defects(ctx, ecp, spin):
    """Compare a spin connection with the extended connection.

    Return          tuple (compatibility, distance):
                    compatibility = max |Gs_m^T ghat + ghat Gs_m - d_m ghat|;
                    distance = max |Gammahat_m - Gs_m|.
    """

    compat = np.swapaxes(spin, -1, -2) @ ctx.ghat + ctx.ghat @ spin - ecp.dghat
    return (float(np.max(np.abs(compat))),
            float(np.max(np.abs(ecp.ghat_mats - spin))))

##########################################################################################
# Everything at one point
##########################################################################################

class GeometryPoint(object):
    """All pointwise geometric objects of a metric.

    Attributes:
        mj          MetricJet.
        ctx         CliffordContext.
        cp          ConnectionPoint.
        ecp         ExtendedConnectionPoint.
        curvature   CurvaturePoint.
        ohat        ExtendedCurvaturePoint.
    """

    def __init__(self, mj):
        self.mj = mj
        self.ctx = CliffordContext(MetricPoint(mj.g, mj.g_inv))
        self.cp = christoffel(mj)
        self.ecp = extended_christoffel(self.ctx, self.cp)
        self.curvature = riemann_ricci(mj, self.cp)
        self.ohat = extended_curvature(self.ecp)

    @property
    def point(self):
        return self.mj.point


def geometry_point(metric, x=None):
    """The GeometryPoint of a MetricSpec at x, or of a MetricJet."""

    if isinstance(metric, MetricJet):
        return GeometryPoint(metric)
    return GeometryPoint(metric_jet(metric, x))

##########################################################################################
