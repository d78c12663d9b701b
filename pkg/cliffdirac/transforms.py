##########################################################################################
# cliffdirac/transforms.py
##########################################################################################
"""Extended changes of basis and the quantities they leave invariant.

A basis change field B(x) maps the coordinate frame to a new frame. Following the
column convention of the package, the new frame vectors are e'_a = sum_b Binv[b,a] e_b
where Binv = B^-1, and vector components transform as v' = B v. Multivector components
transform by the extension Bhat of B: psi' = Bhat psi. The remaining objects transform
as
    ghat'           = Bhat^-T ghat Bhat^-1
    Gammahat'_a     = sum_b Binv[b,a] (-d_b Bhat + Bhat Gammahat_b) Bhat^-1
    gamma'_a        = sum_b Binv[b,a] Bhat gamma_b Bhat^-1
    gamma'^a        = sum_b B[a,b] Bhat gamma^b Bhat^-1
    Omegahat'_ab    = sum_cd Binv[c,a] Binv[d,b] Bhat Omegahat_cd Bhat^-1
and derivatives along the new frame are d'_a = sum_b Binv[b,a] d_b.
"""
##########################################################################################

import numpy as np

import cliffdirac._jets as jets
from cliffdirac._exceptions import NonInvertibleBasisChange
from cliffdirac._utils      import _scaled_error
from cliffdirac.clifford    import (BASIS, CliffordContext, MetricPoint,
                                    clifford_product, extend_derivation, extend_map,
                                    trace_ks, vector)
from cliffdirac.expressions import Number, eval_jets
from cliffdirac.geometry    import _dirac, _gamma_gamma
from cliffdirac.metrics     import random_quadratic
from cliffdirac.tolerances  import get_tolerance

##########################################################################################
# Basis change fields
##########################################################################################

class BasisChangeField(object):
    """A 4x4 matrix field B(x) given by expressions.

    Attributes:
        components  4x4 object array of Expressions; None entries are zero.
    """

    def __init__(self, components):
        self.components = np.asarray(components, dtype='object')
        if self.components.shape != (4,4):
            raise ValueError('a basis change field must be 4x4')

    @staticmethod
    def identity():
        return BasisChangeField.constant(np.eye(4))

    @staticmethod
    def constant(matrix):
        """A constant field."""

        matrix = np.asarray(matrix, dtype='float')
        components = np.full((4,4), None, dtype='object')
        for (index, value) in np.ndenumerate(matrix):
            if value != 0.:
                components[index] = Number(value)
        return BasisChangeField(components)

    @staticmethod
    def random(rng, box=None, scale=0.01):
        """The identity plus seeded random quadratic polynomials, each with coefficients
        of magnitude at most scale in coordinates normalized to the box.

        With the default scale every entry of B - I stays below 0.15 inside the box, so
        B is diagonally dominant and invertible there.
        """

        components = np.full((4,4), None, dtype='object')
        for i in range(4):
            for j in range(4):
                components[i,j] = random_quadratic(rng, box, scale,
                                                   1. if i == j else 0.)
        return BasisChangeField(components)

    def jet(self, x):
        """B at x as a first-order Jet over the coordinates."""

        return eval_jets(self.components, x, order=1)


class BasisChangeJet(object):
    """A basis change at one point.

    Attributes:
        B           4x4 matrix.
        dB          d_b B, shape (4,4,4), indexed [b,i,j].
        B_inv       B^-1.
        Bhat        extension of B, shape (16,16).
        Bhat_inv    extension of B^-1, equal to Bhat^-1.
        dBhat       d_b Bhat, shape (4,16,16).
    """

    def __init__(self, B, dB, Bhat, Bhat_inv, dBhat):
        self.B = B
        self.dB = dB
        self.B_inv = np.linalg.inv(B)
        self.Bhat = Bhat
        self.Bhat_inv = Bhat_inv
        self.dBhat = dBhat


def basis_change_jet(ecp, field, x):
    """Evaluate a BasisChangeField at x.

    Input:
        ecp         ExtendedConnectionPoint at x; its context_jet supplies the metric
                    derivatives that enter d_b Bhat.
        field       BasisChangeField, or a constant 4x4 matrix.
        x           the coordinates.

    Raises NonInvertibleBasisChange if |det B| is below the 'singular' tolerance.
    """

    if not isinstance(field, BasisChangeField):
        field = BasisChangeField.constant(field)

    B_jet = field.jet(x)
    B = B_jet.value
    det = np.linalg.det(B)
    if abs(det) < get_tolerance('singular'):
        raise NonInvertibleBasisChange(f'basis change determinant {det} is too close '
                                       'to zero')

    ctx_jet = ecp.context_jet
    Bhat = extend_map(ctx_jet, B_jet)
    ctx = CliffordContext(MetricPoint(ctx_jet.g.value, ctx_jet.g_inv.value,
                                      validate=False))
    Bhat_inv = extend_map(ctx, np.linalg.inv(B))

    return BasisChangeJet(B, B_jet.grad, Bhat.value, Bhat_inv, Bhat.grad)

##########################################################################################
# Primed objects
##########################################################################################

class PrimedBundle(object):
    """Extended objects expressed in a new basis.

    Attributes:
        ghat            ghat'.
        ghat_mats       Gammahat'_a, shape (4,16,16).
        gamma_lo        gamma'_a.
        gamma_hi        gamma'^a.
        omega_hat       Omegahat'_ab, shape (4,4,16,16).
    """

    def __init__(self, ghat, ghat_mats, gamma_lo, gamma_hi, omega_hat):
        self.ghat = ghat
        self.ghat_mats = ghat_mats
        self.gamma_lo = gamma_lo
        self.gamma_hi = gamma_hi
        self.omega_hat = omega_hat


def primed_bundle(ctx, ecp, ohat, bc):
    """The extended objects after the basis change bc, by their transformation laws.

    Input:
        ctx         CliffordContext.
        ecp         ExtendedConnectionPoint.
        ohat        ExtendedCurvaturePoint, or None to skip the curvature.
        bc          BasisChangeJet.

    Return          PrimedBundle.
    """

    Bhat = bc.Bhat
    Bhat_inv = bc.Bhat_inv
    Binv = bc.B_inv

    ghat = Bhat_inv.T @ ctx.ghat @ Bhat_inv

    inner = -bc.dBhat + Bhat @ ecp.ghat_mats                   # [b] = -d_b Bhat + ...
    conn = np.einsum('ba,bij->aij', Binv, inner @ Bhat_inv)

    conj_lo = Bhat @ ctx.gamma_lo @ Bhat_inv
    conj_hi = Bhat @ ctx.gamma_hi @ Bhat_inv
    gamma_lo = np.einsum('ba,bij->aij', Binv, conj_lo)
    gamma_hi = np.einsum('ab,bij->aij', bc.B, conj_hi)

    omega_hat = None
    if ohat is not None:
        conj_omega = Bhat @ ohat.omega_hat @ Bhat_inv
        omega_hat = np.einsum('ca,db,cdij->abij', Binv, Binv, conj_omega)

    return PrimedBundle(ghat, conn, gamma_lo, gamma_hi, omega_hat)


def rebuilt_bundle(ctx, cp, curvature, bc):
    """The primed objects recomputed independently from the transformed 4x4 data.

    The context is rebuilt from g' = Binv^T g Binv. The extended connection and
    curvature are rebuilt as Leibniz extensions, under g', of the transformed connection
    maps
        Gamma'_a = sum_b Binv[b,a] (-d_b B + B Gamma_b) B^-1
    and the transformed Riemann operators.

    Return          PrimedBundle.
    """

    Binv = bc.B_inv
    g_new = Binv.T @ ctx.g @ Binv
    g_new = 0.5 * (g_new + g_new.T)
    ctx_new = CliffordContext(MetricPoint(g_new))

    conn_maps = np.swapaxes(cp.gamma2, 0, 1)                   # [b,r,s] = Gamma^r_bs
    inner = -bc.dB + bc.B @ conn_maps
    conn_new = np.einsum('ba,bij->aij', Binv, inner @ Binv)

    riemann_maps = curvature.riemann_operator()
    conj = bc.B @ riemann_maps @ Binv
    riemann_new = np.einsum('ca,db,cdij->abij', Binv, Binv, conj)

    return PrimedBundle(ctx_new.ghat,
                        extend_derivation(ctx_new, conn_new),
                        ctx_new.gamma_lo,
                        ctx_new.gamma_hi,
                        extend_derivation(ctx_new, riemann_new))


def bundle_differences(primed, rebuilt):
    """Scaled errors between two PrimedBundles, as a dictionary keyed by attribute."""

    return {name: _scaled_error(getattr(primed, name), getattr(rebuilt, name))
            for name in ('ghat', 'ghat_mats', 'gamma_lo', 'gamma_hi', 'omega_hat')}


def transform_field(bc, psi, dpsi):
    """psi' = Bhat psi and its derivatives along the new frame.

    Return          tuple (psi', d'psi'), where d'_a psi' = sum_b Binv[b,a] d_b psi'.
    """

    psi = np.asarray(psi, dtype='float')
    dpsi = np.asarray(dpsi, dtype='float')
    psi_new = bc.Bhat @ psi
    d_psi_new = bc.dBhat @ psi + dpsi @ bc.Bhat.T              # [b] = d_b (Bhat psi)
    return (psi_new, bc.B_inv.T @ d_psi_new)


def field_rule_defect(ctx, bc, psi):
    """max |sum_I psi'^I e'_I - psi|, with e'_I the Clifford products of the new frame
    vectors e'_a = sum_b Binv[b,a] e_b, formed with clifford_product.
    """

    psi_new = bc.Bhat @ np.asarray(psi, dtype='float')
    frame = [vector(bc.B_inv[:,a]) for a in range(4)]

    unit = np.zeros(16)
    unit[0] = 1.
    total = np.zeros(16)
    for (k, indices) in enumerate(BASIS):
        element = unit
        for i in indices:
            element = clifford_product(ctx, element, frame[i])
        total += psi_new[k] * element

    return float(np.max(np.abs(total - psi)))


def verify_dirac_covariance(ctx, ecp, bc, psi, dpsi, primed=None):
    """max |D'psi' - Bhat D psi| for a field psi with derivatives dpsi (shape (4,16))."""

    if primed is None:
        primed = primed_bundle(ctx, ecp, None, bc)

    (psi_new, d_psi_new) = transform_field(bc, psi, dpsi)
    lhs = _dirac(primed.gamma_hi, primed.ghat_mats, psi_new, d_psi_new)
    rhs = bc.Bhat @ _dirac(ctx.gamma_hi, ecp.ghat_mats, np.asarray(psi, dtype='float'),
                           np.asarray(dpsi, dtype='float'))
    return float(np.max(np.abs(lhs - rhs)))

##########################################################################################
# Invariants
##########################################################################################

def _invariants(ghat, gamma_hi, conn, omega_hat, psi, dpsi):

    d_psi = _dirac(gamma_hi, conn, psi, dpsi)
    traces = trace_ks(_gamma_gamma(gamma_hi, omega_hat))
    return (float(psi @ ghat @ psi), float(psi @ ghat @ d_psi),
            float(traces[1]), float(traces[2]), float(traces[16]))


def invariant_scalars(ctx, ecp, ohat, psi, dpsi):
    """The scalars left unchanged by an extended change of basis:
        s_m = psi^T ghat psi,
        s_d = psi^T ghat D psi,
        t_k = tr_k(gamma^a gamma^b Omegahat_ab) for k = 1, 2, 16.

    Return          tuple (s_m, s_d, t_1, t_2, t_16).
    """

    return _invariants(ctx.ghat, ctx.gamma_hi, ecp.ghat_mats, ohat.omega_hat,
                       np.asarray(psi, dtype='float'), np.asarray(dpsi, dtype='float'))


def primed_invariant_scalars(primed, bc, psi, dpsi):
    """invariant_scalars evaluated from a PrimedBundle and the transformed field."""

    (psi_new, d_psi_new) = transform_field(bc, psi, dpsi)
    return _invariants(primed.ghat, primed.gamma_hi, primed.ghat_mats, primed.omega_hat,
                       psi_new, d_psi_new)


def general_change_invariance(ctx, A, psi):
    """For a general invertible 16x16 change A (not an extension), transform
    psi' = A psi and ghat' = A^-T ghat A^-1.

    Return          |psi'^T ghat' psi' - psi^T ghat psi|.
    """

    A = np.asarray(A, dtype='float')
    A_inv = np.linalg.inv(A)
    psi = np.asarray(psi, dtype='float')
    psi_new = A @ psi
    ghat_new = A_inv.T @ ctx.ghat @ A_inv
    return float(abs(psi_new @ ghat_new @ psi_new - psi @ ctx.ghat @ psi))


def spin_connection_compatibility(S, dS, ecp):
    """max |d_a S - [S, Gammahat_a]| for a spin action S(x) with derivatives dS[a]."""

    S = np.asarray(S, dtype='float')
    conn = ecp.ghat_mats
    bracket = S @ conn - conn @ S
    return float(np.max(np.abs(np.asarray(dS) - bracket)))

##########################################################################################
