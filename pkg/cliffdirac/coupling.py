##########################################################################################
# cliffdirac/coupling.py
##########################################################################################
"""Minimal coupling of an additional force field to the Clifford bundle.

The force is a set of four 16x16 matrices theta_a added to the extended connection,
    C_a = Gammahat_a + theta_a,
and transforming under a basis change B as
    theta'_a = sum_b Binv[b,a] Bhat theta_b Bhat^-1.
For the coupled Dirac equation to follow from the same variation, theta must satisfy
    theta_a^T ghat + ghat theta_a = 0,
together with a commutation condition with the gammas, read either per pair,
[gamma^a, theta_b] = 0 for all a, b, or summed, sum_a [gamma^a, theta_a] = 0.

Right multiplications rho_u psi = psi u commute with every gamma matrix, and are
ghat-antisymmetric exactly when u^dagger = -u, so they provide admissible fields.
"""
##########################################################################################

import numpy as np

import cliffdirac._jets as jets
from cliffdirac._utils       import _max_abs
from cliffdirac.clifford     import dagger, trace_ks
from cliffdirac.expressions  import Expression, Number, eval_jet, eval_jets
from cliffdirac.geometry     import _dirac, _gamma_gamma
from cliffdirac.transforms   import transform_field

##########################################################################################
# Right multiplication
##########################################################################################

def right_multiplication(ctx, u):
    """The 16x16 matrix of psi -> psi u. Jet-generic."""

    return jets.einsum('...ikj,...j->...ki', ctx.lmult, u)


def is_dagger_odd(ctx, u):
    """True if u^dagger = -u."""

    u = np.asarray(u, dtype='float')
    return _max_abs(dagger(ctx, u) + u) <= 1.e-14 * max(1., _max_abs(u))

##########################################################################################
# ThetaField
##########################################################################################

class ThetaField(object):
    """A force field theta_a(x), given as expression entries plus right-multiplication
    terms.

    Attributes:
        entries         object array of shape (4,16,16) of Expressions; None entries are
                        zero.
        right_terms     list of tuples (a, f, u): theta_a gains f(x) rho_u, where f is an
                        Expression and u a multivector of shape (16,).
    """

    def __init__(self, entries=None, right_terms=()):

        if entries is None:
            entries = np.full((4,16,16), None, dtype='object')
        self.entries = np.asarray(entries, dtype='object')
        if self.entries.shape != (4,16,16):
            raise ValueError('theta entries must have shape (4,16,16)')

        self.right_terms = []
        for (a, f, u) in right_terms:
            if not isinstance(f, Expression):
                f = Number(float(f))
            self.right_terms.append((int(a), f, np.asarray(u, dtype='float')))

    def __repr__(self):
        count = sum(e is not None for e in self.entries.ravel())
        return f'ThetaField({count} entries, {len(self.right_terms)} right terms)'

    @staticmethod
    def zero():
        return ThetaField()

    @staticmethod
    def right_multiplication(u, coefficients=(1.,1.,1.,1.)):
        """theta_a = f_a rho_u for a multivector u and four coefficients, each a number
        or an Expression.
        """

        return ThetaField(right_terms=[(a, f, u) for (a, f) in enumerate(coefficients)])

    def jet(self, ctx_jet, x):
        """theta at x as a first-order Jet of shape (4,16,16) over the coordinates.

        Input:
            ctx_jet     CliffordContext built over a first-order coordinate Jet of the
                        metric, e.g. ExtendedConnectionPoint.context_jet; it supplies
                        the right multiplications and their derivatives.
            x           the point.
        """

        result = eval_jets(self.entries, x, order=1)
        value = result.value.copy()
        grad = result.grad.copy()

        for (a, f, u) in self.right_terms:
            term = eval_jet(f, x, order=1) * right_multiplication(ctx_jet, u)
            value[a] += term.value
            grad[:,a] += term.grad

        return jets.Jet(value, grad)

    def evaluate(self, ctx_jet, x):
        """(theta, dtheta) at x, with dtheta[b,a] = d_b theta_a."""

        jet = self.jet(ctx_jet, x)
        return (jet.value, jet.grad)

##########################################################################################
# Connection, admissibility and curvature
##########################################################################################

def total_connection(ecp, theta):
    """C_a = Gammahat_a + theta_a, shape (4,16,16)."""

    return ecp.ghat_mats + np.asarray(theta, dtype='float')


class AdmissibilityReport(object):
    """Defects of the conditions on theta.

    Attributes:
        antisymmetry    max |theta_a^T ghat + ghat theta_a| for each a, shape (4,).
        pairwise        max |[gamma^a, theta_b]| for each (a,b), shape (4,4).
        summed          max |sum_a [gamma^a, theta_a]|.
    """

    def __init__(self, antisymmetry, pairwise, summed):
        self.antisymmetry = antisymmetry
        self.pairwise = pairwise
        self.summed = summed

    def passes(self, tol, pairwise=True):
        """True if the antisymmetry and the chosen commutation reading hold within tol."""

        commutation = np.max(self.pairwise) if pairwise else self.summed
        return bool(np.max(self.antisymmetry) <= tol and commutation <= tol)


def theta_admissible(ctx, theta):
    """The AdmissibilityReport of theta, shape (4,16,16), at a point."""

    return _admissibility(ctx.ghat, ctx.gamma_hi, theta)


def _admissibility(ghat, gamma, theta):

    theta = np.asarray(theta, dtype='float')
    antisymmetry = np.max(np.abs(np.swapaxes(theta, -1, -2) @ ghat + ghat @ theta),
                          axis=(-2,-1))
    commutators = (np.einsum('aij,bjk->abik', gamma, theta)
                   - np.einsum('bij,ajk->abik', theta, gamma))
    pairwise = np.max(np.abs(commutators), axis=(-2,-1))
    summed = _max_abs(np.einsum('aaij->ij', commutators))

    return AdmissibilityReport(antisymmetry, pairwise, summed)


class TotalCurvature(object):
    """F_ab = d_a C_b - d_b C_a + [C_a, C_b], shape (4,4,16,16)."""

    def __init__(self, F):
        self.F = F

    def antisymmetry_defect(self):
        return _max_abs(self.F + np.swapaxes(self.F, 0, 1))


def total_curvature(ecp, theta_jet):
    """The TotalCurvature of C = Gammahat + theta.

    Input:
        ecp         ExtendedConnectionPoint.
        theta_jet   theta as a first-order coordinate Jet, as from ThetaField.jet(), or
                    None for theta = 0.
    """

    conn = ecp.x_jet()
    if theta_jet is not None:
        conn = conn + theta_jet

    C = conn.value
    dC = conn.grad                                          # [a,b] = d_a C_b
    product = np.einsum('aij,bjk->abik', C, C)
    F = dC - np.swapaxes(dC, 0, 1) + product - np.swapaxes(product, 0, 1)
    return TotalCurvature(F)

##########################################################################################
# Gauge Lagrangians
##########################################################################################

class GaugeLagrangians(object):
    """Candidate Lagrangian densities built from the total curvature.

    Attributes:
        trace           omega tr(gamma^a gamma^b F_ab).
        trace_ff        omega tr(F_ab F^ab).
        trace2          omega tr_2(gamma^a gamma^b F_ab).
        det_coefficients    omega tau^k tr_k(gamma^a gamma^b F_ab), k = 0..16.
        determinant     omega det(I + tau gamma^a gamma^b F_ab), evaluated directly.
    """

    def __init__(self, trace, trace_ff, trace2, det_coefficients, determinant):
        self.trace = trace
        self.trace_ff = trace_ff
        self.trace2 = trace2
        self.det_coefficients = det_coefficients
        self.determinant = determinant


def gauge_lagrangians(ctx, curvature, omega, tau=1.):
    """The GaugeLagrangians of a TotalCurvature at a point with density omega."""

    F = curvature.F
    contracted = _gamma_gamma(ctx.gamma_hi, F)
    traces = trace_ks(contracted)

    F_hi = np.einsum('ac,bd,cdij->abij', ctx.g_inv, ctx.g_inv, F)
    trace_ff = np.einsum('abij,abji->', F, F_hi)

    powers = tau ** np.arange(17)
    determinant = np.linalg.det(np.eye(16) + tau * contracted)

    return GaugeLagrangians(float(omega * traces[1]),
                            float(omega * trace_ff),
                            float(omega * traces[2]),
                            omega * powers * traces,
                            float(omega * determinant))

##########################################################################################
# Basis changes
##########################################################################################

def transform_theta(bc, theta):
    """theta'_a = sum_b Binv[b,a] Bhat theta_b Bhat^-1."""

    conj = bc.Bhat @ np.asarray(theta, dtype='float') @ bc.Bhat_inv
    return np.einsum('ba,bij->aij', bc.B_inv, conj)


def total_connection_transform_defect(ecp, rebuilt, bc, theta, theta_new=None):
    """Compare the total connection transformed as a connection,
        C'_a = sum_b Binv[b,a] (-d_b Bhat + Bhat C_b) Bhat^-1,
    with the independently rebuilt extended connection plus the transformed force.

    Input:
        ecp         ExtendedConnectionPoint.
        rebuilt     PrimedBundle from rebuilt_bundle() for the same basis change.
        bc          BasisChangeJet.
        theta       theta at the point, shape (4,16,16).
        theta_new   the transformed theta to test; default is transform_theta(bc, theta).

    Return          max absolute difference.
    """

    if theta_new is None:
        theta_new = transform_theta(bc, theta)

    C = total_connection(ecp, theta)
    inner = -bc.dBhat + bc.Bhat @ C
    C_new = np.einsum('ba,bij->aij', bc.B_inv, inner @ bc.Bhat_inv)
    return _max_abs(C_new - (rebuilt.ghat_mats + np.asarray(theta_new, dtype='float')))


def coupled_dirac_covariance(ctx, ecp, primed, bc, theta, psi, dpsi):
    """max |D_C' psi' - Bhat D_C psi| for the minimally coupled Dirac operator
    D_C psi = gamma^a (d_a psi + C_a psi).
    """

    psi = np.asarray(psi, dtype='float')
    dpsi = np.asarray(dpsi, dtype='float')
    (psi_new, d_psi_new) = transform_field(bc, psi, dpsi)

    C_new = primed.ghat_mats + transform_theta(bc, theta)
    lhs = _dirac(primed.gamma_hi, C_new, psi_new, d_psi_new)
    rhs = bc.Bhat @ _dirac(ctx.gamma_hi, total_connection(ecp, theta), psi, dpsi)
    return _max_abs(lhs - rhs)


def primed_admissibility(primed, bc, theta):
    """The AdmissibilityReport of the transformed force, measured against the primed
    extended metric and gammas.
    """

    return _admissibility(primed.ghat, primed.gamma_hi, transform_theta(bc, theta))

##########################################################################################
