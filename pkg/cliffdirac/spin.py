##########################################################################################
# cliffdirac/spin.py
##########################################################################################
"""Lorentz generators, the spin representation, and exponentiation.

For vectors u, v the generator u ^g v = (u v^T - v u^T) g lies in so(g), i.e.,
L^T g + g L = 0. Its spin representative is sigma(u ^g v) = 1/4 [gamma_u, gamma_v], a
16x16 matrix that is antisymmetric with respect to ghat. With Lambda = exp(L) and
S = exp(sigma(L)), S gamma_v S^-1 = gamma_(Lambda v) for every vector v; S itself is
determined only up to sign, so only sign-insensitive identities are tested.
"""
##########################################################################################

import numpy as np

from cliffdirac.clifford import CliffordContext, MetricPoint, gamma_vector

##########################################################################################
# Matrix exponential
##########################################################################################

def matrix_exp(A, max_terms=40):
    """exp(A) by scaling and squaring with a Taylor series.

    A is scaled by 2^-s so that its max-row-sum norm is at most 1/2; the series is then
    summed until a term falls below 1e-16 relative to the sum, and the result squared
    s times.
    """

    A = np.asarray(A, dtype='float')
    n = A.shape[-1]
    norm = np.max(np.sum(np.abs(A), axis=-1)) if A.size else 0.

    s = 0
    if norm > 0.5:
        s = int(np.ceil(np.log2(norm / 0.5)))
    scaled = A / 2.**s

    result = np.eye(n)
    term = np.eye(n)
    for k in range(1, max_terms + 1):
        term = term @ scaled / k
        result = result + term
        if np.max(np.abs(term)) <= 1.e-16 * max(1., np.max(np.abs(result))):
            break

    for _ in range(s):
        result = result @ result

    return result

##########################################################################################
# Generators
##########################################################################################

class LorentzGenerator(object):
    """An element L of so(g) with its spin representative.

    Attributes:
        L           4x4 matrix, L^T g + g L = 0.
        sigma_L     16x16 matrix sigma(L).
    """

    def __init__(self, L, sigma_L):
        self.L = np.asarray(L, dtype='float')
        self.sigma_L = np.asarray(sigma_L, dtype='float')

    def __repr__(self):
        return f'LorentzGenerator({self.L!r})'

    def scaled(self, factor):
        return LorentzGenerator(factor * self.L, factor * self.sigma_L)


def _context(ctx):
    if isinstance(ctx, CliffordContext):
        return ctx
    return CliffordContext(MetricPoint(ctx))


def wedge(u, v, g):
    """u ^g v = (u v^T - v u^T) g."""

    u = np.asarray(u, dtype='float')
    v = np.asarray(v, dtype='float')
    return (np.outer(u, v) - np.outer(v, u)) @ np.asarray(g, dtype='float')


def lorentz_generator(u, v, ctx):
    """The generator u ^g v and its spin representative 1/4 [gamma_u, gamma_v].

    Input:
        u, v        4-vectors.
        ctx         CliffordContext, or a 4x4 metric.
    """

    ctx = _context(ctx)
    gu = gamma_vector(ctx, np.asarray(u, dtype='float'))
    gv = gamma_vector(ctx, np.asarray(v, dtype='float'))
    return LorentzGenerator(wedge(u, v, ctx.g), 0.25 * (gu @ gv - gv @ gu))


def spin_generator(ctx, L):
    """sigma(L) for any L in so(g).

    With L = sum_(a<b) c_ab e_a ^g e_b, the coefficients are c = L g^-1 (above the
    diagonal), and sigma(L) = sum_(a<b) c_ab 1/4 [gamma_a, gamma_b].
    """

    ctx = _context(ctx)
    coeffs = np.asarray(L, dtype='float') @ ctx.g_inv
    gamma = ctx.gamma_lo

    result = np.zeros((16,16))
    for a in range(4):
        for b in range(a+1, 4):
            result += coeffs[a,b] * 0.25 * (gamma[a] @ gamma[b] - gamma[b] @ gamma[a])
    return result


def so_basis(ctx, normalize=False):
    """The six generators e_a ^g e_b, a < b, in lexicographic order.

    If normalize is True, each is divided by sqrt|g_aa g_bb| so that its parameter is a
    proper angle or rapidity on a diagonal metric.
    """

    ctx = _context(ctx)
    eye = np.eye(4)
    generators = []
    for a in range(4):
        for b in range(a+1, 4):
            gen = lorentz_generator(eye[a], eye[b], ctx)
            if normalize:
                gen = gen.scaled(1. / np.sqrt(abs(ctx.g[a,a] * ctx.g[b,b])))
            generators.append(gen)

    return generators

##########################################################################################
# Checks
##########################################################################################

def algebra_defect(ctx, gen):
    """Return (max |L^T g + g L|, max |sigma^T ghat + ghat sigma|)."""

    ctx = _context(ctx)
    L = gen.L
    sigma = gen.sigma_L
    return (float(np.max(np.abs(L.T @ ctx.g + ctx.g @ L))),
            float(np.max(np.abs(sigma.T @ ctx.ghat + ctx.ghat @ sigma))))


def homomorphism_defect(ctx, gen1, gen2):
    """max |sigma([L1,L2]) - [sigma(L1), sigma(L2)]|."""

    bracket = gen1.L @ gen2.L - gen2.L @ gen1.L
    expected = gen1.sigma_L @ gen2.sigma_L - gen2.sigma_L @ gen1.sigma_L
    return float(np.max(np.abs(spin_generator(ctx, bracket) - expected)))


def spin_action_check(gen, ctx, parameter=1., vectors=None):
    """Compare the Lorentz action exp(tL) with the spin action exp(t sigma(L)).

    Input:
        gen         LorentzGenerator.
        ctx         CliffordContext or 4x4 metric.
        parameter   the parameter t.
        vectors     optional array of shape (k,4) of extra test vectors; the four basis
                    vectors are always tested.

    Return          dictionary with keys
                    'lorentz_metric'    max |Lambda^T g Lambda - g|;
                    'spin_metric'       max |S^T ghat S - ghat|;
                    'conjugation'       max |S gamma_v S^-1 - gamma_(Lambda v)| over v.
    """

    ctx = _context(ctx)
    lorentz = matrix_exp(parameter * gen.L)
    spin = matrix_exp(parameter * gen.sigma_L)
    spin_inv = np.linalg.inv(spin)

    test_vectors = np.eye(4)
    if vectors is not None:
        test_vectors = np.vstack([test_vectors, np.asarray(vectors, dtype='float')])

    conjugation = 0.
    for v in test_vectors:
        lhs = spin @ gamma_vector(ctx, v) @ spin_inv
        rhs = gamma_vector(ctx, lorentz @ v)
        conjugation = max(conjugation, float(np.max(np.abs(lhs - rhs))))

    return {
        'lorentz_metric': float(np.max(np.abs(lorentz.T @ ctx.g @ lorentz - ctx.g))),
        'spin_metric'   : float(np.max(np.abs(spin.T @ ctx.ghat @ spin - ctx.ghat))),
        'conjugation'   : conjugation,
    }

##########################################################################################
