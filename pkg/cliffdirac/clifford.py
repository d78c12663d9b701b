##########################################################################################
# cliffdirac/clifford.py
##########################################################################################
"""Pointwise arithmetic in the 16-dimensional Clifford algebra of a symmetric 4x4 metric.

The canonical basis consists of the ordered products e_I = e_i1 e_i2 ... e_ik with
strictly increasing indices, enumerated as
    (), 0, 1, 2, 3, 01, 02, 03, 12, 13, 23, 012, 013, 023, 123, 0123.
A multivector is an array of 16 real coefficients over this basis. For a non-orthogonal
metric, products are re-expressed in the canonical basis using the relations
    e_i e_j = 2 g_ij - e_j e_i     (i > j)
    e_i e_i = g_ii.

Every operator on multivectors is stored as a 16x16 matrix whose column I holds the
components of the operator applied to e_I. A 4x4 map A acts on vectors by
    A e_a = sum_b A[b,a] e_b.

The gamma matrices are linear in the metric, gamma_a = G0[a] + sum_bc G1[a,b,c] g_bc, with
G0 and G1 tabulated once. All derived objects are built from them with the functions of
the _jets module, so a CliffordContext can be constructed from a metric given as a
truncated Taylor jet; its attributes are then jets carrying the exact derivatives.
"""
##########################################################################################

import numpy as np

import cliffdirac._jets as jets
from cliffdirac._exceptions import IndexOutOfRange, NonLorentzian, SingularMetric
from cliffdirac.tolerances  import get_tolerance

##########################################################################################
# Multi-index bookkeeping
##########################################################################################

BASIS = ((),
         (0,), (1,), (2,), (3,),
         (0,1), (0,2), (0,3), (1,2), (1,3), (2,3),
         (0,1,2), (0,1,3), (0,2,3), (1,2,3),
         (0,1,2,3))

BASIS_INDEX = {indices: k for (k, indices) in enumerate(BASIS)}

GRADES = np.array([len(indices) for indices in BASIS])

GRADE1 = np.array([1, 2, 3, 4])     # positions of e_0..e_3


def basis_index(indices):
    """The position of e_I in the canonical enumeration.

    Input:
        indices     a strictly increasing sequence of integers 0-3, or a label string
                    such as 'e02' or 'e' for the unit.

    Return          integer 0-15.
    """

    if isinstance(indices, str):
        label = indices[1:] if indices.startswith('e') else indices
        indices = tuple(int(c) for c in label)

    indices = tuple(int(i) for i in indices)
    try:
        return BASIS_INDEX[indices]
    except KeyError:
        raise IndexOutOfRange(f'not a strictly increasing index set over 0-3: {indices}')


def basis_vector(indices):
    """The multivector e_I as an array of 16 coefficients."""

    v = np.zeros(16)
    v[basis_index(indices)] = 1.
    return v


def basis_label(k):
    """Label of the k-th canonical basis element, e.g. 'e02'; 'e' for the unit."""

    return 'e' + ''.join(str(i) for i in BASIS[k])


def complement(indices):
    """The complementary index set in {0,1,2,3}, e.g. (0,2) -> (1,3)."""

    return tuple(i for i in range(4) if i not in indices)

##########################################################################################
# Left multiplication by a generator, tabulated as an affine function of the metric
##########################################################################################

def _generator_product(a, indices):
    """The product e_a e_I as an array of shape (16,17).

    Column 0 holds the metric-independent coefficients; column 1 + 4*b + c holds the
    coefficient of g_bc. Each occurrence of an off-diagonal g_bc is split evenly between
    (b,c) and (c,b).
    """

    result = np.zeros((16,17))
    if not indices or a < indices[0]:
        result[BASIS_INDEX[(a,) + tuple(indices)], 0] = 1.
        return result

    first = indices[0]
    rest = tuple(indices[1:])
    if a == first:
        result[BASIS_INDEX[rest], 1 + 5*a] = 1.
        return result

    # e_a e_first = 2 g_{a,first} - e_first e_a
    result[BASIS_INDEX[rest], 1 + 4*a + first] += 1.
    result[BASIS_INDEX[rest], 1 + 4*first + a] += 1.

    # e_first (e_a e_rest): every index in e_a e_rest exceeds first, so this prepends
    inner = _generator_product(a, rest)
    for k in np.nonzero(np.any(inner, axis=1))[0]:
        result[BASIS_INDEX[(first,) + BASIS[k]]] -= inner[k]

    return result


def _gamma_tables():
    g0 = np.zeros((4,16,16))
    g1 = np.zeros((4,4,4,16,16))
    for a in range(4):
        for (j, indices) in enumerate(BASIS):
            product = _generator_product(a, indices)
            g0[a,:,j] = product[:,0]
            g1[a,:,:,:,j] = product[:,1:].reshape(16,4,4).transpose(1,2,0)
    return (g0, g1)

(_G0, _G1) = _gamma_tables()

##########################################################################################
# MetricPoint and CliffordContext
##########################################################################################

class MetricPoint(object):
    """A symmetric Lorentzian metric and its inverse at one point.

    Attributes:
        g           4x4 metric, as an array or a Jet.
        g_inv       its inverse.
    """

    def __init__(self, g, g_inv=None, validate=True):

        self.g = g if isinstance(g, jets.Jet) else np.asarray(g, dtype='float')
        if validate:
            _validate_metric(jets.value_of(self.g))
        self.g_inv = jets.inv(self.g) if g_inv is None else g_inv


def _validate_metric(g):
    """Raise NonLorentzian or SingularMetric if g is not a usable spacetime metric."""

    if g.shape[-2:] != (4,4):
        raise ValueError(f'metric must have shape (4,4), not {g.shape}')

    scale = max(1., float(np.max(np.abs(g))))
    if not np.allclose(g, np.swapaxes(g, -1, -2), rtol=0., atol=1.e-13 * scale):
        raise NonLorentzian('metric is not symmetric')

    d = np.linalg.det(g)
    if np.any(np.abs(d) < get_tolerance('singular')):
        raise SingularMetric(f'metric determinant {d} is too close to zero')

    if np.any(d >= 0.):
        raise NonLorentzian(f'metric determinant {d} is not negative')


class CliffordContext(object):
    """Metric-dependent structure of the Clifford algebra at one point.

    Attributes:
        metric          the MetricPoint.
        g, g_inv        shortcuts to the metric and its inverse.
        gamma_lo        gamma_a, shape (4,16,16): left multiplication by e_a.
        gamma_hi        gamma^a = g^ab gamma_b, shape (4,16,16).
        lmult           left multiplication by each basis element, shape (16,16,16);
                        lmult[I] = gamma_i1 ... gamma_ik.
        dagger_matrix   the involution e_I -> (-1)^k e_ik ... e_i1, shape (16,16).
        ghat            extended metric, shape (16,16).

    When built from a metric Jet, every attribute is a Jet.
    """

    def __init__(self, metric):

        if not isinstance(metric, MetricPoint):
            metric = MetricPoint(getattr(metric, 'g', metric))

        self.metric = metric
        self.g = metric.g
        self.g_inv = metric.g_inv

        self.gamma_lo = jets.einsum('...bc,...abcij->...aij', self.g, _G1) + _G0
        self.gamma_hi = jets.einsum('...ab,...bij->...aij', self.g_inv, self.gamma_lo)

        # Left multiplication by every basis element
        products = {(): np.eye(16)}
        for indices in BASIS[1:]:
            products[indices] = jets.matmul(self.gamma_lo[..., indices[0], :, :],
                                            products[indices[1:]])
        self.lmult = jets.stack([products[indices] for indices in BASIS], axis=-3)

        # Dagger: column I is (-1)^k gamma_ik ... gamma_i1 e_()
        unit = np.zeros(16)
        unit[0] = 1.
        columns = []
        for indices in BASIS:
            v = unit
            for i in indices:
                v = jets.matvec(self.gamma_lo[..., i, :, :], v)
            columns.append(v if len(indices) % 2 == 0 else -v)
        self.dagger_matrix = jets.stack(columns, axis=-1)

        # ghat_IJ = -1/2 <e_I^dagger e_J + e_J^dagger e_I>_()
        m = jets.einsum('...ki,...kj->...ij', self.dagger_matrix,
                        self.lmult[..., :, 0, :])
        self.ghat = -0.5 * (m + jets.transpose(m))

        self._derivation_basis = None

    @property
    def structure(self):
        """Structure constants c[I,J,K] with e_I e_J = sum_K c[I,J,K] e_K."""

        return jets.einsum('...ikj->...ijk', self.lmult)

    @property
    def derivation_basis(self):
        """The matrices T[i,b], shape (4,4,16,16), such that the Leibniz extension of a
        4x4 map X is sum_ib X[b,i] T[i,b].

        Column I of T[i,b] is e_i1 ... e_b ... e_ik, with e_b in the slot of e_i; it is
        zero when i is not in I.
        """

        if self._derivation_basis is not None:
            return self._derivation_basis

        zero = np.zeros((4,16))
        columns = [[zero] * 16 for i in range(4)]
        for (k, indices) in enumerate(BASIS):
            for (j, i) in enumerate(indices):
                prefix = BASIS_INDEX[indices[:j]]
                suffix = BASIS_INDEX[indices[j+1:]]
                # e_prefix e_b e_suffix for each b, shape (4,16)
                columns[i][k] = jets.einsum('...kl,...bl->...bk',
                                            self.lmult[..., prefix, :, :],
                                            self.gamma_lo[..., :, :, suffix])

        self._derivation_basis = jets.stack([jets.stack(columns[i], axis=-1)
                                             for i in range(4)], axis=-4)
        return self._derivation_basis


def build_context(metric):
    """The CliffordContext for a metric.

    Input:
        metric      a MetricPoint, an object with attribute g (such as a MetricJet), a
                    4x4 array, or a 4x4 Jet.

    Return          CliffordContext.

    Raises SingularMetric if |det g| is below the 'singular' tolerance; NonLorentzian if
    det g is not negative.
    """

    return CliffordContext(metric)

##########################################################################################
# Multivector operations
##########################################################################################

def left_multiplication(ctx, a):
    """The 16x16 matrix of psi -> a psi."""

    return jets.einsum('...i,...ikj->...kj', a, ctx.lmult)


def clifford_product(ctx, a, b):
    """The Clifford product ab of two multivectors."""

    return jets.matvec(left_multiplication(ctx, a), b)


def dagger(ctx, a):
    """The involution (e_a1 ... e_ak)^dagger = (-1)^k e_ak ... e_a1, applied to a."""

    return jets.matvec(ctx.dagger_matrix, a)


def scalar_part(a):
    """The e_() component of a multivector."""

    return a[..., 0]


def extended_inner(ctx, a, b):
    """The extended metric ghat(a,b) = a^T ghat b."""

    return jets.dot(a, jets.matvec(ctx.ghat, b))


def gamma_vector(ctx, v):
    """gamma_v = v^a gamma_a, left multiplication by the vector v."""

    return jets.einsum('...a,...aij->...ij', v, ctx.gamma_lo)


def vector(v):
    """The multivector with grade-1 components v."""

    result = np.zeros(np.shape(v)[:-1] + (16,))
    result[..., GRADE1] = v
    return result

##########################################################################################
# Extensions of 4x4 maps
##########################################################################################

def extend_map(ctx, A):
    """The multiplicative extension of a 4x4 map A to the 16-dimensional fiber:
        Ahat e_I = (A e_i1)(A e_i2) ... (A e_ik),   Ahat e_() = e_().

    Input:
        ctx         CliffordContext.
        A           4x4 array or Jet, acting as A e_a = sum_b A[b,a] e_b.

    Return          16x16 array or Jet.
    """

    images = jets.einsum('...ba,...bij->...aij', A, ctx.gamma_lo)   # gamma_{A e_a}

    unit = np.zeros(16)
    unit[0] = 1.
    columns = []
    for indices in BASIS:
        v = unit
        for i in indices[::-1]:
            v = jets.matvec(images[..., i, :, :], v)
        columns.append(v)

    return jets.stack(columns, axis=-1)


def extend_derivation(ctx, X):
    """The Leibniz extension of a 4x4 map X to the 16-dimensional fiber:
        Xhat e_I = sum_j e_i1 ... (X e_ij) ... e_ik,   Xhat e_() = 0.

    Input:
        ctx         CliffordContext.
        X           array or Jet of shape (..., 4, 4), acting as X e_i = sum_b X[b,i] e_b.

    Return          array or Jet of shape (..., 16, 16).
    """

    return jets.einsum('...bi,...ibkl->...kl', X, ctx.derivation_basis)

##########################################################################################
# Generalized traces
##########################################################################################

def trace_ks(A):
    """All characteristic coefficients tr_0 ... tr_n of an n x n matrix, defined by
        det(I + s A) = sum_k s^k tr_k(A).

    Uses the Faddeev-LeVerrier recurrence: if det(t I - A) = sum_k c_k t^(n-k), then
    tr_k(A) = (-1)^k c_k.

    Return          array of n+1 floats.
    """

    A = np.asarray(A, dtype='float')
    n = A.shape[0]
    coeffs = np.empty(n+1)
    coeffs[0] = 1.

    identity = np.eye(n)
    m = np.zeros((n,n))
    for k in range(1, n+1):
        m = A @ m + coeffs[k-1] * identity
        coeffs[k] = -np.trace(A @ m) / k

    signs = np.array([(-1.)**k for k in range(n+1)])
    return signs * coeffs


def trace_k(A, k):
    """The k-th order trace of an n x n matrix: the coefficient of s^k in det(I + s A).

    Raises IndexOutOfRange unless 0 <= k <= n.
    """

    A = np.asarray(A, dtype='float')
    n = A.shape[0]
    if not 0 <= k <= n:
        raise IndexOutOfRange(f'trace order {k} is outside 0..{n}')

    return float(trace_ks(A)[k])

##########################################################################################
