##########################################################################################
# cliffdirac/_jets.py
##########################################################################################
"""Truncated Taylor jets for exact first and second derivatives.

A Jet carries an array value together with its gradient and, optionally, its Hessian
with respect to a fixed list of n independent variables:
    value       array of shape S.
    grad        array of shape (n,) + S; grad[i] = d value / d u_i.
    hess        array of shape (n,n) + S, symmetric in its first two axes; or None for a
                first-order jet.

Arithmetic follows the truncated product and chain rules. The module functions
(einsum, matmul, inv, det, sqrt, ...) accept any mixture of Jets and NumPy arrays; when
no Jet is involved they reduce to the plain NumPy operation, so code written with them
runs unchanged on values or on jets.

Leading value axes are free to act as batch axes; all derivative axes come first. Jets
of different value rank are aligned by inserting unit axes just after the derivative
axes, which is NumPy's right-aligned broadcasting applied to the value part only.
"""
##########################################################################################

import numpy as np


class Jet(object):
    """An array value with exact first and (optionally) second derivatives."""

    __array_ufunc__ = None          # make NumPy defer to the reflected operators

    def __init__(self, value, grad, hess=None):

        self.value = np.asarray(value, dtype='float')
        grad = np.asarray(grad, dtype='float')
        n = grad.shape[0]
        shape = np.broadcast_shapes(self.value.shape, grad.shape[1:])
        self.value = np.broadcast_to(self.value, shape)
        self.grad = np.broadcast_to(grad, (n,) + shape)
        if hess is None:
            self.hess = None
        else:
            self.hess = np.broadcast_to(np.asarray(hess, dtype='float'), (n,n) + shape)

    @staticmethod
    def constant(value, nvars, order=2):
        """A jet with zero derivatives."""

        value = np.asarray(value, dtype='float')
        grad = np.zeros((nvars,) + value.shape)
        hess = np.zeros((nvars,nvars) + value.shape) if order == 2 else None
        return Jet(value, grad, hess)

    @staticmethod
    def variables(values, order=2):
        """A list of jets, one per independent variable, at the given values."""

        values = np.asarray(values, dtype='float').ravel()
        n = len(values)
        eye = np.eye(n)
        jets = []
        for k in range(n):
            hess = np.zeros((n,n)) if order == 2 else None
            jets.append(Jet(values[k], eye[k], hess))
        return jets

    ######################################################################################
    # Properties
    ######################################################################################

    @property
    def nvars(self):
        return self.grad.shape[0]

    @property
    def shape(self):
        return self.value.shape

    @property
    def ndim(self):
        return self.value.ndim

    @property
    def order(self):
        return 1 if self.hess is None else 2

    def __repr__(self):
        return f'Jet(value={self.value!r}, nvars={self.nvars}, order={self.order})'

    def first_order(self):
        """This jet with its Hessian dropped."""

        return Jet(self.value, self.grad)

    def _expand(self, ndim):
        """This jet with unit value axes prepended, up to the given value rank."""

        extra = ndim - self.value.ndim
        if extra <= 0:
            return self

        pad = (1,) * extra
        shape = pad + self.value.shape
        hess = None if self.hess is None else self.hess.reshape((self.nvars,)*2 + shape)
        return Jet(self.value.reshape(shape), self.grad.reshape((self.nvars,) + shape),
                   hess)

    def _apply(self, f0, f1, f2):
        """Chain rule for an elementwise function with value f0, first derivative f1 and
        second derivative f2, all evaluated at self.value.
        """

        grad = f1 * self.grad
        if self.hess is None:
            return Jet(f0, grad)

        hess = f1 * self.hess + f2 * (self.grad[:,None] * self.grad[None])
        return Jet(f0, grad, hess)

    ######################################################################################
    # Arithmetic
    ######################################################################################

    def __neg__(self):
        hess = None if self.hess is None else -self.hess
        return Jet(-self.value, -self.grad, hess)

    def __pos__(self):
        return self

    def __add__(self, other):

        if isinstance(other, Jet):
            (a, b) = _align(self, other)
            hess = None if (a.hess is None or b.hess is None) else a.hess + b.hess
            return Jet(a.value + b.value, a.grad + b.grad, hess)

        other = np.asarray(other, dtype='float')
        a = self._expand(other.ndim)
        return Jet(a.value + other, a.grad, a.hess)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):

        if isinstance(other, Jet):
            (a, b) = _align(self, other)
            value = a.value * b.value
            grad = a.grad * b.value + a.value * b.grad
            if a.hess is None or b.hess is None:
                return Jet(value, grad)

            cross = a.grad[:,None] * b.grad[None]
            hess = a.hess * b.value + a.value * b.hess + cross + np.swapaxes(cross, 0, 1)
            return Jet(value, grad, hess)

        other = np.asarray(other, dtype='float')
        a = self._expand(other.ndim)
        hess = None if a.hess is None else a.hess * other
        return Jet(a.value * other, a.grad * other, hess)

    __rmul__ = __mul__

    def reciprocal(self):
        v = self.value
        return self._apply(1./v, -1./v**2, 2./v**3)

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * other.reciprocal()
        return self * (1. / np.asarray(other, dtype='float'))

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, p):

        if isinstance(p, Jet):
            return exp(p * log(self))

        p = float(p)
        v = self.value
        if p == 0.:
            return Jet.constant(np.ones_like(v), self.nvars, self.order)
        if p == 1.:
            return self
        if p == 2.:
            return self._apply(v*v, 2.*v, 2. * np.ones_like(v))

        return self._apply(v**p, p * v**(p-1.), p * (p-1.) * v**(p-2.))

    def __rpow__(self, base):
        return exp(self * np.log(base))

    def __matmul__(self, other):
        return matmul(self, other)

    def __rmatmul__(self, other):
        return matmul(other, self)

    ######################################################################################
    # Indexing and axis manipulation; value axes only
    ######################################################################################

    def __getitem__(self, index):

        if not isinstance(index, tuple):
            index = (index,)

        grad = self.grad[(slice(None),) + index]
        hess = None if self.hess is None else self.hess[(slice(None),)*2 + index]
        return Jet(self.value[index], grad, hess)

    def __len__(self):
        return len(self.value)

    def swapaxes(self, axis1, axis2):
        """Swap two value axes; axes must be given as negative numbers."""

        if axis1 >= 0 or axis2 >= 0:
            raise ValueError('Jet axes must be negative')

        hess = None if self.hess is None else np.swapaxes(self.hess, axis1, axis2)
        return Jet(np.swapaxes(self.value, axis1, axis2),
                   np.swapaxes(self.grad, axis1, axis2), hess)

    @property
    def T(self):
        return self.swapaxes(-1, -2)

    def sum(self, axis):
        """Sum over a value axis, given as a negative number."""

        if axis >= 0:
            raise ValueError('Jet axes must be negative')

        hess = None if self.hess is None else self.hess.sum(axis=axis)
        return Jet(self.value.sum(axis=axis), self.grad.sum(axis=axis), hess)

    def reshape(self, shape):
        shape = tuple(shape)
        hess = None if self.hess is None else self.hess.reshape((self.nvars,)*2 + shape)
        return Jet(self.value.reshape(shape), self.grad.reshape((self.nvars,) + shape),
                   hess)

##########################################################################################
# Alignment helpers
##########################################################################################

def _align(a, b):
    """Two jets expanded to a common value rank, with a common order."""

    ndim = max(a.ndim, b.ndim)
    a = a._expand(ndim)
    b = b._expand(ndim)
    if a.nvars != b.nvars:
        raise ValueError(f'jets have {a.nvars} and {b.nvars} variables')
    return (a, b)


def value_of(x):
    """The value part of a Jet; any other object is returned as an array."""

    if isinstance(x, Jet):
        return x.value
    return np.asarray(x)


def is_jet(x):
    return isinstance(x, Jet)


def embed(x, nvars):
    """A second-order Jet over nvars variables that agrees with x on its own leading
    variables and is constant in the rest. Arrays become constant jets. A missing Hessian
    is filled with zeros.
    """

    if not isinstance(x, Jet):
        return Jet.constant(x, nvars, order=2)

    n = x.nvars
    grad = np.zeros((nvars,) + x.shape)
    grad[:n] = x.grad
    hess = np.zeros((nvars,nvars) + x.shape)
    if x.hess is not None:
        hess[:n,:n] = x.hess
    return Jet(x.value, grad, hess)


def seeded(value, seeds, nvars):
    """A second-order Jet over nvars variables with the given value, zero derivatives in
    all but the last variable, and derivative seeds in the last one.

    Input:
        value       array of shape S, broadcastable to the shape of seeds.
        seeds       array of shape (k,) + S or S, the derivative in the last variable.
        nvars       total number of variables.
    """

    seeds = np.asarray(seeds, dtype='float')
    value = np.broadcast_to(np.asarray(value, dtype='float'), seeds.shape)
    grad = np.zeros((nvars,) + seeds.shape)
    grad[-1] = seeds
    return Jet(value, grad, np.zeros((nvars,nvars) + seeds.shape))

##########################################################################################
# Linear and bilinear array operations
##########################################################################################

def einsum(subscripts, *operands):
    """np.einsum for one or two operands, any of which may be a Jet.

    Every operand and the output must begin with an explicit '...', e.g.
    '...ij,...jk->...ik'; the ellipsis holds batch axes and, for jets, the derivative
    axes.
    """

    if not any(isinstance(op, Jet) for op in operands):
        return np.einsum(subscripts, *operands)

    (inputs, output) = subscripts.replace(' ', '').split('->')
    specs = inputs.split(',')
    if len(specs) != len(operands):
        raise ValueError('operand count does not match subscripts')
    if not all(s.startswith('...') for s in specs + [output]):
        raise ValueError('jet einsum subscripts must begin with "..."')

    explicit = [len(s) - 3 for s in specs]
    ell = 0
    for (op, k) in zip(operands, explicit):
        ell = max(ell, np.ndim(value_of(op)) - k)

    ops = [op._expand(ell + k) if isinstance(op, Jet) else np.asarray(op, dtype='float')
           for (op, k) in zip(operands, explicit)]

    def f(*args):
        return np.einsum(subscripts, *args)

    if len(ops) == 1:
        a = ops[0]
        hess = None if a.hess is None else f(a.hess)
        return Jet(f(a.value), f(a.grad), hess)

    if len(ops) != 2:
        raise ValueError('jet einsum supports one or two operands')

    (a, b) = ops
    if isinstance(a, Jet) and isinstance(b, Jet):
        if a.nvars != b.nvars:
            raise ValueError(f'jets have {a.nvars} and {b.nvars} variables')

        value = f(a.value, b.value)
        grad = f(a.grad, b.value) + f(a.value, b.grad)
        if a.hess is None or b.hess is None:
            return Jet(value, grad)

        cross = f(a.grad[:,None], b.grad[None])
        hess = (f(a.hess, b.value) + f(a.value, b.hess)
                + cross + np.swapaxes(cross, 0, 1))
        return Jet(value, grad, hess)

    if isinstance(a, Jet):
        hess = None if a.hess is None else f(a.hess, b)
        return Jet(f(a.value, b), f(a.grad, b), hess)

    hess = None if b.hess is None else f(a, b.hess)
    return Jet(f(a, b.value), f(a, b.grad), hess)


def matmul(a, b):
    """Matrix product over the last two axes."""

    if not (isinstance(a, Jet) or isinstance(b, Jet)):
        return np.matmul(a, b)
    return einsum('...ij,...jk->...ik', a, b)


def matvec(a, v):
    """Matrix-vector product over the last axes."""

    if not (isinstance(a, Jet) or isinstance(v, Jet)):
        return np.einsum('...ij,...j->...i', a, v)
    return einsum('...ij,...j->...i', a, v)


def dot(u, v):
    """Inner product over the last axis."""

    if not (isinstance(u, Jet) or isinstance(v, Jet)):
        return np.einsum('...i,...i->...', u, v)
    return einsum('...i,...i->...', u, v)


def transpose(a):
    """Swap the last two axes."""

    if isinstance(a, Jet):
        return a.swapaxes(-1, -2)
    return np.swapaxes(a, -1, -2)


def trace(a):
    """Trace over the last two axes."""

    if isinstance(a, Jet):
        return einsum('...ii->...', a)
    return np.trace(a, axis1=-2, axis2=-1)


def jsum(a, axis):
    """Sum over a (negative) value axis."""

    if isinstance(a, Jet):
        return a.sum(axis)
    return np.sum(a, axis=axis)


def stack(items, axis=0):
    """np.stack for a list of Jets and arrays; axis refers to the value axes."""

    items = list(items)
    jets = [x for x in items if isinstance(x, Jet)]
    if not jets:
        return np.stack(np.broadcast_arrays(*items), axis=axis)

    nvars = jets[0].nvars
    order = min(j.order for j in jets)
    converted = [x if isinstance(x, Jet) else Jet.constant(x, nvars, order)
                 for x in items]

    ndim = max(j.ndim for j in converted)
    converted = [j._expand(ndim) for j in converted]
    shape = np.broadcast_shapes(*[j.value.shape for j in converted])
    if axis < 0:
        axis += len(shape) + 1

    values = [np.broadcast_to(j.value, shape) for j in converted]
    grads = [np.broadcast_to(j.grad, (nvars,) + shape) for j in converted]
    if order == 1:
        return Jet(np.stack(values, axis), np.stack(grads, axis+1))

    hesses = [np.broadcast_to(j.hess, (nvars,nvars) + shape) for j in converted]
    return Jet(np.stack(values, axis), np.stack(grads, axis+1),
               np.stack(hesses, axis+2))

##########################################################################################
# Matrix functions
##########################################################################################

def inv(a):
    """Matrix inverse over the last two axes."""

    if not isinstance(a, Jet):
        return np.linalg.inv(a)

    y = np.linalg.inv(a.value)
    ya = np.matmul(y, a.grad)                       # Y dA_i
    grad = -np.matmul(ya, y)
    if a.hess is None:
        return Jet(y, grad)

    cross = np.matmul(np.matmul(ya[:,None], ya[None]), y)       # Y dA_i Y dA_j Y
    hess = -np.matmul(np.matmul(y, a.hess), y) + cross + np.swapaxes(cross, 0, 1)
    return Jet(y, grad, hess)


def det(a):
    """Determinant over the last two axes."""

    if not isinstance(a, Jet):
        return np.linalg.det(a)

    d = np.linalg.det(a.value)
    y = np.linalg.inv(a.value)
    ya = np.matmul(y, a.grad)
    tr1 = np.trace(ya, axis1=-2, axis2=-1)
    grad = d * tr1
    if a.hess is None:
        return Jet(d, grad)

    tr2 = np.trace(np.matmul(ya[:,None], ya[None]), axis1=-2, axis2=-1)
    tr3 = np.trace(np.matmul(y, a.hess), axis1=-2, axis2=-1)
    hess = d * (tr1[:,None] * tr1[None] - tr2 + tr3)
    return Jet(d, grad, hess)

##########################################################################################
# Elementwise functions
##########################################################################################

def sqrt(a):
    if not isinstance(a, Jet):
        return np.sqrt(a)
    r = np.sqrt(a.value)
    return a._apply(r, 0.5/r, -0.25/(r*a.value))

def exp(a):
    if not isinstance(a, Jet):
        return np.exp(a)
    e = np.exp(a.value)
    return a._apply(e, e, e)

def log(a):
    if not isinstance(a, Jet):
        return np.log(a)
    v = a.value
    return a._apply(np.log(v), 1./v, -1./v**2)

def sin(a):
    if not isinstance(a, Jet):
        return np.sin(a)
    (s, c) = (np.sin(a.value), np.cos(a.value))
    return a._apply(s, c, -s)

def cos(a):
    if not isinstance(a, Jet):
        return np.cos(a)
    (s, c) = (np.sin(a.value), np.cos(a.value))
    return a._apply(c, -s, -c)

def tan(a):
    if not isinstance(a, Jet):
        return np.tan(a)
    t = np.tan(a.value)
    sec2 = 1. + t*t
    return a._apply(t, sec2, 2.*t*sec2)

def sinh(a):
    if not isinstance(a, Jet):
        return np.sinh(a)
    (s, c) = (np.sinh(a.value), np.cosh(a.value))
    return a._apply(s, c, s)

def cosh(a):
    if not isinstance(a, Jet):
        return np.cosh(a)
    (s, c) = (np.sinh(a.value), np.cosh(a.value))
    return a._apply(c, s, c)

def tanh(a):
    if not isinstance(a, Jet):
        return np.tanh(a)
    t = np.tanh(a.value)
    sech2 = 1. - t*t
    return a._apply(t, sech2, -2.*t*sech2)

##########################################################################################
