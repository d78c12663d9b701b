##########################################################################################
# cliffdirac/expressions.py
##########################################################################################
"""Expression trees over the coordinates x0..x3, their printer, and their evaluation as
second-order Taylor jets.

Node classes:
    Number(value)           numeric literal.
    Variable(index)         coordinate x0, x1, x2 or x3.
    Neg(arg)                unary minus.
    Add, Sub, Mul, Div, Pow binary operators with attributes left and right.
    Call(name, arg)         one of sin cos tan exp log sqrt sinh cosh tanh.

Use parse_expression() in module expression_pyparser to build a tree from text.
"""
##########################################################################################

import numpy as np

import cliffdirac._jets as jets
from cliffdirac._exceptions import DomainError

FUNCTIONS = ('sin', 'cos', 'tan', 'exp', 'log', 'sqrt', 'sinh', 'cosh', 'tanh')

_JET_FUNCTIONS = {
    'sin' : jets.sin,
    'cos' : jets.cos,
    'tan' : jets.tan,
    'exp' : jets.exp,
    'log' : jets.log,
    'sqrt': jets.sqrt,
    'sinh': jets.sinh,
    'cosh': jets.cosh,
    'tanh': jets.tanh,
}

##########################################################################################
# Node classes
##########################################################################################

class Expression(object):
    """Abstract base class of expression nodes."""

    precedence = 5          # atoms bind tightest

    def variables(self):
        """The set of coordinate indices used by this expression."""
        return set()

    def is_constant(self):
        return not self.variables()

    def _key(self):
        pass                # defined by subclass       # pragma: no cover

    def _key_tuple(self):
        return (type(self).__name__, self._key())

    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((type(self).__name__, self._key()))

    def __str__(self):
        return format_expression(self)


class Number(Expression):

    def __init__(self, value):
        self.value = float(value)

    @property
    def precedence(self):
        return 3 if self.value < 0. else 5

    def _key(self):
        return self.value

    def __repr__(self):
        return f'Number({self.value!r})'


class Variable(Expression):

    def __init__(self, index):
        index = int(index)
        if index not in (0, 1, 2, 3):
            raise ValueError(f'coordinate index must be 0-3: {index}')
        self.index = index

    def variables(self):
        return {self.index}

    def _key(self):
        return self.index

    def __repr__(self):
        return f'x{self.index}'


class Neg(Expression):

    precedence = 3

    def __init__(self, arg):
        self.arg = arg

    def variables(self):
        return self.arg.variables()

    def _key(self):
        return self.arg._key_tuple()

    def __repr__(self):
        return f'Neg({self.arg!r})'


class Call(Expression):

    def __init__(self, name, arg):
        if name not in FUNCTIONS:
            raise ValueError(f'unknown function: {name!r}')
        self.name = name
        self.arg = arg

    def variables(self):
        return self.arg.variables()

    def _key(self):
        return (self.name, self.arg._key_tuple())

    def __repr__(self):
        return f'{self.name.capitalize()}({self.arg!r})'


class _Binary(Expression):

    symbol = None

    def __init__(self, left, right):
        self.left = left
        self.right = right

    def variables(self):
        return self.left.variables() | self.right.variables()

    def _key(self):
        return (self.left._key_tuple(), self.right._key_tuple())

    def __repr__(self):
        return f'{type(self).__name__}({self.left!r}, {self.right!r})'


class Add(_Binary):
    precedence = 1
    symbol = ' + '

class Sub(_Binary):
    precedence = 1
    symbol = ' - '

class Mul(_Binary):
    precedence = 2
    symbol = '*'

class Div(_Binary):
    precedence = 2
    symbol = '/'

class Pow(_Binary):
    precedence = 4
    symbol = '^'

##########################################################################################
# Printer
##########################################################################################

def format_expression(e):
    """Text for an expression, using as few parentheses as the grammar allows.

    For any tree produced by the parser, parsing the returned text reproduces the tree.
    """

    if isinstance(e, Number):
        return _format_number(e.value)

    if isinstance(e, Variable):
        return f'x{e.index}'

    if isinstance(e, Call):
        return f'{e.name}({format_expression(e.arg)})'

    if isinstance(e, Neg):
        return '-' + _operand(e.arg, 3)

    if isinstance(e, Pow):
        return _operand(e.left, 5) + '^' + _exponent(e.right)

    if isinstance(e, _Binary):
        # Left-associative: the right operand must bind strictly tighter
        return (_operand(e.left, e.precedence) + e.symbol
                + _operand(e.right, e.precedence + 1))

    raise TypeError(f'not an expression: {e!r}')


def _operand(e, precedence):
    text = format_expression(e)
    if e.precedence < precedence:
        return '(' + text + ')'
    return text


def _exponent(e):
    # An exponent may itself start with unary minus
    if isinstance(e, Neg):
        return '-' + _exponent(e.arg)
    return _operand(e, 4)


def _format_number(value):
    if value.is_integer() and abs(value) < 1.e15:
        return str(int(value))
    return repr(value)

##########################################################################################
# Evaluation
##########################################################################################

def _evaluate(e, env):
    """Evaluate an expression given env, a list of four floats or Jets for x0..x3."""

    if isinstance(e, Number):
        return e.value

    if isinstance(e, Variable):
        return env[e.index]

    if isinstance(e, Neg):
        return -_evaluate(e.arg, env)

    if isinstance(e, Call):
        arg = _evaluate(e.arg, env)
        value = jets.value_of(arg)
        if e.name in ('log', 'sqrt') and not np.all(value > 0.):
            raise DomainError(e.name, float(value))
        if e.name == 'tan' and np.any(np.abs(np.cos(value)) < 1.e-15):
            raise DomainError(e.name, float(value))
        return _JET_FUNCTIONS[e.name](arg)

    if isinstance(e, Pow):
        return _power(e, env)

    left = _evaluate(e.left, env)
    right = _evaluate(e.right, env)
    if isinstance(e, Add):
        return left + right
    if isinstance(e, Sub):
        return left - right
    if isinstance(e, Mul):
        return left * right

    divisor = jets.value_of(right)
    if np.any(divisor == 0.):
        raise DomainError('/', float(divisor))
    return left / right


def _power(e, env):

    base = _evaluate(e.left, env)
    b = float(jets.value_of(base))

    if e.right.is_constant():
        p = float(_evaluate(e.right, env))
        if p.is_integer():
            if b == 0. and p < 0.:
                raise DomainError('^', b)
        elif b <= 0.:
            raise DomainError('^', b)

        if isinstance(base, jets.Jet):
            return base ** p
        return b ** p

    if b <= 0.:
        raise DomainError('^', b)

    exponent = _evaluate(e.right, env)
    return jets.exp(exponent * jets.log(base))


def evaluate(e, x):
    """The value of an expression at the point x (four coordinates)."""

    x = [float(v) for v in np.asarray(x, dtype='float').ravel()]
    return float(_evaluate(e, x))


def eval_jet(e, x, order=2):
    """The value, gradient and Hessian of an expression at the point x.

    Input:
        e           Expression.
        x           four coordinates.
        order       2 for value, gradient and Hessian; 1 to omit the Hessian.

    Return          Jet with scalar value, grad of shape (4,), hess of shape (4,4).

    Raises DomainError naming the offending function and argument value.
    """

    env = jets.Jet.variables(x, order=order)
    result = _evaluate(e, env)
    if not isinstance(result, jets.Jet):
        result = jets.Jet.constant(result, 4, order)
    return result


def eval_jets(exprs, x, order=2):
    """Evaluate an array-like of expressions (None entries are zero) as a single Jet
    whose value has the shape of the array.
    """

    exprs = np.asarray(exprs, dtype='object')
    env = jets.Jet.variables(x, order=order)

    values = np.zeros(exprs.shape)
    grads = np.zeros((4,) + exprs.shape)
    hesses = np.zeros((4,4) + exprs.shape)
    for index in np.ndindex(exprs.shape):
        e = exprs[index]
        if e is None:
            continue
        result = _evaluate(e, env)
        if not isinstance(result, jets.Jet):
            values[index] = result
            continue
        values[index] = result.value
        grads[(slice(None),) + index] = result.grad
        if order == 2:
            hesses[(slice(None),)*2 + index] = result.hess

    return jets.Jet(values, grads, hesses if order == 2 else None)

##########################################################################################
