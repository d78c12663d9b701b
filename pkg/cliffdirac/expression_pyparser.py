##########################################################################################
# cliffdirac/expression_pyparser.py
##########################################################################################
"""PyParsing grammar for metric-component expressions in the coordinates x0..x3.

Precedence, loosest to tightest: binary + and -; * and /; unary minus; ^ (right-
associative; an exponent may start with unary minus); parentheses, numbers, variables
and function calls.
"""
##########################################################################################

import re

from pyparsing import (
    Forward,
    Literal,
    Optional,
    ParseBaseException,
    ParserElement,
    Regex,
    Suppress,
    ZeroOrMore,
    one_of,
)

from cliffdirac._exceptions import ParseError
from cliffdirac.expressions import (Add, Call, Div, Mul, Neg, Number, Pow, Sub,
                                    Variable)

##########################################################################################
# Begin grammar
##########################################################################################

# Blanks and tabs may separate tokens; nothing else is whitespace
ParserElement.set_default_whitespace_chars(' \t')

LPAR = Suppress(Literal('('))
RPAR = Suppress(Literal(')'))

expr = Forward()

number = Regex(r'(\d+\.\d*|\.\d+|\d+)([eE][+-]?\d+)?')
number.set_parse_action(lambda s,l,t: Number(float(t[0])))

variable = Regex(r'x[0-3](?![0-9A-Za-z_])')
variable.set_parse_action(lambda s,l,t: Variable(int(t[0][1])))

function_name = Regex(r'(sinh|cosh|tanh|sin|cos|tan|exp|log|sqrt)(?![0-9A-Za-z_])')
call = function_name - LPAR - expr - RPAR
call.set_parse_action(lambda s,l,t: Call(t[0], t[1]))

atom = number | call | variable | (LPAR - expr - RPAR)

exponent = Forward()
power = atom + Optional(Suppress(Literal('^')) - exponent)
power.set_parse_action(lambda s,l,t: Pow(t[0], t[1]) if len(t) == 2 else t[0])

negated_exponent = Suppress(Literal('-')) + exponent
negated_exponent.set_parse_action(lambda s,l,t: Neg(t[0]))
exponent <<= negated_exponent | power

unary = Forward()
negated = Suppress(Literal('-')) + unary
negated.set_parse_action(lambda s,l,t: Neg(t[0]))
unary <<= negated | power

_BINARY = {'+': Add, '-': Sub, '*': Mul, '/': Div}

def _fold(t):
    """Left-associative fold of [operand, op, operand, op, ...]."""

    result = t[0]
    for k in range(1, len(t), 2):
        result = _BINARY[t[k]](result, t[k+1])
    return result

term = unary + ZeroOrMore(one_of('* /') - unary)
term.set_parse_action(lambda s,l,t: _fold(t))

expr <<= term + ZeroOrMore(one_of('+ -') - term)
expr.set_parse_action(lambda s,l,t: _fold(t))

EXPRESSION = expr

##########################################################################################
# End grammar
##########################################################################################

OPERAND_TOKENS  = frozenset(['number', 'variable', 'function', "'('", "'-'"])
OPERATOR_TOKENS = frozenset(["'+'", "'-'", "'*'", "'/'", "'^'", "')'", 'end of text'])
CALL_TOKENS     = frozenset(["'('"])

_ENDS_WITH_FUNCTION = re.compile(r'(?<![0-9A-Za-z_])(sinh|cosh|tanh|sin|cos|tan|exp|log|'
                                 r'sqrt)$')

def _expected_tokens(text, loc):
    """The set of token names that could appear at index loc of the text."""

    before = text[:loc].rstrip(' \t')
    if not before or before[-1] in '+-*/^(':
        return OPERAND_TOKENS
    if _ENDS_WITH_FUNCTION.search(before):
        return CALL_TOKENS
    return OPERATOR_TOKENS


def parse_expression(text):
    """Parse an expression string into an Expression tree.

    Input:
        text        the expression, e.g., "x1^2*sin(x2)^2".

    Return          the Expression.

    Raises ParseError, with the UTF-8 byte offset of the failure and the set of token
    names that would have been accepted there.
    """

    try:
        return EXPRESSION.parse_string(text, parse_all=True)[0]
    except ParseBaseException as err:
        loc = min(err.loc, len(text))
        while loc < len(text) and text[loc] in ' \t':
            loc += 1

        offset = len(text[:loc].encode('utf-8'))
        found = repr(text[loc]) if loc < len(text) else 'end of text'
        raise ParseError(f'unexpected {found} at offset {offset} in "{text}"',
                         text=text, offset=offset,
                         expected=_expected_tokens(text, loc)) from None

##########################################################################################
