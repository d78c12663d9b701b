##########################################################################################
# cliffdirac/_exceptions.py
##########################################################################################
"""Definition of cliffdirac-specific exceptions
"""
##########################################################################################

class SingularMetric(ValueError):
    pass

class NonLorentzian(ValueError):
    pass

class AsymmetricMetric(ValueError):
    pass

class UnsupportedMetric(ValueError):
    pass

class NonInvertibleBasisChange(ValueError):
    pass

class IndexOutOfRange(IndexError):
    pass

class MetricNotFound(LookupError):
    pass


class ParseError(ValueError):
    """Raised when expression or metric-file text cannot be parsed.

    Attributes:
        text        the text being parsed.
        detail      the message without line number or expected tokens.
        offset      UTF-8 byte offset into the text where parsing failed.
        expected    frozenset of names of the tokens that would have been accepted.
        line        1-based line number within a metric file, or None.
    """

    def __init__(self, message, text='', offset=0, expected=(), line=None):

        self.text = text
        self.offset = offset
        self.expected = frozenset(expected)
        self.line = line
        self.detail = message

        if line is not None:
            message = f'line {line}: {message}'
        if self.expected:
            message += ' (expected ' + ', '.join(sorted(self.expected)) + ')'

        super().__init__(message)


class DomainError(ValueError):
    """Raised when an expression is evaluated outside its domain.

    Attributes:
        function    name of the function or operator, e.g., 'log' or '/'.
        argument    the offending argument value.
    """

    def __init__(self, function, argument):

        self.function = function
        self.argument = argument
        super().__init__(f'{function} is undefined at argument {argument!r}')

##########################################################################################
