##########################################################################################
# tests/test_expressions.py
##########################################################################################

import numpy as np
import unittest

from hypothesis            import given, settings
from hypothesis.strategies import (builds, floats, integers, one_of, recursive,
                                   sampled_from)

from cliffdirac import *
from cliffdirac.expressions import (Add, Call, Div, Mul, Neg, Number, Pow, Sub,
                                    Variable)


def _trees():
    """Expression trees of the kind the parser produces; numbers are non-negative."""

    leaves = one_of(builds(Number, integers(min_value=0, max_value=100)),
                    builds(Number, floats(min_value=0., max_value=1.e6,
                                          allow_nan=False, allow_infinity=False)),
                    builds(Variable, integers(min_value=0, max_value=3)))

    def extend(children):
        return one_of(builds(Neg, children),
                      builds(Call, sampled_from(FUNCTIONS), children),
                      builds(Add, children, children),
                      builds(Sub, children, children),
                      builds(Mul, children, children),
                      builds(Div, children, children),
                      builds(Pow, children, children))

    return recursive(leaves, extend, max_leaves=12)


class Test_expressions(unittest.TestCase):

    def test_parse_structure(self):

        x0 = Variable(0)
        x1 = Variable(1)
        x2 = Variable(2)

        self.assertEqual(parse_expression('x1^2*sin(x2)^2'),
                         Mul(Pow(x1, Number(2)), Pow(Call('sin', x2), Number(2))))
        self.assertEqual(parse_expression('-x0^2'), Neg(Pow(x0, Number(2))))
        self.assertEqual(parse_expression('2^-1'), Pow(Number(2), Neg(Number(1))))
        self.assertEqual(parse_expression('x0^x1^2'), Pow(x0, Pow(x1, Number(2))))
        self.assertEqual(parse_expression('1 - 2 - 3'),
                         Sub(Sub(Number(1), Number(2)), Number(3)))
        self.assertEqual(parse_expression('x0*-x1'), Mul(x0, Neg(x1)))
        self.assertEqual(parse_expression('\tx0 +  1'), Add(x0, Number(1)))
        self.assertEqual(parse_expression('1.5e-3'), Number(0.0015))
        self.assertEqual(parse_expression('.5'), Number(0.5))

        # Equality and hashing
        self.assertEqual(parse_expression('x0+1'), parse_expression('x0 + 1'))
        self.assertNotEqual(parse_expression('x0+1'), parse_expression('1+x0'))
        self.assertEqual(len({parse_expression('x0'), parse_expression(' x0 ')}), 1)

        e = parse_expression('x0*sin(x3) + 2')
        self.assertEqual(e.variables(), {0, 3})
        self.assertFalse(e.is_constant())
        self.assertTrue(parse_expression('exp(2)*3').is_constant())

    def test_parse_errors(self):

        try:
            parse_expression('x0 +')
        except ParseError as err:
            self.assertEqual(err.offset, 4)
            self.assertIn('number', err.expected)
            self.assertIn('variable', err.expected)
            self.assertIn('end of text', str(err))
        else:
            self.fail('ParseError not raised')

        try:
            parse_expression('sin x0')
        except ParseError as err:
            self.assertEqual(err.offset, 4)
            self.assertEqual(err.expected, frozenset(["'('"]))
        else:
            self.fail('ParseError not raised')

        try:
            parse_expression('(x0')
        except ParseError as err:
            self.assertEqual(err.offset, 3)
            self.assertIn("')'", err.expected)
        else:
            self.fail('ParseError not raised')

        for text in ('x4', 'x0 x1', '', '2**3', 'sinx0', 'foo(x0)', 'x0 + 1)'):
            self.assertRaises(ParseError, parse_expression, text)

        # ParseError is a ValueError
        self.assertRaises(ValueError, parse_expression, 'x0 *')

    def test_format(self):

        for (text, expected) in [('x0 + (x1 + x2)', 'x0 + (x1 + x2)'),
                                 ('(x0 + x1) + x2', 'x0 + x1 + x2'),
                                 ('(x0^2)^3', '(x0^2)^3'),
                                 ('x0^(x1^2)', 'x0^x1^2'),
                                 ('(-x0)^2', '(-x0)^2'),
                                 ('x0^(-(x1 + 1))', 'x0^-(x1 + 1)'),
                                 ('2.50*x1', '2.5*x1'),
                                 ('1e20', '1e+20'),
                                 ('1e3', '1000'),
                                 ('x0/(x1*x2)', 'x0/(x1*x2)'),
                                 ('sin((x0))', 'sin(x0)')]:
            self.assertEqual(format_expression(parse_expression(text)), expected)
            self.assertEqual(str(parse_expression(text)), expected)

        self.assertEqual(format_expression(Number(1.e-5)), '1e-05')
        self.assertRaises(TypeError, format_expression, 3.)

    @settings(max_examples=200, deadline=None)
    @given(_trees())
    def test_format_parse_property(self, tree):

        text = format_expression(tree)
        self.assertEqual(parse_expression(text), tree, text)

    def test_evaluate(self):

        e = parse_expression('x1^2*sin(x2)^2')
        self.assertAlmostEqual(evaluate(e, [0., 2., 0.5, 0.]), 4. * np.sin(0.5)**2)

        self.assertEqual(evaluate(parse_expression('8/4/2'), np.zeros(4)), 1.)
        self.assertEqual(evaluate(parse_expression('2^3^2'), np.zeros(4)), 512.)
        self.assertEqual(evaluate(parse_expression('-2^2'), np.zeros(4)), -4.)
        self.assertEqual(evaluate(parse_expression('x0^-1'), [4.,0.,0.,0.]), 0.25)
        self.assertAlmostEqual(evaluate(parse_expression('x0^x1'), [2.,3.,0.,0.]), 8.)

        for text in FUNCTIONS:
            e = parse_expression(f'{text}(x3)')
            self.assertAlmostEqual(evaluate(e, [0., 0., 0., 0.7]),
                                   getattr(np, text)(0.7), places=14)

    def test_domain_errors(self):

        cases = [('log(x0 - 1)', [0.5, 0., 0., 0.], 'log'),
                 ('sqrt(x1)', [0., -1., 0., 0.], 'sqrt'),
                 ('1/x0', [0., 0., 0., 0.], '/'),
                 ('x0^0.5', [-1., 0., 0., 0.], '^'),
                 ('x0^-2', [0., 0., 0., 0.], '^'),
                 ('x1^x0', [1., -2., 0., 0.], '^')]

        for (text, x, function) in cases:
            e = parse_expression(text)
            try:
                evaluate(e, x)
            except DomainError as err:
                self.assertEqual(err.function, function)
            else:
                self.fail(f'DomainError not raised for {text}')

            self.assertRaises(DomainError, eval_jet, e, x)

        # Integer powers of negative numbers are fine
        self.assertEqual(evaluate(parse_expression('x0^3'), [-2., 0., 0., 0.]), -8.)

    def test_eval_jet(self):

        e = parse_expression('x0*x1 + exp(x2)')
        jet = eval_jet(e, [1., 2., 0., 5.])
        self.assertAlmostEqual(float(jet.value), 3.)
        self.assertTrue(np.allclose(jet.grad, [2., 1., 1., 0.]))
        expected = np.zeros((4,4))
        expected[0,1] = expected[1,0] = 1.
        expected[2,2] = 1.
        self.assertTrue(np.allclose(jet.hess, expected))

        jet = eval_jet(parse_expression('3'), [0., 0., 0., 0.], order=1)
        self.assertEqual(float(jet.value), 3.)
        self.assertIsNone(jet.hess)
        self.assertTrue(np.all(jet.grad == 0.))

        # An array of expressions with missing entries
        exprs = np.array([[parse_expression('x0^2'), None],
                          [None, parse_expression('x3')]], dtype='object')
        jet = eval_jets(exprs, [3., 0., 0., 7.])
        self.assertTrue(np.allclose(jet.value, [[9., 0.], [0., 7.]]))
        self.assertEqual(jet.grad.shape, (4,2,2))
        self.assertEqual(jet.grad[0,0,0], 6.)
        self.assertEqual(jet.grad[3,1,1], 1.)
        self.assertEqual(jet.hess[0,0,0,0], 2.)

############################################
# Execute from command line...
############################################

if __name__ == '__main__':
    unittest.main(verbosity=2)

##########################################################################################
