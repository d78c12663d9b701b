##########################################################################################
# tests/test_utils.py
##########################################################################################

import numpy as np
import unittest
import warnings

from cliffdirac import *
from cliffdirac._utils import (PAIR_INDEX, PAIRS, _max_abs, _pair_seeds, _scaled_error,
                               _symmetric_from_pairs)
from cliffdirac._warnings import _reset_warnings, _warn


class Test_utils(unittest.TestCase):

    def test_pairs(self):

        self.assertEqual(len(PAIRS), 10)
        self.assertEqual(PAIRS[0], (0,0))
        self.assertEqual(PAIRS[1], (0,1))
        self.assertEqual(PAIRS[-1], (3,3))
        self.assertEqual(PAIR_INDEX[(2,1)], PAIR_INDEX[(1,2)])

        seeds = _pair_seeds()
        self.assertEqual(seeds.shape, (10,4,4))
        self.assertTrue(np.all(seeds == np.swapaxes(seeds, 1, 2)))
        self.assertEqual(seeds[0,0,0], 1.)
        self.assertEqual(seeds[1,0,1], 0.5)
        self.assertEqual(seeds[1,1,0], 0.5)
        self.assertEqual(np.sum(seeds[1]), 1.)

        values = np.arange(10.)
        sym = _symmetric_from_pairs(values)
        self.assertEqual(sym.shape, (4,4))
        self.assertTrue(np.all(sym == sym.T))
        self.assertEqual(sym[2,1], values[PAIR_INDEX[(1,2)]])

        # A trailing shape is kept
        sym = _symmetric_from_pairs(np.ones((10,3)))
        self.assertEqual(sym.shape, (4,4,3))

    def test_errors(self):

        self.assertEqual(_scaled_error([1., 2.], [1., 2.]), 0.)
        self.assertEqual(_scaled_error([0.5], [0.25]), 0.25)
        self.assertEqual(_scaled_error([100.], [99.]), 0.01)
        self.assertEqual(_scaled_error(np.array([-4., 0.])), 1.)
        self.assertEqual(_scaled_error(np.zeros(0)), 0.)
        self.assertIsInstance(_scaled_error(np.float32(0.5)), float)

        self.assertEqual(_max_abs([-3., 2.]), 3.)
        self.assertEqual(_max_abs([]), 0.)

    def test_tolerances(self):

        try:
            self.assertEqual(get_tolerance('algebra'), 1.e-10)
            self.assertEqual(get_tolerance('metric_variation'), 1.e-7)
            self.assertEqual(get_tolerance('incompatibility'), 1.e-3)

            set_tolerance('algebra', 1.e-6)
            self.assertEqual(get_tolerance('algebra'), 1.e-6)
            self.assertEqual(get_tolerance('geometry'), 1.e-9)

            self.assertRaises(KeyError, get_tolerance, 'nothing')
            self.assertRaises(KeyError, set_tolerance, 'nothing', 1.)
            self.assertRaises(ValueError, set_tolerance, 'algebra', 0.)
            self.assertRaises(ValueError, set_tolerance, 'algebra', np.nan)

            reset_tolerances()
            self.assertEqual(get_tolerance('algebra'), 1.e-10)

            # The diagonal tolerance controls which metrics count as diagonal
            mj = metric_jet(builtin_metric('minkowski'), np.zeros(4))
            self.assertTrue(mj.is_diagonal())
            g = np.diag([-1., 1., 1., 1.])
            g[0,1] = g[1,0] = 1.e-9
            mj = MetricJet(g)
            self.assertFalse(mj.is_diagonal())
            set_tolerance('diagonal', 1.e-6)
            self.assertTrue(mj.is_diagonal())

        finally:
            reset_tolerances()

    def test_warnings(self):

        _reset_warnings()
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter('always')
            self.assertTrue(_warn('a once-only message for the warning test'))
            self.assertFalse(_warn('a once-only message for the warning test'))

            # The same text under another category is a different warning
            self.assertTrue(_warn('a once-only message for the warning test',
                                  ResampledPointWarning))

        self.assertEqual([w.category for w in caught],
                         [CliffordWarning, ResampledPointWarning])
        self.assertTrue(issubclass(CliffordWarning, UserWarning))
        self.assertTrue(issubclass(ResampledPointWarning, CliffordWarning))
        self.assertTrue(issubclass(ToleranceOverrideWarning, CliffordWarning))

        _reset_warnings()
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter('always')
            _warn('a once-only message for the warning test')
        self.assertEqual(len(caught), 1)
        _reset_warnings()

    def test_exceptions(self):

        for cls in (SingularMetric, NonLorentzian, AsymmetricMetric, UnsupportedMetric,
                    NonInvertibleBasisChange, ParseError, DomainError):
            self.assertTrue(issubclass(cls, ValueError))
        self.assertTrue(issubclass(IndexOutOfRange, IndexError))
        self.assertTrue(issubclass(MetricNotFound, LookupError))

        err = ParseError('unexpected token', text='x0 +', offset=4,
                         expected=['number', 'variable'], line=3)
        self.assertEqual(str(err), 'line 3: unexpected token (expected number, variable)')
        self.assertEqual(err.detail, 'unexpected token')
        self.assertEqual(err.expected, frozenset(['number', 'variable']))
        self.assertEqual((err.text, err.offset, err.line), ('x0 +', 4, 3))

        self.assertEqual(str(ParseError('empty')), 'empty')

        err = DomainError('log', -1.)
        self.assertEqual((err.function, err.argument), ('log', -1.))
        self.assertEqual(str(err), 'log is undefined at argument -1.0')

############################################
# Execute from command line...
############################################

if __name__ == '__main__':
    unittest.main(verbosity=2)

##########################################################################################
