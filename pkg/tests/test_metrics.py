##########################################################################################
# tests/test_metrics.py
##########################################################################################

import numpy as np
import unittest

from cliffdirac import *


class Test_metrics(unittest.TestCase):

    def test_builtin_names(self):

        for name in METRIC_NAMES:
            spec = builtin_metric(name)
            self.assertIsInstance(spec, MetricSpec)
            self.assertEqual(spec.box.shape, (4,2))

        self.assertEqual(builtin_metric('schwarzschild').name, 'schwarzschild-diagonal')
        self.assertEqual(builtin_metric('FLRW').name, 'flrw')
        self.assertEqual(builtin_metric('diag-poly-random:3').name, 'diag-poly-random:3')
        self.assertEqual(builtin_metric('diag-poly-random').name, 'diag-poly-random:0')

        self.assertRaises(MetricNotFound, builtin_metric, 'kerr')
        self.assertRaises(MetricNotFound, builtin_metric, 'minkowski:3')
        self.assertRaises(MetricNotFound, builtin_metric, 'nondiag-perturb:x')

        self.assertTrue(is_builtin('nondiag-perturb:7'))
        self.assertFalse(is_builtin('metrics/kerr.txt'))

        self.assertEqual(len(CATALOG), 13)
        for ref in CATALOG:
            self.assertTrue(is_builtin(ref), ref)

    def test_seeded_metrics(self):

        a = builtin_metric('diag-poly-random:3')
        b = builtin_metric('diag-poly-random:3')
        c = builtin_metric('diag-poly-random:4')
        self.assertTrue(all(a.components[i,i] == b.components[i,i] for i in range(4)))
        self.assertFalse(all(a.components[i,i] == c.components[i,i] for i in range(4)))

        self.assertTrue(a.is_diagonal())
        self.assertFalse(builtin_metric('nondiag-perturb:1').is_diagonal())
        self.assertTrue(builtin_metric('schwarzschild').is_diagonal())

    def test_catalog_points(self):

        rng = np.random.default_rng(0)
        for ref in CATALOG:
            spec = builtin_metric(ref)
            for k in range(3):
                x = spec.sample_point(rng)
                self.assertTrue(np.all(x >= spec.box[:,0]))
                self.assertTrue(np.all(x <= spec.box[:,1]))

                mj = metric_jet(spec, x)
                self.assertLess(np.linalg.det(mj.g), 0.)
                self.assertEqual(mj.is_diagonal(), spec.is_diagonal(), ref)

    def test_metric_jet(self):

        mj = metric_jet(builtin_metric('flrw'), [2., 0.3, 0.1, -0.2])
        self.assertTrue(np.allclose(mj.g, np.diag([-1., 4., 4., 4.])))
        self.assertTrue(np.allclose(mj.g_inv, np.diag([-1., 0.25, 0.25, 0.25])))
        self.assertAlmostEqual(mj.dg[1,1,0], 4.)
        self.assertAlmostEqual(mj.dg[1,1,1], 0.)
        self.assertAlmostEqual(mj.ddg[2,2,0,0], 2.)
        self.assertAlmostEqual(mj.omega, 8.)
        self.assertTrue(np.allclose(mj.domega, [12., 0., 0., 0.]))
        self.assertTrue(mj.is_diagonal())
        self.assertEqual(mj.name, 'flrw')

        # The coordinate jet of the metric
        jet = mj.x_jet()
        self.assertTrue(np.allclose(jet.grad[0], mj.dg[..., 0]))
        self.assertTrue(np.allclose(jet.hess[0,0], mj.ddg[..., 0, 0]))
        self.assertIsNone(mj.x_jet(order=1).hess)

    def test_metric_spec(self):

        x0 = parse_expression('x0')
        x1 = parse_expression('x1')
        one = parse_expression('1')
        minus = parse_expression('-1')

        entries = {(0,0): minus, (1,1): one, (2,2): one, (3,3): one, (0,1): x0}
        spec = MetricSpec('test', entries)
        self.assertEqual(spec.components[1,0], x0)
        self.assertFalse(spec.is_diagonal())
        self.assertTrue(np.all(spec.box == [[-1., 1.]] * 4))

        entries[(1,0)] = x0
        MetricSpec('test', entries)                 # identical expressions are fine

        entries[(1,0)] = x1
        self.assertRaises(AsymmetricMetric, MetricSpec, 'test', entries)

        self.assertRaises(ValueError, MetricSpec, 'test', {(4,0): x0})
        self.assertRaises(TypeError, MetricSpec, 'test', {(0,0): 'x0'})
        self.assertRaises(ValueError, MetricSpec, 'test', {(0,0): minus},
                          [(1., 0.)] * 4)

    def test_invalid_metrics(self):

        minus = parse_expression('-1')
        one = parse_expression('1')

        spec = MetricSpec('s', {(0,0): minus, (1,1): one, (2,2): one,
                                (3,3): parse_expression('x3')})
        self.assertRaises(SingularMetric, metric_jet, spec, [0., 0., 0., 0.])
        self.assertRaises(NonLorentzian, metric_jet, spec, [0., 0., 0., -1.])
        metric_jet(spec, [0., 0., 0., 2.])

        spec = MetricSpec('s', {(0,0): minus, (1,1): one, (2,2): one,
                                (3,3): parse_expression('log(x3)')})
        self.assertRaises(DomainError, metric_jet, spec, [0., 0., 0., -1.])

        self.assertRaises(NonLorentzian, MetricJet, np.eye(4))
        self.assertRaises(SingularMetric, MetricJet, np.diag([-1., 1., 1., 1.e-14]))

    def test_random_quadratic(self):

        rng = np.random.default_rng(1)
        e = random_quadratic(rng, scale=0., constant=2.)
        self.assertEqual(evaluate(e, [0.3, -0.2, 0.9, 0.1]), 2.)

        box = np.array([[1., 3.], [-1., 1.], [0., 4.], [-1., 1.]])
        e = random_quadratic(rng, box=box, scale=0.1, constant=-1.)
        for corner in [[1., -1., 0., -1.], [3., 1., 4., 1.], [2., 0., 2., 0.]]:
            self.assertLessEqual(abs(evaluate(e, corner) + 1.), 1.5 + 1.e-12)

        self.assertIn('(x0 - 2)', format_expression(e))
        self.assertIn('(x2 - 2)/2', format_expression(e))

############################################
# Execute from command line...
############################################

if __name__ == '__main__':
    unittest.main(verbosity=2)

##########################################################################################
