##########################################################################################
# tests/test_einstein.py
##########################################################################################

import numpy as np
import unittest

from cliffdirac import *
import cliffdirac._jets as jets
from cliffdirac._utils import PAIRS


class Test_einstein(unittest.TestCase):

    def test_k_table(self):

        ctx = build_context(np.diag([-1., 1., 1., 1.]))

        self.assertTrue(np.all(k_matrix(ctx, 2, 2, 2) == np.eye(16)))
        self.assertTrue(np.all(k_matrix(ctx, 0, 1, 0) == -np.eye(16)))
        self.assertTrue(np.all(k_matrix(ctx, 1, 3, 1) == -np.eye(16)))
        self.assertTrue(np.all(k_matrix(ctx, 0, 1, 1) == -k_matrix(ctx, 0, 0, 1)))

        # K(001) reflects e_0 and e_1
        e02 = np.zeros(16)
        e02[basis_index((0,2))] = 1.
        self.assertTrue(np.allclose(k_matrix(ctx, 0, 0, 1) @ e02, -e02))
        e23 = np.zeros(16)
        e23[basis_index((2,3))] = 1.
        self.assertTrue(np.allclose(k_matrix(ctx, 0, 0, 1) @ e23, e23))

        # S(012) flips e_02, e_13, e_1 and e_023
        S = four_plane_reflection(0, 1, 2)
        flipped = {basis_index(i) for i in [(0,2), (1,3), (1,), (0,2,3)]}
        for k in range(16):
            self.assertEqual(S[k,k], -1. if k in flipped else 1.)
        self.assertTrue(np.all(k_matrix(ctx, 0, 1, 2) == -S))

        self.assertTrue(np.all(reflection((1,3)) == np.diag([1., -1., 1., -1.])))

        table = k_table(ctx)
        self.assertEqual(table.shape, (10,4,16,16))
        for (k, (a,b)) in enumerate(PAIRS):
            for e in range(4):
                self.assertTrue(np.allclose(table[k,e] @ table[k,e], np.eye(16)))
                self.assertTrue(np.all(table[k,e] == np.diag(np.diag(table[k,e]))))

        self.assertRaises(IndexOutOfRange, k_matrix, ctx, 1, 0, 2)
        self.assertRaises(IndexOutOfRange, k_matrix, ctx, 0, 4, 2)
        self.assertRaises(IndexOutOfRange, k_matrix, ctx, 0, 1, -1)

    def test_closed_form_Q(self):

        geo = geometry_point(builtin_metric('minkowski'), np.zeros(4))
        Q = closed_form_Q(geo.ctx, geo.mj)
        self.assertEqual(Q.shape, (10,4,16,16))

        # Q^000 = -1/2 ghat gamma^0 gamma^0 gamma^0 = 1/2 ghat gamma^0
        self.assertTrue(np.allclose(Q[0,0], 0.5 * geo.ctx.ghat @ geo.ctx.gamma_hi[0]))

        mv = metric_variation(geo)
        self.assertTrue(np.allclose(mv.Q, Q, rtol=0., atol=1.e-10))

        for (ref, x) in [('flrw', [1.7, 0.1, -0.3, 0.2]),
                         ('schwarzschild', [0., 5., 1.2, 0.3]),
                         ('diag-poly-random:4', [0.2, -0.4, 0.1, 0.5])]:
            geo = geometry_point(builtin_metric(ref), x)
            mv = metric_variation(geo)
            Q = closed_form_Q(geo.ctx, geo.mj)
            scale = max(1., np.max(np.abs(Q)))
            self.assertLess(np.max(np.abs(mv.Q - Q)) / scale, 1.e-8, ref)

        geo = geometry_point(builtin_metric('nondiag-perturb:1'), np.zeros(4))
        self.assertFalse(geo.mj.is_diagonal())
        self.assertRaises(UnsupportedMetric, closed_form_Q, geo.ctx, geo.mj)

    def test_curvature_densities(self):

        mj = metric_jet(builtin_metric('flrw'), [2., 0., 0., 0.])
        self.assertAlmostEqual(float(omega_scalar_curvature(mj.g, mj.g_inv, mj.dg,
                                                            mj.ddg)), 12.)
        self.assertAlmostEqual(float(omega_curvature_trace(mj.g, mj.g_inv, mj.dg,
                                                           mj.ddg)), -96.)

        # Jet-generic
        g = jets.Jet(mj.g, np.zeros((1,4,4)))
        trace = omega_curvature_trace(g, jets.inv(g), mj.dg, mj.ddg)
        self.assertTrue(np.all(trace.grad == 0.))
        self.assertAlmostEqual(float(np.asarray(trace.value)), -96.)

    def test_gravity_variation(self):

        for (ref, x) in [('flrw', [2., 0.3, 0., -0.2]),
                         ('schwarzschild', [0.1, 5., 1.3, 0.]),
                         ('diag-poly-random:2', [0.3, 0.1, -0.2, 0.4])]:
            geo = geometry_point(builtin_metric(ref), x)
            gravity = gravity_variation(geo)

            self.assertEqual(gravity.omega_r.shape, (10,))
            self.assertLess(gravity.classical_error(), 1.e-7, ref)

            # L_g = -8 omega R, so its variation is +8 omega G^ab
            self.assertEqual(gravity.sign, -1, ref)
            self.assertLess(gravity.error(-1), 1.e-7, ref)

        # Einstein tensor of FLRW at x0 = 2: G_ab = diag(0.75, -1, -1, -1)
        geo = geometry_point(builtin_metric('flrw'), [2., 0., 0., 0.])
        self.assertTrue(np.allclose(geo.curvature.einstein_lo,
                                    np.diag([0.75, -1., -1., -1.])))

        gravity = gravity_variation(geo, include_lg=False)
        self.assertIsNone(gravity.l_g)
        self.assertEqual(gravity.sign, 1)

        # Schwarzschild is a vacuum solution
        geo = geometry_point(builtin_metric('schwarzschild'), [0., 5., 1., 0.])
        gravity = gravity_variation(geo, include_lg=False)
        self.assertLess(np.max(np.abs(gravity.omega_r)), 1.e-6)

    def test_einstein_coupling(self):

        spec = builtin_metric('flrw')
        rng = np.random.default_rng(11)
        geo = geometry_point(spec, [1.5, 0.2, -0.1, 0.3])
        field = SpinorPolyField.random(rng, spec.box)
        cfg = VariationConfig(mu=0.5, kappa=2., lam=0.3)

        coupling = einstein_coupling(geo, field, cfg)
        self.assertTrue(coupling.closed_form)
        self.assertEqual(coupling.sign, -1)
        self.assertEqual(coupling.source_lo.shape, (4,4))
        self.assertTrue(np.allclose(coupling.source_lo, coupling.source_lo.T))
        self.assertTrue(np.allclose(coupling.residual,
                                    coupling.einstein_lo - coupling.source_lo))
        self.assertLess(coupling.identity_error(), 1.e-7)

        # Precomputed pieces give the same answer
        mv = metric_variation(geo)
        gravity = gravity_variation(geo)
        again = einstein_coupling(geo, field, cfg, mv, gravity)
        self.assertTrue(np.allclose(again.source_lo, coupling.source_lo))

        # Off the diagonal the numeric Q is used
        spec = builtin_metric('nondiag-perturb:2')
        geo = geometry_point(spec, spec.sample_point(rng))
        coupling = einstein_coupling(geo, SpinorPolyField.random(rng, spec.box))
        self.assertFalse(coupling.closed_form)
        self.assertEqual(coupling.total_numeric.shape, (10,))

############################################
# Execute from command line...
############################################

if __name__ == '__main__':
    unittest.main(verbosity=2)

##########################################################################################
