##########################################################################################
# tests/test_geometry.py
##########################################################################################

import numpy as np
import unittest

from cliffdirac import *


class Test_geometry(unittest.TestCase):

    def test_flrw(self):

        geo = geometry_point(builtin_metric('flrw'), [2., 0.1, -0.3, 0.5])

        self.assertAlmostEqual(geo.cp.gamma2[0,1,1], 2.)
        self.assertAlmostEqual(geo.cp.gamma2[0,3,3], 2.)
        self.assertAlmostEqual(geo.cp.gamma2[1,0,1], 0.5)
        self.assertAlmostEqual(geo.cp.gamma2[1,1,0], 0.5)
        self.assertAlmostEqual(geo.cp.gamma2[0,0,0], 0.)

        self.assertAlmostEqual(float(geo.curvature.scalar), 1.5)
        self.assertAlmostEqual(geo.mj.omega, 8.)
        self.assertTrue(np.allclose(geo.curvature.einstein_lo,
                                    np.diag([0.75, -1., -1., -1.])))

        self.assertAlmostEqual(float(curvature_trace(geo.ctx, geo.ohat)), -12.)

    def test_schwarzschild(self):

        geo = geometry_point(builtin_metric('schwarzschild'), [0., 5., 1.2, 0.3])
        self.assertAlmostEqual(float(geo.curvature.scalar), 0., places=10)
        self.assertTrue(np.allclose(geo.curvature.einstein_lo, 0., atol=1.e-10))
        self.assertTrue(np.allclose(geo.curvature.ricci, 0., atol=1.e-10))

        # Still curved
        self.assertGreater(np.max(np.abs(geo.curvature.riemann)), 1.e-3)

        # Gamma^1_00 = (M/r^2)(1 - 2M/r)
        self.assertAlmostEqual(geo.cp.gamma2[1,0,0], (1./25.) * (1. - 2./5.))

    def test_minkowski(self):

        geo = geometry_point(builtin_metric('minkowski'), [0.1, 0.2, 0.3, 0.4])
        self.assertTrue(np.all(geo.cp.gamma2 == 0.))
        self.assertTrue(np.all(geo.ecp.ghat_mats == 0.))
        self.assertTrue(np.all(geo.ohat.omega_hat == 0.))

        rng = np.random.default_rng(0)
        psi = rng.normal(size=16)
        dpsi = rng.normal(size=(4,16))
        expected = sum(geo.ctx.gamma_hi[a] @ dpsi[a] for a in range(4))
        self.assertTrue(np.allclose(dirac_operator(geo.ctx, geo.ecp, psi, dpsi),
                                    expected))

    def test_identities_nondiagonal(self):

        spec = builtin_metric('nondiag-perturb:2')
        x = spec.sample_point(np.random.default_rng(1))
        geo = geometry_point(spec, x)

        self.assertFalse(geo.mj.is_diagonal())

        # Metric compatibility of the extended connection
        defect = metric_compatibility_defect(geo.ctx, geo.ecp)
        self.assertLess(np.max(np.abs(defect)), 1.e-10)

        # Commutation of the gammas with the extended connection
        (lower, upper) = gamma_connection_defects(geo.ctx, geo.ecp, geo.cp)
        self.assertLess(np.max(np.abs(lower)), 1.e-10)
        self.assertLess(np.max(np.abs(upper)), 1.e-10)

        # d_a omega = Gamma^b_ba omega
        defect = density_derivative_defect(geo.mj, geo.cp)
        self.assertLess(np.max(np.abs(defect)), 1.e-12)

        # The extended curvature is the extension of the Riemann operators
        extension = riemann_extension(geo.ctx, geo.curvature)
        self.assertTrue(np.allclose(geo.ohat.omega_hat, extension, atol=1.e-10))

    def test_riemann_symmetries(self):

        spec = builtin_metric('nondiag-perturb:3')
        geo = geometry_point(spec, spec.sample_point(np.random.default_rng(2)))
        riemann = geo.curvature.riemann
        lowered = np.einsum('rn,nsab->rsab', geo.mj.g, riemann)

        self.assertTrue(np.allclose(riemann, -riemann.transpose(0,1,3,2), atol=1.e-12))
        self.assertTrue(np.allclose(lowered, -lowered.transpose(1,0,2,3), atol=1.e-12))
        self.assertTrue(np.allclose(lowered, lowered.transpose(2,3,0,1), atol=1.e-12))

        bianchi = (riemann + riemann.transpose(0,2,3,1) + riemann.transpose(0,3,1,2))
        self.assertTrue(np.allclose(bianchi, 0., atol=1.e-12))

        # Symmetric Ricci and Einstein tensors
        self.assertTrue(np.allclose(geo.curvature.ricci, geo.curvature.ricci.T))
        self.assertTrue(np.allclose(geo.curvature.einstein_hi,
                                    geo.mj.g_inv @ geo.curvature.einstein_lo
                                    @ geo.mj.g_inv))

    def test_connection_jets(self):

        spec = builtin_metric('diag-poly-random:4')
        x = spec.sample_point(np.random.default_rng(3))
        geo = geometry_point(spec, x)

        # d_b Gammahat_a against central differences of Gammahat_a
        h = 1.e-5
        for b in range(4):
            step = np.zeros(4)
            step[b] = h
            plus = geometry_point(spec, x + step).ecp.ghat_mats
            minus = geometry_point(spec, x - step).ecp.ghat_mats
            numeric = (plus - minus) / (2*h)
            self.assertTrue(np.allclose(geo.ecp.d_ghat_mats[b], numeric, atol=1.e-7))

    def test_vierbein(self):

        spec = builtin_metric('diag-poly-random:1')
        geo = geometry_point(spec, [0.2, -0.4, 0.1, 0.3])
        vb = vierbein(geo.mj)
        self.assertTrue(np.allclose(vb.e.T @ vb.eta @ vb.e, geo.mj.g))

        spin = spin_connection(vb, geo.cp)
        self.assertEqual(spin.shape, (4,16,16))
        (compat, distance) = spin_connection_defects(geo.ctx, geo.ecp, spin)
        self.assertGreaterEqual(compat, 0.)
        self.assertGreater(distance, 0.)

        # Flat space: both connections vanish
        flat = geometry_point(builtin_metric('minkowski'), [0., 0., 0., 0.])
        spin = spin_connection(vierbein(flat.mj), flat.cp)
        self.assertEqual(spin_connection_defects(flat.ctx, flat.ecp, spin), (0., 0.))

        spec = builtin_metric('nondiag-perturb:1')
        nondiag = geometry_point(spec, [0.1, 0.1, 0.1, 0.1])
        self.assertRaises(UnsupportedMetric, vierbein, nondiag.mj)

############################################
# Execute from command line...
############################################

if __name__ == '__main__':
    unittest.main(verbosity=2)

##########################################################################################
