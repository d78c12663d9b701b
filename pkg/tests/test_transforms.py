##########################################################################################
# tests/test_transforms.py
##########################################################################################

import numpy as np
import unittest

from cliffdirac import *


def _setup(ref, seed):
    """A GeometryPoint, a random field value and a polynomial BasisChangeJet."""

    spec = builtin_metric(ref)
    rng = np.random.default_rng(seed)
    x = spec.sample_point(rng)
    geo = geometry_point(spec, x)
    psi = rng.uniform(-1., 1., 16)
    dpsi = rng.uniform(-1., 1., (4,16))
    field = BasisChangeField.random(rng, spec.box)
    return (geo, psi, dpsi, basis_change_jet(geo.ecp, field, x))


class Test_transforms(unittest.TestCase):

    def test_basis_change_jet(self):

        (geo, _, _, bc) = _setup('diag-poly-random:1', 0)
        self.assertTrue(np.allclose(bc.Bhat @ bc.Bhat_inv, np.eye(16), atol=1.e-12))
        self.assertTrue(np.allclose(bc.B @ bc.B_inv, np.eye(4)))
        self.assertEqual(bc.dB.shape, (4,4,4))
        self.assertEqual(bc.dBhat.shape, (4,16,16))

        # The identity leaves everything unchanged
        identity = basis_change_jet(geo.ecp, BasisChangeField.identity(), geo.point)
        self.assertTrue(np.allclose(identity.Bhat, np.eye(16)))
        self.assertTrue(np.all(identity.dBhat == 0.))

        primed = primed_bundle(geo.ctx, geo.ecp, geo.ohat, identity)
        self.assertTrue(np.allclose(primed.ghat, geo.ctx.ghat))
        self.assertTrue(np.allclose(primed.ghat_mats, geo.ecp.ghat_mats))
        self.assertTrue(np.allclose(primed.omega_hat, geo.ohat.omega_hat))

        self.assertRaises(NonInvertibleBasisChange, basis_change_jet, geo.ecp,
                          np.zeros((4,4)), geo.point)
        self.assertRaises(ValueError, BasisChangeField, np.full((3,3), None))

        # dBhat against central differences
        spec = builtin_metric('diag-poly-random:1')
        field = BasisChangeField.random(np.random.default_rng(1), spec.box)
        x = geo.point
        bc = basis_change_jet(geo.ecp, field, x)
        h = 1.e-5
        for b in range(4):
            step = np.zeros(4)
            step[b] = h
            plus = basis_change_jet(geometry_point(spec, x + step).ecp, field, x + step)
            minus = basis_change_jet(geometry_point(spec, x - step).ecp, field, x - step)
            numeric = (plus.Bhat - minus.Bhat) / (2*h)
            self.assertTrue(np.allclose(bc.dBhat[b], numeric, atol=1.e-7))

    def test_transformation_laws(self):

        for (ref, seed) in [('diag-poly-random:2', 2), ('nondiag-perturb:3', 3),
                            ('schwarzschild', 4), ('flrw', 5)]:
            (geo, psi, dpsi, bc) = _setup(ref, seed)
            primed = primed_bundle(geo.ctx, geo.ecp, geo.ohat, bc)
            rebuilt = rebuilt_bundle(geo.ctx, geo.cp, geo.curvature, bc)

            differences = bundle_differences(primed, rebuilt)
            self.assertEqual(set(differences),
                             {'ghat', 'ghat_mats', 'gamma_lo', 'gamma_hi', 'omega_hat'})
            for (name, err) in differences.items():
                self.assertLess(err, 1.e-8, f'{ref} {name}')

            self.assertLess(field_rule_defect(geo.ctx, bc, psi), 1.e-10)
            self.assertLess(verify_dirac_covariance(geo.ctx, geo.ecp, bc, psi, dpsi),
                            1.e-8)

            before = invariant_scalars(geo.ctx, geo.ecp, geo.ohat, psi, dpsi)
            after = primed_invariant_scalars(primed, bc, psi, dpsi)
            self.assertEqual(len(before), 5)
            self.assertTrue(np.allclose(before, after, rtol=1.e-8, atol=1.e-8), ref)

    def test_constant_changes(self):

        (geo, psi, dpsi, _) = _setup('nondiag-perturb:1', 6)

        generators = so_basis(geo.ctx, normalize=True)
        lorentz = matrix_exp(0.4 * generators[0].L + 0.3 * generators[5].L)
        for B in (lorentz, np.diag([0.5, -1.2, 1.4, -0.8])):
            bc = basis_change_jet(geo.ecp, B, geo.point)
            self.assertTrue(np.all(bc.dB == 0.))
            primed = primed_bundle(geo.ctx, geo.ecp, geo.ohat, bc)
            rebuilt = rebuilt_bundle(geo.ctx, geo.cp, geo.curvature, bc)
            for err in bundle_differences(primed, rebuilt).values():
                self.assertLess(err, 1.e-8)

        # A Lorentz change leaves the extended metric unchanged
        bc = basis_change_jet(geo.ecp, lorentz, geo.point)
        primed = primed_bundle(geo.ctx, geo.ecp, None, bc)
        self.assertIsNone(primed.omega_hat)
        self.assertTrue(np.allclose(primed.ghat, geo.ctx.ghat, atol=1.e-12))

    def test_transform_field(self):

        (geo, psi, dpsi, bc) = _setup('diag-poly-random:3', 7)
        (psi_new, d_psi_new) = transform_field(bc, psi, dpsi)
        self.assertTrue(np.allclose(psi_new, bc.Bhat @ psi))

        # d'_a = sum_b Binv[b,a] d_b, so sum_a B[a,c] d'_a = d_c
        d_plain = np.einsum('ac,ai->ci', bc.B, d_psi_new)
        self.assertTrue(np.allclose(d_plain, bc.dBhat @ psi + dpsi @ bc.Bhat.T))

    def test_general_change(self):

        (geo, psi, _, _) = _setup('nondiag-perturb:2', 8)
        rng = np.random.default_rng(9)
        A = np.eye(16) + 0.1 * rng.uniform(-1., 1., (16,16))
        self.assertLess(general_change_invariance(geo.ctx, A, psi), 1.e-10)

############################################
# Execute from command line...
############################################

if __name__ == '__main__':
    unittest.main(verbosity=2)

##########################################################################################
