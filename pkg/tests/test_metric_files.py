##########################################################################################
# tests/test_metric_files.py
##########################################################################################

import numpy as np
import os
import pathlib
import tempfile
import unittest

from cliffdirac import *

SAMPLE = """\
# A conformally flat metric with extra fields
name = conformal
g[0][0] = -exp(2*x1)
g[1][1] = exp(2*x1)     # trailing comment
g[2][2] = exp(2*x1)
g[3][3] = exp(2*x1)
g[0][1] = 0.1*x0
box[1] = -0.5, 0.5

B[0][0] = 1
B[1][1] = 1 + 0.01*x2
B[2][2] = 1
B[3][3] = 1
psi[0] = x0
psi[15] = sin(x3)
theta[2][5][3] = x1^2
"""


class Test_metric_files(unittest.TestCase):

    def test_parse_metric_text(self):

        exfile = parse_metric_text(SAMPLE)
        spec = exfile.spec
        self.assertEqual(spec.name, 'conformal')
        self.assertEqual(spec.components[1,0], parse_expression('0.1*x0'))
        self.assertEqual(spec.components[2,2], parse_expression('exp(2*x1)'))
        self.assertIsNone(spec.components[2,3])
        self.assertTrue(np.all(spec.box[1] == [-0.5, 0.5]))
        self.assertTrue(np.all(spec.box[0] == [-1., 1.]))

        self.assertEqual(exfile.basis_change.shape, (4,4))
        self.assertEqual(exfile.basis_change[1,1], parse_expression('1 + 0.01*x2'))
        self.assertIsNone(exfile.basis_change[0,1])

        self.assertEqual(exfile.psi.shape, (16,))
        self.assertEqual(exfile.psi[15], parse_expression('sin(x3)'))
        self.assertIsNone(exfile.psi[3])

        self.assertEqual(exfile.theta.shape, (4,16,16))
        self.assertEqual(exfile.theta[2,5,3], parse_expression('x1^2'))
        self.assertIsNone(exfile.path)

        # Minimal file
        exfile = parse_metric_text('g[0][0] = -1\ng[1][1] = 1\n', default_name='tiny')
        self.assertEqual(exfile.spec.name, 'tiny')
        self.assertIsNone(exfile.basis_change)
        self.assertIsNone(exfile.psi)
        self.assertIsNone(exfile.theta)

    def test_parse_errors(self):

        cases = [('g[0][0] = -1\nfoo = 3\n', 2),
                 ('g[0][0] = -1\n\n# comment\ng[1][1] = x0 +\n', 4),
                 ('g[4][0] = 1\n', 1),
                 ('g[0][0] = 1\ng[0][0] = 2\n', 2),
                 ('g[0][0] = 1\nbox[0] = 2, 1\n', 2),
                 ('g[0][0] = 1\nbox[0] = a, 1\n', 2),
                 ('g[0][0] = 1\npsi[16] = 1\n', 2),
                 ('g[0][0] = 1\ntheta[0][16][0] = 1\n', 2),
                 ('name = a\nname = b\ng[0][0] = 1\n', 2)]

        for (text, line) in cases:
            try:
                parse_metric_text(text)
            except ParseError as err:
                self.assertEqual(err.line, line, text)
                self.assertTrue(str(err).startswith(f'line {line}: '), str(err))
            else:
                self.fail(f'ParseError not raised for {text!r}')

        # The expression error keeps its offset within the expression
        try:
            parse_metric_text('g[1][1] = x0 *\n')
        except ParseError as err:
            self.assertEqual(err.offset, 4)
            self.assertIn('variable', err.expected)

        self.assertRaises(ParseError, parse_metric_text, '# nothing\n')
        self.assertRaises(AsymmetricMetric, parse_metric_text,
                          'g[0][1] = x0\ng[1][0] = x1\n')

    def test_format_metric_file(self):

        exfile = parse_metric_text(SAMPLE)
        text = format_metric_file(exfile)
        self.assertIn('name = conformal\n', text)
        self.assertIn('g[0][1] = 0.1*x0\n', text)
        self.assertIn('box[1] = -0.5, 0.5\n', text)
        self.assertIn('theta[2][5][3] = x1^2\n', text)
        self.assertNotIn('g[1][0]', text)

        again = parse_metric_text(text)
        self.assertTrue(np.all(again.spec.components == exfile.spec.components))
        self.assertTrue(np.all(again.spec.box == exfile.spec.box))
        self.assertTrue(np.all(again.basis_change == exfile.basis_change))
        self.assertTrue(np.all(again.psi == exfile.psi))
        self.assertEqual(format_metric_file(again), text)

        # Builtin metrics format to parseable text
        for name in METRIC_NAMES:
            spec = builtin_metric(name)
            again = parse_metric_text(format_metric_file(spec))
            self.assertEqual(again.spec.name, spec.name)
            self.assertTrue(np.all(again.spec.components == spec.components))

    def test_resolve_metric(self):

        with tempfile.TemporaryDirectory() as root:
            root = pathlib.Path(root)
            path = root / 'conformal_copy.txt'
            path.write_text(SAMPLE.replace('name = conformal\n', ''), encoding='utf-8')

            exfile = read_metric_file(path)
            self.assertEqual(exfile.spec.name, 'conformal_copy')
            self.assertEqual(exfile.path, path)

            exfile = resolve_metric(str(path))
            self.assertEqual(exfile.spec.name, 'conformal_copy')

            # Relative references use the search path
            self.assertRaises(MetricNotFound, resolve_metric, 'conformal_copy.txt')
            try:
                set_metric_path(root)
                exfile = resolve_metric('conformal_copy.txt')
                self.assertEqual(exfile.path, root / 'conformal_copy.txt')

                set_metric_path([root / 'missing', root])
                self.assertEqual(find_metric_file('conformal_copy.txt'),
                                 root / 'conformal_copy.txt')

                set_metric_path(None)
                saved = os.environ.get('CLIFFDIRAC_METRIC_PATH')
                os.environ['CLIFFDIRAC_METRIC_PATH'] = str(root)
                try:
                    resolve_metric('conformal_copy.txt')
                finally:
                    if saved is None:
                        del os.environ['CLIFFDIRAC_METRIC_PATH']
                    else:
                        os.environ['CLIFFDIRAC_METRIC_PATH'] = saved
            finally:
                set_metric_path(None)

        exfile = resolve_metric('flrw')
        self.assertEqual(exfile.spec.name, 'flrw')
        self.assertIsNone(exfile.path)
        self.assertRaises(MetricNotFound, resolve_metric, 'no-such-metric')

############################################
# Execute from command line...
############################################

if __name__ == '__main__':
    unittest.main(verbosity=2)

##########################################################################################
