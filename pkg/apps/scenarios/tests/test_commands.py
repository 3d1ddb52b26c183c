import json
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase as DjangoSimpleTestCase, override_settings


class RunScenarioCommandTests(DjangoSimpleTestCase):

    def test_passing_scenario(self):
        out = StringIO()
        call_command('run_scenario', 'trivial-default', cap=3, stdout=out)
        self.assertIn('curvature = 0', out.getvalue())
        self.assertIn('result: PASS', out.getvalue())

    def test_json_output(self):
        out = StringIO()
        call_command('run_scenario', 'hopf-3d', cap=3, output='json', stdout=out)
        summary = json.loads(out.getvalue())
        self.assertTrue(summary['passed'])
        self.assertEqual(summary['exit_code'], 0)
        values = {quantity['name']: quantity['value'] for quantity in summary['quantities']}
        self.assertEqual(values['R(zeta)'], 'mu*(1+mu^2)*em*ep')

    def test_failing_scenario_exits_with_one(self):
        out, err = StringIO(), StringIO()
        with self.assertRaises(CommandError) as ctx:
            call_command('run_scenario', 'line-bundle', cap=3, lam='2', omega_sq='nonzero', stdout=out, stderr=err)
        self.assertEqual(ctx.exception.returncode, 1)
        self.assertIn('mismatch multiplicative:', out.getvalue())
        self.assertIn('result: FAIL', out.getvalue())

    def test_unknown_scenario_exits_with_two(self):
        with self.assertRaises(CommandError) as ctx:
            call_command('run_scenario', 'hopf-5d', stdout=StringIO(), stderr=StringIO())
        self.assertEqual(ctx.exception.returncode, 2)

    def test_bad_scalar_exits_with_two(self):
        with self.assertRaises(CommandError) as ctx:
            call_command('run_scenario', 'hopf-4dplus', t='1/(', stdout=StringIO(), stderr=StringIO())
        self.assertEqual(ctx.exception.returncode, 2)


class VerifyCommandTests(DjangoSimpleTestCase):

    def test_axioms_for_one_group(self):
        out = StringIO()
        call_command('verify', suite='axioms', group='u1', cap=3, stdout=out)
        self.assertIn('suite axioms', out.getvalue())
        self.assertIn('result: PASS', out.getvalue())

    def test_calculus_suite_as_json(self):
        out = StringIO()
        call_command('verify', suite='calculus', calculus='3d', output='json', stdout=out)
        summary = json.loads(out.getvalue())
        self.assertTrue(summary['passed'])
        self.assertEqual(summary['failures'], [])
        self.assertGreater(summary['counts']['passed'], 0)

    def test_unknown_group_exits_with_two(self):
        with self.assertRaises(CommandError) as ctx:
            call_command('verify', suite='axioms', group='so3', stdout=StringIO(), stderr=StringIO())
        self.assertEqual(ctx.exception.returncode, 2)


class ExportCommandTests(DjangoSimpleTestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def test_relations_export(self):
        path = Path(self.tmp.name) / 'relations.json'
        out = StringIO()
        call_command('export', 'relations', 'hopf-3d', cap=3, output_file=str(path), stdout=out)
        self.assertIn('Wrote relations export', out.getvalue())
        data = json.loads(path.read_text(encoding='utf-8'))
        self.assertEqual(data['bundle'], 'hopf-3d')
        self.assertEqual(len(data['lstar']), 3)
        self.assertEqual(len(data['lp']), 3)
        self.assertIn('ep*em = -mu^2*em*ep', data['lstar'])

    def test_curvature_export_of_flat_bundle(self):
        path = Path(self.tmp.name) / 'curvature.json'
        call_command('export', 'curvature', 'trivial-default', cap=3, output_file=str(path), stdout=StringIO())
        data = json.loads(path.read_text(encoding='utf-8'))
        self.assertEqual(data['curvature'], {'zeta': '0'})

    def test_default_path_uses_export_dir(self):
        with override_settings(BUNDLECALC_EXPORT_DIR=self.tmp.name):
            call_command('export', 'omegaM', 'hopf-3d', cap=3, stdout=StringIO())
        data = json.loads((Path(self.tmp.name) / 'hopf-3d-omegaM.json').read_text(encoding='utf-8'))
        self.assertEqual(data['degree'], 0)
        self.assertTrue(data['basis'])

    def test_unknown_bundle_exits_with_two(self):
        with self.assertRaises(CommandError) as ctx:
            call_command('export', 'relations', 'no-such-bundle', output_file=str(Path(self.tmp.name) / 'x.json'),
                         stdout=StringIO(), stderr=StringIO())
        self.assertEqual(ctx.exception.returncode, 2)
