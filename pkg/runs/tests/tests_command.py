import os
from io import StringIO
from unittest import mock

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import TestCase

from ..experiments import RUNNERS, Bundle
from ..models import ExperimentRun
from .helpers import SMALL_CONFIG, TempDirMixin


class LabCommandTestMixin(TempDirMixin):
    def lab(self, subcommand, out, **options):
        options.setdefault('stdout', StringIO())
        call_command('lab', subcommand, out=self.path(out), **options)
        return options['stdout'].getvalue()

    def bundle_files(self, out):
        return sorted(os.listdir(self.path(out)))

    def assertSameBundle(self, first, second):
        self.assertEqual(self.bundle_files(first), self.bundle_files(second))
        for name in self.bundle_files(first):
            self.assertEqual(self.read(first, name), self.read(second, name),
                             name)


class VerifyTheoremCommandTest(LabCommandTestMixin, TestCase):
    def test_bound_holds(self):
        config = self.write_config(SMALL_CONFIG)
        self.lab('verify-theorem', 'out', config_path=config)
        self.assertEqual(self.bundle_files('out'), [
            'chsh_bound_scan.csv', 'config.yaml', 'lemma_battery.csv',
            'quantum_audit.csv', 'summary.csv'])
        summary = self.read('out', 'summary.csv').decode().splitlines()
        self.assertEqual(summary[0], 'check,value,stderr,passed')
        self.assertIn('conditional_chsh_bound,2,,true', summary)
        self.assertTrue(all(line.endswith('true') for line in summary[1:]))

    def test_malformed_config_exits_2(self):
        config = self.write_config('master_seed: [1, 2\n')
        with self.assertRaises(CommandError) as cm:
            self.lab('verify-theorem', 'out', config_path=config)
        self.assertEqual(cm.exception.returncode, 2)

    def test_missing_seed_exits_2(self):
        with self.assertRaises(CommandError) as cm:
            self.lab('verify-theorem', 'out')
        self.assertEqual(cm.exception.returncode, 2)


class EprCommandTest(LabCommandTestMixin, TestCase):
    def setUp(self):
        super().setUp()
        self.config = self.write_config(SMALL_CONFIG)

    def test_bundle(self):
        self.lab('epr', 'out', config_path=self.config)
        self.assertEqual(self.bundle_files('out'), [
            'chsh.csv', 'config.yaml', 'counts.csv', 'e_hat.csv',
            'factorization.csv', 'no_signaling.csv', 'summary.csv'])
        e_hat = self.read('out', 'e_hat.csv').decode().splitlines()
        self.assertEqual(e_hat[0], 'mu_deg,nu_deg,pairs,e_hat,stderr,'
                                   'anticorrelated_fraction,marginal_up_1,'
                                   'marginal_up_2')
        equal_axes = [line.split(',') for line in e_hat[1:]
                      if line.startswith('0,0,') or
                      line.startswith('90,90,')]
        self.assertEqual(len(equal_axes), 2)
        for columns in equal_axes:
            self.assertEqual(columns[3], '-1')
            self.assertEqual(columns[5], '1')

    def test_rerun_is_byte_identical(self):
        self.lab('epr', 'first', config_path=self.config)
        self.lab('epr', 'second', config_path=self.config)
        self.assertSameBundle('first', 'second')

    def test_threads_do_not_change_results(self):
        self.lab('epr', 'serial', config_path=self.config)
        self.lab('epr', 'threaded', config_path=self.config, threads=3)
        self.assertSameBundle('serial', 'threaded')

    def test_echo_reproduces_bundle(self):
        self.lab('epr', 'first', config_path=self.config, seed=5)
        echo = self.path('first', 'config.yaml')
        self.lab('epr', 'second', config_path=echo)
        self.assertSameBundle('first', 'second')

    def test_oracle_violates_bound(self):
        data = dict(SMALL_CONFIG, epr={
            'pairs': 8000, 'measurement_model': 'AnalyticQuantumOracle',
            'detector_records': True})
        self.lab('epr', 'out', config_path=self.write_config(data))
        chsh = self.read('out', 'chsh.csv').decode().splitlines()
        columns = chsh[1].split(',')
        self.assertEqual(columns[:4], ['0', '90', '45', '315'])
        self.assertGreater(float(columns[4]), 2.6)
        self.assertEqual(columns[6:], ['2', 'true'])
        detectors = self.read('out', 'detectors.csv').decode().splitlines()
        self.assertEqual(len(detectors), 8001)

    def test_too_few_pairs_exits_2(self):
        data = dict(SMALL_CONFIG, epr={'pairs': 50})
        with self.assertRaises(CommandError) as cm:
            self.lab('epr', 'out', config_path=self.write_config(data))
        self.assertEqual(cm.exception.returncode, 2)

    def test_failed_invariant_exits_1_after_writing(self):
        def failing(config, executor=None):
            bundle = Bundle()
            bundle.check('always_fails', 1.0, False)
            return bundle

        with mock.patch.dict(RUNNERS, {'epr': failing}):
            with self.assertRaises(CommandError) as cm:
                self.lab('epr', 'out', config_path=self.config, record=True)
        self.assertEqual(cm.exception.returncode, 1)
        summary = self.read('out', 'summary.csv').decode()
        self.assertEqual(summary,
                         'check,value,stderr,passed\nalways_fails,1,,false\n')
        self.assertEqual(ExperimentRun.objects.get().exit_code, 1)


class OtherSubcommandsTest(LabCommandTestMixin, TestCase):
    def setUp(self):
        super().setUp()
        self.config = self.write_config(SMALL_CONFIG)

    def test_swap(self):
        self.lab('swap', 'out', config_path=self.config)
        self.assertIn('counts.csv', self.bundle_files('out'))

    def test_density(self):
        self.lab('density', 'out', config_path=self.config)
        validation = self.read('out', 'density_validation.csv').decode()
        self.assertTrue(validation.startswith(
            'trajectories,t,ks_distance,l1_distance,ensemble_variance,'
            'oracle_variance,analytic_variance,variance_rel_error,'
            'undersampled,start,escaped,reproduced\n500,0.5,'))
        self.assertIn(',rest,', validation)
        profile = self.read('out', 'density_profile.csv').decode()
        self.assertEqual(len(profile.splitlines()), 482)
        diagnostics = self.read('out', 'density_diagnostics.csv').decode()
        # t_final 0.5 at dt 0.01
        self.assertEqual(len(diagnostics.splitlines()), 51)
        self.assertTrue(diagnostics.startswith('step,time,mean_a_x,'))

    def test_density_bad_grid_exits_2(self):
        data = dict(SMALL_CONFIG, density={'grid_points': 4})
        with self.assertRaises(CommandError) as cm:
            self.lab('density', 'out', config_path=self.write_config(data))
        self.assertEqual(cm.exception.returncode, 2)

    def test_disturbance(self):
        self.lab('disturbance', 'out', config_path=self.config)
        rows = self.read('out', 'disturbance.csv').decode().splitlines()
        self.assertEqual(len(rows), 4)
        self.assertTrue(rows[1].startswith('0,0,1,0,0,'))
        self.assertTrue(rows[3].endswith(',false'))

    def test_chsh_scan(self):
        self.lab('chsh-scan', 'out', config_path=self.config)
        grid = self.read('out', 'chsh_grid.csv').decode().splitlines()
        self.assertEqual(len(grid), 17)


class RegistryTest(LabCommandTestMixin, TestCase):
    def test_record_and_export(self):
        config = self.write_config(SMALL_CONFIG)
        output = self.lab('verify-theorem', 'out', config_path=config,
                          record=True)
        run = ExperimentRun.objects.get()
        self.assertIn('Recorded run {}'.format(run.oid), output)
        self.assertEqual(run.oid, ExperimentRun.format_oid(run.id, 'er'))
        self.assertEqual(run.subcommand, 'verify-theorem')
        self.assertEqual(run.master_seed, 11)
        self.assertEqual(run.exit_code, 0)
        self.assertEqual(run.config_echo, self.read('out', 'config.yaml')
                         .decode())

        self.lab('export-runs', 'export')
        lines = self.read('export', 'runs.csv').decode().splitlines()
        self.assertEqual(lines[0], 'oid,subcommand,master_seed,exit_code,'
                                   'output_dir,created,config_echo,summary')
        self.assertTrue(lines[1].startswith(run.oid + ',verify-theorem,11,0,'))

    def test_not_recorded_by_default(self):
        self.lab('verify-theorem', 'out',
                 config_path=self.write_config(SMALL_CONFIG))
        self.assertFalse(ExperimentRun.objects.exists())
