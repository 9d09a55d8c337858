import logging
import os
from concurrent.futures import ThreadPoolExecutor

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from lab_helpers.exceptions import (
    ConfigError, InsufficientCountsError, LabError, MissingSettingError,
    PreconditionError)
from lab_helpers.resources import write_csv
from runs.config import dump_config, load_config
from runs.experiments import RUNNERS
from runs.models import ExperimentRun
from runs.resources import ExperimentRunResource

logger = logging.getLogger(__name__)

EXPORT_RUNS = 'export-runs'
EXIT_USAGE = 2
USAGE_ERRORS = (ConfigError, InsufficientCountsError, MissingSettingError,
                PreconditionError)


class Command(BaseCommand):
    help = ('Runs one lab experiment and writes its CSV bundle (result '
            'tables, summary.csv and the resolved config.yaml).')

    def add_arguments(self, parser):
        parser.add_argument('subcommand',
                            choices=sorted(RUNNERS) + [EXPORT_RUNS])
        parser.add_argument('--config', dest='config_path', default=None,
                            help='YAML config file')
        parser.add_argument('--seed', type=int, default=None,
                            help='overrides master_seed of the config')
        parser.add_argument('--out', default=None,
                            help='output directory of the bundle')
        parser.add_argument('--threads', type=int, default=1,
                            help='worker threads; results do not depend '
                                 'on it')
        parser.add_argument('--record', action='store_true',
                            default=getattr(settings, 'LAB_RECORD_RUNS',
                                            False),
                            help='store the run in the registry')

    def handle(self, *args, **options):
        subcommand = options['subcommand']
        out = options['out'] or os.path.join(settings.LAB_OUTPUT_ROOT,
                                             subcommand)
        if options['threads'] < 1:
            raise CommandError('--threads must be >= 1',
                               returncode=EXIT_USAGE)
        os.makedirs(out, exist_ok=True)
        if subcommand == EXPORT_RUNS:
            return self.export_runs(out)

        try:
            config = load_config(options['config_path'], options['seed'])
        except ConfigError as exc:
            raise CommandError(str(exc), returncode=EXIT_USAGE)
        bundle = self.run(subcommand, config, options['threads'])

        echo = dump_config(config)
        with open(os.path.join(out, 'config.yaml'), 'w', encoding='utf-8',
                  newline='') as fh:
            fh.write(echo)
        for filename, dataset in bundle.tables:
            write_csv(dataset, out, filename)
        summary = bundle.summary_dataset()
        write_csv(summary, out, 'summary.csv')
        exit_code = ExperimentRun.EXIT_OK if bundle.ok else \
            ExperimentRun.EXIT_INVARIANT_FAILED

        if options['record']:
            run = ExperimentRun.objects.create(
                subcommand=subcommand, master_seed=config['master_seed'],
                config_echo=echo, summary=summary.export('json'),
                exit_code=exit_code, output_dir=os.path.abspath(out))
            self.stdout.write('Recorded run {}'.format(run.oid))

        for row in bundle.summary:
            self.stdout.write('{:<45} {}'.format(
                row.check, '' if row.passed is None else
                ('ok' if row.passed else 'FAILED')))
        if not bundle.ok:
            raise CommandError('invariant checks failed: {}'.format(
                ', '.join(bundle.failures)),
                returncode=ExperimentRun.EXIT_INVARIANT_FAILED)
        self.stdout.write(self.style.SUCCESS(
            '{} bundle written to {}'.format(subcommand, out)))

    def run(self, subcommand, config, threads):
        runner = RUNNERS[subcommand]
        logger.info('running %s with master_seed %s on %d thread(s)',
                    subcommand, config['master_seed'], threads)
        try:
            if threads == 1:
                return runner(config)
            with ThreadPoolExecutor(max_workers=threads) as executor:
                return runner(config, executor)
        except USAGE_ERRORS as exc:
            raise CommandError(str(exc), returncode=EXIT_USAGE)
        except LabError as exc:
            raise CommandError(str(exc),
                               returncode=ExperimentRun.EXIT_INVARIANT_FAILED)

    def export_runs(self, out):
        dataset = ExperimentRunResource().export(
            ExperimentRun.objects.order_by('pk'))
        path = write_csv(dataset, out, 'runs.csv')
        self.stdout.write(self.style.SUCCESS(
            'Exported {} runs to {}'.format(len(dataset), path)))
