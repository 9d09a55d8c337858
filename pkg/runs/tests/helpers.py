import os
import shutil
import tempfile

import yaml

SMALL_CONFIG = {
    'master_seed': 11,
    'verify_theorem': {'grid_step': 0.5, 'lemma_models': 20},
    'epr': {'pairs': 2000, 'ensemble_size': 500},
    'swap': {'pairs': 1000, 'ensemble_size': 500,
             'settings': [[0.0, 0.0], [0.0, 90.0], [90.0, 0.0],
                          [90.0, 90.0]],
             'chsh_settings': [0.0, 90.0, 0.0, 90.0]},
    'density': {'trajectories': 500, 't_final': 0.5},
    'disturbance': {'pairs': 1000, 'ensemble_size': 500,
                    'magnitudes': [0.0, 0.01, 1.0]},
    'chsh_scan': {'pairs': 500, 'ensemble_size': 500,
                  'angle_step_deg': 90.0},
}


class TempDirMixin:
    def setUp(self):
        super().setUp()
        self.tmp = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tmp, ignore_errors=True)
        super().tearDown()

    def path(self, *parts):
        return os.path.join(self.tmp, *parts)

    def write_config(self, data, name='config.yaml'):
        path = self.path(name)
        with open(path, 'w', encoding='utf-8') as fh:
            if isinstance(data, str):
                fh.write(data)
            else:
                yaml.safe_dump(data, fh)
        return path

    def read(self, *parts):
        with open(self.path(*parts), 'rb') as fh:
            return fh.read()
