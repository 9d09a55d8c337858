from django.db import models

from lab_helpers.models import OIDModel


class ExperimentRun(OIDModel):
    SUBCOMMAND_VERIFY_THEOREM = 'verify-theorem'
    SUBCOMMAND_EPR = 'epr'
    SUBCOMMAND_SWAP = 'swap'
    SUBCOMMAND_DENSITY = 'density'
    SUBCOMMAND_DISTURBANCE = 'disturbance'
    SUBCOMMAND_CHSH_SCAN = 'chsh-scan'

    SUBCOMMAND_CHOICES = (
        (SUBCOMMAND_VERIFY_THEOREM, 'Locality theorem checks'),
        (SUBCOMMAND_EPR, 'Simulated EPR experiment'),
        (SUBCOMMAND_SWAP, 'Entanglement swapping scenario'),
        (SUBCOMMAND_DENSITY, 'Free packet density validation'),
        (SUBCOMMAND_DISTURBANCE, 'Disturbance sweep'),
        (SUBCOMMAND_CHSH_SCAN, 'CHSH settings grid scan'),
    )

    EXIT_OK = 0
    EXIT_INVARIANT_FAILED = 1

    EXIT_CODE_CHOICES = (
        (EXIT_OK, 'Success'),
        (EXIT_INVARIANT_FAILED, 'Invariant failed'),
    )

    subcommand = models.CharField(max_length=20, choices=SUBCOMMAND_CHOICES)
    master_seed = models.BigIntegerField()
    config_echo = models.TextField()
    summary = models.TextField(blank=True, default='')
    exit_code = models.SmallIntegerField(choices=EXIT_CODE_CHOICES,
                                         default=EXIT_OK)
    output_dir = models.CharField(max_length=500)
    created = models.DateTimeField(auto_now_add=True)

    def __str__(self):
        return '{} {} (seed {})'.format(self.oid, self.subcommand,
                                        self.master_seed)
