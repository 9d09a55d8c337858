from django.conf import settings
from django.db import models


class OIDModel(models.Model):
    """
    Rows get a readable object id, e.g. `lab-er-000-000012` for the 12th
    ExperimentRun: setting prefix, the model's capitals, the padded pk.
    """
    oid = models.CharField(max_length=30, blank=True, null=True,
                           verbose_name='Object ID', default='',
                           db_index=True)
    last_changed_on = models.DateTimeField(auto_now=True, null=True)

    @classmethod
    def get_model_prefix(cls):
        return ''.join(c for c in cls.__name__ if c.isupper()).lower()

    @staticmethod
    def format_oid(instance_id, model_prefix):
        digits = str(instance_id).zfill(9)
        return '{}-{}-{}-{}'.format(settings.LAB_OID_PREFIX, model_prefix,
                                    digits[:3], digits[3:])

    def save(self, *args, **kwargs):
        super().save(*args, **kwargs)
        if not self.oid:
            # the pk only exists after the first insert
            self.oid = self.format_oid(self.pk, self.get_model_prefix())
            super().save(update_fields=['oid'])

    class Meta:
        abstract = True
