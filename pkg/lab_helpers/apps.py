from django.apps import AppConfig


class LabHelpersConfig(AppConfig):
    name = 'lab_helpers'
    verbose_name = 'Lab helpers'
