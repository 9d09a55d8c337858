from django.apps import AppConfig


class EprConfig(AppConfig):
    name = 'epr'
    verbose_name = 'EPR experiments'
