from django.apps import AppConfig


class ProbspaceConfig(AppConfig):
    name = 'probspace'
    verbose_name = 'Finite probability spaces'
