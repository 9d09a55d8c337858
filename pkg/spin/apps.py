from django.apps import AppConfig


class SpinConfig(AppConfig):
    name = 'spin'
