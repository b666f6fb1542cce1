from django.apps import AppConfig


class FunclibConfig(AppConfig):
    name = 'funclib'
    verbose_name = 'Multiplicative function catalog'
