from django.apps import AppConfig


class PseudolinearConfig(AppConfig):
    name = 'pseudolinear'
    verbose_name = 'Pseudo-linear representations'
