from django.apps import AppConfig


class FfpolyConfig(AppConfig):
    name = 'ffpoly'
    verbose_name = 'Polynomials over F_p'
