from django.apps import AppConfig


class LseriesDiscoveryConfig(AppConfig):
    name = 'lseries_discovery'
    verbose_name = 'L-series relation discovery'
