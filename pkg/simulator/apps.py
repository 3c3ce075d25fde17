from django.apps import AppConfig


class SimulatorConfig(AppConfig):
    name = 'simulator'
    verbose_name = 'Shot simulator'
