from django.apps import AppConfig


class GaussiansConfig(AppConfig):
    name = "apps.gaussians"
    verbose_name = "Integrais Gaussianas"
