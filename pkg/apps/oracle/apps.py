from django.apps import AppConfig


class OracleConfig(AppConfig):
    name = "apps.oracle"
    verbose_name = "Oráculo de Verificação"
