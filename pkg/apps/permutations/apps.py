from django.apps import AppConfig


class PermutationsConfig(AppConfig):
    name = "apps.permutations"
    verbose_name = "Classes de Permutação"
