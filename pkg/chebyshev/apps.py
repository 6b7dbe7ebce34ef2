from django.apps import AppConfig


class ChebyshevConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'chebyshev'
