from django.apps import AppConfig


class ClosedFormsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'closed_forms'
