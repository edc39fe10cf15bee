from django.apps import AppConfig
from django.conf import settings
from narrative_keyness import settings as nk_defaults


class NarrativeKeynessConfig(AppConfig):
    name = 'narrative_keyness'
    verbose_name = 'Narrative Keyness'

    def ready(self):
        # Add System checks
        from narrative_keyness import checks  # noqa


def get_setting(app_setting):
    return getattr(settings, app_setting, getattr(nk_defaults, app_setting))
