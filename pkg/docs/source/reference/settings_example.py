"""
Django settings for the mystudy project.

For more information on this file, see
https://docs.djangoproject.com/en/4.2/topics/settings/
"""
from pathlib import Path

BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = 'change-me'
DEBUG = False

INSTALLED_APPS = [
    'narrative_keyness',
]

# Reports are written to files, no database is needed
DATABASES = {}

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [BASE_DIR / 'templates'],
        'APP_DIRS': True,
        'OPTIONS': {
            'autoescape': False,
        },
    },
]

KEYNESS_WINDOW_GRANULARITY = 'day'
KEYNESS_REFERENCE_MODE = 'cumulative'
KEYNESS_MIN_TARGET_FREQ = 3
KEYNESS_TOP_N = 20

KEYNESS_PLATFORM_LANGUAGES = {
    'gab': ['en'],
    'telegram': ['ru', 'uk'],
}
KEYNESS_TAGGERS = {
    'en': 'narrative_keyness.postag.load_english_tagger',
    'ru': 'narrative_keyness.postag.load_russian_tagger',
    'uk': 'mystudy.taggers.load_ukrainian_tagger',
}
KEYNESS_PROFILE_DIR = BASE_DIR / 'profiles'

KEYNESS_TIMELINE_GROUP_BY = 'country'
KEYNESS_CHANNEL_COUNTRIES = {
    'u_now': 'ukraine',
    'rian_ru': 'russia',
}
KEYNESS_WORKERS = 4

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'handlers': {
        'stream': {
            'level': 'INFO',
            'class': 'logging.StreamHandler',
        },
    },
    'loggers': {
        'narrative_keyness': {
            'handlers': ['stream'],
            'level': 'DEBUG',
        },
    },
}

USE_TZ = True
TIME_ZONE = 'UTC'
