"""
Django settings for the narrative_keyness project.

These double as the defaults for every KEYNESS_* setting. A project that adds
'narrative_keyness' to INSTALLED_APPS can override any of them in its own
settings.py; narrative_keyness.apps.get_setting() resolves the value.

For more information on this file, see
https://docs.djangoproject.com/en/4.1/topics/settings/
"""

import os
from narrative_keyness.constants import (
    GRANULARITY_DAY, REFERENCE_CUMULATIVE, GROUP_BY_CHANNEL, GROUP_BY_COUNTRY,
    GROUP_BY_HASHTAG,
)


# Build paths inside the project like this: os.path.join(BASE_DIR, ...)
BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'data')

###############################################################################
# Narrative Keyness Settings
###############################################################################

# Time windows are UTC calendar days or hours
KEYNESS_WINDOW_GRANULARITY = GRANULARITY_DAY
# 'cumulative' compares each window against all windows before it,
# 'previous_window' against the single window before it.
KEYNESS_REFERENCE_MODE = REFERENCE_CUMULATIVE
# Substituted for a zero raw frequency so novel terms get a finite score
KEYNESS_ZERO_ADJUST = 0.5
# Terms seen fewer times than this in the target window are not scored
KEYNESS_MIN_TARGET_FREQ = 3
KEYNESS_TOP_N = 10
# Count each token at most once per post instead of every occurrence
KEYNESS_DOC_FREQ = False

KEYNESS_DOMAIN_TOP_N = 50

# Global language whitelist. Empty means every detected language is kept.
KEYNESS_LANGUAGES = []
# Per-platform whitelists take precedence over KEYNESS_LANGUAGES
KEYNESS_PLATFORM_LANGUAGES = {
    'gab': ['en'],
    'telegram': ['ru'],
}

# Texts shorter than this are left undetermined ('und')
KEYNESS_LANGDETECT_MIN_CHARS = 10
# Normalized out-of-place distance (0..1) above which a guess is rejected
KEYNESS_LANGDETECT_MAX_DISTANCE = 0.95
KEYNESS_PROFILE_TOP_K = 300
KEYNESS_PROFILE_DIR = os.path.join(DATA_DIR, 'profiles')

# Override bundled lists per language, eg {'en': '/data/my-stopwords.txt'}
KEYNESS_STOPWORD_FILES = {}
KEYNESS_LEXICON_FILES = {}

# Dotted paths to tagger factories. Each is called as
# factory(language, lexicon=path_or_None) and must return an nltk TaggerI.
KEYNESS_TAGGERS = {
    'en': 'narrative_keyness.postag.load_english_tagger',
    'ru': 'narrative_keyness.postag.load_russian_tagger',
}

# Dotted paths to functions returning the timeline groups for one post
KEYNESS_TIMELINE_GROUPERS = {
    GROUP_BY_HASHTAG: 'narrative_keyness.groupers.by_hashtag',
    GROUP_BY_CHANNEL: 'narrative_keyness.groupers.by_channel',
    GROUP_BY_COUNTRY: 'narrative_keyness.groupers.by_country',
}
KEYNESS_TIMELINE_GROUP_BY = GROUP_BY_CHANNEL

# Map Telegram channel handles onto the side they report for. Posts from
# mapped channels are analysed as the corpus 'telegram-<country>'.
# Example: {'u_now': 'ukraine', 'rian_ru': 'russia'}
KEYNESS_CHANNEL_COUNTRIES = {}

# Abort ingestion on the first rejected record
KEYNESS_STRICT = False
# Threads used for per-file parsing and per-post preprocessing
KEYNESS_WORKERS = 1

###############################################################################
# General Settings
###############################################################################

# Create 'local_settings.py' and put your below values there to avoid
# accidentally committing them.
SECRET_KEY = '<Add Your Secret Key Here>'
DEBUG = False

INSTALLED_APPS = [
    'narrative_keyness',
]

# No models are used; reports are written to the filesystem
DATABASES = {}

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {
            'autoescape': False,
        },
    },
]

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'basic': {
            'format': '%(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'stream': {
            'level': 'INFO',
            'class': 'logging.StreamHandler',
            'formatter': 'basic',
        },
        'null': {
            'level': 'DEBUG',
            'class': 'logging.NullHandler',
        },
    },

    'loggers': {
        'django': {
            'handlers': ['stream'],
            'level': 'WARNING',
        },
        'narrative_keyness': {
            'handlers': ['stream'],
            'level': 'DEBUG',
            'propagate': True,
        }
    },
}

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

# Override any settings here if a local_settings.py file exists
try:
    from narrative_keyness.local_settings import *  # noqa
except ImportError:
    pass

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'
