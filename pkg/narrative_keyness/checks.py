import logging
import os
from django.core.checks import Error, Warning, register
from django.utils.module_loading import import_string

from narrative_keyness.apps import get_setting
from narrative_keyness.constants import (
    GRANULARITIES, REFERENCE_MODES, PLATFORMS,
)

log = logging.getLogger(__name__)


@register()
def check_enum_settings(app_configs, **kwargs):
    errors = []
    choices = {
        'KEYNESS_WINDOW_GRANULARITY': GRANULARITIES,
        'KEYNESS_REFERENCE_MODE': REFERENCE_MODES,
        'KEYNESS_TIMELINE_GROUP_BY': tuple(
            get_setting('KEYNESS_TIMELINE_GROUPERS') or {}),
    }
    for name, valid in choices.items():
        value = get_setting(name)
        if value not in valid:
            errors.append(Error(
                'settings.{} is "{}"'.format(name, value),
                obj='settings.{}'.format(name),
                hint='Must be one of {}'.format(valid),
                id='narrative_keyness.settings.E001'
            ))
    return errors


@register()
def check_numeric_settings(app_configs, **kwargs):
    errors = []
    minimums = {
        'KEYNESS_MIN_TARGET_FREQ': 1,
        'KEYNESS_TOP_N': 1,
        'KEYNESS_DOMAIN_TOP_N': 1,
        'KEYNESS_PROFILE_TOP_K': 1,
        'KEYNESS_WORKERS': 1,
        'KEYNESS_LANGDETECT_MIN_CHARS': 0,
    }
    for name, minimum in minimums.items():
        value = get_setting(name)
        if isinstance(value, bool) or not isinstance(value, int) or \
                value < minimum:
            errors.append(Error(
                'settings.{} must be an integer >= {}, got {!r}'.format(
                    name, minimum, value),
                obj='settings.{}'.format(name),
                id='narrative_keyness.settings.E002'
            ))
    zero_adjust = get_setting('KEYNESS_ZERO_ADJUST')
    if not isinstance(zero_adjust, (int, float)) or zero_adjust <= 0:
        errors.append(Error(
            'settings.KEYNESS_ZERO_ADJUST must be > 0, got {!r}'.format(
                zero_adjust),
            obj='settings.KEYNESS_ZERO_ADJUST',
            hint='0.5 is the usual substitute for a zero frequency',
            id='narrative_keyness.settings.E002'
        ))
    max_distance = get_setting('KEYNESS_LANGDETECT_MAX_DISTANCE')
    if not isinstance(max_distance, (int, float)) or \
            not 0 < max_distance <= 1:
        errors.append(Error(
            'settings.KEYNESS_LANGDETECT_MAX_DISTANCE must be in (0, 1], got '
            '{!r}'.format(max_distance),
            obj='settings.KEYNESS_LANGDETECT_MAX_DISTANCE',
            id='narrative_keyness.settings.E002'
        ))
    return errors


@register()
def check_dotted_paths(app_configs, **kwargs):
    errors = []
    for name in ('KEYNESS_TAGGERS', 'KEYNESS_TIMELINE_GROUPERS'):
        for key, path in (get_setting(name) or {}).items():
            try:
                import_string(path)
            except ImportError as ie:
                errors.append(Error(
                    'settings.{}["{}"] could not be imported'.format(name,
                                                                     key),
                    obj='settings.{}'.format(name),
                    hint=str(ie),
                    id='narrative_keyness.settings.E003'
                ))
    return errors


@register()
def check_data_files(app_configs, **kwargs):
    errors = []
    profile_dir = get_setting('KEYNESS_PROFILE_DIR')
    if not profile_dir or not os.path.isdir(profile_dir):
        errors.append(Error(
            'settings.KEYNESS_PROFILE_DIR "{}" is not a directory'.format(
                profile_dir),
            obj='settings.KEYNESS_PROFILE_DIR',
            id='narrative_keyness.settings.E004'
        ))
    elif not any(f.endswith('.profile') for f in os.listdir(profile_dir)):
        errors.append(Error(
            'settings.KEYNESS_PROFILE_DIR "{}" has no *.profile files'.format(
                profile_dir),
            obj='settings.KEYNESS_PROFILE_DIR',
            hint='Create one with "manage.py build_profile"',
            id='narrative_keyness.settings.E004'
        ))
    for name in ('KEYNESS_STOPWORD_FILES', 'KEYNESS_LEXICON_FILES'):
        for language, path in (get_setting(name) or {}).items():
            if not os.path.isfile(path):
                errors.append(Error(
                    'settings.{}["{}"] does not exist: {}'.format(
                        name, language, path),
                    obj='settings.{}'.format(name),
                    id='narrative_keyness.settings.E005'
                ))
    return errors


@register()
def check_language_settings(app_configs, **kwargs):
    warnings = []
    platform_languages = get_setting('KEYNESS_PLATFORM_LANGUAGES') or {}
    for platform in platform_languages:
        if platform not in PLATFORMS:
            warnings.append(Warning(
                'settings.KEYNESS_PLATFORM_LANGUAGES has unknown platform '
                '"{}"'.format(platform),
                obj='settings.KEYNESS_PLATFORM_LANGUAGES',
                hint='Known platforms are {}'.format(PLATFORMS),
                id='narrative_keyness.settings.W001'
            ))
    taggers = get_setting('KEYNESS_TAGGERS') or {}
    languages = set(get_setting('KEYNESS_LANGUAGES') or [])
    for langs in platform_languages.values():
        languages.update(langs)
    for language in sorted(languages - set(taggers)):
        warnings.append(Warning(
            'Language "{}" is whitelisted but has no tagger'.format(language),
            obj='settings.KEYNESS_TAGGERS',
            hint='Posts in "{}" must come pre-tagged, or add a tagger to '
                 'settings.KEYNESS_TAGGERS'.format(language),
            id='narrative_keyness.settings.W002'
        ))
    return warnings
