import pytest

from narrative_keyness import postag, textprep
from narrative_keyness.apps import get_setting
from narrative_keyness.textprep import load_profiles
from tests import mocks


@pytest.fixture
def clear_caches():
    """Taggers, stopwords and profiles are cached. Request this fixture when
    a test swaps the files behind them."""
    yield
    postag._load_tagger.cache_clear()
    textprep._cached_stopwords.cache_clear()
    textprep.load_profiles.cache_clear()


@pytest.fixture
def profiles():
    return load_profiles(get_setting('KEYNESS_PROFILE_DIR'))


@pytest.fixture
def run_options(tmp_path):
    """Keyword options for load_run_config() over both mini dumps"""
    return {
        'inputs': ['{}:gab'.format(mocks.GAB_MINI),
                   '{}:telegram'.format(mocks.TELEGRAM_MINI)],
        'annotations': str(mocks.ANNOTATIONS),
        'output_dir': str(tmp_path / 'out'),
    }
