"""
Timeline groupers. Each returns the groups a post is counted under in the
volume timeline. Register alternatives in settings.KEYNESS_TIMELINE_GROUPERS;
every grouper is called as grouper(post, hashtags=..., channel_countries=...).
"""
import logging

from django.utils.module_loading import import_string

from narrative_keyness import exc
from narrative_keyness.apps import get_setting
from narrative_keyness.constants import UNKNOWN_GROUP

log = logging.getLogger(__name__)


def by_hashtag(post, hashtags=None, **kwargs):
    """
    Every hashtag of the post, restricted to the filter hashtags when there
    are any. A post tagged both #wagner and #russia counts once under each.
    """
    wanted = {h.lower().lstrip('#') for h in (hashtags or ())}
    tags = post.hashtags & wanted if wanted else post.hashtags
    return sorted(tags) or [UNKNOWN_GROUP]


def by_channel(post, **kwargs):
    return [post.channel or UNKNOWN_GROUP]


def by_country(post, channel_countries=None, **kwargs):
    country = (channel_countries or {}).get(post.channel)
    return [country.lower() if country else UNKNOWN_GROUP]


def get_grouper(name):
    groupers = get_setting('KEYNESS_TIMELINE_GROUPERS') or {}
    if name not in groupers:
        raise exc.InvalidRunConfig('group_by', 'must be one of {}, got {!r}'
                                   ''.format(tuple(sorted(groupers)), name))
    return import_string(groupers[name])
