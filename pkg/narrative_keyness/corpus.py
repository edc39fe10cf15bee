"""
Shared data types: posts, time windows and windowed corpora.

All types are frozen after construction, so a WindowedCorpus can be shared
between the worker threads of a run without copying.
"""
import datetime
import logging
import re
from dataclasses import dataclass, field, replace
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from narrative_keyness import exc
from narrative_keyness.constants import (
    PLATFORMS, PLATFORM_GAB, PLATFORM_TELEGRAM,
    GRANULARITY_DAY, GRANULARITY_HOUR, WINDOW_LABEL_FORMATS,
)

log = logging.getLogger(__name__)

ISO_INSTANT_PATTERN = (
    r'^\d{4}-\d{2}-\d{2}'
    r'(?:[T ]\d{2}:\d{2}(?::\d{2}(?:\.\d+)?)?)?'
    r'(?:Z|[+-]\d{2}:?\d{2})?$'
)
iso_instant_matcher = re.compile(ISO_INSTANT_PATTERN)
# fromisoformat() only learned '+0300' style offsets in Python 3.11
compact_offset_matcher = re.compile(r'(?<=\d)([+-]\d{2})(\d{2})$')
GRANULARITY_STEPS = {
    GRANULARITY_DAY: datetime.timedelta(days=1),
    GRANULARITY_HOUR: datetime.timedelta(hours=1),
}


@dataclass(frozen=True)
class Post:
    """One normalized social media message."""
    id: str
    platform: str
    channel: str
    timestamp: datetime.datetime
    text: str
    hashtags: FrozenSet[str] = frozenset()
    urls: Tuple[str, ...] = ()
    language: Optional[str] = None
    # (token, tag) pairs supplied by an external tagger, if any
    pretagged: Optional[Tuple[Tuple[str, str], ...]] = None


@dataclass(frozen=True)
class TimeWindow:
    index: int
    start: datetime.datetime
    end: datetime.datetime
    label: str

    def __contains__(self, instant):
        return self.start <= instant < self.end


@dataclass(frozen=True)
class WindowedCorpus:
    windows: Tuple[TimeWindow, ...]
    posts_by_window: Dict[int, Tuple[Post, ...]] = field(default_factory=dict)
    granularity: str = GRANULARITY_DAY

    @property
    def labels(self):
        return [w.label for w in self.windows]

    @property
    def post_count(self):
        return sum(len(posts) for posts in self.posts_by_window.values())

    def posts(self, window):
        """Posts of a window, given the TimeWindow or its index"""
        index = window.index if isinstance(window, TimeWindow) else window
        return self.posts_by_window.get(index, ())

    def counts(self):
        return [len(self.posts(w)) for w in self.windows]


def parse_timestamp(value, field='timestamp'):
    """
    Parse a UTC instant, truncated to second resolution. Accepted forms:
      * datetime objects (naive values are taken as UTC)
      * ISO-8601 strings, with 'Z', an offset, or no zone (taken as UTC):
        '2023-06-24T15:00:00Z', '2023-06-24 15:00:00+03:00', '2023-06-24'
      * Epoch seconds as int or float
    Raises MalformedTimestamp for anything else, such as '24/06/2023'.
    """
    if isinstance(value, datetime.datetime):
        dt = value
    elif isinstance(value, (int, float)) and not isinstance(value, bool):
        try:
            dt = datetime.datetime.fromtimestamp(value, datetime.timezone.utc)
        except (OverflowError, OSError, ValueError):
            raise exc.MalformedTimestamp(field, value)
    elif isinstance(value, str) and iso_instant_matcher.match(value.strip()):
        sval = value.strip()
        if sval.endswith('Z'):
            sval = sval[:-1] + '+00:00'
        sval = compact_offset_matcher.sub(r'\1:\2', sval)
        try:
            dt = datetime.datetime.fromisoformat(sval)
        except ValueError:
            raise exc.MalformedTimestamp(field, value)
    else:
        raise exc.MalformedTimestamp(field, value)
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=datetime.timezone.utc)
    return dt.astimezone(datetime.timezone.utc).replace(microsecond=0)


def normalize_hashtag(tag, field='hashtags'):
    """Lowercase a hashtag and drop a leading '#'. Raises InvalidHashtag if a
    '#' or whitespace remains."""
    ntag = str(tag).strip().lower()
    ntag = ntag[1:] if ntag.startswith('#') else ntag
    if not ntag or '#' in ntag or any(c.isspace() for c in ntag):
        raise exc.InvalidHashtag(field, tag)
    return ntag


def validate_post(raw):
    """
    Return a copy of ``raw`` that satisfies every Post constraint: nonempty
    id, a known platform, a UTC timestamp and lowercase hashtags without '#'.
    Raises a PostValidationError subclass naming the offending field.
    """
    if raw.id is None or not str(raw.id).strip():
        raise exc.EmptyId('id')
    if raw.platform not in PLATFORMS:
        raise exc.PostValidationError(
            field='platform', code='UnknownPlatform',
            message='Platform must be one of {}, got {!r}'.format(
                PLATFORMS, raw.platform))
    return replace(
        raw,
        id=str(raw.id),
        timestamp=parse_timestamp(raw.timestamp),
        text=raw.text or '',
        hashtags=frozenset(normalize_hashtag(h) for h in raw.hashtags),
        urls=tuple(raw.urls),
    )


def floor_instant(instant, granularity):
    if granularity == GRANULARITY_DAY:
        return instant.replace(hour=0, minute=0, second=0, microsecond=0)
    elif granularity == GRANULARITY_HOUR:
        return instant.replace(minute=0, second=0, microsecond=0)
    raise ValueError('Invalid window granularity {!r}, must be one of {}'
                     ''.format(granularity, tuple(GRANULARITY_STEPS)))


def build_windows(start, end, granularity=GRANULARITY_DAY):
    """Contiguous windows at UTC boundaries covering [start, end]."""
    step = GRANULARITY_STEPS.get(granularity)
    floor = floor_instant(start, granularity)
    label_fmt = WINDOW_LABEL_FORMATS[granularity]
    windows = []
    while floor <= end:
        windows.append(TimeWindow(index=len(windows), start=floor,
                                  end=floor + step,
                                  label=floor.strftime(label_fmt)))
        floor += step
    return tuple(windows)


def assign_windows(posts: Sequence[Post],
                   granularity: str = GRANULARITY_DAY) -> WindowedCorpus:
    """
    Partition posts into contiguous UTC windows spanning the earliest to the
    latest post. Windows are end-exclusive, so a post stamped at exactly
    00:00:00 belongs to the day it starts. Empty interior windows are kept so
    window indices stay calendar contiguous. Input order is preserved within
    each window.
    """
    if not posts:
        raise exc.EmptyInput('Cannot assign windows to an empty post list')
    timestamps = [p.timestamp for p in posts]
    windows = build_windows(min(timestamps), max(timestamps), granularity)
    origin = windows[0].start
    step = GRANULARITY_STEPS[granularity]
    buckets: Dict[int, List[Post]] = {w.index: [] for w in windows}
    for post in posts:
        buckets[(post.timestamp - origin) // step].append(post)
    log.debug('Assigned {} posts to {} {} windows'.format(
        len(posts), len(windows), granularity))
    return WindowedCorpus(
        windows=windows,
        posts_by_window={idx: tuple(bucket) for idx, bucket in
                         buckets.items()},
        granularity=granularity,
    )


def corpus_key(post, channel_countries=None):
    """
    The analysis corpus a post belongs to. Platforms and sides are analysed
    separately and never pooled:
      gab posts -> 'gab'
      telegram posts from a mapped channel -> 'telegram-<country>'
      other telegram posts -> 'telegram'
    """
    if post.platform == PLATFORM_TELEGRAM:
        country = (channel_countries or {}).get(post.channel)
        if country:
            return '{}-{}'.format(PLATFORM_TELEGRAM, country.lower())
        return PLATFORM_TELEGRAM
    return PLATFORM_GAB if post.platform == PLATFORM_GAB else post.platform
