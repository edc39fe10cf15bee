import datetime

import pytest
from hypothesis import given, strategies as st

from narrative_keyness import exc
from narrative_keyness.corpus import (
    assign_windows, corpus_key, parse_timestamp, validate_post,
)
from tests.mocks import mock_post, utc


def test_validate_post_accepts_well_formed_timestamp():
    post = validate_post(mock_post(timestamp='2023-06-24T15:00:00Z'))
    assert post.timestamp == utc(2023, 6, 24, 15)


def test_validate_post_rejects_day_first_dates():
    with pytest.raises(exc.MalformedTimestamp) as mt:
        validate_post(mock_post(timestamp='24/06/2023'))
    assert mt.value.field == 'timestamp'
    assert mt.value.exit_code == 3


def test_validate_post_normalizes_hashtags():
    post = validate_post(mock_post(hashtags={'#Wagner'}))
    assert post.hashtags == frozenset({'wagner'})


@pytest.mark.parametrize('tag', ['two words', 'a#b', '#', ''])
def test_validate_post_rejects_invalid_hashtags(tag):
    with pytest.raises(exc.InvalidHashtag):
        validate_post(mock_post(hashtags={tag}))


@pytest.mark.parametrize('post_id', ['', '   ', None])
def test_validate_post_rejects_empty_id(post_id):
    with pytest.raises(exc.EmptyId) as ei:
        validate_post(mock_post(id=post_id))
    assert ei.value.field == 'id'


def test_validate_post_rejects_unknown_platform():
    with pytest.raises(exc.PostValidationError) as pve:
        validate_post(mock_post(platform='twitter'))
    assert pve.value.field == 'platform'


@pytest.mark.parametrize('value, expected', [
    ('2023-06-24T15:00:00Z', utc(2023, 6, 24, 15)),
    ('2023-06-24 15:00:00+00:00', utc(2023, 6, 24, 15)),
    ('2023-06-24T18:00:00+03:00', utc(2023, 6, 24, 15)),
    ('2023-06-24T18:00:00+0300', utc(2023, 6, 24, 15)),
    ('2023-06-24T15:00:00', utc(2023, 6, 24, 15)),
    ('2023-06-24T15:00:00.750Z', utc(2023, 6, 24, 15)),
    ('2023-06-24', utc(2023, 6, 24)),
    (1687618800, utc(2023, 6, 24, 15)),
    (1687618800.9, utc(2023, 6, 24, 15)),
    (datetime.datetime(2023, 6, 24, 15), utc(2023, 6, 24, 15)),
])
def test_parse_timestamp(value, expected):
    assert parse_timestamp(value) == expected


@pytest.mark.parametrize('value', [
    'garbage', '24/06/2023', '2023-13-01T00:00:00Z', '', None, True, [],
])
def test_parse_timestamp_rejects(value):
    with pytest.raises(exc.MalformedTimestamp):
        parse_timestamp(value, field='created_at')


def test_assign_windows_five_days():
    posts = [mock_post(id=str(day), timestamp=utc(2023, 6, day, 12))
             for day in range(22, 27)]
    corpus = assign_windows(posts)
    assert corpus.labels == ['2023-06-22', '2023-06-23', '2023-06-24',
                             '2023-06-25', '2023-06-26']
    assert corpus.counts() == [1, 1, 1, 1, 1]


def test_assign_windows_single_post():
    corpus = assign_windows([mock_post()])
    assert len(corpus.windows) == 1
    assert corpus.posts(0) == (mock_post(),)


def test_assign_windows_keeps_empty_interior_windows():
    posts = ([mock_post(id='a{}'.format(i), timestamp=utc(2023, 6, 22, i))
              for i in range(4)] +
             [mock_post(id='b{}'.format(i), timestamp=utc(2023, 6, 24, i))
              for i in range(6)])
    corpus = assign_windows(posts)
    assert corpus.counts() == [4, 0, 6]
    assert corpus.post_count == 10


def test_assign_windows_end_exclusive():
    late = mock_post(id='late', timestamp=utc(2023, 6, 22, 23, 59, 59))
    midnight = mock_post(id='midnight', timestamp=utc(2023, 6, 23))
    corpus = assign_windows([late, midnight])
    assert corpus.posts(0) == (late,)
    assert corpus.posts(1) == (midnight,)
    assert midnight.timestamp not in corpus.windows[0]
    assert midnight.timestamp in corpus.windows[1]


def test_assign_windows_hourly_labels():
    posts = [mock_post(id='a', timestamp=utc(2023, 6, 24, 1, 30)),
             mock_post(id='b', timestamp=utc(2023, 6, 24, 3, 5))]
    corpus = assign_windows(posts, 'hour')
    assert corpus.labels == ['2023-06-24T01:00Z', '2023-06-24T02:00Z',
                             '2023-06-24T03:00Z']


def test_assign_windows_empty_input():
    with pytest.raises(exc.EmptyInput) as ei:
        assign_windows([])
    assert ei.value.exit_code == 4


def test_assign_windows_rejects_unknown_granularity():
    with pytest.raises(ValueError):
        assign_windows([mock_post()], 'week')


instants = st.datetimes(
    min_value=datetime.datetime(2023, 6, 1),
    max_value=datetime.datetime(2023, 7, 1),
).map(lambda dt: dt.replace(microsecond=0,
                            tzinfo=datetime.timezone.utc))


@given(st.lists(instants, min_size=1, max_size=40),
       st.sampled_from(['day', 'hour']))
def test_assign_windows_conservation(timestamps, granularity):
    posts = [mock_post(id=str(i), timestamp=ts)
             for i, ts in enumerate(timestamps)]
    corpus = assign_windows(posts, granularity)
    assert corpus.post_count == len(posts)
    for window in corpus.windows:
        assert window.start < window.end
        assert all(p.timestamp in window for p in corpus.posts(window))
    for earlier, later in zip(corpus.windows, corpus.windows[1:]):
        assert earlier.end == later.start
    assert assign_windows(posts, granularity) == corpus


@pytest.mark.parametrize('platform, channel, expected', [
    ('gab', 'wagner', 'gab'),
    ('telegram', 'u_now', 'telegram-ukraine'),
    ('telegram', 'rian_ru', 'telegram-russia'),
    ('telegram', 'somewhere', 'telegram'),
])
def test_corpus_key(platform, channel, expected):
    countries = {'u_now': 'Ukraine', 'rian_ru': 'russia'}
    post = mock_post(platform=platform, channel=channel)
    assert corpus_key(post, countries) == expected
