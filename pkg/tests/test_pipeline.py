import csv
import json
import os
import random
import time
from datetime import datetime, timedelta, timezone

import pytest

from narrative_keyness import exc
from narrative_keyness.pipeline import (
    RunConfig, is_taggable, load_run_config, map_in_chunks, parse_input_spec,
    run_pipeline,
)
from tests import mocks

FULL_RUN_OUTPUTS = [
    'timeline.csv', 'domains.csv', 'keyness_gab.csv', 'keyness_gab.txt',
    'keyness_telegram-russia.csv', 'keyness_telegram-russia.txt',
    'keyness_telegram-ukraine.csv', 'keyness_telegram-ukraine.txt',
    'run_summary.txt',
]


@pytest.fixture
def config(tmp_path):
    return load_run_config(str(mocks.CONFIG),
                           output_dir=str(tmp_path / 'out'))


def keyness_window(output_dir, corpus, window_label):
    path = os.path.join(output_dir, 'keyness_{}.csv'.format(corpus))
    with open(path, encoding='utf-8', newline='') as fh:
        return [row for row in csv.DictReader(fh)
                if row['window_label'] == window_label]


def read_outputs(output_dir):
    contents = {}
    for name in sorted(os.listdir(output_dir)):
        with open(os.path.join(output_dir, name), 'rb') as fh:
            contents[name] = fh.read()
    return contents


def test_full_run_summary(config):
    summary = run_pipeline(config)
    assert summary.records_read == 60
    assert summary.rejected == 0
    assert summary.filtered_out == 0
    assert summary.language_excluded == 1
    assert summary.processed == 59
    assert summary.is_conserved
    assert summary.windows == 3
    assert summary.group_totals == [('rian_ru', 15), ('russia', 13),
                                    ('u_now', 15), ('ukraine', 11),
                                    ('wagner', 6)]
    assert [c.name for c in summary.corpora] == [
        'gab', 'telegram-russia', 'telegram-ukraine']
    assert summary.skipped_corpora == []
    assert summary.outputs == FULL_RUN_OUTPUTS
    assert sorted(os.listdir(config.output_dir)) == sorted(FULL_RUN_OUTPUTS)


def test_full_run_matches_golden_reports(config):
    run_pipeline(config)
    for name in ('timeline.csv', 'domains.csv'):
        with open(os.path.join(config.output_dir, name), 'rb') as fh:
            produced = fh.read()
        assert produced == (mocks.GOLDEN / name).read_bytes(), name


def test_gab_key_terms(config):
    run_pipeline(config)
    rows = keyness_window(config.output_dir, 'gab', '2023-06-24')
    assert [r['token'] for r in rows[:4]] == [
        'wagner', 'prigozhin', 'mutiny', 'moscow']
    assert [r['rank'] for r in rows[:4]] == ['1', '2', '3', '4']
    assert [(r['f_target'], r['f_ref']) for r in rows[:4]] == [
        ('15', '0'), ('5', '0'), ('4', '0'), ('3', '0')]
    assert len(rows) <= config.top_n
    assert all(int(r['f_target']) >= config.min_target_freq for r in rows)


def test_telegram_key_terms(config):
    run_pipeline(config)
    ukraine = keyness_window(config.output_dir, 'telegram-ukraine',
                             '2023-06-24')
    assert (ukraine[0]['token'], ukraine[0]['f_target'],
            ukraine[0]['f_ref']) == ('вагнер', '8', '0')
    tokens = [r['token'] for r in ukraine]
    assert tokens.index('марш') < tokens.index('пригожин')
    russia = keyness_window(config.output_dir, 'telegram-russia',
                            '2023-06-24')
    assert (russia[0]['token'], russia[0]['f_target'],
            russia[0]['f_ref']) == ('вагнер', '5', '0')


def test_first_window_has_no_keyness(config):
    run_pipeline(config)
    assert keyness_window(config.output_dir, 'gab', '2023-06-22') == []


def test_telegram_is_one_corpus_without_channel_countries(run_options):
    summary = run_pipeline(load_run_config(**run_options))
    assert [c.name for c in summary.corpora] == ['gab', 'telegram']
    assert 'keyness_telegram.csv' in summary.outputs


def test_previous_window_mode(tmp_path):
    config = load_run_config(str(mocks.CONFIG),
                             output_dir=str(tmp_path / 'out'),
                             reference_mode='previous_window')
    run_pipeline(config)
    rows = keyness_window(config.output_dir, 'gab', '2023-06-24')
    assert (rows[0]['token'], rows[0]['f_ref']) == ('wagner', '0')


def test_document_frequency_counts_posts(tmp_path):
    config = load_run_config(str(mocks.CONFIG),
                             output_dir=str(tmp_path / 'out'), doc_freq=True)
    run_pipeline(config)
    rows = keyness_window(config.output_dir, 'gab', '2023-06-24')
    wagner = next(r for r in rows if r['token'] == 'wagner')
    assert 0 < int(wagner['f_target']) <= 10


def test_runs_are_deterministic(tmp_path):
    first = load_run_config(str(mocks.CONFIG),
                            output_dir=str(tmp_path / 'one'))
    second = load_run_config(str(mocks.CONFIG),
                             output_dir=str(tmp_path / 'two'), workers=4)
    run_pipeline(first)
    run_pipeline(second)
    assert read_outputs(first.output_dir) == read_outputs(second.output_dir)


def test_timeline_only_run(config):
    summary = run_pipeline(config, reports=('timeline',))
    assert summary.outputs == ['timeline.csv']
    assert summary.processed == 0
    assert os.listdir(config.output_dir) == ['timeline.csv']


def test_hashtag_filter(tmp_path):
    config = load_run_config(str(mocks.CONFIG),
                             output_dir=str(tmp_path / 'out'),
                             hashtags=['#Wagner'])
    summary = run_pipeline(config, reports=('timeline',))
    assert summary.filtered_out == 52
    assert summary.windows == 1
    assert sum(count for _, count in summary.group_totals) == 8


def test_empty_date_range_writes_nothing(tmp_path):
    config = load_run_config(str(mocks.CONFIG),
                             output_dir=str(tmp_path / 'out'),
                             date_from='2024-01-01', date_to='2024-02-01')
    with pytest.raises(exc.PipelineStageError) as pse:
        run_pipeline(config)
    assert pse.value.stage == 'filter'
    assert pse.value.code == 'NoData'
    assert pse.value.exit_code == 4
    assert os.listdir(config.output_dir) == []


def test_single_window_removes_partial_outputs(tmp_path):
    config = load_run_config(str(mocks.CONFIG),
                             output_dir=str(tmp_path / 'out'),
                             date_from='2023-06-24', date_to='2023-06-25')
    with pytest.raises(exc.PipelineStageError) as pse:
        run_pipeline(config)
    assert pse.value.stage == 'keyness'
    assert isinstance(pse.value.error, exc.InsufficientWindows)
    assert pse.value.exit_code == 4
    assert os.listdir(config.output_dir) == []


def test_strict_run_stops_at_ingest(tmp_path):
    config = load_run_config(inputs=['{}:gab'.format(mocks.GAB_BAD)],
                             output_dir=str(tmp_path / 'out'), strict=True)
    with pytest.raises(exc.PipelineStageError) as pse:
        run_pipeline(config)
    assert pse.value.stage == 'ingest'
    assert pse.value.exit_code == 3


def test_config_file_layers(settings, tmp_path):
    settings.KEYNESS_DOMAIN_TOP_N = 7
    config = load_run_config(str(mocks.CONFIG), output_dir=str(tmp_path),
                             top_n=5, min_target_freq=None)
    assert config.top_n == 5
    assert config.min_target_freq == 3
    assert config.domain_top_n == 7
    assert config.channel_countries == mocks.CHANNEL_COUNTRIES
    assert config.output_dir == str(tmp_path)


def test_config_file_paths_are_relative_to_the_file(config):
    assert config.inputs == [(str(mocks.GAB_MINI), 'gab'),
                             (str(mocks.TELEGRAM_MINI), 'telegram')]
    assert config.annotations == str(mocks.ANNOTATIONS)


def test_config_normalizes_filters(run_options):
    config = load_run_config(hashtags=['#Wagner', 'russia'],
                             languages=['EN'], **run_options)
    assert config.hashtags == ['wagner', 'russia']
    assert config.languages == ['en']


def test_config_rejects_unknown_keys(run_options):
    with pytest.raises(exc.InvalidRunConfig) as irc:
        load_run_config(colour='red', **run_options)
    assert irc.value.field == 'colour'
    assert irc.value.exit_code == 2


def test_config_rejects_invalid_json(tmp_path):
    bad = tmp_path / 'config.json'
    bad.write_text('{"top_n": ', encoding='utf-8')
    with pytest.raises(exc.InvalidRunConfig) as irc:
        load_run_config(str(bad))
    assert irc.value.field == 'config'


def test_config_file_must_exist(tmp_path):
    with pytest.raises(exc.InvalidRunConfig):
        load_run_config(str(tmp_path / 'missing.json'))


@pytest.mark.parametrize('overrides, field', [
    ({'top_n': 0}, 'top_n'),
    ({'min_target_freq': 0}, 'min_target_freq'),
    ({'zero_adjust': 0}, 'zero_adjust'),
    ({'zero_adjust': -0.5}, 'zero_adjust'),
    ({'granularity': 'week'}, 'granularity'),
    ({'reference_mode': 'weekly'}, 'reference_mode'),
    ({'group_by': 'language'}, 'group_by'),
    ({'workers': 0}, 'workers'),
    ({'top_n': True}, 'top_n'),
    ({'date_from': '2023-06-25', 'date_to': '2023-06-22'}, 'date_from'),
    ({'date_from': '25/06/2023'}, 'date_from'),
    ({'inputs': []}, 'inputs'),
    ({'inputs': ['missing.jsonl:gab']}, 'inputs'),
    ({'inputs': ['{}:twitter'.format(mocks.GAB_MINI)]}, 'inputs'),
    ({'annotations': 'missing.csv'}, 'annotations'),
    ({'lexicon_files': {'en': 'missing.tsv'}}, 'lexicon_files'),
])
def test_config_validation(run_options, overrides, field):
    run_options.update(overrides)
    with pytest.raises(exc.InvalidRunConfig) as irc:
        load_run_config(**run_options)
    assert irc.value.field == field


@pytest.mark.parametrize('spec, parsed', [
    ('dumps/gab.jsonl:gab', ('dumps/gab.jsonl', 'gab')),
    ('dumps/tg.jsonl:Telegram', ('dumps/tg.jsonl', 'telegram')),
    ('C:/dumps/gab.jsonl:gab', ('C:/dumps/gab.jsonl', 'gab')),
    (['dumps/gab.jsonl', 'gab'], ('dumps/gab.jsonl', 'gab')),
])
def test_parse_input_spec(spec, parsed):
    assert parse_input_spec(spec) == parsed


def test_parse_input_spec_requires_schema():
    with pytest.raises(exc.InvalidRunConfig):
        parse_input_spec('dumps/gab.jsonl')


@pytest.mark.parametrize('languages, platform_languages, accepted', [
    ([], {}, {'en', 'ru', 'und'}),
    ([], {'gab': ['en']}, {'en'}),
    (['ru'], {'gab': ['en']}, {'ru'}),
    ([], {'telegram': ['ru']}, {'en', 'ru', 'und'}),
])
def test_accepts_language(languages, platform_languages, accepted):
    config = RunConfig(languages=languages,
                       platform_languages=platform_languages)
    assert {lang for lang in ('en', 'ru', 'und')
            if config.accepts_language('gab', lang)} == accepted


def test_run_without_whitelist_excludes_posts_without_tagger(tmp_path,
                                                            caplog):
    with open(mocks.GAB_MINI, encoding='utf-8') as fh:
        records = [json.loads(line) for line in fh if line.strip()]
    records.append({'post_id': 'g31', 'created_at': '2023-06-24T10:00:00Z',
                    'body': 'Wagner!', 'hashtags': ['wagner']})
    dump = mocks.write_jsonl(tmp_path / 'gab.jsonl', records)
    config = load_run_config(inputs=['{}:gab'.format(dump)],
                             platform_languages={'gab': []},
                             output_dir=str(tmp_path / 'out'))
    summary = run_pipeline(config)
    undetermined = dict(summary.language_counts)['und']
    assert undetermined >= 1
    assert summary.language_excluded == undetermined
    assert summary.processed == 31 - undetermined
    assert summary.is_conserved
    assert 'keyness_gab.csv' in summary.outputs
    assert 'no tagger is registered' in caplog.text


def test_pretagged_posts_need_no_tagger():
    tagger_languages = {'en', 'ru'}
    assert is_taggable(mocks.mock_doc(['wagner'], language='und',
                                      tags=['NNP']), tagger_languages)
    assert is_taggable(mocks.mock_doc(['wagner'], language='en'),
                       tagger_languages)
    assert not is_taggable(mocks.mock_doc(['wagner'], language='und'),
                           tagger_languages)


@pytest.mark.parametrize('workers', [1, 2, 3, 8])
def test_map_in_chunks_keeps_input_order(workers):
    items = list(range(25))
    assert map_in_chunks(lambda i: i * i, items, workers) == [
        i * i for i in items]
    assert map_in_chunks(str, [], workers) == []


LARGE_DUMP_WORDS = (
    'wagner prigozhin mutiny moscow rostov convoy troops march army kremlin '
    'putin deal belarus column highway helicopter shot negotiate surrender '
    'forces enter city headquarters news report video watch stop retreat'
).split()


@pytest.mark.slow
def test_large_dump_finishes_within_a_minute(tmp_path):
    rng = random.Random(7)
    start = datetime(2023, 6, 20, tzinfo=timezone.utc)
    records = [{
        'post_id': 'p{}'.format(i),
        'created_at': (start + timedelta(seconds=rng.randrange(5 * 86400))
                       ).strftime('%Y-%m-%dT%H:%M:%SZ'),
        'body': ' '.join(rng.choice(LARGE_DUMP_WORDS)
                         for _ in range(rng.randint(8, 30))),
        'hashtags': [rng.choice(['wagner', 'russia', 'ukraine'])],
        'links': ['https://rumble.com/v{}'.format(i % 50)],
    } for i in range(100000)]
    dump = mocks.write_jsonl(tmp_path / 'large.jsonl', records)
    config = load_run_config(inputs=['{}:gab'.format(dump)],
                             output_dir=str(tmp_path / 'out'))
    began = time.perf_counter()
    summary = run_pipeline(config)
    assert time.perf_counter() - began < 60
    assert summary.records_read == 100000
    assert summary.is_conserved
