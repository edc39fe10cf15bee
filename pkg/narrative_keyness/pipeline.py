"""
End to end orchestration:

    ingest -> hashtag/date filter -> timeline
           -> clean + detect language -> language filter -> domains
           -> tag -> noun/verb filter -> per window frequencies
           -> temporal keyness per corpus -> ranked tables

A run is described by a RunConfig. Settings provide the defaults, a flat JSON
config file overrides them and command line flags override both.
"""
import json
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass, field, fields
from datetime import datetime
from typing import Dict, List, NamedTuple, Optional, Tuple

from nltk import FreqDist

from narrative_keyness import exc
from narrative_keyness.apps import get_setting
from narrative_keyness.constants import (
    PLATFORMS, GRANULARITIES, GRANULARITY_DAY, REFERENCE_MODES,
    REFERENCE_CUMULATIVE, GROUP_BY_CHANNEL, TIMELINE_FILENAME,
    DOMAINS_FILENAME, RUN_SUMMARY_FILENAME, UNDETERMINED_LANGUAGE,
)
from narrative_keyness.corpus import assign_windows, corpus_key, parse_timestamp
from narrative_keyness.ingestion import (
    parse_dumps, filter_posts, tally_domains, load_annotations,
)
from narrative_keyness.keyness import temporal_keyness, window_tables
from narrative_keyness.postag import get_tagger, tag_tokens, filter_nouns_verbs
from narrative_keyness.reports import (
    emit_timeline_csv, emit_keyness_table, emit_domains_csv,
    write_run_summary, keyness_filenames, remove_outputs,
)
from narrative_keyness.textprep import get_stopwords, load_profiles, prepare_doc

log = logging.getLogger(__name__)

REPORT_TIMELINE = 'timeline'
REPORT_DOMAINS = 'domains'
REPORT_KEYNESS = 'keyness'
REPORT_SUMMARY = 'summary'
ALL_REPORTS = (REPORT_TIMELINE, REPORT_DOMAINS, REPORT_KEYNESS,
               REPORT_SUMMARY)

# RunConfig fields whose defaults come from settings
CONFIG_SETTINGS = {
    'granularity': 'KEYNESS_WINDOW_GRANULARITY',
    'reference_mode': 'KEYNESS_REFERENCE_MODE',
    'zero_adjust': 'KEYNESS_ZERO_ADJUST',
    'min_target_freq': 'KEYNESS_MIN_TARGET_FREQ',
    'top_n': 'KEYNESS_TOP_N',
    'doc_freq': 'KEYNESS_DOC_FREQ',
    'domain_top_n': 'KEYNESS_DOMAIN_TOP_N',
    'languages': 'KEYNESS_LANGUAGES',
    'platform_languages': 'KEYNESS_PLATFORM_LANGUAGES',
    'langdetect_min_chars': 'KEYNESS_LANGDETECT_MIN_CHARS',
    'langdetect_max_distance': 'KEYNESS_LANGDETECT_MAX_DISTANCE',
    'profile_top_k': 'KEYNESS_PROFILE_TOP_K',
    'profile_dir': 'KEYNESS_PROFILE_DIR',
    'stopword_files': 'KEYNESS_STOPWORD_FILES',
    'lexicon_files': 'KEYNESS_LEXICON_FILES',
    'group_by': 'KEYNESS_TIMELINE_GROUP_BY',
    'channel_countries': 'KEYNESS_CHANNEL_COUNTRIES',
    'strict': 'KEYNESS_STRICT',
    'workers': 'KEYNESS_WORKERS',
}
# Config file keys holding paths, resolved against the config file directory
PATH_KEYS = ('annotations', 'profile_dir', 'output_dir')
PATH_MAP_KEYS = ('stopword_files', 'lexicon_files')


@dataclass
class RunConfig:
    inputs: List[Tuple[str, str]] = field(default_factory=list)
    hashtags: List[str] = field(default_factory=list)
    date_from: Optional[datetime] = None
    date_to: Optional[datetime] = None
    granularity: str = GRANULARITY_DAY
    languages: List[str] = field(default_factory=list)
    platform_languages: Dict[str, List[str]] = field(default_factory=dict)
    reference_mode: str = REFERENCE_CUMULATIVE
    zero_adjust: float = 0.5
    min_target_freq: int = 3
    top_n: int = 10
    doc_freq: bool = False
    domain_top_n: int = 50
    annotations: Optional[str] = None
    group_by: str = GROUP_BY_CHANNEL
    channel_countries: Dict[str, str] = field(default_factory=dict)
    profile_dir: Optional[str] = None
    stopword_files: Dict[str, str] = field(default_factory=dict)
    lexicon_files: Dict[str, str] = field(default_factory=dict)
    langdetect_min_chars: int = 10
    langdetect_max_distance: float = 0.95
    profile_top_k: int = 300
    output_dir: str = '.'
    strict: bool = False
    workers: int = 1

    def accepts_language(self, platform, language):
        """The global whitelist wins over per platform ones. An empty
        whitelist accepts every language, 'und' included. run_pipeline()
        drops untagged docs in a language without a tagger afterwards."""
        allowed = self.languages or self.platform_languages.get(platform)
        return not allowed or language in allowed

    def validate(self):
        if not self.inputs:
            raise exc.InvalidRunConfig('inputs', 'at least one PATH:SCHEMA '
                                                 'input is required')
        for path, schema in self.inputs:
            if schema not in PLATFORMS:
                raise exc.InvalidRunConfig('inputs', 'schema must be one of '
                                           '{}, got {!r}'.format(PLATFORMS,
                                                                 schema))
            _check_file('inputs', path)
        if (self.date_from is not None and self.date_to is not None
                and self.date_from > self.date_to):
            raise exc.InvalidRunConfig('date_from', 'from {} is after to {}'
                                       ''.format(self.date_from, self.date_to))
        _check_choice('granularity', self.granularity, GRANULARITIES)
        _check_choice('reference_mode', self.reference_mode, REFERENCE_MODES)
        _check_choice('group_by', self.group_by,
                      tuple(get_setting('KEYNESS_TIMELINE_GROUPERS') or {}))
        _check_number('top_n', self.top_n, minimum=1)
        _check_number('domain_top_n', self.domain_top_n, minimum=1)
        _check_number('min_target_freq', self.min_target_freq, minimum=1)
        _check_number('workers', self.workers, minimum=1)
        _check_number('profile_top_k', self.profile_top_k, minimum=1)
        _check_number('langdetect_min_chars', self.langdetect_min_chars,
                      minimum=0)
        _check_number('zero_adjust', self.zero_adjust, minimum=0,
                      exclusive=True, integer=False)
        _check_number('langdetect_max_distance', self.langdetect_max_distance,
                      minimum=0, exclusive=True, integer=False)
        if self.langdetect_max_distance > 1:
            raise exc.InvalidRunConfig('langdetect_max_distance',
                                       'must be <= 1')
        if not self.profile_dir or not os.path.isdir(self.profile_dir):
            raise exc.InvalidRunConfig('profile_dir', 'no such directory: {}'
                                                      ''.format(
                                                          self.profile_dir))
        if self.annotations:
            _check_file('annotations', self.annotations)
        for key in PATH_MAP_KEYS:
            for path in getattr(self, key).values():
                _check_file(key, path)
        return self


def _check_file(name, path):
    if not path or not os.path.isfile(path):
        raise exc.InvalidRunConfig(name, 'no such file: {}'.format(path))


def _check_choice(name, value, choices):
    if value not in choices:
        raise exc.InvalidRunConfig(name, 'must be one of {}, got {!r}'.format(
            choices, value))


def _check_number(name, value, minimum, exclusive=False, integer=True):
    kinds = (int,) if integer else (int, float)
    if isinstance(value, bool) or not isinstance(value, kinds):
        raise exc.InvalidRunConfig(name, 'must be a{} number, got {!r}'.format(
            'n integer' if integer else '', value))
    if value < minimum or (exclusive and value == minimum):
        raise exc.InvalidRunConfig(name, 'must be {} {}, got {}'.format(
            '>' if exclusive else '>=', minimum, value))


def parse_input_spec(spec):
    """'dumps/gab.jsonl:gab' -> ('dumps/gab.jsonl', 'gab')"""
    if isinstance(spec, (list, tuple)) and len(spec) == 2:
        path, schema = spec
    elif isinstance(spec, str) and ':' in spec:
        path, schema = spec.rsplit(':', 1)
    else:
        raise exc.InvalidRunConfig('inputs', 'expected PATH:SCHEMA, got {!r}'
                                             ''.format(spec))
    return str(path), str(schema).strip().lower()


def _parse_date(name, value):
    if value is None or isinstance(value, datetime):
        return value
    try:
        return parse_timestamp(value, field=name)
    except exc.MalformedTimestamp as mt:
        raise exc.InvalidRunConfig(name, mt.message)


def read_config_file(path):
    """Read a flat JSON object of RunConfig fields. Relative paths inside it
    are taken relative to the file."""
    if not os.path.isfile(path):
        raise exc.InvalidRunConfig('config', 'no such file: {}'.format(path))
    try:
        with open(path, encoding='utf-8') as fh:
            values = json.load(fh)
    except ValueError as ve:
        raise exc.InvalidRunConfig('config', 'invalid JSON in {}: {}'.format(
            path, ve))
    if not isinstance(values, dict):
        raise exc.InvalidRunConfig('config', 'must be a JSON object')
    base = os.path.dirname(os.path.abspath(path))

    def resolve(p):
        return p if not p or os.path.isabs(p) else os.path.join(base, p)

    for key in PATH_KEYS:
        if values.get(key):
            values[key] = resolve(values[key])
    for key in PATH_MAP_KEYS:
        if isinstance(values.get(key), dict):
            values[key] = {k: resolve(v) for k, v in values[key].items()}
    if isinstance(values.get('inputs'), list):
        resolved = []
        for spec in values['inputs']:
            ipath, schema = parse_input_spec(spec)
            resolved.append((resolve(ipath), schema))
        values['inputs'] = resolved
    return values


def load_run_config(config_path=None, **overrides):
    """
    Build and validate a RunConfig: settings, then the JSON config file, then
    overrides. Overrides set to None are ignored, so unset command line flags
    never mask the config file.
    :raises InvalidRunConfig: on unknown keys or invalid values
    """
    known = {f.name for f in fields(RunConfig)}
    values = {name: get_setting(setting)
              for name, setting in CONFIG_SETTINGS.items()}
    layers = [read_config_file(config_path)] if config_path else []
    layers.append({k: v for k, v in overrides.items() if v is not None})
    for layer in layers:
        unknown = sorted(set(layer) - known)
        if unknown:
            raise exc.InvalidRunConfig(unknown[0], 'unknown config key')
        values.update(layer)
    values['inputs'] = [parse_input_spec(s) for s in values.get('inputs', [])]
    values['hashtags'] = [h.lower().lstrip('#')
                          for h in values.get('hashtags') or []]
    values['languages'] = [lang.lower() for lang in
                           values.get('languages') or []]
    for name in ('date_from', 'date_to'):
        values[name] = _parse_date(name, values.get(name))
    for name in ('platform_languages', 'channel_countries', 'stopword_files',
                 'lexicon_files'):
        values[name] = dict(values.get(name) or {})
    return RunConfig(**values).validate()


class CorpusSummary(NamedTuple):
    name: str
    posts: int
    tokens: int
    windows: int
    nonempty_windows: int
    skipped: str = ''


@dataclass
class RunSummary:
    """Post counts at each stage boundary of a run."""
    records_read: int = 0
    rejected: int = 0
    filtered_out: int = 0
    language_excluded: int = 0
    processed: int = 0
    url_posts: int = 0
    windows: int = 0
    language_counts: List[Tuple[str, int]] = field(default_factory=list)
    group_totals: List[Tuple[str, int]] = field(default_factory=list)
    corpora: List[CorpusSummary] = field(default_factory=list)
    outputs: List[str] = field(default_factory=list)

    @property
    def is_conserved(self):
        return self.records_read == (self.rejected + self.filtered_out +
                                     self.language_excluded + self.processed)

    @property
    def skipped_corpora(self):
        return [c.name for c in self.corpora if c.skipped]


@contextmanager
def stage(name):
    """Attribute any NarrativeKeynessException raised inside to a stage"""
    log.debug('Stage "{}"'.format(name))
    try:
        yield
    except exc.PipelineStageError:
        raise
    except exc.NarrativeKeynessException as nke:
        raise exc.PipelineStageError(name, nke) from nke


def ingest(config):
    return parse_dumps(config.inputs, strict=config.strict,
                       workers=config.workers)


def select_posts(config, posts):
    return filter_posts(posts, config.hashtags, config.date_from,
                        config.date_to)


def map_in_chunks(func, items, workers):
    """
    func applied to every item, results in input order. With more than one
    worker the items go to the pool as one contiguous chunk per worker.
    """
    items = list(items)
    if workers <= 1 or len(items) < 2:
        return [func(item) for item in items]
    size = -(-len(items) // workers)
    chunks = [items[i:i + size] for i in range(0, len(items), size)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        done = pool.map(lambda chunk: [func(item) for item in chunk], chunks)
        return [result for chunk in done for result in chunk]


def prepare_docs(config, posts):
    """Clean and language-tag posts, one CleanDoc per post in input order"""
    profiles = load_profiles(config.profile_dir)
    languages = {p.language for p in profiles} | {UNDETERMINED_LANGUAGE}
    stopwords = {lang: get_stopwords(lang, config.stopword_files)
                 for lang in languages}

    def prepare(post):
        return prepare_doc(post, profiles,
                           min_chars=config.langdetect_min_chars,
                           max_distance=config.langdetect_max_distance,
                           top_k=config.profile_top_k,
                           stopword_files=config.stopword_files,
                           stopwords=stopwords)

    return map_in_chunks(prepare, posts, config.workers)


def is_taggable(doc, tagger_languages):
    """Pre-tagged docs need no tagger, every other doc needs one registered
    for its language."""
    return doc.tags is not None or doc.language in tagger_languages


def keyness_tokens(config, pairs):
    """Tag accepted (post, CleanDoc) pairs and keep their nouns and verbs,
    keyed by (platform, post id)."""
    languages = {doc.language for _, doc in pairs
                 if doc.tags is None and doc.tokens}
    taggers = {language: get_tagger(language, config.lexicon_files)
               for language in sorted(languages)}

    def tag(pair):
        post, doc = pair
        return ((post.platform, post.id),
                filter_nouns_verbs(tag_tokens(doc, taggers.get(doc.language))))

    return dict(map_in_chunks(tag, pairs, config.workers))


def corpus_keyness(config, posts, tokens_by_post):
    """
    Temporal keyness for each analysis corpus (see corpus.corpus_key()),
    sorted by corpus name. Corpora with fewer than two nonempty windows are
    skipped with a warning; their timeline is None.
    """
    by_corpus = {}
    for post in posts:
        by_corpus.setdefault(corpus_key(post, config.channel_countries),
                             []).append(post)
    results = []
    for name in sorted(by_corpus):
        windowed = assign_windows(by_corpus[name], config.granularity)
        tables = window_tables(windowed, tokens_by_post, config.doc_freq)
        tokens = sum(t.total for t in tables)
        try:
            timeline = temporal_keyness(
                tables, mode=config.reference_mode,
                min_target_freq=config.min_target_freq, top_n=config.top_n,
                zero_adjust=config.zero_adjust, workers=config.workers,
                corpus=name)
            skipped = ''
        except exc.InsufficientWindows as iw:
            log.warning('Skipping corpus {}: {}'.format(name, iw))
            timeline, skipped = None, iw.code
        results.append((timeline, CorpusSummary(
            name, len(by_corpus[name]), tokens, len(windowed.windows),
            sum(1 for t in tables if t.total), skipped)))
    return results


def run_pipeline(config, reports=ALL_REPORTS):
    """
    Run every stage and write the requested reports into config.output_dir.
    Report files written before a failure are removed again.
    :param reports: Any of 'timeline', 'domains', 'keyness', 'summary'
    :raises PipelineStageError: wrapping the error of the failing stage,
        with its code and exit code
    :return: RunSummary
    """
    os.makedirs(config.output_dir, exist_ok=True)
    written = []
    summary = RunSummary()

    def output(filename):
        path = os.path.join(config.output_dir, filename)
        written.append(path)
        summary.outputs.append(filename)
        return path

    try:
        with stage('ingest'):
            parsed = ingest(config)
            summary.records_read = parsed.records_read
            summary.rejected = len(parsed.rejected)

        with stage('filter'):
            selected = select_posts(config, parsed.posts)
            summary.filtered_out = len(parsed.posts) - len(selected)
            if not selected:
                raise exc.NoData('No posts matched the hashtag and date '
                                 'filters')
            log.info('{} of {} posts passed the hashtag and date filters'
                     ''.format(len(selected), len(parsed.posts)))

        with stage('timeline'):
            windowed = assign_windows(selected, config.granularity)
            summary.windows = len(windowed.windows)
            if REPORT_TIMELINE in reports:
                rows = emit_timeline_csv(
                    windowed, output(TIMELINE_FILENAME), config.group_by,
                    config.hashtags, config.channel_countries)
                totals = FreqDist()
                for _, group, count in rows:
                    totals[group] += count
                summary.group_totals = sorted(totals.items())

        if not set(reports) - {REPORT_TIMELINE}:
            return summary

        with stage('language'):
            docs = prepare_docs(config, selected)
            summary.language_counts = sorted(
                FreqDist(d.language for d in docs).items())
            pairs = [(post, doc) for post, doc in zip(selected, docs)
                     if config.accepts_language(post.platform, doc.language)]
            tagger_languages = set(get_setting('KEYNESS_TAGGERS') or {})
            untaggable = FreqDist(doc.language for _, doc in pairs
                                  if not is_taggable(doc, tagger_languages))
            for language, count in sorted(untaggable.items()):
                log.warning('Excluding {} posts in language "{}": no tagger '
                            'is registered for it'.format(count, language))
            pairs = [(post, doc) for post, doc in pairs
                     if is_taggable(doc, tagger_languages)]
            summary.language_excluded = len(selected) - len(pairs)
            summary.processed = len(pairs)
            summary.url_posts = sum(1 for post, _ in pairs if post.urls)
            if not pairs:
                raise exc.NoData('No posts were left after the language '
                                 'filter')

        if REPORT_DOMAINS in reports:
            with stage('domains'):
                annotations = (load_annotations(config.annotations)
                               if config.annotations else None)
                tallies = tally_domains([post for post, _ in pairs],
                                        config.domain_top_n, annotations)
                emit_domains_csv(tallies, output(DOMAINS_FILENAME))

        if REPORT_KEYNESS in reports:
            with stage('tag'):
                tokens_by_post = keyness_tokens(config, pairs)
            with stage('keyness'):
                results = corpus_keyness(config, [p for p, _ in pairs],
                                         tokens_by_post)
                summary.corpora = [cs for _, cs in results]
                timelines = [tl for tl, _ in results if tl is not None]
                if not timelines:
                    raise exc.InsufficientWindows(
                        max(cs.nonempty_windows for cs in summary.corpora),
                        ', '.join(summary.skipped_corpora))
                for timeline in timelines:
                    csv_name, txt_name = keyness_filenames(timeline.corpus)
                    emit_keyness_table(timeline, output(csv_name),
                                       output(txt_name))

        if REPORT_SUMMARY in reports:
            with stage('summary'):
                summary.outputs.append(RUN_SUMMARY_FILENAME)
                written.append(os.path.join(config.output_dir,
                                            RUN_SUMMARY_FILENAME))
                write_run_summary(summary, written[-1])
    except Exception:
        remove_outputs(written)
        raise
    log.info('Run finished: {} of {} records processed, outputs: {}'.format(
        summary.processed, summary.records_read, ', '.join(summary.outputs)))
    return summary
