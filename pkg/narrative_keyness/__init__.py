from narrative_keyness.version import __version__

from narrative_keyness.exc import (
    NarrativeKeynessException, PostValidationError, MalformedTimestamp,
    EmptyId, InvalidHashtag, EmptyInput, FileNotFound, SchemaViolation,
    DuplicateId, NoTaggerForLanguage, KeynessMathError, BothZero,
    NonpositiveCorpusSize, InvalidZeroAdjust, InsufficientWindows,
    InvalidRunConfig, NoData, PipelineStageError,
)

from narrative_keyness.corpus import (
    Post, TimeWindow, WindowedCorpus, validate_post, assign_windows,
    corpus_key, parse_timestamp,
)

from narrative_keyness.ingestion import (
    parse_dump, parse_dumps, filter_posts, tally_domains, count_domains,
    load_annotations, url_domain,
)

from narrative_keyness.textprep import (
    CleanDoc, LangProfile, clean_text, detect_language, remove_stopwords,
    build_profile, load_profiles, prepare_doc,
)

from narrative_keyness.postag import (
    TaggedToken, TaggedDoc, tag_tokens, filter_nouns_verbs, get_tagger,
    coarse_tag,
)

from narrative_keyness.keyness import (
    FrequencyTable, KeynessScore, KeynessTimeline, build_frequency_table,
    merge_tables, log_ratio, rank_keyness, temporal_keyness,
)

from narrative_keyness.pipeline import (
    RunConfig, RunSummary, load_run_config, run_pipeline,
)

from narrative_keyness.reports import (
    emit_timeline_csv, emit_keyness_table, emit_domains_csv,
    write_run_summary,
)


__all__ = [

    '__version__',

    'NarrativeKeynessException', 'PostValidationError', 'MalformedTimestamp',
    'EmptyId', 'InvalidHashtag', 'EmptyInput', 'FileNotFound',
    'SchemaViolation', 'DuplicateId', 'NoTaggerForLanguage',
    'KeynessMathError', 'BothZero', 'NonpositiveCorpusSize',
    'InvalidZeroAdjust', 'InsufficientWindows', 'InvalidRunConfig', 'NoData',
    'PipelineStageError',

    'Post', 'TimeWindow', 'WindowedCorpus', 'validate_post',
    'assign_windows', 'corpus_key', 'parse_timestamp',

    'parse_dump', 'parse_dumps', 'filter_posts', 'tally_domains',
    'count_domains', 'load_annotations', 'url_domain',

    'CleanDoc', 'LangProfile', 'clean_text', 'detect_language',
    'remove_stopwords', 'build_profile', 'load_profiles', 'prepare_doc',

    'TaggedToken', 'TaggedDoc', 'tag_tokens', 'filter_nouns_verbs',
    'get_tagger', 'coarse_tag',

    'FrequencyTable', 'KeynessScore', 'KeynessTimeline',
    'build_frequency_table', 'merge_tables', 'log_ratio', 'rank_keyness',
    'temporal_keyness',

    'RunConfig', 'RunSummary', 'load_run_config', 'run_pipeline',

    'emit_timeline_csv', 'emit_keyness_table', 'emit_domains_csv',
    'write_run_summary',
]
