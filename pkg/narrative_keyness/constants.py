# Platforms with a dump schema. Keys are accepted values for --input
# PATH:SCHEMA and the `schema` argument of ingestion.parse_dump().
PLATFORM_GAB = 'gab'
PLATFORM_TELEGRAM = 'telegram'
PLATFORMS = (PLATFORM_GAB, PLATFORM_TELEGRAM)

GRANULARITY_DAY = 'day'
GRANULARITY_HOUR = 'hour'
GRANULARITIES = (GRANULARITY_DAY, GRANULARITY_HOUR)
WINDOW_LABEL_FORMATS = {
    GRANULARITY_DAY: '%Y-%m-%d',
    GRANULARITY_HOUR: '%Y-%m-%dT%H:00Z',
}

REFERENCE_CUMULATIVE = 'cumulative'
REFERENCE_PREVIOUS_WINDOW = 'previous_window'
REFERENCE_MODES = (REFERENCE_CUMULATIVE, REFERENCE_PREVIOUS_WINDOW)

GROUP_BY_HASHTAG = 'hashtag'
GROUP_BY_CHANNEL = 'channel'
GROUP_BY_COUNTRY = 'country'
UNKNOWN_GROUP = 'unknown'

# Coarse part of speech tags. Only NOUN and VERB survive the keyness filter.
TAG_NOUN = 'NOUN'
TAG_VERB = 'VERB'
TAG_OTHER = 'OTHER'
TAGS = (TAG_NOUN, TAG_VERB, TAG_OTHER)
KEYNESS_TAGS = (TAG_NOUN, TAG_VERB)

UNDETERMINED_LANGUAGE = 'und'

# Relative frequencies are reported per million tokens
PER_MILLION = 1000000

# Word boundary marker used when slicing tokens into character trigrams.
# It cannot survive clean_text(), so it never collides with real text.
TRIGRAM_BOUNDARY = '_'

LOG_RATIO_DISPLAY_FORMAT = '{:.4f}'
RPM_DISPLAY_FORMAT = '{:.2f}'

# Output file names inside the run output directory
TIMELINE_FILENAME = 'timeline.csv'
DOMAINS_FILENAME = 'domains.csv'
RUN_SUMMARY_FILENAME = 'run_summary.txt'
KEYNESS_CSV_FILENAME = 'keyness_{}.csv'
KEYNESS_TXT_FILENAME = 'keyness_{}.txt'

# Process exit codes used by the management commands
EXIT_CONFIG_ERROR = 2
EXIT_SCHEMA_ERROR = 3
EXIT_NO_DATA = 4

BASE_TEMPLATES = 'narrative-keyness/'

# Required fields per dump schema. Optional fields are read when present:
# gab: hashtags, links, channel, language, tokens, tags
# telegram: entities, language, tokens, tags
GAB_REQUIRED_FIELDS = ('post_id', 'created_at', 'body')
TELEGRAM_REQUIRED_FIELDS = ('message_id', 'channel', 'date', 'text')
