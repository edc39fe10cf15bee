"""
Read platform export dumps into Posts, filter them by hashtag and date, and
tally the domains of the URLs they share.

Dumps are line delimited JSON, one record per line, UTF-8. Required field
names per schema are listed in narrative_keyness.constants.
"""
import csv
import json
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, NamedTuple, Optional, Tuple
from urllib.parse import urlsplit

import regex
from nltk import FreqDist

from narrative_keyness import exc
from narrative_keyness.corpus import Post, validate_post
from narrative_keyness.constants import (
    PLATFORMS, PLATFORM_GAB, PLATFORM_TELEGRAM,
    GAB_REQUIRED_FIELDS, TELEGRAM_REQUIRED_FIELDS,
)

log = logging.getLogger(__name__)

URL_PATTERN = r'(?:https?://|www\.)[^\s<>"]+'
HASHTAG_PATTERN = r'(?<![\p{L}\p{N}_])#([\p{L}\p{N}_]+)'
url_matcher = regex.compile(URL_PATTERN, regex.IGNORECASE)
hashtag_matcher = regex.compile(HASHTAG_PATTERN)


class GabRecord(NamedTuple):
    post_id: str
    created_at: str
    body: str
    hashtags: list
    links: list
    channel: str = ''
    language: Optional[str] = None
    tokens: Optional[list] = None
    tags: Optional[list] = None


class TelegramRecord(NamedTuple):
    message_id: str
    channel: str
    date: str
    text: str
    entities: Optional[list] = None
    language: Optional[str] = None
    tokens: Optional[list] = None
    tags: Optional[list] = None


class DomainTally(NamedTuple):
    domain: str
    count: int
    annotation: Optional[str] = None


@dataclass
class ParsedDump:
    """Posts parsed from one or more dumps, and the records rejected on the
    way (SchemaViolation or DuplicateId, each carrying its path and line
    number). ``origins`` holds the (path, line) of every post."""
    posts: List[Post] = field(default_factory=list)
    rejected: List[exc.NarrativeKeynessException] = field(
        default_factory=list)
    origins: List[Tuple[str, int]] = field(default_factory=list)

    @property
    def records_read(self):
        return len(self.posts) + len(self.rejected)


def _require(record, name, line):
    if name not in record or record[name] is None:
        raise exc.SchemaViolation(line, name, 'missing required field')
    return record[name]


def _string_list(record, name, line):
    values = record.get(name)
    if values is None:
        return []
    if not isinstance(values, list) or not all(isinstance(v, str)
                                               for v in values):
        raise exc.SchemaViolation(line, name, 'must be a list of strings')
    return values


def _pretagged(record, line):
    tokens = _string_list(record, 'tokens', line)
    tags = _string_list(record, 'tags', line)
    if not tokens and not tags:
        return None
    if len(tokens) != len(tags):
        raise exc.SchemaViolation(line, 'tags', 'must parallel "tokens" ({} '
                                  'tokens, {} tags)'.format(len(tokens),
                                                            len(tags)))
    return tuple(zip(tokens, tags))


def _text_field(record, name, line):
    value = _require(record, name, line)
    if not isinstance(value, str):
        raise exc.SchemaViolation(line, name, 'must be a string')
    return value


def _id_field(record, name, line):
    value = _require(record, name, line)
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise exc.SchemaViolation(line, name, 'must be a string or integer')
    return str(value)


def extract_hashtags(text):
    return [tag.lower() for tag in hashtag_matcher.findall(text or '')]


def extract_urls(text):
    return url_matcher.findall(text or '')


def gab_post(record, line):
    """Build a Post from one decoded GAB record."""
    rec = GabRecord(
        post_id=_id_field(record, 'post_id', line),
        created_at=_require(record, 'created_at', line),
        body=_text_field(record, 'body', line),
        hashtags=_string_list(record, 'hashtags', line),
        links=_string_list(record, 'links', line),
        channel=record.get('channel') or '',
        language=record.get('language'),
    )
    return Post(
        id=rec.post_id,
        platform=PLATFORM_GAB,
        # GAB dumps are scraped per hashtag, which doubles as the channel
        channel=rec.channel or PLATFORM_GAB,
        timestamp=rec.created_at,
        text=rec.body,
        hashtags=frozenset(rec.hashtags),
        urls=tuple(rec.links),
        language=rec.language,
        pretagged=_pretagged(record, line),
    )


def telegram_post(record, line):
    """Build a Post from one decoded Telegram export record."""
    rec = TelegramRecord(
        message_id=_id_field(record, 'message_id', line),
        channel=_text_field(record, 'channel', line),
        date=_require(record, 'date', line),
        text=_text_field(record, 'text', line),
        entities=(_string_list(record, 'entities', line)
                  if record.get('entities') is not None else None),
        language=record.get('language'),
    )
    if not rec.channel.strip():
        raise exc.SchemaViolation(line, 'channel', 'must not be empty')
    return Post(
        id=rec.message_id,
        platform=PLATFORM_TELEGRAM,
        channel=rec.channel.strip(),
        timestamp=rec.date,
        text=rec.text,
        hashtags=frozenset(extract_hashtags(rec.text)),
        urls=tuple(rec.entities if rec.entities is not None
                   else extract_urls(rec.text)),
        language=rec.language,
        pretagged=_pretagged(record, line),
    )


RECORD_PARSERS = {
    PLATFORM_GAB: (gab_post, GAB_REQUIRED_FIELDS),
    PLATFORM_TELEGRAM: (telegram_post, TELEGRAM_REQUIRED_FIELDS),
}

# Map validation errors from corpus.validate_post() onto dump field names
POST_FIELD_NAMES = {
    PLATFORM_GAB: {'id': 'post_id', 'timestamp': 'created_at',
                   'hashtags': 'hashtags'},
    PLATFORM_TELEGRAM: {'id': 'message_id', 'timestamp': 'date',
                        'hashtags': 'text'},
}


def parse_record(line_text, line, schema):
    """Decode and validate one dump line. Raises SchemaViolation."""
    try:
        record = json.loads(line_text)
    except ValueError as ve:
        raise exc.SchemaViolation(line, None, 'invalid JSON ({})'.format(ve))
    if not isinstance(record, dict):
        raise exc.SchemaViolation(line, None, 'record must be a JSON object')
    build_post, _ = RECORD_PARSERS[schema]
    post = build_post(record, line)
    try:
        return validate_post(post)
    except exc.PostValidationError as pve:
        field_name = POST_FIELD_NAMES[schema].get(pve.field, pve.field)
        raise exc.SchemaViolation(line, field_name, pve.message)


def iter_dump(lines, schema, path=''):
    """
    Yield (line_number, Post or exception) for every nonblank line. Works on
    any iterable of lines, so a file handle is consumed one line at a time.
    """
    seen_ids = set()
    for lineno, line_text in enumerate(lines, start=1):
        if not line_text.strip():
            continue
        try:
            post = parse_record(line_text, lineno, schema)
        except exc.SchemaViolation as sv:
            sv.path = path
            yield lineno, sv
            continue
        if post.id in seen_ids:
            yield lineno, exc.DuplicateId(lineno, post.id, path)
            continue
        seen_ids.add(post.id)
        yield lineno, post


def parse_dump(path, schema, strict=False):
    """
    Parse a line delimited JSON dump in the given schema ('gab' or
    'telegram'). Input order is preserved. Records that fail validation are
    logged and collected in ParsedDump.rejected with their line numbers; in
    strict mode the first one is raised instead.
    :raises FileNotFound: if path does not exist
    :return: ParsedDump
    """
    if schema not in RECORD_PARSERS:
        raise exc.InvalidRunConfig('schema', 'must be one of {}, got {!r}'
                                             ''.format(PLATFORMS, schema))
    if not os.path.isfile(path):
        raise exc.FileNotFound(path)
    parsed = ParsedDump()
    with open(path, encoding='utf-8') as fh:
        for lineno, result in iter_dump(fh, schema, path=str(path)):
            if isinstance(result, Post):
                parsed.posts.append(result)
                parsed.origins.append((str(path), lineno))
                continue
            if strict:
                raise result
            log.warning('Rejected record: {}'.format(result))
            parsed.rejected.append(result)
    log.info('Parsed {} {} posts from {} ({} rejected)'.format(
        len(parsed.posts), schema, path, len(parsed.rejected)))
    return parsed


def parse_dumps(inputs, strict=False, workers=1):
    """
    Parse several (path, schema) dumps, concurrently when workers > 1.
    Results are merged in input order, so output never depends on thread
    scheduling. Post ids must be unique per platform across all files; a
    repeat in a later file is rejected with that file's path and line.
    Rejected records are listed in (file, line) order.
    """
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        results = list(pool.map(lambda i: parse_dump(i[0], i[1], strict),
                                inputs))
    merged = ParsedDump()
    seen = set()
    for parsed in results:
        rejected = list(parsed.rejected)
        for post, (path, line) in zip(parsed.posts, parsed.origins):
            key = (post.platform, post.id)
            if key in seen:
                dup = exc.DuplicateId(line, post.id, path)
                if strict:
                    raise dup
                log.warning('Rejected record: {}'.format(dup))
                rejected.append(dup)
                continue
            seen.add(key)
            merged.posts.append(post)
            merged.origins.append((path, line))
        merged.rejected.extend(sorted(rejected, key=lambda r: r.line))
    return merged


def filter_posts(posts, hashtags=None, date_from=None, date_to=None):
    """
    Keep posts whose hashtags intersect ``hashtags`` (case insensitive, a
    leading '#' is ignored) and whose timestamp is in [date_from, date_to).
    An empty hashtag set keeps every post in the date range. None for either
    bound leaves that side open. Each post is returned at most once, in input
    order.
    """
    wanted = {h.lower().lstrip('#') for h in (hashtags or ())}
    if date_from is not None and date_to is not None and date_from > date_to:
        raise exc.InvalidRunConfig('date_range', 'from {} is after to {}'
                                                 ''.format(date_from, date_to))
    kept = []
    for post in posts:
        if wanted and wanted.isdisjoint(post.hashtags):
            continue
        if date_from is not None and post.timestamp < date_from:
            continue
        if date_to is not None and post.timestamp >= date_to:
            continue
        kept.append(post)
    return kept


def url_domain(url):
    """
    The lowercase host of a URL with a leading 'www.' removed, or None if no
    host can be found. URLs without a scheme ('rt.com/news') fall back to the
    first path segment when it looks like a host.
    """
    try:
        parts = urlsplit(url.strip())
        host = parts.hostname if parts.scheme else None
        if host is None and not parts.scheme:
            candidate = parts.path.split('/', 1)[0].split(':', 1)[0]
            host = candidate.lower() if '.' in candidate else None
    except ValueError:
        return None
    if not host:
        return None
    host = host.strip('.')
    if host.startswith('www.'):
        host = host[len('www.'):]
    if '.' not in host or any(c.isspace() for c in host):
        return None
    return host


def count_domains(posts):
    """
    Count the domain of every URL occurrence across posts. Returns a FreqDist
    of domain -> count and the number of URLs that could not be parsed.
    Their sum is the total number of URL occurrences.
    """
    counts = FreqDist()
    skipped = 0
    for post in posts:
        for url in post.urls:
            domain = url_domain(url)
            if domain is None:
                log.debug('Skipping unparseable URL {!r} in post {}'.format(
                    url, post.id))
                skipped += 1
                continue
            counts[domain] += 1
    return counts, skipped


def tally_domains(posts, top_n, annotations=None):
    """
    Rank shared domains by count, descending, ties broken lexicographically,
    truncated to top_n. Annotation labels (eg media bias ratings from a
    user supplied file) are joined on the normalized domain.
    """
    if top_n < 1:
        raise exc.InvalidRunConfig('top_n', 'must be >= 1, got {}'.format(
            top_n))
    counts, skipped = count_domains(posts)
    if skipped:
        log.info('Skipped {} unparseable URLs while tallying domains'.format(
            skipped))
    annotations = annotations or {}
    ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    return [DomainTally(domain, count, annotations.get(domain))
            for domain, count in ranked[:top_n]]


def normalize_domain(domain):
    domain = domain.strip().lower().strip('.')
    return domain[len('www.'):] if domain.startswith('www.') else domain


def load_annotations(path) -> Dict[str, str]:
    """Read a 'domain,label' CSV with a header row into a dict keyed by the
    normalized domain."""
    if not os.path.isfile(path):
        raise exc.FileNotFound(path)
    annotations = {}
    with open(path, encoding='utf-8', newline='') as fh:
        reader = csv.DictReader(fh)
        if not reader.fieldnames or not {'domain', 'label'}.issubset(
                reader.fieldnames):
            raise exc.SchemaViolation(1, None, 'annotation file header must '
                                               'be "domain,label"', path=path)
        for row in reader:
            if not row.get('domain'):
                continue
            annotations[normalize_domain(row['domain'])] = row.get('label')
    return annotations
