"""
Text cleaning, language identification and stopword removal.

Cleaning runs in a fixed order: URLs, then emoji, then case folding, then
punctuation, symbols and standalone numbers. URLs go first so punctuation
removal cannot shred them into domain fragments that look like words.

Language identification ranks the character trigrams of a text and compares
them with per-language rank profiles using the out-of-place distance.
"""
import functools
import logging
import os
import unicodedata
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import emoji
import regex
from nltk import FreqDist
from nltk.util import trigrams

from narrative_keyness import exc
from narrative_keyness.apps import get_setting
from narrative_keyness.constants import (
    UNDETERMINED_LANGUAGE, TRIGRAM_BOUNDARY,
)
from narrative_keyness.ingestion import url_matcher

log = logging.getLogger(__name__)

DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'data')
BUNDLED_STOPWORDS_DIR = os.path.join(DATA_DIR, 'stopwords')
PROFILE_SUFFIX = '.profile'

# Anything that is not a letter, a digit or whitespace is punctuation or a
# symbol for our purposes, including the '#' of hashtags.
non_word_matcher = regex.compile(r'[^\p{L}\p{N}\s]+')
number_token_matcher = regex.compile(r'^\p{N}+$')
# Emoji other than the bare copyright and registered signs hold a code point
# from U+2000 up. Those two are stripped as symbols by non_word_matcher.
emoji_candidate_matcher = regex.compile(r'[\u2000-\U0010FFFF]')


@dataclass(frozen=True)
class CleanDoc:
    post_id: str
    tokens: Tuple[str, ...]
    language: str = UNDETERMINED_LANGUAGE
    # Tags parallel to tokens, when the post came pre-tagged
    tags: Optional[Tuple[str, ...]] = None


@dataclass(frozen=True)
class LangProfile:
    """Ranked character trigrams for one language, rank 0 most frequent."""
    language: str
    ranks: Dict[str, int]

    def __post_init__(self):
        if not self.ranks:
            raise ValueError('Language profile "{}" is empty'.format(
                self.language))

    @property
    def size(self):
        return len(self.ranks)


def remove_urls(text):
    return url_matcher.sub(' ', text)


def remove_emoji(text):
    if not emoji_candidate_matcher.search(text):
        return text
    return emoji.replace_emoji(text, replace=' ')


def clean_text(text):
    """
    Normalize post text into space separated lowercase word tokens.
    '#Wagner' survives as 'wagner'; numbers are dropped only when they stand
    alone, so 'su34' is kept. Idempotent.

    >>> clean_text('Wagner enters Rostov! https://t.co/x 🔥')
    'wagner enters rostov'
    """
    if not text:
        return ''
    text = unicodedata.normalize('NFC', text)
    text = remove_urls(text)
    text = remove_emoji(text)
    text = text.lower()
    text = non_word_matcher.sub(' ', text)
    return ' '.join(tok for tok in text.split()
                    if not number_token_matcher.match(tok))


def tokenize(cleaned):
    return tuple(cleaned.split())


def text_trigrams(text):
    """FreqDist of the boundary padded character trigrams of every token"""
    fingerprint = FreqDist()
    for token in text.split():
        padded = '{0}{1}{0}'.format(TRIGRAM_BOUNDARY, token)
        fingerprint.update(''.join(tri) for tri in trigrams(padded))
    return fingerprint


def rank_trigrams(fingerprint, top_k):
    """Rank trigrams by frequency, ties broken lexicographically"""
    ordered = sorted(fingerprint.items(), key=lambda item: (-item[1],
                                                            item[0]))
    return {tri: rank for rank, (tri, _) in enumerate(ordered[:top_k])}


def build_profile(text, language, top_k=300):
    """Train a LangProfile from sample text, keeping the top_k trigrams"""
    ranks = rank_trigrams(text_trigrams(clean_text(text)), top_k)
    return LangProfile(language=language, ranks=ranks)


def write_profile(profile, path):
    ordered = sorted(profile.ranks.items(), key=lambda item: item[1])
    with open(path, 'w', encoding='utf-8') as fh:
        fh.write('# {} trigram profile: trigram<TAB>rank\n'.format(
            profile.language))
        for tri, rank in ordered:
            fh.write('{}\t{}\n'.format(tri, rank))


def load_profile(path, language=None):
    """
    Read a profile file: one 'trigram<TAB>rank' per line, '#' comments. The
    language defaults to the file name without its extension.
    """
    language = language or os.path.splitext(os.path.basename(path))[0]
    ranks = {}
    with open(path, encoding='utf-8') as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip('\n')
            if not line.strip() or line.startswith('#'):
                continue
            try:
                tri, rank = line.split('\t')
                ranks[tri.lower()] = int(rank)
            except ValueError:
                raise exc.SchemaViolation(lineno, None, 'expected '
                                          '"trigram<TAB>rank"', path=path)
    return LangProfile(language=language, ranks=ranks)


@functools.lru_cache(maxsize=None)
def load_profiles(directory):
    """All '*.profile' files in a directory, sorted by language code"""
    if not os.path.isdir(directory):
        raise exc.FileNotFound(directory)
    return tuple(load_profile(os.path.join(directory, name))
                 for name in sorted(os.listdir(directory))
                 if name.endswith(PROFILE_SUFFIX))


def out_of_place_distance(text_ranks, profile, penalty):
    """Sum of rank displacements. Trigrams missing from the profile cost the
    maximum penalty."""
    distance = 0
    for tri, rank in text_ranks.items():
        prank = profile.ranks.get(tri)
        distance += penalty if prank is None else min(abs(rank - prank),
                                                      penalty)
    return distance


def language_distances(text, profiles, top_k=300):
    """
    Normalized distance (0 closest, 1 no overlap at all) between the text and
    every profile, keyed by language.
    """
    text_ranks = rank_trigrams(text_trigrams(text), top_k)
    if not text_ranks:
        return {p.language: 1.0 for p in profiles}
    penalty = max(top_k, max(p.size for p in profiles))
    worst = penalty * len(text_ranks)
    return {p.language: out_of_place_distance(text_ranks, p, penalty) / worst
            for p in profiles}


def detect_language(text, profiles, min_chars=10, max_distance=0.95,
                    top_k=300):
    """
    Guess the language of a (cleaned) text as the profile with the smallest
    out-of-place distance. Ties go to the lowest language code, so profile
    order never matters. Returns 'und' for texts shorter than min_chars or
    when even the best profile is further than max_distance.
    """
    if not profiles:
        raise ValueError('detect_language() needs at least one profile')
    stripped = (text or '').strip()
    if len(stripped) < min_chars:
        return UNDETERMINED_LANGUAGE
    distances = language_distances(stripped, profiles, top_k)
    language, distance = min(distances.items(),
                             key=lambda item: (item[1], item[0]))
    if distance > max_distance:
        log.debug('Best language guess {} at {:.3f} exceeds {}'.format(
            language, distance, max_distance))
        return UNDETERMINED_LANGUAGE
    return language


def load_stopwords(path):
    """One stopword per line, UTF-8, lines starting with '#' are comments"""
    if not os.path.isfile(path):
        raise exc.FileNotFound(path)
    with open(path, encoding='utf-8') as fh:
        return frozenset(
            line.strip().lower() for line in fh
            if line.strip() and not line.lstrip().startswith('#'))


def stopword_path(language, overrides=None):
    if overrides is None:
        overrides = get_setting('KEYNESS_STOPWORD_FILES') or {}
    if language in overrides:
        return overrides[language]
    bundled = os.path.join(BUNDLED_STOPWORDS_DIR, '{}.txt'.format(language))
    return bundled if os.path.isfile(bundled) else None


def get_stopwords(language, overrides=None):
    """Stopwords for a language, or an empty set if none are available.
    ``overrides`` maps languages to stopword files and defaults to
    settings.KEYNESS_STOPWORD_FILES."""
    path = stopword_path(language, overrides)
    return _cached_stopwords(path) if path else frozenset()


@functools.lru_cache(maxsize=None)
def _cached_stopwords(path):
    return load_stopwords(path)


def remove_stopwords(tokens, language, stopwords=None):
    """Order preserving removal of exact stopword matches. Languages without
    a stopword list are returned unchanged."""
    stopwords = get_stopwords(language) if stopwords is None else stopwords
    return [tok for tok in tokens if tok not in stopwords]


def prepare_doc(post, profiles, min_chars=10, max_distance=0.95, top_k=300,
                stopword_files=None, stopwords=None):
    """
    Clean, language-tag and stopword-filter a post into a CleanDoc. A
    language supplied by the dump is trusted over detection. Pre-tagged posts
    keep their tags aligned with the surviving tokens.
    :param stopwords: Optional language -> stopword set mapping consulted
        before get_stopwords()
    """
    cleaned = clean_text(post.text)
    language = post.language or detect_language(
        cleaned, profiles, min_chars=min_chars, max_distance=max_distance,
        top_k=top_k)
    if stopwords is not None and language in stopwords:
        stops = stopwords[language]
    else:
        stops = get_stopwords(language, stopword_files)
    if post.pretagged is None:
        tokens = remove_stopwords(tokenize(cleaned), language, stops)
        return CleanDoc(post.id, tuple(tokens), language)
    pairs = [(word, tag) for token, tag in post.pretagged
             for word in tokenize(clean_text(token))
             if word not in stops]
    return CleanDoc(post.id, tuple(w for w, _ in pairs), language,
                    tags=tuple(t for _, t in pairs))
