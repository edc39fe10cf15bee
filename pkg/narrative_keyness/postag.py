"""
Coarse part of speech tagging into NOUN, VERB and OTHER.

The bundled taggers are NLTK backoff chains, tried left to right until one
returns a tag:

    English: lexicon -> inflected verb stems -> suffix rules -> NOUN
    Russian: closed class words -> suffix rules -> NOUN

Unknown content words fall through to NOUN so coinages and hashtag-born
terms ('russiahoax', 'psyop') survive the noun/verb filter. Any nltk TaggerI
can be registered instead through settings.KEYNESS_TAGGERS; its tags are
coarsened with coarse_tag().
"""
import functools
import logging
import os
from dataclasses import dataclass
from typing import NamedTuple, Tuple

from django.utils.module_loading import import_string
from nltk.tag import DefaultTagger, RegexpTagger, UnigramTagger
from nltk.tag.sequential import SequentialBackoffTagger

from narrative_keyness import exc
from narrative_keyness.apps import get_setting
from narrative_keyness.constants import (
    TAG_NOUN, TAG_VERB, TAG_OTHER, TAGS, KEYNESS_TAGS,
)
from narrative_keyness.textprep import BUNDLED_STOPWORDS_DIR, load_stopwords

log = logging.getLogger(__name__)

BUNDLED_LEXICON_DIR = os.path.join(
    os.path.dirname(os.path.abspath(__file__)), 'data', 'lexicons')

# Penn Treebank and Universal Dependencies tags map onto the coarse set
PENN_NOUN_PREFIX = 'NN'
PENN_VERB_PREFIX = 'VB'
UNIVERSAL_NOUNS = {'NOUN', 'PROPN'}
UNIVERSAL_VERBS = {'VERB'}

ENGLISH_SUFFIX_RULES = [
    (r'.*(tion|sion|ness|ment|ity|ship|ism|ist|ance|ence|hood|dom)s?$',
     TAG_NOUN),
    (r'.+(iz|if)(e|es|ed|ing|y|ies|ied)$', TAG_VERB),
    (r'.{3,}(ing|ed)$', TAG_VERB),
    (r'.*(ally|ely|ily|fully|lessly|ously|ively|ably|ibly|ntly|ctly|kly|'
     r'dly|rly|tly|wly|ghly)$', TAG_OTHER),
    (r'.*(ous|ful|less|ical)$', TAG_OTHER),
    (r'.{3,}(able|ible)$', TAG_OTHER),
]

RUSSIAN_SUFFIX_RULES = [
    # deverbal and abstract nouns before the adjective endings they overlap
    (r'.*(ние|ния|нии|нию|ость|ости|ство|ства|тель|теля|изм|ция|ции|ций)$',
     TAG_NOUN),
    # infinitives, reflexives, past and present tense forms
    (r'.*(ть|ться|тись|чь)$', TAG_VERB),
    (r'.*(ал|ил|ел|ял)(а|о|и|ся|ась|ось|ись)$', TAG_VERB),
    (r'.*(ает|яет|ует|еет|ают|яют|уют|еют|ется|ются|ится|ятся|ешь|ишь|'
     r'ете|ите)$', TAG_VERB),
    (r'.*(ый|ий|ая|яя|ое|ее|ые|ие|ого|его|ому|ему|ым|ых|их)$', TAG_OTHER),
]

INFLECTION_SUFFIXES = ('ing', 'ies', 'ied', 'es', 'ed', 's', 'd')


class TaggedToken(NamedTuple):
    token: str
    tag: str


@dataclass(frozen=True)
class TaggedDoc:
    post_id: str
    tagged_tokens: Tuple[TaggedToken, ...]
    language: str

    @property
    def tokens(self):
        return tuple(tt.token for tt in self.tagged_tokens)


def verb_stems(token):
    """Candidate base forms of an inflected English verb: 'enters' ->
    'enter', 'advancing' -> 'advance', 'stopped' -> 'stop'."""
    stems = []
    for suffix in INFLECTION_SUFFIXES:
        if not token.endswith(suffix) or len(token) <= len(suffix) + 1:
            continue
        stem = token[:-len(suffix)]
        if suffix in ('ies', 'ied'):
            stems.append(stem + 'y')
            continue
        stems.extend([stem, stem + 'e'])
        if len(stem) > 2 and stem[-1] == stem[-2]:
            stems.append(stem[:-1])
    return stems


class InflectedVerbTagger(SequentialBackoffTagger):
    """Tags a token VERB when stripping an inflection yields a known verb"""

    def __init__(self, verbs, backoff=None):
        super().__init__(backoff)
        self._verbs = frozenset(verbs)

    def choose_tag(self, tokens, index, history):
        if any(stem in self._verbs for stem in verb_stems(tokens[index])):
            return TAG_VERB
        return None


def coarse_tag(tag):
    """Map a tag from any supported tagset onto NOUN, VERB or OTHER"""
    utag = (tag or '').upper()
    if utag in TAGS:
        return utag
    if utag.startswith(PENN_NOUN_PREFIX) or utag in UNIVERSAL_NOUNS:
        return TAG_NOUN
    if utag.startswith(PENN_VERB_PREFIX) or utag in UNIVERSAL_VERBS:
        return TAG_VERB
    return TAG_OTHER


def load_lexicon(path):
    """Read 'token<TAB>tag' lines into a dict of token -> coarse tag"""
    if not os.path.isfile(path):
        raise exc.FileNotFound(path)
    lexicon = {}
    with open(path, encoding='utf-8') as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith('#'):
                continue
            parts = line.split('\t')
            if len(parts) != 2 or not parts[0]:
                raise exc.SchemaViolation(lineno, None, 'expected '
                                          '"token<TAB>tag"', path=path)
            lexicon[parts[0].lower()] = coarse_tag(parts[1])
    return lexicon


def lexicon_path(language, overrides=None):
    if overrides is None:
        overrides = get_setting('KEYNESS_LEXICON_FILES') or {}
    if language in overrides:
        return overrides[language]
    bundled = os.path.join(BUNDLED_LEXICON_DIR, '{}.tsv'.format(language))
    return bundled if os.path.isfile(bundled) else None


def load_english_tagger(language='en', lexicon=None):
    """Lexicon, inflected verbs, suffix rules, then NOUN. ``lexicon`` is a
    lexicon file path and defaults to the configured or bundled one."""
    path = lexicon or lexicon_path(language)
    entries = load_lexicon(path) if path else {}
    verbs = [tok for tok, tag in entries.items() if tag == TAG_VERB]
    tagger = DefaultTagger(TAG_NOUN)
    tagger = RegexpTagger(ENGLISH_SUFFIX_RULES, backoff=tagger)
    tagger = InflectedVerbTagger(verbs, backoff=tagger)
    return UnigramTagger(model=entries, backoff=tagger)


def load_russian_tagger(language='ru', lexicon=None):
    # Function words are closed class; stopword removal normally drops them
    # first, but tagging must not depend on that.
    closed = load_stopwords(os.path.join(BUNDLED_STOPWORDS_DIR, 'ru.txt'))
    model = {tok: TAG_OTHER for tok in closed}
    path = lexicon or lexicon_path(language)
    if path:
        model.update(load_lexicon(path))
    tagger = DefaultTagger(TAG_NOUN)
    tagger = RegexpTagger(RUSSIAN_SUFFIX_RULES, backoff=tagger)
    return UnigramTagger(model=model, backoff=tagger)


def get_tagger(language, lexicon_files=None):
    """
    Load the tagger registered for a language in settings.KEYNESS_TAGGERS.
    ``lexicon_files`` overrides settings.KEYNESS_LEXICON_FILES.
    Taggers are immutable once built and cached per (language, loader).
    :raises NoTaggerForLanguage: if none is registered
    """
    loader = (get_setting('KEYNESS_TAGGERS') or {}).get(language)
    if not loader:
        raise exc.NoTaggerForLanguage(language)
    return _load_tagger(language, loader,
                        lexicon_path(language, lexicon_files))


@functools.lru_cache(maxsize=None)
def _load_tagger(language, loader, lexicon):
    log.debug('Loading {} tagger {} (lexicon {})'.format(language, loader,
                                                         lexicon))
    return import_string(loader)(language, lexicon=lexicon)


def tag_tokens(doc, tagger=None):
    """
    Give every token of a CleanDoc exactly one coarse tag. Tags carried by
    the doc (pre-tagged dumps) win over any tagger. Tokens are never
    rewritten.
    :raises NoTaggerForLanguage: when the doc has no tags and no tagger is
        given or registered for its language
    """
    if doc.tags is not None:
        tags = [coarse_tag(t) for t in doc.tags]
    elif not doc.tokens:
        tags = []
    else:
        tagger = tagger if tagger is not None else get_tagger(doc.language)
        tags = [coarse_tag(tag) for _, tag in tagger.tag(list(doc.tokens))]
    return TaggedDoc(
        post_id=doc.post_id,
        tagged_tokens=tuple(TaggedToken(tok, tag)
                            for tok, tag in zip(doc.tokens, tags)),
        language=doc.language,
    )


def filter_nouns_verbs(doc):
    """Order preserving projection of the tokens tagged NOUN or VERB"""
    return [tt.token for tt in doc.tagged_tokens if tt.tag in KEYNESS_TAGS]
