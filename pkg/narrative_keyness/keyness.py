"""
Frequency tables and Log Ratio keyness over time windows.

Log Ratio is the binary log of the ratio of an item's relative frequencies
in a target and a reference corpus:

    log_ratio = log2( (f1 / n1) / (f2 / n2) )

+1 means the item is twice as frequent (relatively) in the target. Zero raw
frequencies are replaced by ``zero_adjust`` (0.5 by default) so that items
new to the target still get a finite score.

The ratio is evaluated in exact rational arithmetic and only the final
logarithm is taken in floating point, with the sign applied after the log.
Equal relative frequencies therefore score exactly 0.0, swapping the corpora
negates a score exactly and scaling a corpus leaves scores bit-identical.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, NamedTuple, Tuple

from nltk import FreqDist

from narrative_keyness import exc
from narrative_keyness.constants import (
    PER_MILLION, REFERENCE_CUMULATIVE, REFERENCE_PREVIOUS_WINDOW,
    REFERENCE_MODES,
)
from narrative_keyness.postag import filter_nouns_verbs

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class FrequencyTable:
    """Token counts for one corpus slice. Zero counts are never stored."""
    window_label: str
    counts: Dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        counts = {}
        for token, count in dict(self.counts).items():
            if count < 0:
                raise ValueError('Negative count {} for {!r}'.format(count,
                                                                   token))
            if count:
                counts[token] = count
        object.__setattr__(self, 'counts', counts)

    @property
    def total(self):
        return sum(self.counts.values())

    def __getitem__(self, token):
        return self.counts.get(token, 0)

    def __len__(self):
        return len(self.counts)


class KeynessScore(NamedTuple):
    token: str
    f_target: int
    f_ref: int
    rpm_target: float
    rpm_ref: float
    log_ratio: float


class KeynessWindow(NamedTuple):
    window_label: str
    scores: Tuple[KeynessScore, ...]


@dataclass(frozen=True)
class KeynessTimeline:
    """Ranked scores for every window after the first, in window order."""
    entries: Tuple[KeynessWindow, ...] = ()
    corpus: str = ''

    @property
    def labels(self):
        return [entry.window_label for entry in self.entries]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def scores_for(self, window_label):
        for entry in self.entries:
            if entry.window_label == window_label:
                return entry.scores
        raise KeyError(window_label)


def _doc_tokens(doc):
    if hasattr(doc, 'tagged_tokens'):
        return filter_nouns_verbs(doc)
    return list(doc)


def build_frequency_table(docs, label, doc_freq=False):
    """
    Count token occurrences over docs. A doc is either a TaggedDoc, which is
    projected onto its nouns and verbs first, or a sequence of tokens that
    has already been filtered. With doc_freq, a token counts at most once
    per doc.

    >>> build_frequency_table([['wagner', 'wagner', 'enters']], 'd').counts
    {'wagner': 2, 'enters': 1}
    """
    counts = FreqDist()
    for doc in docs:
        tokens = _doc_tokens(doc)
        counts.update(sorted(set(tokens)) if doc_freq else tokens)
    return FrequencyTable(window_label=label, counts=dict(counts))


def merge_tables(a, b, label):
    """Pointwise sum of two tables"""
    merged = FreqDist(a.counts)
    merged.update(b.counts)
    return FrequencyTable(window_label=label, counts=dict(merged))


def _check_corpus_sizes(n1, n2):
    if n1 <= 0 or n2 <= 0:
        raise exc.NonpositiveCorpusSize(n1, n2)


def log_ratio(f1, n1, f2, n2, zero_adjust=0.5):
    """
    Base 2 Log Ratio of f1/n1 (target) against f2/n2 (reference).

    >>> log_ratio(4, 1000, 2, 1000)
    1.0
    >>> round(log_ratio(3, 1000, 0, 2000), 10)
    3.5849625007
    """
    _check_corpus_sizes(n1, n2)
    if zero_adjust is None or not zero_adjust > 0:
        raise exc.InvalidZeroAdjust(zero_adjust)
    if f1 < 0 or f2 < 0:
        raise exc.KeynessMathError(
            code='NegativeFrequency',
            message='Frequencies must be >= 0, got f1={} f2={}'.format(f1,
                                                                       f2))
    if f1 == 0 and f2 == 0:
        raise exc.BothZero()
    adjust = Fraction(zero_adjust)
    f1 = Fraction(f1) if f1 else adjust
    f2 = Fraction(f2) if f2 else adjust
    ratio = (f1 * n2) / (f2 * n1)
    if ratio >= 1:
        return math.log2(float(ratio))
    return -math.log2(float(1 / ratio))


def rpm(frequency, size):
    """Relative frequency per million tokens, 0.0 for an empty corpus"""
    if size <= 0:
        return 0.0
    return frequency / size * PER_MILLION


def score_tables(target, reference, min_target_freq=3, zero_adjust=0.5):
    """
    Score every target token seen at least min_target_freq times against the
    reference. Tokens absent from the target are never scored. Returns the
    scores ranked (see rank_keyness), or an empty list when either table is
    empty.
    """
    n1, n2 = target.total, reference.total
    if not n1 or not n2:
        return []
    scores = [
        KeynessScore(
            token=token,
            f_target=f1,
            f_ref=reference[token],
            rpm_target=rpm(f1, n1),
            rpm_ref=rpm(reference[token], n2),
            log_ratio=log_ratio(f1, n1, reference[token], n2, zero_adjust),
        )
        for token, f1 in target.counts.items() if f1 >= min_target_freq
    ]
    return rank_keyness(scores, len(scores)) if scores else []


def rank_keyness(scores, top_n):
    """Highest log ratio first, then higher target frequency, then token"""
    if top_n < 1:
        raise exc.InvalidRunConfig('top_n', 'must be >= 1, got {}'.format(
            top_n))
    ordered = sorted(scores, key=lambda s: (-s.log_ratio, -s.f_target,
                                            s.token))
    return ordered[:top_n]


def window_tables(corpus, tokens_by_post, doc_freq=False):
    """
    One FrequencyTable per window of a WindowedCorpus. ``tokens_by_post``
    maps (platform, post id) to the post's retained noun/verb tokens; posts
    missing from it contribute nothing.
    """
    return [
        build_frequency_table(
            [tokens_by_post.get((post.platform, post.id), ())
             for post in corpus.posts(window)],
            window.label, doc_freq=doc_freq)
        for window in corpus.windows
    ]


def reference_tables(tables, mode=REFERENCE_CUMULATIVE):
    """
    Reference table for each window after the first, built by a prefix scan:
    all earlier windows merged (cumulative) or just the one before
    (previous_window).
    """
    if mode not in REFERENCE_MODES:
        raise exc.InvalidRunConfig('reference_mode', 'must be one of {}, got '
                                   '{!r}'.format(REFERENCE_MODES, mode))
    references = []
    running = None
    for previous, target in zip(tables, tables[1:]):
        if mode == REFERENCE_PREVIOUS_WINDOW:
            references.append(previous)
            continue
        label = 'before {}'.format(target.window_label)
        running = (FrequencyTable(label, previous.counts) if running is None
                   else merge_tables(running, previous, label))
        references.append(running)
    return references


def temporal_keyness(tables, mode=REFERENCE_CUMULATIVE, min_target_freq=3,
                     top_n=10, zero_adjust=0.5, workers=1, corpus=''):
    """
    Rank the key terms of every window against the windows preceding it.
    The first window only serves as reference and gets no entry. Windows
    whose target or reference is empty get an empty score list.
    :param tables: FrequencyTables in window order, see window_tables()
    :param workers: Threads used to score windows. Output does not depend
        on it.
    :raises InsufficientWindows: with fewer than 2 nonempty windows
    """
    if zero_adjust is None or not zero_adjust > 0:
        raise exc.InvalidZeroAdjust(zero_adjust)
    if top_n < 1:
        raise exc.InvalidRunConfig('top_n', 'must be >= 1, got {}'.format(
            top_n))
    nonempty = sum(1 for t in tables if t.total)
    if nonempty < 2:
        raise exc.InsufficientWindows(nonempty, corpus)
    references = reference_tables(tables, mode)

    def score_window(pair):
        target, reference = pair
        if not target.total or not reference.total:
            log.debug('{}: window {} has {} target and {} reference tokens, '
                      'no scores'.format(corpus or 'corpus',
                                         target.window_label, target.total,
                                         reference.total))
            return KeynessWindow(target.window_label, ())
        scores = score_tables(target, reference, min_target_freq,
                              zero_adjust)
        return KeynessWindow(target.window_label,
                             tuple(rank_keyness(scores, top_n)))

    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        entries = tuple(pool.map(score_window, zip(tables[1:], references)))
    log.info('{}: scored {} windows in {} mode'.format(
        corpus or 'corpus', len(entries), mode))
    return KeynessTimeline(entries=entries, corpus=corpus)
