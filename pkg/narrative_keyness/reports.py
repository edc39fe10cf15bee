"""
Report files: the volume timeline, keyness tables, shared domains and the run
summary. CSVs are UTF-8 with '\\n' line endings and a header row. Plain text
tables are rendered from the templates under
templates/narrative-keyness/ and can be overridden by any app listed before
narrative_keyness in INSTALLED_APPS.
"""
import csv
import logging
import os

from django.template.loader import render_to_string
from django.utils.text import slugify
from nltk import FreqDist

from narrative_keyness.constants import (
    BASE_TEMPLATES, GROUP_BY_CHANNEL, KEYNESS_CSV_FILENAME,
    KEYNESS_TXT_FILENAME,
)
from narrative_keyness.groupers import get_grouper
from narrative_keyness.templatetags.keyness_format import log_ratio, rpm

log = logging.getLogger(__name__)

TIMELINE_HEADER = ('window_label', 'group', 'post_count')
KEYNESS_HEADER = ('window_label', 'rank', 'token', 'log_ratio', 'f_target',
                  'f_ref', 'rpm_target', 'rpm_ref')
# Cells after window_label, left blank for a window without scores
EMPTY_WINDOW_CELLS = len(KEYNESS_HEADER) - 1
DOMAINS_HEADER = ('domain', 'count', 'annotation')
# Text table columns: (header, right aligned)
KEYNESS_TEXT_COLUMNS = (
    ('rank', True), ('token', False), ('log_ratio', True),
    ('f_target', True), ('f_ref', True), ('rpm_target', True),
    ('rpm_ref', True),
)


def get_template_path(template):
    return '{}{}'.format(BASE_TEMPLATES, template)


def write_csv(path, header, rows):
    with open(path, 'w', encoding='utf-8', newline='') as fh:
        writer = csv.writer(fh, lineterminator='\n')
        writer.writerow(header)
        writer.writerows(rows)
    log.debug('Wrote {} rows to {}'.format(len(rows), path))
    return path


def keyness_filenames(corpus):
    name = slugify(corpus) or 'corpus'
    return KEYNESS_CSV_FILENAME.format(name), KEYNESS_TXT_FILENAME.format(name)


def timeline_rows(corpus, group_by=GROUP_BY_CHANNEL, hashtags=None,
                  channel_countries=None):
    """
    Post counts per (window, group), including zero counts for every group
    seen anywhere in the corpus, sorted by window then group.
    """
    grouper = get_grouper(group_by)
    counts = FreqDist()
    groups = set()
    for window in corpus.windows:
        for post in corpus.posts(window):
            for group in grouper(post, hashtags=hashtags,
                                 channel_countries=channel_countries):
                counts[(window.index, group)] += 1
                groups.add(group)
    return [(window.label, group, counts[(window.index, group)])
            for window in corpus.windows for group in sorted(groups)]


def emit_timeline_csv(corpus, path, group_by=GROUP_BY_CHANNEL, hashtags=None,
                      channel_countries=None):
    rows = timeline_rows(corpus, group_by, hashtags, channel_countries)
    write_csv(path, TIMELINE_HEADER, rows)
    return rows


def keyness_rows(timeline):
    """
    CSV rows for a KeynessTimeline. Floats keep full precision. A window
    without scores gets one row holding only its label.
    """
    rows = []
    for entry in timeline:
        if not entry.scores:
            rows.append((entry.window_label,) + ('',) * EMPTY_WINDOW_CELLS)
        rows.extend((entry.window_label, rank, score.token, score.log_ratio,
                     score.f_target, score.f_ref, score.rpm_target,
                     score.rpm_ref)
                    for rank, score in enumerate(entry.scores, start=1))
    return rows


def _text_cells(rank, score):
    return (str(rank), score.token, log_ratio(score.log_ratio),
            str(score.f_target), str(score.f_ref), rpm(score.rpm_target),
            rpm(score.rpm_ref))


def keyness_text(timeline):
    """Aligned per-window top-N tables. Windows without scores are listed."""
    windows = [(entry.window_label,
                [_text_cells(rank, score)
                 for rank, score in enumerate(entry.scores, start=1)])
               for entry in timeline]
    widths = [len(name) for name, _ in KEYNESS_TEXT_COLUMNS]
    for _, rows in windows:
        for cells in rows:
            widths = [max(w, len(c)) for w, c in zip(widths, cells)]

    def cells(texts):
        return [{'text': text, 'width': width, 'right': right}
                for text, width, (_, right) in zip(texts, widths,
                                                   KEYNESS_TEXT_COLUMNS)]

    context = {
        'corpus': timeline.corpus,
        'header': cells([name for name, _ in KEYNESS_TEXT_COLUMNS]),
        'windows': [{'label': label, 'rows': [cells(r) for r in rows]}
                    for label, rows in windows],
    }
    return render_to_string(get_template_path('keyness-table.txt'), context)


def emit_keyness_table(timeline, csv_path, txt_path=None):
    """
    Write a KeynessTimeline as CSV and, when txt_path is given, as an aligned
    text table. A window with no qualifying terms is kept in both, as a
    label-only CSV row and as an empty table.
    """
    write_csv(csv_path, KEYNESS_HEADER, keyness_rows(timeline))
    if txt_path:
        with open(txt_path, 'w', encoding='utf-8', newline='') as fh:
            fh.write(keyness_text(timeline))
    return [p for p in (csv_path, txt_path) if p]


def emit_domains_csv(tallies, path):
    rows = [(t.domain, t.count, t.annotation or '') for t in tallies]
    return write_csv(path, DOMAINS_HEADER, rows)


def write_run_summary(summary, path):
    text = render_to_string(get_template_path('run-summary.txt'),
                            {'summary': summary})
    with open(path, 'w', encoding='utf-8', newline='') as fh:
        fh.write(text)
    return path


def remove_outputs(paths):
    """Delete report files written by a failed run"""
    for path in paths:
        try:
            os.remove(path)
            log.debug('Removed partial output {}'.format(path))
        except FileNotFoundError:
            pass
