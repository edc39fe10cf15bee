"""
Shared options for the report commands. Every flag left unset falls back to
the --config file, then to settings.
"""
import logging

from django.core.management.base import BaseCommand, CommandError

from narrative_keyness import exc
from narrative_keyness.constants import (
    GRANULARITIES, REFERENCE_MODES,
)
from narrative_keyness.pipeline import load_run_config

log = logging.getLogger(__name__)

# argparse dest -> RunConfig field
RUN_CONFIG_OPTIONS = (
    'inputs', 'hashtags', 'date_from', 'date_to', 'granularity', 'languages',
    'reference_mode', 'zero_adjust', 'min_target_freq', 'top_n', 'doc_freq',
    'annotations', 'group_by', 'output_dir', 'strict', 'workers',
)


class KeynessCommand(BaseCommand):

    def add_arguments(self, parser):
        parser.add_argument(
            '--config', help='Flat JSON file of run settings')
        parser.add_argument(
            '--input', dest='inputs', action='append', metavar='PATH:SCHEMA',
            help='Dump to read, schema "gab" or "telegram". Repeatable.')
        parser.add_argument(
            '--hashtag', dest='hashtags', action='append',
            help='Keep posts with this hashtag. Repeatable.')
        parser.add_argument(
            '--from', dest='date_from', metavar='INSTANT',
            help='Inclusive start, ISO-8601 UTC')
        parser.add_argument(
            '--to', dest='date_to', metavar='INSTANT',
            help='Exclusive end, ISO-8601 UTC')
        parser.add_argument('--granularity', choices=GRANULARITIES)
        parser.add_argument(
            '--language', dest='languages', action='append',
            help='Keep posts in this language. Repeatable.')
        parser.add_argument('--reference-mode', choices=REFERENCE_MODES)
        parser.add_argument('--zero-adjust', type=float)
        parser.add_argument('--min-target-freq', type=int)
        parser.add_argument('--top-n', type=int)
        parser.add_argument(
            '--doc-freq', action='store_const', const=True,
            help='Count a token at most once per post')
        parser.add_argument(
            '--annotations', help='CSV of "domain,label" rows')
        parser.add_argument('--group-by', help='Timeline grouping')
        parser.add_argument('--output-dir')
        parser.add_argument(
            '--strict', action='store_const', const=True,
            help='Abort on the first rejected record')
        parser.add_argument('--workers', type=int)

    def get_run_config(self, options):
        overrides = {name: options.get(name) for name in RUN_CONFIG_OPTIONS}
        return load_run_config(options.get('config'), **overrides)

    def handle(self, *args, **options):
        try:
            self.handle_run(self.get_run_config(options), **options)
        except exc.NarrativeKeynessException as nke:
            raise CommandError(str(nke), returncode=nke.exit_code) from nke

    def handle_run(self, run_config, **options):
        raise NotImplementedError('Subclasses must implement handle_run()')

    def report(self, summary):
        for filename in summary.outputs:
            self.stdout.write('Wrote {}'.format(filename))
