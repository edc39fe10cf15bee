import logging
import os

from django.core.management.base import BaseCommand, CommandError

from narrative_keyness.apps import get_setting
from narrative_keyness.constants import EXIT_CONFIG_ERROR
from narrative_keyness.textprep import (
    PROFILE_SUFFIX, build_profile, write_profile,
)

log = logging.getLogger(__name__)


class Command(BaseCommand):
    help = ('Train a character trigram language profile from UTF-8 sample '
            'text files')

    def add_arguments(self, parser):
        parser.add_argument('language', help='Language code, eg "uk"')
        parser.add_argument('samples', nargs='+', help='Sample text files')
        parser.add_argument('--top-k', type=int)
        parser.add_argument(
            '--output', help='Profile path. Defaults to <language>.profile '
                             'in settings.KEYNESS_PROFILE_DIR')

    def handle(self, *args, **options):
        top_k = options.get('top_k')
        if top_k is None:
            top_k = get_setting('KEYNESS_PROFILE_TOP_K')
        if top_k < 1:
            raise CommandError('--top-k must be >= 1',
                               returncode=EXIT_CONFIG_ERROR)
        texts = []
        for path in options['samples']:
            if not os.path.isfile(path):
                raise CommandError('No such file: {}'.format(path),
                                   returncode=EXIT_CONFIG_ERROR)
            with open(path, encoding='utf-8') as fh:
                texts.append(fh.read())
        language = options['language'].lower()
        try:
            profile = build_profile('\n'.join(texts), language, top_k=top_k)
        except ValueError as ve:
            raise CommandError(str(ve), returncode=EXIT_CONFIG_ERROR)
        output = options.get('output') or os.path.join(
            get_setting('KEYNESS_PROFILE_DIR'), language + PROFILE_SUFFIX)
        write_profile(profile, output)
        log.info('Profile {} has {} trigrams'.format(language, profile.size))
        self.stdout.write('Wrote {}'.format(output))
